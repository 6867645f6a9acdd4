#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "darboux/jet.hpp"

using namespace darboux;
using Catch::Approx;

namespace {

Jet make(std::initializer_list<double> coeffs) {
    Jet j(static_cast<int>(coeffs.size()) - 1);
    int k = 0;
    for (double c : coeffs) j[k++] = c;
    return j;
}

Jet random_jet(std::mt19937& rng, int order, double scale = 1.0) {
    std::uniform_real_distribution<double> d(-scale, scale);
    Jet j(order);
    for (int k = 0; k <= order; ++k) j[k] = d(rng);
    return j;
}

double max_coeff_diff(const Jet& a, const Jet& b) {
    double m = 0.0;
    for (int k = 0; k <= a.order(); ++k) m = std::max(m, std::fabs(a[k] - b[k]));
    return m;
}

}  // namespace

TEST_CASE("jet arithmetic basics") {
    SECTION("(1+h)^2 = 1 + 2h at order 1") {
        Jet a = make({1, 1});
        Jet p = a * a;
        CHECK(p[0] == 1.0);
        CHECK(p[1] == 2.0);
    }
    SECTION("geometric series 1/(1+h)") {
        Jet q = make({1, 0, 0}) / make({1, 1, 0});
        CHECK(q[0] == 1.0);
        CHECK(q[1] == -1.0);
        CHECK(q[2] == 1.0);
    }
    SECTION("additive identity") {
        Jet a = make({3, -2, 5});
        Jet r = a + Jet(2);
        CHECK(max_coeff_diff(r, a) == 0.0);
    }
    SECTION("division by zero constant term") {
        CHECK_THROWS_AS(make({1, 0}) / make({0, 1}), DivisionByZeroConstantTerm);
    }
    SECTION("mismatched orders are rejected") {
        CHECK_THROWS_AS(make({1, 0}) + make({1, 0, 0}), OrderExceeded);
    }
}

TEST_CASE("ring axioms on random jets") {
    std::mt19937 rng(40961);
    for (int i = 0; i < 100; ++i) {
        Jet a = random_jet(rng, 6), b = random_jet(rng, 6), c = random_jet(rng, 6);
        CHECK(max_coeff_diff((a * b) * c, a * (b * c)) < 1e-12);
        CHECK(max_coeff_diff(a * (b + c), a * b + a * c) < 1e-12);
        // same products, opposite summation order
        CHECK(max_coeff_diff(a * b, b * a) < 1e-13);
    }
}

TEST_CASE("division inverts multiplication") {
    std::mt19937 rng(271828);
    for (int i = 0; i < 100; ++i) {
        Jet a = random_jet(rng, 7);
        Jet b = random_jet(rng, 7);
        b[0] = 1.5 + std::fabs(b[0]);
        CHECK(max_coeff_diff((a * b) / b, a) < 1e-12);
    }
}

TEST_CASE("elementary functions") {
    SECTION("sin of the identity jet") {
        Jet s = sin(Jet::variable(3, 0.0));
        CHECK(s[0] == Approx(0.0).margin(1e-15));
        CHECK(s[1] == Approx(1.0));
        CHECK(s[2] == Approx(0.0).margin(1e-15));
        CHECK(s[3] == Approx(-1.0 / 6.0));
    }
    SECTION("sqrt of a perfect square") {
        Jet r = sqrt(make({1, 2, 1}));
        CHECK(r[0] == Approx(1.0));
        CHECK(r[1] == Approx(1.0));
        CHECK(r[2] == Approx(0.0).margin(1e-15));
    }
    SECTION("exp of the zero jet") {
        Jet r = exp(Jet(4));
        CHECK(r[0] == 1.0);
        for (int k = 1; k <= 4; ++k) CHECK(r[k] == 0.0);
    }
    SECTION("sinh^2 - cosh^2 = -1 as jets") {
        std::mt19937 rng(99);
        for (int i = 0; i < 50; ++i) {
            Jet a = random_jet(rng, 7);
            Jet lhs = sinh(a) * sinh(a) - cosh(a) * cosh(a);
            CHECK(std::fabs(lhs[0] + 1.0) < 1e-12);
            for (int k = 1; k <= 7; ++k) CHECK(std::fabs(lhs[k]) < 1e-11);
        }
    }
    SECTION("sin^2 + cos^2 = 1 as jets") {
        Jet a = make({0.7, 1.3, -0.4, 0.2, 0, 0.05});
        Jet lhs = sin(a) * sin(a) + cos(a) * cos(a);
        CHECK(lhs[0] == Approx(1.0));
        for (int k = 1; k <= 5; ++k) CHECK(std::fabs(lhs[k]) < 1e-13);
    }
    SECTION("log inverts exp") {
        Jet a = make({0.4, 1.0, -0.3, 0.8, 0.1});
        CHECK(max_coeff_diff(log(exp(a)), a) < 1e-12);
    }
    SECTION("tan agrees with sin/cos") {
        Jet a = make({0.5, 1.0, 0.25, 0, 0});
        CHECK(max_coeff_diff(tan(a), sin(a) / cos(a)) < 1e-13);
    }
    SECTION("domain guards") {
        CHECK_THROWS_AS(log(make({0, 1})), DomainError);
        CHECK_THROWS_AS(log(make({-1, 1})), DomainError);
        CHECK_THROWS_AS(sqrt(make({-4, 1})), DomainError);
        CHECK_THROWS_AS(pow(make({-2, 1}), 0.5), DomainError);
    }
}

TEST_CASE("powers") {
    SECTION("integer power of a jet with negative base") {
        Jet a = make({-2, 1, 0, 0});
        Jet cubed = pow(a, 3.0);
        CHECK(cubed[0] == Approx(-8.0));
        CHECK(cubed[1] == Approx(12.0));
        CHECK(cubed[2] == Approx(-6.0));
        CHECK(cubed[3] == Approx(1.0));
    }
    SECTION("negative integer power") {
        Jet a = make({2, 1, 0});
        Jet inv = pow(a, -1.0);
        CHECK(max_coeff_diff(inv, Jet::constant(2, 1.0) / a) < 1e-14);
    }
    SECTION("fractional power matches sqrt") {
        Jet a = make({4, 1, 0.5, 0.1});
        CHECK(max_coeff_diff(pow(a, 0.5), sqrt(a)) < 1e-12);
    }
    SECTION("p = 0 and p = 1") {
        Jet a = make({3, -1, 2});
        CHECK(max_coeff_diff(pow(a, 0.0), Jet::constant(2, 1.0)) == 0.0);
        CHECK(max_coeff_diff(pow(a, 1.0), a) == 0.0);
    }
}

TEST_CASE("composition") {
    SECTION("linear chain rule") {
        Jet r = compose(make({0, 1, 0}), make({0, 2, 0}));
        CHECK(r[0] == 0.0);
        CHECK(r[1] == 2.0);
        CHECK(r[2] == 0.0);
    }
    SECTION("(h + h^2)^2 expanded") {
        Jet r = compose(make({0, 0, 1, 0, 0}), make({0, 1, 1, 0, 0}));
        CHECK(r[0] == 0.0);
        CHECK(r[1] == 0.0);
        CHECK(r[2] == 1.0);
        CHECK(r[3] == 2.0);
        CHECK(r[4] == 1.0);
    }
    SECTION("composition with the identity") {
        Jet outer = make({2, -1, 3, 0.5});
        CHECK(max_coeff_diff(compose(outer, Jet::variable(3, 0.0)), outer) == 0.0);
    }
    SECTION("nonzero inner constant is rejected") {
        CHECK_THROWS_AS(compose(make({0, 1}), make({1, 1})), NonzeroInnerConstant);
    }
    SECTION("matches analytic composition sin(h + h^2)") {
        Jet inner = make({0, 1, 1, 0, 0, 0});
        Jet r = compose(sin(Jet::variable(5, 0.0)), inner);
        Jet direct = sin(inner);
        CHECK(max_coeff_diff(r, direct) < 1e-14);
    }
}

TEST_CASE("series inversion") {
    SECTION("linear series") {
        Jet g = invert_series(make({0, 2, 0, 0}));
        CHECK(g[1] == Approx(0.5));
        CHECK(g[2] == Approx(0.0).margin(1e-15));
        CHECK(g[3] == Approx(0.0).margin(1e-15));
    }
    SECTION("h + h^2 inverts to h - h^2 + 2h^3") {
        Jet g = invert_series(make({0, 1, 1, 0}));
        CHECK(g[0] == Approx(0.0).margin(1e-15));
        CHECK(g[1] == Approx(1.0));
        CHECK(g[2] == Approx(-1.0));
        CHECK(g[3] == Approx(2.0));
    }
    SECTION("round trip and involution at order 7") {
        std::mt19937 rng(31337);
        std::uniform_real_distribution<double> d(-1.0, 1.0);
        for (int i = 0; i < 50; ++i) {
            Jet s(7);
            s[1] = (d(rng) > 0 ? 1 : -1) * (0.5 + std::fabs(d(rng)));
            for (int k = 2; k <= 7; ++k) s[k] = d(rng);
            Jet g = invert_series(s);
            Jet round = compose(s, g);
            CHECK(std::fabs(round[1] - 1.0) < 1e-10);
            CHECK(std::fabs(round[0]) < 1e-10);
            for (int k = 2; k <= 7; ++k) CHECK(std::fabs(round[k]) < 1e-10);
            CHECK(max_coeff_diff(invert_series(g), s) < 1e-9 * (1.0 + std::fabs(s[1])));
        }
    }
    SECTION("rejects non-invertible input") {
        CHECK_THROWS_AS(invert_series(make({1, 1})), NonInvertibleSeries);
        CHECK_THROWS_AS(invert_series(make({0, 0, 1})), NonInvertibleSeries);
    }
}

TEST_CASE("derivative extraction") {
    CHECK(derivative(make({0, 1, 0, -1.0 / 6.0}), 3) == Approx(-1.0));
    CHECK(derivative(make({42, 7}), 0) == 42.0);
    CHECK(derivative(make({5, 0, 3}), 2) == Approx(6.0));
    CHECK_THROWS_AS(derivative(make({1, 2}), 3), OrderExceeded);
    CHECK_THROWS_AS(derivative(make({1, 2}), -1), OrderExceeded);
}

TEST_CASE("series derivative and antiderivative") {
    Jet a = make({1, 2, 3, 4});
    Jet d = series_derivative(a);
    CHECK(d.order() == 2);
    CHECK(d[0] == 2.0);
    CHECK(d[1] == 6.0);
    CHECK(d[2] == 12.0);
    Jet back = series_antiderivative(d);
    CHECK(back[0] == 0.0);
    CHECK(back[1] == a[1]);
    CHECK(back[2] == a[2]);
    CHECK(back[3] == a[3]);
}

TEST_CASE("jets against closed-form derivatives") {
    // f(t) = sin(t) exp(t); f' = (sin+cos)e^t, f'' = 2cos(t)e^t,
    // f''' = 2(cos-sin)e^t
    double t0 = 0.3;
    Jet t = Jet::variable(3, t0);
    Jet f = sin(t) * exp(t);
    double et = std::exp(t0), st = std::sin(t0), ct = std::cos(t0);
    CHECK(derivative(f, 0) == Approx(st * et).epsilon(1e-13));
    CHECK(derivative(f, 1) == Approx((st + ct) * et).epsilon(1e-13));
    CHECK(derivative(f, 2) == Approx(2 * ct * et).epsilon(1e-13));
    CHECK(derivative(f, 3) == Approx(2 * (ct - st) * et).epsilon(1e-13));
}

TEST_CASE("jet vectors") {
    int K = 4;
    JetVector a(K), b(K);
    a.x0 = sin(Jet::variable(K, 0.2));
    a.x1 = cos(Jet::variable(K, 0.2));
    a.x2 = Jet::variable(K, 0.2);
    b.x0 = Jet::constant(K, 1.0);
    b.x1 = exp(Jet::variable(K, 0.2));
    b.x2 = Jet::constant(K, -2.0);

    SECTION("pairing constant term matches the scalar pairing") {
        Jet p = pairing(a, b);
        CHECK(p[0] == Approx(pairing(a.value(), b.value())));
    }
    SECTION("wedge constant term matches the scalar wedge") {
        JetVector w = wedge(a, b);
        MinkVector expect = wedge(a.value(), b.value());
        CHECK(w.value().x0 == Approx(expect.x0));
        CHECK(w.value().x1 == Approx(expect.x1));
        CHECK(w.value().x2 == Approx(expect.x2));
    }
    SECTION("wedge stays orthogonal to both factors as a jet") {
        JetVector w = wedge(a, b);
        Jet pa = pairing(w, a), pb = pairing(w, b);
        for (int k = 0; k <= K; ++k) {
            CHECK(std::fabs(pa[k]) < 1e-12);
            CHECK(std::fabs(pb[k]) < 1e-12);
        }
    }
    SECTION("derivative of a pairing obeys the product rule") {
        Jet p = pairing(a, b);
        Jet lhs = series_derivative(p);
        JetVector da = series_derivative(a), db = series_derivative(b);
        Jet rhs = pairing(da, b.truncated(K - 1)) + pairing(a.truncated(K - 1), db);
        CHECK(max_coeff_diff(lhs, rhs) < 1e-12);
    }
    SECTION("mismatched component orders are rejected") {
        CHECK_THROWS_AS(JetVector(Jet(2), Jet(3), Jet(2)), OrderExceeded);
    }
}
