#pragma once

#include <cmath>
#include <cstdlib>
#include <ostream>
#include <vector>

#include "darboux/errors.hpp"
#include "darboux/minkowski.hpp"

// Truncated Taylor series in one variable with runtime order: the value of a
// quantity together with its first K derivatives at a point, closed under
// arithmetic, the elementary functions, composition and series inversion.

namespace darboux {

class Jet {
public:
    /// Zero jet of the given order (K+1 coefficients).
    explicit Jet(int order) : c_(static_cast<std::size_t>(order) + 1, 0.0) {
        if (order < 0) throw OrderExceeded("jet order must be >= 0");
    }

    static Jet constant(int order, double v) {
        Jet j(order);
        j.c_[0] = v;
        return j;
    }

    /// The expansion of the parameter itself about the base point: v + h.
    static Jet variable(int order, double v) {
        Jet j(order);
        j.c_[0] = v;
        if (order >= 1) j.c_[1] = 1.0;
        return j;
    }

    int order() const { return static_cast<int>(c_.size()) - 1; }

    double operator[](int k) const { return c_[static_cast<std::size_t>(k)]; }
    double& operator[](int k) { return c_[static_cast<std::size_t>(k)]; }

    /// Coefficient list restricted to the first n+1 entries.
    Jet truncated(int n) const {
        if (n > order()) throw OrderExceeded("truncated: target order above source");
        Jet r(n);
        for (int k = 0; k <= n; ++k) r[k] = c_[static_cast<std::size_t>(k)];
        return r;
    }

    friend Jet operator-(const Jet& a) {
        Jet r(a.order());
        for (int k = 0; k <= a.order(); ++k) r[k] = -a[k];
        return r;
    }

    friend Jet operator+(const Jet& a, const Jet& b) {
        same_order(a, b);
        Jet r(a.order());
        for (int k = 0; k <= a.order(); ++k) r[k] = a[k] + b[k];
        return r;
    }

    friend Jet operator-(const Jet& a, const Jet& b) {
        same_order(a, b);
        Jet r(a.order());
        for (int k = 0; k <= a.order(); ++k) r[k] = a[k] - b[k];
        return r;
    }

    friend Jet operator*(const Jet& a, const Jet& b) {
        same_order(a, b);
        Jet r(a.order());
        for (int k = 0; k <= a.order(); ++k) {
            double s = 0.0;
            for (int i = 0; i <= k; ++i) s += a[i] * b[k - i];
            r[k] = s;
        }
        return r;
    }

    friend Jet operator/(const Jet& a, const Jet& b) {
        same_order(a, b);
        if (b[0] == 0.0) throw DivisionByZeroConstantTerm();
        Jet q(a.order());
        for (int k = 0; k <= a.order(); ++k) {
            double s = a[k];
            for (int i = 1; i <= k; ++i) s -= b[i] * q[k - i];
            q[k] = s / b[0];
        }
        return q;
    }

    friend Jet operator+(const Jet& a, double c) { Jet r = a; r[0] += c; return r; }
    friend Jet operator+(double c, const Jet& a) { return a + c; }
    friend Jet operator-(const Jet& a, double c) { Jet r = a; r[0] -= c; return r; }
    friend Jet operator-(double c, const Jet& a) { return (-a) + c; }
    friend Jet operator*(const Jet& a, double c) {
        Jet r(a.order());
        for (int k = 0; k <= a.order(); ++k) r[k] = a[k] * c;
        return r;
    }
    friend Jet operator*(double c, const Jet& a) { return a * c; }
    friend Jet operator/(const Jet& a, double c) { return a * (1.0 / c); }
    friend Jet operator/(double c, const Jet& a) { return constant(a.order(), c) / a; }

private:
    static void same_order(const Jet& a, const Jet& b) {
        if (a.order() != b.order())
            throw OrderExceeded("jet arithmetic requires equal orders");
    }

    std::vector<double> c_;
};

/// k!-scaled coefficient extraction: the k-th derivative of the quantity.
inline double derivative(const Jet& a, int k) {
    if (k < 0 || k > a.order())
        throw OrderExceeded("derivative order outside jet order");
    double f = 1.0;
    for (int i = 2; i <= k; ++i) f *= i;
    return f * a[k];
}

/// Series of the derivative: one order lower.
inline Jet series_derivative(const Jet& a) {
    if (a.order() == 0) throw OrderExceeded("series_derivative of order-0 jet");
    Jet r(a.order() - 1);
    for (int k = 0; k < a.order(); ++k) r[k] = (k + 1) * a[k + 1];
    return r;
}

/// Term-by-term antiderivative with zero constant: one order higher.
inline Jet series_antiderivative(const Jet& a) {
    Jet r(a.order() + 1);
    for (int k = 0; k <= a.order(); ++k) r[k + 1] = a[k] / (k + 1);
    return r;
}

namespace detail {

// sin/cos and sinh/cosh share one recurrence driven by the derivative pair.
inline void sincos_like(const Jet& a, Jet& s, Jet& c, bool hyperbolic) {
    const int K = a.order();
    s[0] = hyperbolic ? std::sinh(a[0]) : std::sin(a[0]);
    c[0] = hyperbolic ? std::cosh(a[0]) : std::cos(a[0]);
    const double sign = hyperbolic ? 1.0 : -1.0;
    for (int k = 1; k <= K; ++k) {
        double ss = 0.0, cc = 0.0;
        for (int j = 1; j <= k; ++j) {
            ss += j * a[j] * c[k - j];
            cc += j * a[j] * s[k - j];
        }
        s[k] = ss / k;
        c[k] = sign * cc / k;
    }
}

}  // namespace detail

inline Jet sin(const Jet& a) {
    Jet s(a.order()), c(a.order());
    detail::sincos_like(a, s, c, false);
    return s;
}

inline Jet cos(const Jet& a) {
    Jet s(a.order()), c(a.order());
    detail::sincos_like(a, s, c, false);
    return c;
}

inline Jet sinh(const Jet& a) {
    Jet s(a.order()), c(a.order());
    detail::sincos_like(a, s, c, true);
    return s;
}

inline Jet cosh(const Jet& a) {
    Jet s(a.order()), c(a.order());
    detail::sincos_like(a, s, c, true);
    return c;
}

inline Jet tan(const Jet& a) {
    Jet s(a.order()), c(a.order());
    detail::sincos_like(a, s, c, false);
    if (c[0] == 0.0) throw DomainError("tan at an odd multiple of pi/2");
    return s / c;
}

inline Jet exp(const Jet& a) {
    const int K = a.order();
    Jet r(K);
    r[0] = std::exp(a[0]);
    for (int k = 1; k <= K; ++k) {
        double s = 0.0;
        for (int j = 1; j <= k; ++j) s += j * a[j] * r[k - j];
        r[k] = s / k;
    }
    return r;
}

inline Jet log(const Jet& a) {
    if (!(a[0] > 0.0)) throw DomainError("log of non-positive constant term");
    const int K = a.order();
    Jet r(K);
    r[0] = std::log(a[0]);
    for (int k = 1; k <= K; ++k) {
        double s = k * a[k];
        for (int j = 1; j < k; ++j) s -= j * r[j] * a[k - j];
        r[k] = s / (k * a[0]);
    }
    return r;
}

inline Jet sqrt(const Jet& a) {
    if (!(a[0] > 0.0)) throw DomainError("sqrt of non-positive constant term");
    const int K = a.order();
    Jet r(K);
    r[0] = std::sqrt(a[0]);
    for (int k = 1; k <= K; ++k) {
        double s = a[k];
        for (int j = 1; j < k; ++j) s -= r[j] * r[k - j];
        r[k] = s / (2.0 * r[0]);
    }
    return r;
}

/// Integer power by binary exponentiation; valid for any base jet, with
/// negative exponents requiring an invertible constant term.
inline Jet ipow(const Jet& a, long long n) {
    if (n < 0) return Jet::constant(a.order(), 1.0) / ipow(a, -n);
    Jet r = Jet::constant(a.order(), 1.0);
    Jet base = a;
    while (n > 0) {
        if (n & 1) r = r * base;
        base = base * base;
        n >>= 1;
    }
    return r;
}

/// Real power a^p.  Integer p dispatches to ipow; otherwise the constant
/// term must be positive.
inline Jet pow(const Jet& a, double p) {
    if (p == std::floor(p) && std::fabs(p) <= 1024.0)
        return ipow(a, static_cast<long long>(p));
    if (!(a[0] > 0.0))
        throw DomainError("fractional power of non-positive constant term");
    const int K = a.order();
    Jet r(K);
    r[0] = std::pow(a[0], p);
    for (int k = 1; k <= K; ++k) {
        double s = 0.0;
        for (int j = 1; j <= k; ++j) s += (j * (p + 1.0) - k) * a[j] * r[k - j];
        r[k] = s / (k * a[0]);
    }
    return r;
}

/// outer(inner(h)) truncated at the common order; the inner series must
/// vanish at the base point.
inline Jet compose(const Jet& outer, const Jet& inner) {
    if (outer.order() != inner.order())
        throw OrderExceeded("compose requires equal orders");
    if (inner[0] != 0.0) throw NonzeroInnerConstant();
    const int K = outer.order();
    Jet r = Jet::constant(K, outer[K]);
    for (int k = K - 1; k >= 0; --k) r = r * inner + outer[k];
    return r;
}

/// Compositional inverse g of s: compose(s, g) = h + O(h^{K+1}).
/// Newton iteration on series, order of accuracy doubling per step.
inline Jet invert_series(const Jet& s) {
    if (s[0] != 0.0)
        throw NonInvertibleSeries("invert_series: nonzero constant term");
    if (s[1] == 0.0)
        throw NonInvertibleSeries("invert_series: vanishing linear term");
    const int K = s.order();
    Jet id = Jet::variable(K, 0.0);
    Jet g(K);
    g[1] = 1.0 / s[1];
    if (K <= 1) return g;

    Jet ds = series_derivative(s);  // order K-1
    Jet ds_padded(K);
    for (int k = 0; k < K; ++k) ds_padded[k] = ds[k];

    int steps = 2;
    for (int reach = 2; reach <= K; reach *= 2) ++steps;
    for (int it = 0; it < steps; ++it) {
        Jet err = compose(s, g) - id;
        Jet slope = compose(ds_padded, g);
        g = g - err / slope;
        g[0] = 0.0;
    }
    return g;
}

// -- vector-valued jets -------------------------------------------------------

/// MinkVector whose components carry jets of one common order.
struct JetVector {
    Jet x0, x1, x2;

    explicit JetVector(int order) : x0(order), x1(order), x2(order) {}
    JetVector(Jet a, Jet b, Jet c)
        : x0(std::move(a)), x1(std::move(b)), x2(std::move(c)) {
        if (x0.order() != x1.order() || x0.order() != x2.order())
            throw OrderExceeded("JetVector components must share one order");
    }

    static JetVector constant(int order, MinkVector v) {
        return {Jet::constant(order, v.x0), Jet::constant(order, v.x1),
                Jet::constant(order, v.x2)};
    }

    int order() const { return x0.order(); }

    /// Constant terms: the underlying point value.
    MinkVector value() const { return {x0[0], x1[0], x2[0]}; }

    /// Coefficient slice k as a vector (unscaled by k!).
    MinkVector coeff(int k) const { return {x0[k], x1[k], x2[k]}; }

    JetVector truncated(int n) const {
        return {x0.truncated(n), x1.truncated(n), x2.truncated(n)};
    }

    friend JetVector operator+(const JetVector& a, const JetVector& b) {
        return {a.x0 + b.x0, a.x1 + b.x1, a.x2 + b.x2};
    }
    friend JetVector operator-(const JetVector& a, const JetVector& b) {
        return {a.x0 - b.x0, a.x1 - b.x1, a.x2 - b.x2};
    }
    friend JetVector operator-(const JetVector& a) { return {-a.x0, -a.x1, -a.x2}; }
    friend JetVector operator*(const Jet& c, const JetVector& a) {
        return {c * a.x0, c * a.x1, c * a.x2};
    }
    friend JetVector operator*(double c, const JetVector& a) {
        return {c * a.x0, c * a.x1, c * a.x2};
    }
    friend JetVector operator/(const JetVector& a, const Jet& c) {
        return {a.x0 / c, a.x1 / c, a.x2 / c};
    }
};

inline Jet pairing(const JetVector& a, const JetVector& b) {
    return -(a.x0 * b.x0) + a.x1 * b.x1 + a.x2 * b.x2;
}

inline JetVector wedge(const JetVector& a, const JetVector& b) {
    return {-(a.x1 * b.x2 - a.x2 * b.x1),
            -(a.x0 * b.x2 - a.x2 * b.x0),
            a.x0 * b.x1 - a.x1 * b.x0};
}

inline JetVector series_derivative(const JetVector& a) {
    return {series_derivative(a.x0), series_derivative(a.x1),
            series_derivative(a.x2)};
}

inline JetVector compose(const JetVector& outer, const Jet& inner) {
    return {compose(outer.x0, inner), compose(outer.x1, inner),
            compose(outer.x2, inner)};
}

}  // namespace darboux
