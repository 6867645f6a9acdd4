#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <memory>
#include <utility>
#include <vector>

#include "darboux/expr.hpp"
#include "darboux/jet.hpp"
#include "darboux/minkowski.hpp"
#include "darboux/surface.hpp"

// A regular curve living on a spacelike surface patch, its arc-length
// reparametrization (adaptive quadrature + series inversion), and the
// pseudo-orthonormal moving frame {t, n, b} with the three scalar invariants
// kappa_n, kappa_g, tau_g carried as jets in arc length.

namespace darboux {

struct CurveOnSurface {
    std::shared_ptr<const SurfacePatch> surface;
    Expr u1, u2;  ///< parameter curve components, functions of "t"
    double t0, t1;

    CurveOnSurface(std::shared_ptr<const SurfacePatch> patch, Expr c1, Expr c2,
                   double ta, double tb)
        : surface(std::move(patch)), u1(std::move(c1)), u2(std::move(c2)), t0(ta), t1(tb) {
        if (!surface) throw SceneError("curve requires a surface");
        if (!(t0 < t1)) throw SceneError("curve interval must be nonempty");
    }

    std::pair<double, double> params_at(double t) const {
        std::map<std::string, Jet> b{{"t", Jet::constant(0, t)}};
        return {u1.eval(b)[0], u2.eval(b)[0]};
    }

    /// |dgamma/dt| in the ambient pairing; positive on a regular spacelike
    /// curve.
    double speed(double t, double min_speed = 1e-8) const {
        Jet T = Jet::variable(1, t);
        std::map<std::string, Jet> b{{"t", T}};
        JetVector g = surface->position_jets(u1.eval(b), u2.eval(b));
        MinkVector v = series_derivative(g).value();
        double q = pairing(v, v);
        if (q < -min_speed * min_speed)
            throw NotSpacelikeHere("curve tangent is not spacelike at t = " + std::to_string(t));
        if (q <= min_speed * min_speed)
            throw NonRegularCurve("curve speed below threshold at t = " + std::to_string(t));
        return std::sqrt(q);
    }
};

namespace detail {

inline double simpson(double a, double fa, double fm, double fb, double b) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

inline double adaptive_simpson(const std::function<double(double)>& f, double a,
                               double fa, double m, double fm, double b, double fb,
                               double whole, double tol, int depth) {
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double left = simpson(a, fa, flm, fm, m);
    double right = simpson(m, fm, frm, fb, b);
    double delta = left + right - whole;
    if (depth <= 0 || std::fabs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return adaptive_simpson(f, a, fa, lm, flm, m, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson(f, m, fm, rm, frm, b, fb, right, 0.5 * tol, depth - 1);
}

inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double tol) {
    if (a == b) return 0.0;
    double m = 0.5 * (a + b);
    double fa = f(a), fm = f(m), fb = f(b);
    double whole = simpson(a, fa, fm, fb, b);
    return adaptive_simpson(f, a, fa, m, fm, b, fb, whole, tol, 48);
}

}  // namespace detail

/// Arc length of the curve between two parameter values, by adaptive Simpson
/// quadrature on the speed.
inline double arc_length(const CurveOnSurface& c, double ta, double tb,
                         double tol = 1e-12) {
    return detail::integrate([&](double t) { return c.speed(t); }, ta, tb, tol);
}

/// Monotone parameter-to-arc-length table anchored at s(t0) = 0, with
/// quadrature-backed interpolation between nodes in both directions.
class ArcLengthMap {
public:
    ArcLengthMap(const CurveOnSurface& curve, double tol = 1e-12, int panels = 192)
        : speed_([curve](double t) { return c_speed(curve, t); }),
          tol_(tol) {
        double t0 = curve.t0, t1 = curve.t1;
        ts_.resize(panels + 1);
        ss_.resize(panels + 1);
        ss_[0] = 0.0;
        for (int i = 0; i <= panels; ++i)
            ts_[i] = t0 + (t1 - t0) * i / panels;
        double panel_tol = tol / panels;
        for (int i = 1; i <= panels; ++i)
            ss_[i] = ss_[i - 1] + detail::integrate(speed_, ts_[i - 1], ts_[i], panel_tol);
        for (int i = 1; i <= panels; ++i)
            if (!(ss_[i] > ss_[i - 1]))
                throw NonRegularCurve("arc length is not strictly increasing");
    }

    double t_min() const { return ts_.front(); }
    double t_max() const { return ts_.back(); }
    double total() const { return ss_.back(); }
    double tolerance() const { return tol_; }

    double s_of_t(double t) const {
        auto it = std::upper_bound(ts_.begin(), ts_.end(), t);
        int i = static_cast<int>(std::clamp<std::ptrdiff_t>(
            it - ts_.begin() - 1, 0, static_cast<std::ptrdiff_t>(ts_.size()) - 1));
        return ss_[i] + detail::integrate(speed_, ts_[i], t, tol_);
    }

    double t_of_s(double s) const {
        auto it = std::upper_bound(ss_.begin(), ss_.end(), s);
        int i = static_cast<int>(std::clamp<std::ptrdiff_t>(
            it - ss_.begin() - 1, 0, static_cast<std::ptrdiff_t>(ss_.size()) - 2));
        double lo = ts_[i], hi = ts_[i + 1];
        double slo = ss_[i] - s, shi = ss_[i + 1] - s;
        if (s <= ss_.front()) return ts_.front();
        if (s >= ss_.back()) return ts_.back();
        for (int iter = 0; iter < 80 && hi - lo > 1e-15 * (1.0 + std::fabs(hi)); ++iter) {
            double mid = 0.5 * (lo + hi);
            double smid = s_of_t(mid) - s;
            if ((smid <= 0) == (slo <= 0)) {
                lo = mid;
                slo = smid;
            } else {
                hi = mid;
                shi = smid;
            }
        }
        (void)shi;
        return 0.5 * (lo + hi);
    }

private:
    static double c_speed(const CurveOnSurface& c, double t) { return c.speed(t); }

    std::function<double(double)> speed_;
    std::vector<double> ts_, ss_;
    double tol_;
};

/// One point of the curve with everything the downstream invariants need:
/// position and frame as jets in arc length, and the three scalar invariants
/// as jets two orders deep beyond the requested order.
struct FrameSample {
    double s = 0.0;        ///< arc length from the interval's left endpoint
    double t_param = 0.0;  ///< original curve parameter
    int order = 0;         ///< requested jet order K

    JetVector gamma;   ///< order K+4
    JetVector t, n, b; ///< order K+3; <t,t>=1, <n,n>=-1, b = wedge(t,n)
    Jet kn, kg, tg;    ///< order K+2

    bool t_prime_regular = false;  ///< kappa_g^2 - kappa_n^2 bounded away from 0
    bool b_prime_regular = false;  ///< kappa_g^2 - tau_g^2 bounded away from 0

    FrameSample() : gamma(0), t(0), n(0), b(0), kn(0), kg(0), tg(0) {}
};

namespace detail {

inline FrameSample frame_at_impl(const CurveOnSurface& c, double t_param, int order,
                                 double s_value) {
    if (order < 1) throw OrderExceeded("frame order must be >= 1");
    const int N = order + 4;
    const double min_speed = 1e-8;
    const double spacelike_tol = 1e-9;

    Jet T = Jet::variable(N, t_param);
    std::map<std::string, Jet> tb{{"t", T}};
    Jet u1t = c.u1.eval(tb);
    Jet u2t = c.u2.eval(tb);
    if (!c.surface->contains(u1t[0], u2t[0], 1e-9))
        throw SceneError("curve leaves the surface domain at t = " + std::to_string(t_param));

    JetVector gamma_t = c.surface->position_jets(u1t, u2t);
    Jet speed_sq = pairing(series_derivative(gamma_t), series_derivative(gamma_t));
    if (speed_sq[0] < -min_speed * min_speed)
        throw NotSpacelikeHere("curve tangent is not spacelike at t = " + std::to_string(t_param));
    if (speed_sq[0] <= min_speed * min_speed)
        throw NonRegularCurve("curve speed below threshold at t = " + std::to_string(t_param));

    // local arc length about the base point, then the inverse series t(s)
    Jet sigma = series_antiderivative(sqrt(speed_sq));  // order N, sigma[0] = 0
    Jet tau = invert_series(sigma);

    Jet u1s = compose(u1t, tau);
    Jet u2s = compose(u2t, tau);

    FrameSample f;
    f.s = s_value;
    f.t_param = t_param;
    f.order = order;
    f.gamma = c.surface->position_jets(u1s, u2s);  // order N = K+4

    f.t = series_derivative(f.gamma);  // K+3

    JetVector a1 = c.surface->partial_u1_jets(u1s, u2s);
    JetVector a2 = c.surface->partial_u2_jets(u1s, u2s);
    JetVector w = wedge(a1, a2);
    Jet wq = -pairing(w, w);
    double wscale = euclidean_norm_sq(w.value());
    if (wscale == 0.0)
        throw DegenerateTangentPlane("tangent vectors are parallel at t = " +
                                     std::to_string(t_param));
    if (wq[0] <= spacelike_tol * wscale)
        throw NotSpacelikeHere("tangent plane is not spacelike at t = " +
                               std::to_string(t_param));
    JetVector n_full = w / sqrt(wq);
    if (n_full.x0[0] < 0.0) n_full = -n_full;

    f.n = n_full.truncated(order + 3);
    f.b = wedge(f.t, f.n);

    JetVector tp = series_derivative(f.t);   // K+2
    JetVector bp = series_derivative(f.b);   // K+2
    JetVector n2 = f.n.truncated(order + 2);
    JetVector b2 = f.b.truncated(order + 2);

    f.kn = -pairing(tp, n2);
    f.kg = pairing(tp, b2);
    f.tg = -pairing(bp, n2);

    const double reg_tol = 1e-10;
    double kg0 = f.kg[0], kn0 = f.kn[0], tg0 = f.tg[0];
    f.t_prime_regular = std::fabs(kg0 * kg0 - kn0 * kn0) > reg_tol;
    f.b_prime_regular = std::fabs(kg0 * kg0 - tg0 * tg0) > reg_tol;
    return f;
}

}  // namespace detail

/// Frame at one parameter value; the arc-length coordinate is integrated
/// from the interval's left endpoint on each call.
inline FrameSample frame_at(const CurveOnSurface& c, double t_param, int order = 7) {
    double s = arc_length(c, c.t0, t_param);
    return detail::frame_at_impl(c, t_param, order, s);
}

/// Frame at one parameter value with a prebuilt arc-length table.
inline FrameSample frame_at(const CurveOnSurface& c, const ArcLengthMap& map,
                            double t_param, int order = 7) {
    return detail::frame_at_impl(c, t_param, order, map.s_of_t(t_param));
}

/// n uniformly spaced samples (in the curve parameter, endpoints included).
inline std::vector<FrameSample> sample_frames(const CurveOnSurface& c, int n,
                                              int order = 7) {
    if (n < 2) throw SceneError("sample_frames needs at least two samples");
    ArcLengthMap map(c);
    std::vector<FrameSample> out;
    out.reserve(n);
    for (int i = 0; i < n; ++i) {
        double t = c.t0 + (c.t1 - c.t0) * i / (n - 1);
        out.push_back(frame_at(c, map, t, order));
    }
    return out;
}

/// Worst pointwise defect of the three frame derivative equations
/// t' = kn n + kg b,  n' = kn t + tg b,  b' = -kg t + tg n.
inline double frenet_residual(const FrameSample& f) {
    int m = f.order + 2;
    JetVector t = f.t.truncated(m), n = f.n.truncated(m), b = f.b.truncated(m);
    JetVector tp = series_derivative(f.t), np = series_derivative(f.n),
              bp = series_derivative(f.b);
    JetVector e1 = tp - (f.kn * n + f.kg * b);
    JetVector e2 = np - (f.kn * t + f.tg * b);
    JetVector e3 = bp - (-(f.kg) * t + f.tg * n);
    double r = 0.0;
    r = std::max(r, euclidean_norm(e1.value()));
    r = std::max(r, euclidean_norm(e2.value()));
    r = std::max(r, euclidean_norm(e3.value()));
    return r;
}

/// Six pseudo-orthonormality defects at the 0-jet against (1,-1,1,0,0,0).
inline double orthonormality_residual(const FrameSample& f) {
    MinkVector t = f.t.value(), n = f.n.value(), b = f.b.value();
    double r = 0.0;
    r = std::max(r, std::fabs(pairing(t, t) - 1.0));
    r = std::max(r, std::fabs(pairing(n, n) + 1.0));
    r = std::max(r, std::fabs(pairing(b, b) - 1.0));
    r = std::max(r, std::fabs(pairing(t, n)));
    r = std::max(r, std::fabs(pairing(t, b)));
    r = std::max(r, std::fabs(pairing(n, b)));
    return r;
}

struct GeometricClass {
    bool geodesic = false;    ///< kappa_g ~ 0
    bool asymptotic = false;  ///< kappa_n ~ 0
    bool principal = false;   ///< tau_g ~ 0
};

inline GeometricClass geometric_class(const FrameSample& f, double tol = 1e-9) {
    return {std::fabs(f.kg[0]) <= tol, std::fabs(f.kn[0]) <= tol,
            std::fabs(f.tg[0]) <= tol};
}

}  // namespace darboux
