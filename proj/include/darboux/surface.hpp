#pragma once

#include <array>
#include <string>

#include "darboux/expr.hpp"
#include "darboux/jet.hpp"
#include "darboux/minkowski.hpp"

// A surface patch X(u1,u2) in R^3_1 whose tangent planes must be spacelike.
// Partial derivatives are symbolic ASTs fixed at construction; the unit
// normal is timelike and returned future-directed regardless of the raw
// wedge orientation.

namespace darboux {

struct NormalSample {
    MinkVector n;
    bool flipped;         ///< raw wedge pointed to the past and was negated
    double wedge_margin;  ///< -<w,w> relative to the Euclidean scale of w
};

struct SpacelikeReport {
    bool pass = true;
    double worst_margin = 1e300;
    double worst_u1 = 0.0, worst_u2 = 0.0;
    int samples = 0;
    int failures = 0;
};

class SurfacePatch {
public:
    SurfacePatch(Expr x0, Expr x1, Expr x2,
                 double u1min, double u1max, double u2min, double u2max)
        : x_{std::move(x0), std::move(x1), std::move(x2)},
          u1min_(u1min), u1max_(u1max), u2min_(u2min), u2max_(u2max) {
        if (!(u1min_ < u1max_) || !(u2min_ < u2max_))
            throw SceneError("surface domain must be a nonempty rectangle");
        for (int i = 0; i < 3; ++i) {
            xu1_[i] = x_[i].diff("u1");
            xu2_[i] = x_[i].diff("u2");
        }
    }

    const std::array<Expr, 3>& components() const { return x_; }
    double u1min() const { return u1min_; }
    double u1max() const { return u1max_; }
    double u2min() const { return u2min_; }
    double u2max() const { return u2max_; }

    bool contains(double u1, double u2, double slack = 0.0) const {
        return u1 >= u1min_ - slack && u1 <= u1max_ + slack &&
               u2 >= u2min_ - slack && u2 <= u2max_ + slack;
    }

    /// Position as a jet vector from jet-valued surface parameters.
    JetVector position_jets(const Jet& u1, const Jet& u2) const {
        return eval3(x_, u1, u2);
    }

    JetVector partial_u1_jets(const Jet& u1, const Jet& u2) const {
        return eval3(xu1_, u1, u2);
    }

    JetVector partial_u2_jets(const Jet& u1, const Jet& u2) const {
        return eval3(xu2_, u1, u2);
    }

    MinkVector position(double u1, double u2) const {
        return position_jets(Jet::constant(0, u1), Jet::constant(0, u2)).value();
    }

    /// Future-directed unit normal with orientation bookkeeping.
    NormalSample normal_sample(double u1, double u2, double tol = 1e-9) const {
        Jet ju1 = Jet::constant(0, u1), ju2 = Jet::constant(0, u2);
        MinkVector a = partial_u1_jets(ju1, ju2).value();
        MinkVector b = partial_u2_jets(ju1, ju2).value();
        MinkVector w = wedge(a, b);
        double wsq = euclidean_norm_sq(w);
        if (wsq <= tol * tol * euclidean_norm_sq(a) * euclidean_norm_sq(b))
            throw DegenerateTangentPlane("normal_at: X_u1 and X_u2 are parallel at ("
                                         + std::to_string(u1) + ", " + std::to_string(u2) + ")");
        double q = pairing(w, w);
        double margin = -q / wsq;
        if (margin <= tol || pairing(a, a) <= 0.0 || pairing(b, b) <= 0.0)
            throw NotSpacelikeHere("normal_at: tangent plane is not spacelike at ("
                                   + std::to_string(u1) + ", " + std::to_string(u2) + ")");
        MinkVector n = w / std::sqrt(-q);
        bool flipped = n.x0 < 0.0;
        if (flipped) n = -n;
        return {n, flipped, margin};
    }

    MinkVector normal_at(double u1, double u2, double tol = 1e-9) const {
        return normal_sample(u1, u2, tol).n;
    }

    /// Worst spacelikeness margin over an n1 x n2 sampling grid.  The margin
    /// at a sample is the smallest of the three relative quantities
    /// <X_u1,X_u1>/|X_u1|^2, <X_u2,X_u2>/|X_u2|^2 and -<w,w>/|w|^2; a
    /// spacelike embedding keeps all three positive.
    SpacelikeReport validate_spacelike(int n1 = 64, int n2 = 64, double tol = 1e-9) const {
        SpacelikeReport rep;
        for (int i = 0; i < n1; ++i) {
            double u1 = u1min_ + (u1max_ - u1min_) * i / (n1 - 1);
            for (int j = 0; j < n2; ++j) {
                double u2 = u2min_ + (u2max_ - u2min_) * j / (n2 - 1);
                Jet ju1 = Jet::constant(0, u1), ju2 = Jet::constant(0, u2);
                MinkVector a = partial_u1_jets(ju1, ju2).value();
                MinkVector b = partial_u2_jets(ju1, ju2).value();
                MinkVector w = wedge(a, b);
                double margin = 1e300;
                double ea = euclidean_norm_sq(a), eb = euclidean_norm_sq(b),
                       ew = euclidean_norm_sq(w);
                margin = std::min(margin, ea > 0 ? pairing(a, a) / ea : -1.0);
                margin = std::min(margin, eb > 0 ? pairing(b, b) / eb : -1.0);
                margin = std::min(margin, ew > 0 ? -pairing(w, w) / ew : -1.0);
                ++rep.samples;
                if (margin < rep.worst_margin) {
                    rep.worst_margin = margin;
                    rep.worst_u1 = u1;
                    rep.worst_u2 = u2;
                }
                if (margin <= tol) {
                    rep.pass = false;
                    ++rep.failures;
                }
            }
        }
        return rep;
    }

private:
    static JetVector eval3(const std::array<Expr, 3>& f, const Jet& u1, const Jet& u2) {
        std::map<std::string, Jet> b{{"u1", u1}, {"u2", u2}};
        return {f[0].eval(b), f[1].eval(b), f[2].eval(b)};
    }

    std::array<Expr, 3> x_;
    std::array<Expr, 3> xu1_, xu2_;
    double u1min_, u1max_, u2min_, u2max_;
};

}  // namespace darboux
