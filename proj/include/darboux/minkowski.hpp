#pragma once

#include <cmath>
#include <ostream>

#include "darboux/errors.hpp"

// Linear algebra of R^3 with the signature (-,+,+): the pairing, the wedge
// product adapted to it, causal classification and the three unit
// pseudo-spheres.

namespace darboux {

struct MinkVector {
    double x0 = 0.0;
    double x1 = 0.0;
    double x2 = 0.0;

    friend MinkVector operator+(MinkVector a, MinkVector b) {
        return {a.x0 + b.x0, a.x1 + b.x1, a.x2 + b.x2};
    }
    friend MinkVector operator-(MinkVector a, MinkVector b) {
        return {a.x0 - b.x0, a.x1 - b.x1, a.x2 - b.x2};
    }
    friend MinkVector operator-(MinkVector a) { return {-a.x0, -a.x1, -a.x2}; }
    friend MinkVector operator*(double c, MinkVector a) {
        return {c * a.x0, c * a.x1, c * a.x2};
    }
    friend MinkVector operator*(MinkVector a, double c) { return c * a; }
    friend MinkVector operator/(MinkVector a, double c) {
        return {a.x0 / c, a.x1 / c, a.x2 / c};
    }

    bool finite() const {
        return std::isfinite(x0) && std::isfinite(x1) && std::isfinite(x2);
    }

    friend std::ostream& operator<<(std::ostream& os, MinkVector a) {
        return os << '(' << a.x0 << ", " << a.x1 << ", " << a.x2 << ')';
    }
};

inline constexpr MinkVector e0{1.0, 0.0, 0.0};
inline constexpr MinkVector e1{0.0, 1.0, 0.0};
inline constexpr MinkVector e2{0.0, 0.0, 1.0};

/// Signature (-,+,+) pairing.
inline double pairing(MinkVector a, MinkVector b) {
    return -a.x0 * b.x0 + a.x1 * b.x1 + a.x2 * b.x2;
}

/// Wedge product: <wedge(a,b), c> = det[a; b; c] convention adapted to the
/// pairing, so wedge(a,b) is pairing-orthogonal to both arguments.
/// wedge(e0,e1) = e2, wedge(e1,e2) = -e0.
inline MinkVector wedge(MinkVector a, MinkVector b) {
    return {-(a.x1 * b.x2 - a.x2 * b.x1),
            -(a.x0 * b.x2 - a.x2 * b.x0),
            a.x0 * b.x1 - a.x1 * b.x0};
}

/// sqrt(|<a,a>|); vanishes on lightlike vectors.
inline double norm(MinkVector a) { return std::sqrt(std::fabs(pairing(a, a))); }

inline double euclidean_norm_sq(MinkVector a) {
    return a.x0 * a.x0 + a.x1 * a.x1 + a.x2 * a.x2;
}

inline double euclidean_norm(MinkVector a) { return std::sqrt(euclidean_norm_sq(a)); }

enum class Causal { Spacelike, Timelike, Lightlike };

struct CausalCharacter {
    Causal kind;
    /// |<a,a>| relative to the Euclidean norm squared; how far the vector
    /// sits from the light cone at its own scale.
    double margin;
};

inline const char* to_string(Causal c) {
    switch (c) {
        case Causal::Spacelike: return "spacelike";
        case Causal::Timelike: return "timelike";
        case Causal::Lightlike: return "lightlike";
    }
    return "?";
}

/// Classify a nonzero vector by the sign of <a,a>.  Lightlike is a band
/// verdict: |<a,a>| <= tol * |a|_euclid^2, never an exact-zero test.
inline CausalCharacter causal_character(MinkVector a, double tol = 1e-9) {
    if (!a.finite()) throw DomainError("causal_character: non-finite input");
    double e2n = euclidean_norm_sq(a);
    if (e2n == 0.0) throw ZeroVector();
    double q = pairing(a, a);
    double margin = std::fabs(q) / e2n;
    if (margin <= tol) return {Causal::Lightlike, margin};
    return {q > 0 ? Causal::Spacelike : Causal::Timelike, margin};
}

enum class PseudoSphere {
    Hyperbolic,  ///< <x,x> = -1 (both sheets)
    DeSitter,    ///< <x,x> = +1
    Lightcone    ///< <x,x> =  0, x != 0
};

inline const char* to_string(PseudoSphere s) {
    switch (s) {
        case PseudoSphere::Hyperbolic: return "hyperbolic";
        case PseudoSphere::DeSitter: return "de Sitter";
        case PseudoSphere::Lightcone: return "lightcone";
    }
    return "?";
}

/// Signed defect of the defining equation, relative to the Euclidean scale
/// of the vector: 0 exactly on the sphere.
inline double sphere_residual(MinkVector a, PseudoSphere s) {
    double q = pairing(a, a);
    double scale = 1.0 + euclidean_norm_sq(a);
    switch (s) {
        case PseudoSphere::Hyperbolic: return (q + 1.0) / scale;
        case PseudoSphere::DeSitter: return (q - 1.0) / scale;
        case PseudoSphere::Lightcone: return q / scale;
    }
    return 0.0;
}

inline bool on_pseudo_sphere(MinkVector a, PseudoSphere s, double tol = 1e-9) {
    if (!a.finite()) throw DomainError("on_pseudo_sphere: non-finite input");
    if (s == PseudoSphere::Lightcone && euclidean_norm_sq(a) == 0.0) return false;
    return std::fabs(sphere_residual(a, s)) <= tol;
}

/// A timelike vector points to the future iff <a, e0> < 0, i.e. a0 > 0.
inline bool is_future_directed(MinkVector a, double tol = 1e-9) {
    if (causal_character(a, tol).kind != Causal::Timelike)
        throw NotTimelike("is_future_directed: vector is not timelike");
    return a.x0 > 0.0;
}

/// Plane P(v,c) = { x : <x,v> = c } with pseudo-normal v.
struct MinkPlane {
    MinkVector v;
    double c = 0.0;

    MinkPlane(MinkVector normal, double offset) : v(normal), c(offset) {
        if (euclidean_norm_sq(normal) == 0.0)
            throw ZeroVector();
    }

    bool contains(MinkVector x, double tol = 1e-9) const {
        return std::fabs(pairing(x, v) - c) <= tol * (1.0 + euclidean_norm(x) * euclidean_norm(v));
    }
};

}  // namespace darboux
