#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <string_view>

#include "darboux/curve_frame.hpp"

// The five pseudo-spherical image curves attached to a curve on a spacelike
// surface, the scalar invariant delta of each, and the unit direction fields
// that their derivatives align with.

namespace darboux {

enum class ImageKind {
    RectTimelike,   ///< (tg t - kg n)/sqrt(kg^2 - tg^2), lands in H^2
    RectSpacelike,  ///< (tg t - kg n)/sqrt(tg^2 - kg^2), lands in S^2_1
    RectLightlike,  ///< RectTimelike + b, lands in the light cone
    OscSpacelike,   ///< (tg t - kn b)/sqrt(kn^2 + tg^2), lands in S^2_1
    OscLightlike    ///< OscSpacelike + n, lands in the light cone
};

inline constexpr std::array<ImageKind, 5> all_image_kinds{
    ImageKind::RectTimelike, ImageKind::RectSpacelike, ImageKind::RectLightlike,
    ImageKind::OscSpacelike, ImageKind::OscLightlike};

inline std::string_view kind_code(ImageKind k) {
    switch (k) {
        case ImageKind::RectTimelike: return "Tr";
        case ImageKind::RectSpacelike: return "Sr";
        case ImageKind::RectLightlike: return "Lr";
        case ImageKind::OscSpacelike: return "So";
        case ImageKind::OscLightlike: return "Lo";
    }
    return "??";
}

inline std::string_view kind_name(ImageKind k) {
    switch (k) {
        case ImageKind::RectTimelike: return "rect-timelike";
        case ImageKind::RectSpacelike: return "rect-spacelike";
        case ImageKind::RectLightlike: return "rect-lightlike";
        case ImageKind::OscSpacelike: return "osc-spacelike";
        case ImageKind::OscLightlike: return "osc-lightlike";
    }
    return "unknown";
}

inline std::optional<ImageKind> kind_from_code(std::string_view code) {
    for (ImageKind k : all_image_kinds)
        if (code == kind_code(k)) return k;
    return std::nullopt;
}

inline PseudoSphere target_sphere(ImageKind k) {
    switch (k) {
        case ImageKind::RectTimelike: return PseudoSphere::Hyperbolic;
        case ImageKind::RectSpacelike: return PseudoSphere::DeSitter;
        case ImageKind::RectLightlike: return PseudoSphere::Lightcone;
        case ImageKind::OscSpacelike: return PseudoSphere::DeSitter;
        case ImageKind::OscLightlike: return PseudoSphere::Lightcone;
    }
    return PseudoSphere::Lightcone;
}

struct DomainVerdict {
    ImageKind kind;
    bool satisfied;
    double margin;  ///< signed value of the defining inequality
};

inline constexpr double kDomainMarginThreshold = 1e-10;

/// Signed guard of each image: rect kinds need kg^2 - tg^2 of the right sign,
/// osc kinds need (kn, tg) != (0, 0).
inline DomainVerdict domain_predicate(ImageKind k, const FrameSample& f) {
    double kn = f.kn[0], kg = f.kg[0], tg = f.tg[0];
    double margin = 0.0;
    switch (k) {
        case ImageKind::RectTimelike:
        case ImageKind::RectLightlike: margin = kg * kg - tg * tg; break;
        case ImageKind::RectSpacelike: margin = tg * tg - kg * kg; break;
        case ImageKind::OscSpacelike:
        case ImageKind::OscLightlike: margin = kn * kn + tg * tg; break;
    }
    return {k, margin > kDomainMarginThreshold, margin};
}

namespace detail {

inline void require_domain(ImageKind k, const FrameSample& f) {
    DomainVerdict v = domain_predicate(k, f);
    if (!v.satisfied)
        throw DomainViolation(std::string(kind_name(k)) + " image undefined: margin " +
                              std::to_string(v.margin) + " at s = " +
                              std::to_string(f.s));
}

}  // namespace detail

/// The image curve as a jet of order K+2 about the sample.
inline JetVector image(ImageKind k, const FrameSample& f) {
    detail::require_domain(k, f);
    int m = f.order + 2;
    JetVector t = f.t.truncated(m), n = f.n.truncated(m), b = f.b.truncated(m);
    switch (k) {
        case ImageKind::RectTimelike:
            return (f.tg * t - f.kg * n) / sqrt(f.kg * f.kg - f.tg * f.tg);
        case ImageKind::RectSpacelike:
            return (f.tg * t - f.kg * n) / sqrt(f.tg * f.tg - f.kg * f.kg);
        case ImageKind::RectLightlike:
            return (f.tg * t - f.kg * n) / sqrt(f.kg * f.kg - f.tg * f.tg) + b;
        case ImageKind::OscSpacelike:
            return (f.tg * t - f.kn * b) / sqrt(f.kn * f.kn + f.tg * f.tg);
        case ImageKind::OscLightlike:
            return (f.tg * t - f.kn * b) / sqrt(f.kn * f.kn + f.tg * f.tg) + n;
    }
    throw DomainViolation("unknown image kind");
}

/// The scalar invariant of the image as a jet of order K+1; its zeros are the
/// image's singular points and its derivative classifies them.
inline Jet delta(ImageKind k, const FrameSample& f) {
    detail::require_domain(k, f);
    int m = f.order + 1;
    Jet kn = f.kn.truncated(m), kg = f.kg.truncated(m), tg = f.tg.truncated(m);
    Jet knp = series_derivative(f.kn), kgp = series_derivative(f.kg),
        tgp = series_derivative(f.tg);
    switch (k) {
        case ImageKind::RectTimelike:
        case ImageKind::RectSpacelike:
            return kn - (kg * tgp - kgp * tg) / (kg * kg - tg * tg);
        case ImageKind::RectLightlike:
            return kn - (kg * tgp - kgp * tg) / (kg * kg - tg * tg) +
                   sqrt(kg * kg - tg * tg);
        case ImageKind::OscSpacelike:
            return kg + (kn * tgp - knp * tg) / (kn * kn + tg * tg);
        case ImageKind::OscLightlike:
            return kg + (kn * tgp - knp * tg) / (kn * kn + tg * tg) +
                   sqrt(kn * kn + tg * tg);
    }
    throw DomainViolation("unknown image kind");
}

enum class DirectionField { T_t, T_n, T_b };

/// Unit field along the curve: the named frame derivative normalized by the
/// actual pseudo-norm of that derivative. Jet order K+2.
inline JetVector direction_field(DirectionField which, const FrameSample& f) {
    JetVector d(0);
    const char* label = "";
    switch (which) {
        case DirectionField::T_t: d = series_derivative(f.t); label = "t'"; break;
        case DirectionField::T_n: d = series_derivative(f.n); label = "n'"; break;
        case DirectionField::T_b: d = series_derivative(f.b); label = "b'"; break;
    }
    Jet q = pairing(d, d);
    if (std::fabs(q[0]) <= kDomainMarginThreshold)
        throw DegenerateDerivative(std::string(label) +
                                   " is lightlike or vanishes at s = " +
                                   std::to_string(f.s));
    return d / sqrt(q[0] > 0 ? q : -q);
}

/// Field that the image derivative is proportional to.
inline DirectionField matched_field(ImageKind k) {
    switch (k) {
        case ImageKind::RectTimelike:
        case ImageKind::RectSpacelike:
        case ImageKind::RectLightlike: return DirectionField::T_b;
        case ImageKind::OscSpacelike:
        case ImageKind::OscLightlike: return DirectionField::T_n;
    }
    return DirectionField::T_b;
}

/// Pointwise defect of (image)' = delta * matched unit field.
inline double derivative_identity_residual(ImageKind k, const FrameSample& f) {
    JetVector imgp = series_derivative(image(k, f));
    Jet d = delta(k, f);
    JetVector field = direction_field(matched_field(k), f).truncated(f.order + 1);
    return euclidean_norm((imgp - d * field).value());
}

}  // namespace darboux
