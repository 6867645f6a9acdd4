#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "darboux/images.hpp"

// Root finding and classification on the delta invariants (cusp detection),
// height-function derivative checks, duality pairings between a frame vector
// and an image curve, and the constancy / planar-slice verdict.

namespace darboux {

enum class SingularClass { Cusp, Degenerate };

struct SingularPoint {
    ImageKind kind;
    double s0 = 0.0;                 ///< arc length of the refined root
    double t0 = 0.0;                 ///< curve parameter of the refined root
    SingularClass classification = SingularClass::Degenerate;
    double delta0 = 0.0;             ///< delta at the root (the residual's sign)
    double delta1 = 0.0;             ///< delta' at the root
    double s_lo = 0.0, s_hi = 0.0;   ///< refined bracket, in arc length
    double residual = 0.0;           ///< |delta(s0)|
};

struct SingularityScan {
    ImageKind kind;
    std::vector<SingularPoint> points;
    /// arc-length sub-intervals where the image's guard fails
    std::vector<std::pair<double, double>> excluded;
    /// delta vanished at every admissible grid node: a curve of singular
    /// points, not a point list
    bool identically_zero = false;
    int grid_n = 0;
    int admissible_nodes = 0;
};

inline constexpr double kRootWidthTol = 1e-12;       ///< bracket width in s
inline constexpr double kTangentialZeroTol = 1e-9;   ///< |delta| for flat zeros

/// Scale-aware simple-root test: |delta'| > 1e-8 * (1 + |delta''|).
inline bool is_simple_root(double delta1, double delta2) {
    return std::fabs(delta1) > 1e-8 * (1.0 + std::fabs(delta2));
}

namespace detail {

struct GridNode {
    double t = 0.0, s = 0.0;
    bool valid = false;
    double d = 0.0;
};

inline SingularPoint make_point(ImageKind kind, const CurveOnSurface& c,
                                const ArcLengthMap& map, double t, double t_lo,
                                double t_hi, int order) {
    FrameSample f = frame_at(c, map, t, order);
    Jet d = delta(kind, f);
    SingularPoint p;
    p.kind = kind;
    p.t0 = t;
    p.s0 = map.s_of_t(t);
    p.delta0 = d[0];
    p.delta1 = derivative(d, 1);
    double delta2 = derivative(d, 2);
    p.classification = is_simple_root(p.delta1, delta2) ? SingularClass::Cusp
                                                        : SingularClass::Degenerate;
    p.s_lo = map.s_of_t(t_lo);
    p.s_hi = map.s_of_t(t_hi);
    p.residual = std::fabs(p.delta0);
    return p;
}

}  // namespace detail

/// Scan [t_lo, t_hi] on a uniform grid for zeros of delta, refine each sign
/// change by bisection until the bracket is under kRootWidthTol in arc
/// length, and classify every root. Guard-violating sub-intervals are
/// excluded and reported, never fatal.
inline SingularityScan find_singularities(const CurveOnSurface& c, ImageKind kind,
                                          double t_lo, double t_hi,
                                          int grid_n = 2048, int order = 7) {
    if (order < 5)
        throw OrderExceeded("singularity classification needs jet order >= 5");
    if (!(t_lo < t_hi)) throw SceneError("singularity scan interval is empty");
    if (grid_n < 8) throw SceneError("singularity grid too coarse");

    ArcLengthMap map(c);
    SingularityScan scan;
    scan.kind = kind;
    scan.grid_n = grid_n;

    std::vector<detail::GridNode> nodes(grid_n);
    for (int i = 0; i < grid_n; ++i) {
        detail::GridNode& nd = nodes[i];
        nd.t = t_lo + (t_hi - t_lo) * i / (grid_n - 1);
        nd.s = map.s_of_t(nd.t);
        FrameSample f = frame_at(c, map, nd.t, order);
        if (domain_predicate(kind, f).satisfied) {
            nd.valid = true;
            nd.d = delta(kind, f)[0];
            ++scan.admissible_nodes;
        }
    }

    // report guard failures as excluded arc-length ranges
    for (int i = 0; i < grid_n;) {
        if (nodes[i].valid) {
            ++i;
            continue;
        }
        int j = i;
        while (j + 1 < grid_n && !nodes[j + 1].valid) ++j;
        scan.excluded.emplace_back(nodes[i].s, nodes[j].s);
        i = j + 1;
    }

    if (scan.admissible_nodes == 0) return scan;

    // a delta that vanishes everywhere admissible is a different verdict,
    // not a list of roots
    bool all_zero = true;
    for (const auto& nd : nodes)
        if (nd.valid && std::fabs(nd.d) > kTangentialZeroTol) all_zero = false;
    if (all_zero) {
        scan.identically_zero = true;
        return scan;
    }

    // simple sign changes between adjacent admissible nodes
    std::vector<int> root_cells;
    for (int i = 0; i + 1 < grid_n; ++i) {
        if (!nodes[i].valid || !nodes[i + 1].valid) continue;
        if (nodes[i].d == 0.0) continue;  // handled as an exact hit below
        if (nodes[i].d * nodes[i + 1].d < 0.0) root_cells.push_back(i);
    }
    for (int i : root_cells) {
        double ta = nodes[i].t, tb = nodes[i + 1].t;
        double da = nodes[i].d;
        for (int iter = 0; iter < 200 && map.s_of_t(tb) - map.s_of_t(ta) >= kRootWidthTol;
             ++iter) {
            double tm = 0.5 * (ta + tb);
            double dm = delta(kind, frame_at(c, map, tm, order))[0];
            if (dm == 0.0) {
                ta = tb = tm;
                break;
            }
            if ((dm < 0.0) == (da < 0.0)) {
                ta = tm;
                da = dm;
            } else {
                tb = tm;
            }
        }
        scan.points.push_back(
            detail::make_point(kind, c, map, 0.5 * (ta + tb), ta, tb, order));
    }

    // exact zeros on grid nodes
    for (int i = 0; i < grid_n; ++i) {
        if (!nodes[i].valid || nodes[i].d != 0.0) continue;
        double ta = nodes[std::max(i - 1, 0)].t, tb = nodes[std::min(i + 1, grid_n - 1)].t;
        scan.points.push_back(detail::make_point(kind, c, map, nodes[i].t, ta, tb, order));
    }

    // tangential zeros: |delta| dips under tolerance without changing sign;
    // report the dip's deepest node as Degenerate
    double cell = (t_hi - t_lo) / (grid_n - 1);
    auto near_existing = [&](double t) {
        for (const auto& p : scan.points)
            if (std::fabs(p.t0 - t) <= 1.5 * cell) return true;
        return false;
    };
    for (int i = 0; i < grid_n;) {
        if (!nodes[i].valid || std::fabs(nodes[i].d) >= kTangentialZeroTol ||
            nodes[i].d == 0.0) {
            ++i;
            continue;
        }
        int best = i, j = i;
        while (j + 1 < grid_n && nodes[j + 1].valid &&
               std::fabs(nodes[j + 1].d) < kTangentialZeroTol && nodes[j + 1].d != 0.0) {
            ++j;
            if (std::fabs(nodes[j].d) < std::fabs(nodes[best].d)) best = j;
        }
        if (!near_existing(nodes[best].t)) {
            double ta = nodes[std::max(best - 1, 0)].t;
            double tb = nodes[std::min(best + 1, grid_n - 1)].t;
            SingularPoint p = detail::make_point(kind, c, map, nodes[best].t, ta, tb, order);
            p.classification = SingularClass::Degenerate;  // no sign change seen
            scan.points.push_back(p);
        }
        i = j + 1;
    }

    std::sort(scan.points.begin(), scan.points.end(),
              [](const SingularPoint& a, const SingularPoint& b) { return a.s0 < b.s0; });
    return scan;
}

// ---------------------------------------------------------------------------

/// One evaluation of a height function h_v and its first three arc-length
/// derivatives. The family shares its tag with the image kind whose target
/// sphere parametrizes v.
struct HeightEvaluation {
    ImageKind family;
    double s = 0.0;
    MinkVector v;
    double h = 0.0, h1 = 0.0, h2 = 0.0, h3 = 0.0;
};

inline HeightEvaluation height_eval(const CurveOnSurface& c, const ArcLengthMap& map,
                                    ImageKind family, double s, MinkVector v,
                                    int order = 7) {
    if (!on_pseudo_sphere(v, target_sphere(family), 1e-9))
        throw VNotOnSphere("height parameter v is not on the " +
                           std::string(to_string(target_sphere(family))));
    FrameSample f = frame_at(c, map, map.t_of_s(s), order);
    bool rect = family == ImageKind::RectTimelike ||
                family == ImageKind::RectSpacelike ||
                family == ImageKind::RectLightlike;
    const JetVector& w = rect ? f.b : f.n;
    Jet h = pairing(w, JetVector::constant(w.order(), v));
    if (family == ImageKind::RectLightlike) h = h - 1.0;
    if (family == ImageKind::OscLightlike) h = h + 1.0;
    HeightEvaluation out;
    out.family = family;
    out.s = s;
    out.v = v;
    out.h = h[0];
    out.h1 = derivative(h, 1);
    out.h2 = derivative(h, 2);
    out.h3 = derivative(h, 3);
    return out;
}

inline HeightEvaluation height_eval(const CurveOnSurface& c, ImageKind family,
                                    double s, MinkVector v, int order = 7) {
    return height_eval(c, ArcLengthMap(c), family, s, v, order);
}

// ---------------------------------------------------------------------------

/// Pairing + isotropy residuals for one of the five dual-pair statements:
/// 1: (n, osc-spacelike, 0)   2: (n, osc-lightlike, -1)
/// 3: (b, rect-timelike, 0)   4: (b, rect-lightlike, +1)
/// 5: (b, rect-spacelike, 0)
struct DualityReport {
    int statement = 0;
    ImageKind kind = ImageKind::RectTimelike;
    double required_constant = 0.0;
    double worst_pairing = 0.0;   ///< max |<v, w> - required|
    double worst_isotropy = 0.0;  ///< max |<v', w>|
    int checked = 0;
    int skipped = 0;  ///< samples where the image's guard fails
};

inline ImageKind duality_partner_kind(int statement) {
    switch (statement) {
        case 1: return ImageKind::OscSpacelike;
        case 2: return ImageKind::OscLightlike;
        case 3: return ImageKind::RectTimelike;
        case 4: return ImageKind::RectLightlike;
        case 5: return ImageKind::RectSpacelike;
    }
    throw SceneError("duality statement must be 1..5");
}

inline double duality_constant(int statement) {
    switch (statement) {
        case 1: return 0.0;
        case 2: return -1.0;
        case 3: return 0.0;
        case 4: return 1.0;
        case 5: return 0.0;
    }
    throw SceneError("duality statement must be 1..5");
}

inline DualityReport verify_duality(const CurveOnSurface& c, int statement,
                                    int samples = 64, int order = 7) {
    DualityReport rep;
    rep.statement = statement;
    rep.kind = duality_partner_kind(statement);
    rep.required_constant = duality_constant(statement);
    bool use_n = statement <= 2;

    ArcLengthMap map(c);
    for (int i = 0; i < samples; ++i) {
        double t = c.t0 + (c.t1 - c.t0) * i / (samples - 1);
        FrameSample f = frame_at(c, map, t, order);
        if (!domain_predicate(rep.kind, f).satisfied) {
            ++rep.skipped;
            continue;
        }
        JetVector img = image(rep.kind, f);
        const JetVector& vfull = use_n ? f.n : f.b;
        double pair0 = pairing(vfull.value(), img.value());
        double iso0 = pairing(series_derivative(vfull).value(), img.value());
        rep.worst_pairing =
            std::max(rep.worst_pairing, std::fabs(pair0 - rep.required_constant));
        rep.worst_isotropy = std::max(rep.worst_isotropy, std::fabs(iso0));
        ++rep.checked;
    }
    return rep;
}

// ---------------------------------------------------------------------------

/// Constancy measurements for one image kind over the whole interval:
/// distance of the image from its midpoint value, size of delta, and how
/// exactly the dual frame vector stays on the plane <w, v*> = c* (the slice
/// that cuts the partner's locus out of its pseudo-sphere).
struct ConstancyVerdict {
    ImageKind kind;
    int samples = 0;
    MinkVector reference;            ///< image at the middle sample
    double s_mid = 0.0;
    double image_residual = 0.0;     ///< max ||image(s) - reference||
    double delta_residual = 0.0;     ///< max |delta(s)|
    double planarity_residual = 0.0; ///< max |<w(s), reference> - c*|
};

inline double slice_constant(ImageKind k) {
    switch (k) {
        case ImageKind::RectTimelike: return 0.0;
        case ImageKind::RectSpacelike: return 0.0;
        case ImageKind::RectLightlike: return 1.0;
        case ImageKind::OscSpacelike: return 0.0;
        case ImageKind::OscLightlike: return -1.0;
    }
    return 0.0;
}

inline ConstancyVerdict constancy_check(const CurveOnSurface& c, ImageKind kind,
                                        int samples = 64, int order = 7) {
    if (samples < 3) throw SceneError("constancy check needs at least 3 samples");
    ArcLengthMap map(c);
    bool rect = kind == ImageKind::RectTimelike || kind == ImageKind::RectSpacelike ||
                kind == ImageKind::RectLightlike;

    std::vector<FrameSample> frames;
    frames.reserve(samples);
    for (int i = 0; i < samples; ++i) {
        double t = c.t0 + (c.t1 - c.t0) * i / (samples - 1);
        FrameSample f = frame_at(c, map, t, order);
        DomainVerdict v = domain_predicate(kind, f);
        if (!v.satisfied)
            throw DomainViolation(std::string(kind_name(kind)) +
                                  " guard fails at t = " + std::to_string(t) +
                                  " (margin " + std::to_string(v.margin) + ")");
        frames.push_back(std::move(f));
    }

    ConstancyVerdict out;
    out.kind = kind;
    out.samples = samples;
    const FrameSample& mid = frames[samples / 2];
    out.reference = image(kind, mid).value();
    out.s_mid = mid.s;
    double cstar = slice_constant(kind);
    for (const FrameSample& f : frames) {
        MinkVector img = image(kind, f).value();
        double d0 = delta(kind, f)[0];
        MinkVector w = rect ? f.b.value() : f.n.value();
        out.image_residual = std::max(out.image_residual, euclidean_norm(img - out.reference));
        out.delta_residual = std::max(out.delta_residual, std::fabs(d0));
        out.planarity_residual =
            std::max(out.planarity_residual, std::fabs(pairing(w, out.reference) - cstar));
    }
    return out;
}

}  // namespace darboux
