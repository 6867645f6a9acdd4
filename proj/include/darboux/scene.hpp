#pragma once

#include <cmath>
#include <fstream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "darboux/curve_frame.hpp"
#include "darboux/emit.hpp"

// Scene files (JSON with expression strings), load-time validation, and the
// built-in catalog of worked examples with adjustable parameters.

namespace darboux {

struct SceneOptions {
    int jet_order = 7;
    int samples = 64;
    double spacelike_tol = 1e-9;   ///< surface validation on load
    double arc_length_tol = 1e-12; ///< quadrature target
};

struct Scene {
    std::string name;
    CurveOnSurface curve;
    SceneOptions options;

    const SurfacePatch& surface() const { return *curve.surface; }
};

namespace detail {

using nlohmann::json;

inline const json& member(const json& j, const char* key, const std::string& path) {
    if (!j.is_object())
        throw SceneError("scene: " + path + " must be an object");
    auto it = j.find(key);
    if (it == j.end())
        throw SceneError("scene: missing key " + path + "." + key);
    return *it;
}

inline std::string str_member(const json& j, const char* key, const std::string& path) {
    const json& v = member(j, key, path);
    if (!v.is_string())
        throw SceneError("scene: " + path + "." + key + " must be a string");
    return v.get<std::string>();
}

inline double num_member(const json& j, const char* key, const std::string& path) {
    const json& v = member(j, key, path);
    if (!v.is_number())
        throw SceneError("scene: " + path + "." + key + " must be a number");
    return v.get<double>();
}

inline std::pair<double, double> interval2(const json& v, const std::string& path) {
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
        throw SceneError("scene: " + path + " must be [lo, hi]");
    return {v[0].get<double>(), v[1].get<double>()};
}

inline void reject_unknown(const json& j, std::initializer_list<const char*> allowed,
                           const std::string& path) {
    if (!j.is_object()) return;
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* a : allowed)
            if (it.key() == a) ok = true;
        if (!ok) throw SceneError("scene: unknown key " + path + "." + it.key());
    }
}

}  // namespace detail

/// Build a scene from parsed JSON. Expressions are parsed immediately
/// (ParseError propagates), and the surface is grid-validated as spacelike
/// unless validate is false.
inline Scene load_scene_json(const nlohmann::json& j, bool validate = true) {
    using detail::member;
    detail::reject_unknown(j, {"name", "surface", "curve", "options"}, "$");

    const auto& surf = member(j, "surface", "$");
    detail::reject_unknown(surf, {"x0", "x1", "x2", "domain"}, "$.surface");
    Expr x0 = parse_expr(detail::str_member(surf, "x0", "$.surface"));
    Expr x1 = parse_expr(detail::str_member(surf, "x1", "$.surface"));
    Expr x2 = parse_expr(detail::str_member(surf, "x2", "$.surface"));
    const auto& dom = member(surf, "domain", "$.surface");
    if (!dom.is_array() || dom.size() != 2)
        throw SceneError("scene: $.surface.domain must be [[u1min,u1max],[u2min,u2max]]");
    auto [u1min, u1max] = detail::interval2(dom[0], "$.surface.domain[0]");
    auto [u2min, u2max] = detail::interval2(dom[1], "$.surface.domain[1]");

    const auto& curve = member(j, "curve", "$");
    detail::reject_unknown(curve, {"u1", "u2", "interval"}, "$.curve");
    Expr cu1 = parse_expr(detail::str_member(curve, "u1", "$.curve"));
    Expr cu2 = parse_expr(detail::str_member(curve, "u2", "$.curve"));
    auto [t0, t1] = detail::interval2(member(curve, "interval", "$.curve"), "$.curve.interval");

    SceneOptions opt;
    if (auto it = j.find("options"); it != j.end()) {
        const auto& o = *it;
        detail::reject_unknown(o, {"jet_order", "samples", "tolerances"}, "$.options");
        if (o.contains("jet_order")) {
            opt.jet_order = static_cast<int>(detail::num_member(o, "jet_order", "$.options"));
            if (opt.jet_order < 1 || opt.jet_order > 32)
                throw SceneError("scene: $.options.jet_order must be in 1..32");
        }
        if (o.contains("samples")) {
            opt.samples = static_cast<int>(detail::num_member(o, "samples", "$.options"));
            if (opt.samples < 2 || opt.samples > 1000000)
                throw SceneError("scene: $.options.samples must be in 2..1000000");
        }
        if (o.contains("tolerances")) {
            const auto& t = o.at("tolerances");
            detail::reject_unknown(t, {"spacelike", "arc_length"}, "$.options.tolerances");
            if (t.contains("spacelike"))
                opt.spacelike_tol = detail::num_member(t, "spacelike", "$.options.tolerances");
            if (t.contains("arc_length"))
                opt.arc_length_tol = detail::num_member(t, "arc_length", "$.options.tolerances");
            if (!(opt.spacelike_tol > 0) || !(opt.arc_length_tol > 0))
                throw SceneError("scene: tolerances must be positive");
        }
    }

    std::string name;
    if (auto it = j.find("name"); it != j.end() && it->is_string())
        name = it->get<std::string>();

    auto patch = std::make_shared<const SurfacePatch>(std::move(x0), std::move(x1),
                                                      std::move(x2), u1min, u1max,
                                                      u2min, u2max);
    if (validate) {
        SpacelikeReport rep = patch->validate_spacelike(64, 64, opt.spacelike_tol);
        if (!rep.pass) {
            std::ostringstream msg;
            msg << "surface is not spacelike on its domain: worst margin "
                << rep.worst_margin << " at (u1, u2) = (" << rep.worst_u1 << ", "
                << rep.worst_u2 << "), " << rep.failures << "/" << rep.samples
                << " grid points fail";
            throw NotSpacelikeHere(msg.str());
        }
    }
    return Scene{std::move(name),
                 CurveOnSurface(std::move(patch), std::move(cu1), std::move(cu2), t0, t1),
                 opt};
}

/// Read and build a scene file; JSON syntax errors surface as SceneError
/// with the parser's byte position.
inline Scene load_scene_file(const std::string& path, bool validate = true) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw SceneError("cannot open scene file: " + path);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw SceneError("scene file " + path + " is not valid JSON: " + e.what());
    }
    Scene s = load_scene_json(j, validate);
    if (s.name.empty()) s.name = path;
    return s;
}

// ---------------------------------------------------------------------------

struct CatalogParam {
    std::string name;
    double value;  ///< default, overridable on the command line
    std::string meaning;
};

struct CatalogEntry {
    std::string id;
    std::string title;
    std::vector<CatalogParam> params;
    std::vector<std::string> expected;  ///< facts a verify run should reproduce
};

inline const std::vector<CatalogEntry>& catalog() {
    static const std::vector<CatalogEntry> entries = {
        {"plane",
         "circle of radius r in the spacelike plane x0 = 0",
         {{"r", 1.0, "circle radius"}},
         {"kappa_n = 0 and tau_g = 0 everywhere (closed form)",
          "kappa_g = 1/r (closed form)",
          "delta_Tr identically 0; rect-timelike image is the fixed vector -e0 (closed form)",
          "osc-kind guards fail everywhere: kappa_n = tau_g = 0 (closed form)"}},
        {"hyperbolic",
         "pseudo-circle u1 = r on the hyperbolic plane (Lorentzian Sabban frame)",
         {{"r", 1.0, "hyperbolic radius: curve u1 = r"}},
         {"kappa_n = 1, tau_g = 0, kappa_g = coth(r) (closed form)",
          "delta_Tr = 1, delta_So = kappa_g (closed form)",
          "arc length of one turn = 2*pi*sinh(r) (closed form)",
          "rect-timelike image = -gamma; rect-spacelike guard fails everywhere (closed form)"}},
        {"cylinder",
         "unit-speed curve on a developable spacelike cylinder",
         {},
         {"curve is unit-speed; kappa_n = 1/(t^2+1), kappa_g = -1/(t^2+1), "
          "tau_g = t/(t^2+1) (closed form)",
          "osc-spacelike image pinned at (0,0,1), delta_So identically 0 (closed form)",
          "delta_Tr = 1/(1+t^2) + 1/(1-t^2); rect guard vanishes at t = 1 (closed form)",
          "delta_Lo(0.5) = 2*sqrt(5)/5 (derived numerically)"}},
        {"cubic-graph",
         "graph of a cubic height function, curve along u2 = 0",
         {{"a20", 0.0, "u1^2 coefficient"},
          {"a11", 1.0, "u1*u2 coefficient"},
          {"a02", 0.0, "u2^2 coefficient"},
          {"a30", 1.0, "u1^3 coefficient"},
          {"a21", 0.0, "u1^2*u2 coefficient"},
          {"a12", 0.0, "u1*u2^2 coefficient"},
          {"a03", 0.0, "u2^3 coefficient"}},
         {"kappa_n(0) = 2*a20, kappa_n'(0) = 6*a30 (derived, independent oracle)",
          "kappa_g(0) = 0, kappa_g'(0) = 2*a11*a20, tau_g(0) = -a11, "
          "tau_g'(0) = -2*a21 (derived, independent oracle)",
          "delta_Sr(0) = 4*a20; delta_Sr'(0) = 2*(9*a11*a30 - 2*a20*a21)/a11 "
          "when a11 != 0 (derived, independent oracle)",
          "defaults give one ordinary cusp of the rect-spacelike image at t = 0 "
          "with delta_Sr'(0) = 18 (derived, independent oracle)"}},
    };
    return entries;
}

namespace detail {

inline std::string coeff_text(double v) {
    return "(" + emit::fmt17(v) + ")";
}

}  // namespace detail

/// Instantiate a catalog scene, applying parameter overrides by name.
inline Scene build_catalog_scene(const std::string& id,
                                 const std::map<std::string, double>& overrides = {}) {
    const CatalogEntry* entry = nullptr;
    for (const auto& e : catalog())
        if (e.id == id) entry = &e;
    if (!entry) {
        std::string known;
        for (const auto& e : catalog()) known += " " + e.id;
        throw SceneError("unknown catalog id '" + id + "'; known:" + known);
    }

    std::map<std::string, double> p;
    for (const auto& prm : entry->params) p[prm.name] = prm.value;
    for (const auto& [k, v] : overrides) {
        if (!p.count(k))
            throw SceneError("catalog scene '" + id + "' has no parameter '" + k + "'");
        if (!std::isfinite(v))
            throw SceneError("catalog parameter '" + k + "' must be finite");
        p[k] = v;
    }

    using detail::coeff_text;
    nlohmann::json j;
    if (id == "plane") {
        double r = p["r"];
        if (!(r > 0)) throw SceneError("plane: r must be positive");
        j = {{"name", "plane"},
             {"surface",
              {{"x0", "0"},
               {"x1", "u1"},
               {"x2", "u2"},
               {"domain", {{-r - 0.1, r + 0.1}, {-r - 0.1, r + 0.1}}}}},
             {"curve",
              {{"u1", coeff_text(r) + "*cos(t)"},
               {"u2", "-" + coeff_text(r) + "*sin(t)"},
               {"interval", {0.0, 2.0 * 3.14159265358979324}}}}};
    } else if (id == "hyperbolic") {
        double r = p["r"];
        if (!(r > 0)) throw SceneError("hyperbolic: r must be positive");
        j = {{"name", "hyperbolic"},
             {"surface",
              {{"x0", "cosh(u1)"},
               {"x1", "sinh(u1)*cos(u2)"},
               {"x2", "sinh(u1)*sin(u2)"},
               {"domain", {{0.5 * r, r + 1.0}, {-2.0 * 3.14159265358979324 - 0.1, 0.1}}}}},
             {"curve",
              {{"u1", coeff_text(r)},
               {"u2", "-t"},
               {"interval", {0.0, 2.0 * 3.14159265358979324}}}}};
    } else if (id == "cylinder") {
        j = {{"name", "cylinder"},
             {"surface",
              {{"x0", "sqrt(u1^2+1)"},
               {"x1", "u1"},
               {"x2", "u2"},
               {"domain", {{0.0, 1.2}, {-0.1, 0.6}}}}},
             {"curve",
              {{"u1", "t"}, {"u2", "sqrt(t^2+1)-1"}, {"interval", {0.1, 1.0}}}}};
    } else {  // cubic-graph
        std::string f = coeff_text(p["a20"]) + "*u1^2 + " + coeff_text(p["a11"]) +
                        "*u1*u2 + " + coeff_text(p["a02"]) + "*u2^2 + " +
                        coeff_text(p["a30"]) + "*u1^3 + " + coeff_text(p["a21"]) +
                        "*u1^2*u2 + " + coeff_text(p["a12"]) + "*u1*u2^2 + " +
                        coeff_text(p["a03"]) + "*u2^3";
        j = {{"name", "cubic-graph"},
             {"surface",
              {{"x0", f},
               {"x1", "u1"},
               {"x2", "u2"},
               {"domain", {{-0.36, 0.36}, {-0.02, 0.02}}}}},
             {"curve", {{"u1", "t"}, {"u2", "0"}, {"interval", {-0.35, 0.35}}}}};
    }
    return load_scene_json(j, true);
}

}  // namespace darboux
