// Command line front end: analyze / classify / verify / export / catalog.
// Exit codes: 0 success, 1 verification failure, 2 bad input.

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "darboux/emit.hpp"
#include "darboux/images.hpp"
#include "darboux/scene.hpp"
#include "darboux/singular.hpp"

namespace {

using namespace darboux;

struct SceneArgs {
    std::string scene_path;
    std::string catalog_id;
    std::vector<std::string> sets;
    int order = 0;    // 0 means unset
    int samples = 0;  // 0 means unset
};

void add_scene_options(CLI::App* cmd, SceneArgs& a) {
    cmd->add_option("--scene", a.scene_path, "scene file (JSON)");
    cmd->add_option("--catalog", a.catalog_id, "built-in scene id, see the catalog command");
    cmd->add_option("--set", a.sets, "override a catalog parameter, name=value (repeatable)");
    cmd->add_option("--order", a.order, "jet order (default: scene setting, then 7)")
        ->check(CLI::Range(1, 32));
    cmd->add_option("--samples", a.samples, "number of parameter samples")
        ->check(CLI::Range(2, 1000000));
}

double parse_number(const std::string& text, const std::string& what) {
    size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        throw SceneError(what + ": '" + text + "' is not a number");
    }
    if (used != text.size() || !std::isfinite(v))
        throw SceneError(what + ": '" + text + "' is not a finite number");
    return v;
}

Scene resolve_scene(const SceneArgs& a) {
    if (!a.scene_path.empty() && !a.catalog_id.empty())
        throw SceneError("give either --scene or --catalog, not both");
    if (a.scene_path.empty() && a.catalog_id.empty())
        throw SceneError("a scene is required: --scene FILE or --catalog ID");
    if (!a.scene_path.empty()) {
        if (!a.sets.empty())
            throw SceneError("--set only applies to catalog scenes");
        return load_scene_file(a.scene_path);
    }
    std::map<std::string, double> overrides;
    for (const std::string& kv : a.sets) {
        size_t eq = kv.find('=');
        if (eq == std::string::npos || eq == 0)
            throw SceneError("--set expects name=value, got '" + kv + "'");
        overrides[kv.substr(0, eq)] = parse_number(kv.substr(eq + 1), "--set " + kv.substr(0, eq));
    }
    return build_catalog_scene(a.catalog_id, overrides);
}

int resolve_order(const Scene& sc, int cli_order) {
    if (cli_order > 0) return cli_order;
    if (const char* env = std::getenv("DARBOUX_JET_ORDER")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end == env || *end != '\0' || v < 1 || v > 32)
            throw SceneError(std::string("DARBOUX_JET_ORDER must be an integer in 1..32, got '") +
                             env + "'");
        return static_cast<int>(v);
    }
    return sc.options.jet_order;
}

int resolve_samples(const Scene& sc, int cli_samples) {
    return cli_samples > 0 ? cli_samples : sc.options.samples;
}

ImageKind resolve_kind(const std::string& code) {
    if (auto k = kind_from_code(code)) return *k;
    throw SceneError("unknown image kind '" + code + "'; expected one of Tr, Sr, Lr, So, Lo");
}

void write_out(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::fwrite(text.data(), 1, text.size(), stdout);
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw SceneError("cannot open output file: " + path);
    f << text;
}

// ---------------------------------------------------------------------------

std::string run_analyze(const Scene& sc, int samples, int order, bool as_json) {
    const CurveOnSurface& c = sc.curve;
    ArcLengthMap map(c, sc.options.arc_length_tol);

    if (as_json) {
        emit::JsonBuf b;
        b.obj_begin();
        b.key("scene").str(sc.name);
        b.key("samples").integer(samples);
        b.key("order").integer(order);
        b.key("rows").arr_begin();
        for (int i = 0; i < samples; ++i) {
            double t = c.t0 + (c.t1 - c.t0) * i / (samples - 1);
            FrameSample f = frame_at(c, map, t, order);
            b.obj_begin();
            b.key("s").num(f.s);
            b.key("t").num(f.t_param);
            b.key("kappa_n").num(f.kn[0]);
            b.key("kappa_g").num(f.kg[0]);
            b.key("tau_g").num(f.tg[0]);
            std::vector<std::string_view> undef;
            b.key("delta").obj_begin();
            for (ImageKind k : all_image_kinds) {
                b.key(kind_code(k));
                if (domain_predicate(k, f).satisfied) {
                    b.num(delta(k, f)[0]);
                } else {
                    b.null();
                    undef.push_back(kind_code(k));
                }
            }
            b.obj_end();
            b.key("frenet_residual").num(frenet_residual(f));
            b.key("undefined").arr_begin();
            for (std::string_view code : undef) b.str(code);
            b.arr_end();
            b.obj_end();
        }
        b.arr_end();
        b.obj_end();
        return b.out() + "\n";
    }

    std::string out =
        "s,t,kappa_n,kappa_g,tau_g,delta_Tr,delta_Sr,delta_Lr,delta_So,delta_Lo,"
        "frenet_residual,undefined\n";
    for (int i = 0; i < samples; ++i) {
        double t = c.t0 + (c.t1 - c.t0) * i / (samples - 1);
        FrameSample f = frame_at(c, map, t, order);
        out += emit::fmt17(f.s);
        out += ',';
        out += emit::fmt17(f.t_param);
        out += ',';
        out += emit::fmt17(f.kn[0]);
        out += ',';
        out += emit::fmt17(f.kg[0]);
        out += ',';
        out += emit::fmt17(f.tg[0]);
        std::string undef;
        for (ImageKind k : all_image_kinds) {
            out += ',';
            if (domain_predicate(k, f).satisfied) {
                out += emit::fmt17(delta(k, f)[0]);
            } else {
                if (!undef.empty()) undef += ';';
                undef += kind_code(k);
            }
        }
        out += ',';
        out += emit::fmt17(frenet_residual(f));
        out += ',';
        out += undef;
        out += '\n';
    }
    return out;
}

void put_points(emit::JsonBuf& b, const SingularityScan& scan) {
    b.key("points").arr_begin();
    for (const SingularPoint& p : scan.points) {
        b.obj_begin();
        b.key("s0").num(p.s0);
        b.key("t0").num(p.t0);
        b.key("classification")
            .str(p.classification == SingularClass::Cusp ? "cusp" : "degenerate");
        b.key("delta").num(p.delta0);
        b.key("delta_prime").num(p.delta1);
        b.key("bracket").arr_begin().num(p.s_lo).num(p.s_hi).arr_end();
        b.key("residual").num(p.residual);
        b.obj_end();
    }
    b.arr_end();
}

void put_excluded(emit::JsonBuf& b, const SingularityScan& scan) {
    b.key("excluded").arr_begin();
    for (const auto& [lo, hi] : scan.excluded) b.arr_begin().num(lo).num(hi).arr_end();
    b.arr_end();
}

std::string run_classify(const Scene& sc, ImageKind kind, int grid, int order) {
    const CurveOnSurface& c = sc.curve;
    SingularityScan scan = find_singularities(c, kind, c.t0, c.t1, grid, order);
    emit::JsonBuf b;
    b.obj_begin();
    b.key("scene").str(sc.name);
    b.key("kind").str(kind_code(kind));
    b.key("interval").arr_begin().num(c.t0).num(c.t1).arr_end();
    b.key("grid").integer(scan.grid_n);
    b.key("order").integer(order);
    b.key("identically_zero").boolean(scan.identically_zero);
    b.key("admissible_nodes").integer(scan.admissible_nodes);
    put_excluded(b, scan);
    put_points(b, scan);
    b.obj_end();
    return b.out() + "\n";
}

struct VerifyResult {
    std::string text;
    int failed = 0;
};

VerifyResult run_verify(const Scene& sc, int samples, int order) {
    const CurveOnSurface& c = sc.curve;
    ArcLengthMap map(c, sc.options.arc_length_tol);

    std::vector<FrameSample> frames;
    frames.reserve(samples);
    for (int i = 0; i < samples; ++i) {
        double t = c.t0 + (c.t1 - c.t0) * i / (samples - 1);
        frames.push_back(frame_at(c, map, t, order));
    }

    std::ostringstream rep;
    int pass = 0, fail = 0, skip = 0;
    auto line = [&](bool ok, const std::string& name, double got, const char* tol) {
        rep << (ok ? "PASS " : "FAIL ") << name << " max " << emit::fmt17(got)
            << " tol " << tol << "\n";
        (ok ? pass : fail) += 1;
    };
    auto skipline = [&](const std::string& name) {
        rep << "SKIP " << name << " (guard fails at every sample)\n";
        ++skip;
    };

    rep << "scene: " << sc.name << "\n";
    rep << "samples: " << samples << "  order: " << order << "\n";

    double worst_on = 0.0, worst_fr = 0.0;
    for (const FrameSample& f : frames) {
        worst_on = std::max(worst_on, orthonormality_residual(f));
        worst_fr = std::max(worst_fr, frenet_residual(f));
    }
    line(worst_on <= 1e-9, "orthonormality", worst_on, "1e-9");
    line(worst_fr <= 1e-8, "frame-equations", worst_fr, "1e-8");

    for (ImageKind k : all_image_kinds) {
        std::string code(kind_code(k));
        int admissible = 0;
        double worst_sphere = 0.0, worst_ident = 0.0;
        for (const FrameSample& f : frames) {
            if (!domain_predicate(k, f).satisfied) continue;
            ++admissible;
            MinkVector v = image(k, f).value();
            worst_sphere = std::max(
                worst_sphere, sphere_residual(v, target_sphere(k)) / (1.0 + euclidean_norm_sq(v)));
            worst_ident = std::max(worst_ident, derivative_identity_residual(k, f));
        }
        if (admissible == 0) {
            skipline("sphere-membership-" + code);
            skipline("derivative-identity-" + code);
            continue;
        }
        line(worst_sphere <= 1e-9, "sphere-membership-" + code, worst_sphere, "1e-9");
        line(worst_ident <= 1e-7, "derivative-identity-" + code, worst_ident, "1e-7");
    }

    for (int st = 1; st <= 5; ++st) {
        DualityReport r = verify_duality(c, st, samples, order);
        std::string name =
            "duality-" + std::to_string(st) + "-" + std::string(kind_code(r.kind));
        if (r.checked == 0) {
            skipline(name);
            continue;
        }
        line(std::max(r.worst_pairing, r.worst_isotropy) <= 1e-8, name,
             std::max(r.worst_pairing, r.worst_isotropy), "1e-8");
    }

    rep << "summary: " << pass << " passed, " << fail << " failed, " << skip
        << " skipped\n";
    return {rep.str(), fail};
}

std::string run_export(const Scene& sc, ImageKind kind, int samples, int order, int grid,
                       const std::string& format, const std::string& projection) {
    const CurveOnSurface& c = sc.curve;
    ArcLengthMap map(c, sc.options.arc_length_tol);

    struct Pt {
        double s, t;
        MinkVector x;
        bool ok;
    };
    std::vector<Pt> pts;
    pts.reserve(samples);
    for (int i = 0; i < samples; ++i) {
        double t = c.t0 + (c.t1 - c.t0) * i / (samples - 1);
        FrameSample f = frame_at(c, map, t, order);
        Pt p{f.s, f.t_param, {}, domain_predicate(kind, f).satisfied};
        if (p.ok) p.x = image(kind, f).value();
        pts.push_back(p);
    }

    if (format == "csv") {
        std::string out = "s,x0,x1,x2\n";
        for (const Pt& p : pts) {
            if (!p.ok) continue;
            out += emit::fmt17(p.s);
            out += ',';
            out += emit::fmt17(p.x.x0);
            out += ',';
            out += emit::fmt17(p.x.x1);
            out += ',';
            out += emit::fmt17(p.x.x2);
            out += '\n';
        }
        return out;
    }

    SingularityScan scan = find_singularities(c, kind, c.t0, c.t1, grid, order);

    if (format == "json") {
        emit::JsonBuf b;
        b.obj_begin();
        b.key("scene").str(sc.name);
        b.key("kind").str(kind_code(kind));
        b.key("sphere").str(to_string(target_sphere(kind)));
        b.key("samples").integer(samples);
        b.key("order").integer(order);
        b.key("identically_zero").boolean(scan.identically_zero);
        b.key("points").arr_begin();
        for (const Pt& p : pts) {
            if (!p.ok) continue;
            b.obj_begin();
            b.key("s").num(p.s);
            b.key("t").num(p.t);
            b.key("x").arr_begin().num(p.x.x0).num(p.x.x1).num(p.x.x2).arr_end();
            b.obj_end();
        }
        b.arr_end();
        put_excluded(b, scan);
        b.key("singular").arr_begin();
        for (const SingularPoint& p : scan.points) {
            b.obj_begin();
            b.key("s0").num(p.s0);
            b.key("t0").num(p.t0);
            b.key("classification")
                .str(p.classification == SingularClass::Cusp ? "cusp" : "degenerate");
            b.obj_end();
        }
        b.arr_end();
        b.obj_end();
        return b.out() + "\n";
    }

    // svg
    auto project = [&](MinkVector v) -> emit::PlanePoint {
        if (projection == "x0x1") return {v.x0, v.x1};
        if (projection == "x0x2") return {v.x0, v.x2};
        return {v.x1, v.x2};
    };
    std::vector<std::vector<emit::PlanePoint>> polylines;
    std::vector<emit::PlanePoint> run;
    for (const Pt& p : pts) {
        if (p.ok) {
            run.push_back(project(p.x));
        } else if (!run.empty()) {
            polylines.push_back(std::move(run));
            run.clear();
        }
    }
    if (!run.empty()) polylines.push_back(std::move(run));

    std::vector<emit::PlanePoint> markers;
    for (const SingularPoint& p : scan.points) {
        FrameSample f = frame_at(c, map, p.t0, order);
        if (domain_predicate(kind, f).satisfied)
            markers.push_back(project(image(kind, f).value()));
    }
    return emit::svg_page(polylines, markers, projection.substr(0, 2), projection.substr(2));
}

std::string run_catalog() {
    std::ostringstream os;
    for (const CatalogEntry& e : darboux::catalog()) {
        os << e.id << ": " << e.title << "\n";
        for (const CatalogParam& p : e.params)
            os << "  param " << p.name << " = " << emit::fmt17(p.value) << "  (" << p.meaning
               << ")\n";
        for (const std::string& x : e.expected) os << "  * " << x << "\n";
        os << "\n";
    }
    return os.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Darboux frames, curvature invariants and pseudo-spherical images of curves\n"
        "on spacelike surfaces in R^3 with the signature (-,+,+)"};
    app.require_subcommand(1);

    SceneArgs an_args, cl_args, ve_args, ex_args;
    std::string an_format = "csv", an_out;
    std::string cl_image, cl_out;
    int cl_grid = 2048;
    std::string ve_out;
    std::string ex_image, ex_format = "csv", ex_projection = "x1x2", ex_out;
    int ex_grid = 2048;
    std::string ca_out;

    CLI::App* an = app.add_subcommand(
        "analyze", "sample invariants and image deltas along the curve");
    add_scene_options(an, an_args);
    an->add_option("--format", an_format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    an->add_option("--out", an_out, "write to a file instead of stdout");

    CLI::App* cl = app.add_subcommand(
        "classify", "locate and classify singular points of one image");
    add_scene_options(cl, cl_args);
    cl->add_option("--image", cl_image, "image kind: Tr, Sr, Lr, So or Lo")->required();
    cl->add_option("--grid", cl_grid, "scan grid size")->check(CLI::Range(8, 1000000));
    cl->add_option("--out", cl_out, "write to a file instead of stdout");

    CLI::App* ve = app.add_subcommand(
        "verify", "check frame equations, sphere membership, derivative identities "
                  "and duality against fixed tolerances");
    add_scene_options(ve, ve_args);
    ve->add_option("--out", ve_out, "write to a file instead of stdout");

    CLI::App* ex = app.add_subcommand("export", "trace one image curve");
    add_scene_options(ex, ex_args);
    ex->add_option("--image", ex_image, "image kind: Tr, Sr, Lr, So or Lo")->required();
    ex->add_option("--format", ex_format, "csv, json or svg")
        ->check(CLI::IsMember({"csv", "json", "svg"}));
    ex->add_option("--projection", ex_projection, "svg axes")
        ->check(CLI::IsMember({"x1x2", "x0x1", "x0x2"}));
    ex->add_option("--grid", ex_grid, "singularity scan grid size")
        ->check(CLI::Range(8, 1000000));
    ex->add_option("--out", ex_out, "write to a file instead of stdout");

    CLI::App* ca = app.add_subcommand("catalog", "list the built-in scenes");
    ca->add_option("--out", ca_out, "write to a file instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (an->parsed()) {
            Scene sc = resolve_scene(an_args);
            write_out(an_out, run_analyze(sc, resolve_samples(sc, an_args.samples),
                                          resolve_order(sc, an_args.order),
                                          an_format == "json"));
        } else if (cl->parsed()) {
            Scene sc = resolve_scene(cl_args);
            write_out(cl_out, run_classify(sc, resolve_kind(cl_image), cl_grid,
                                           resolve_order(sc, cl_args.order)));
        } else if (ve->parsed()) {
            Scene sc = resolve_scene(ve_args);
            VerifyResult r = run_verify(sc, resolve_samples(sc, ve_args.samples),
                                        resolve_order(sc, ve_args.order));
            write_out(ve_out, r.text);
            return r.failed > 0 ? 1 : 0;
        } else if (ex->parsed()) {
            Scene sc = resolve_scene(ex_args);
            write_out(ex_out, run_export(sc, resolve_kind(ex_image),
                                         resolve_samples(sc, ex_args.samples),
                                         resolve_order(sc, ex_args.order), ex_grid,
                                         ex_format, ex_projection));
        } else if (ca->parsed()) {
            write_out(ca_out, run_catalog());
        }
    } catch (const darboux::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
