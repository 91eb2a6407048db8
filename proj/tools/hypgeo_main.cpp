// Command-line driver: every verification of the library exposed as a
// subcommand with machine-readable JSON (or CSV) output.
//
// Exit codes: 0 pass, 1 tolerance failure, 2 input error, 3 domain error.

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <optional>
#include <random>
#include <sstream>

#include "hypgeo/curves.hpp"
#include "hypgeo/surfaces.hpp"
#include "hypgeo/surgery.hpp"
#include "hypgeo/tube.hpp"

using nlohmann::ordered_json;
using namespace hypgeo;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitToleranceFailure = 1;
constexpr int kExitInputError = 2;
constexpr int kExitDomainError = 3;

// Reports are byte-reproducible: fixed field order (ordered_json) and
// doubles rounded to 12 significant digits before serialization.
ordered_json num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return std::strtod(buf, nullptr);
}

struct RunConfig {
    unsigned long long seed = 0;
    double resid_tol = 1e-4;      // acceleration identity residual gate
    double gauss_tol = 1e-3;      // Gauss equation residual gate
    double boundary_tol = 1e-11;  // tube boundary-form gate
    std::size_t samples = 100000; // tube sampling
    std::string out;              // output path; empty = stdout
    std::string format = "json";  // json | csv

    void load(const std::string& path) {
        std::ifstream in(path);
        if (!in)
            throw InputError("config: cannot open " + path);
        ordered_json j;
        try {
            j = ordered_json::parse(in);
        } catch (const std::exception& e) {
            throw InputError(std::string("config: invalid JSON: ") + e.what());
        }
        if (j.contains("seed")) seed = j["seed"].get<unsigned long long>();
        if (j.contains("resid_tol")) resid_tol = j["resid_tol"].get<double>();
        if (j.contains("gauss_tol")) gauss_tol = j["gauss_tol"].get<double>();
        if (j.contains("boundary_tol")) boundary_tol = j["boundary_tol"].get<double>();
        if (j.contains("samples")) samples = j["samples"].get<std::size_t>();
    }
};

void emit(const RunConfig& cfg, const std::string& text) {
    if (cfg.out.empty()) {
        std::cout << text;
        if (text.empty() || text.back() != '\n')
            std::cout << "\n";
        return;
    }
    std::ofstream out(cfg.out, std::ios::binary);
    if (!out)
        throw InputError("cannot open output file " + cfg.out);
    out << text;
    if (text.empty() || text.back() != '\n')
        out << "\n";
}

// ---------------------------------------------------------------- curves

struct CurveOptions {
    std::string fixture;
    double d = 0.5;
    double rho = 1.0;
    double kappa_max = 0.5;
    double dt = 1e-3;
    double length = 4.0;
    std::optional<double> k_override;
    bool require_quasi = false;
};

SampledPath build_curve_fixture(const CurveOptions& o, std::mt19937_64& rng) {
    if (o.fixture == "geodesic")
        return make_geodesic_path(o.length, o.dt);
    if (o.fixture == "equidistant")
        return make_equidistant_curve(o.d, o.length, o.dt);
    if (o.fixture == "circle")
        return make_circle(o.rho, o.length, o.dt);
    if (o.fixture == "horocycle")
        return make_horocycle(o.length, o.dt);
    if (o.fixture == "perturbed-geodesic") {
        std::uniform_real_distribution<double> freq(0.5, 2.0);
        std::uniform_real_distribution<double> phase(0.0, 6.283185307179586);
        const double w1 = freq(rng), w2 = freq(rng), b1 = phase(rng), b2 = phase(rng);
        const double a = o.kappa_max;
        return make_prescribed_curvature_path(
            [=](double t) { return a * 0.5 * (std::sin(w1 * t + b1) + std::sin(w2 * t + b2)); },
            o.length, o.dt);
    }
    throw InputError("unknown curve fixture: " + o.fixture +
                     " (expected geodesic|equidistant|circle|horocycle|perturbed-geodesic)");
}

int cmd_curve_check(const RunConfig& cfg, const CurveOptions& o) {
    std::mt19937_64 rng(cfg.seed);
    const SampledPath path = build_curve_fixture(o, rng);
    const CurvatureProfile prof = geodesic_curvature(path);
    const double residual = accel_identity_residual(path);

    std::optional<double> qc;
    if (o.require_quasi || prof.max_kappa < 1.0)
        qc = quasi_constant(prof.max_kappa);  // throws CurvatureTooLarge when kappa >= 1

    std::optional<QuasiGeodesicReport> quasi_rep;
    double k_used = 0.0;
    if (o.k_override) {
        k_used = *o.k_override;
        quasi_rep = verify_quasi_geodesic(path, k_used);
    } else if (qc) {
        k_used = *qc;
        quasi_rep = verify_quasi_geodesic(path, k_used);
    }

    bool pass = residual <= cfg.resid_tol;
    if (quasi_rep)
        pass = pass && quasi_rep->lower_violation <= 10.0 * o.dt;

    if (cfg.format == "csv") {
        std::ostringstream os;
        os << "t,kappa\n";
        for (std::size_t j = 0; j < prof.values.size(); ++j) {
            char line[80];
            std::snprintf(line, sizeof line, "%.12g,%.12g\n", path.ts[prof.first_index + j],
                          prof.values[j]);
            os << line;
        }
        emit(cfg, os.str());
        return pass ? kExitPass : kExitToleranceFailure;
    }

    ordered_json j;
    j["fixture"] = o.fixture;
    ordered_json params;
    params["dt"] = num(o.dt);
    params["length"] = num(o.length);
    if (o.fixture == "equidistant") params["d"] = num(o.d);
    if (o.fixture == "circle") params["rho"] = num(o.rho);
    if (o.fixture == "perturbed-geodesic") params["kappa_max"] = num(o.kappa_max);
    j["params"] = params;
    j["seed"] = cfg.seed;
    j["max_kappa"] = num(prof.max_kappa);
    j["accel_identity_residual"] = num(residual);
    j["quasi_constant"] = qc ? num(*qc) : ordered_json(nullptr);
    j["k_used"] = quasi_rep ? num(k_used) : ordered_json(nullptr);
    j["lower_violation"] = quasi_rep ? num(quasi_rep->lower_violation) : ordered_json(nullptr);
    j["upper_violation"] = quasi_rep ? num(quasi_rep->upper_violation) : ordered_json(nullptr);
    j["chord_hausdorff"] = quasi_rep ? num(quasi_rep->chord_hausdorff) : num(chord_hausdorff(path));
    j["pass"] = pass;
    emit(cfg, j.dump(2));
    return pass ? kExitPass : kExitToleranceFailure;
}

// --------------------------------------------------------------- surfaces

struct SurfaceOptions {
    std::string fixture;
    std::string grid_path;
    double d = 0.3;
    double h = 0.01;
    double extent = 0.12;
    std::size_t probes = 0;
};

ParamSurface build_surface_fixture(const SurfaceOptions& o) {
    if (!o.grid_path.empty())
        return load_surface_csv(o.grid_path, o.h, o.h);
    if (o.fixture == "geodesic-plane")
        return make_geodesic_plane_patch(o.extent, o.h);
    if (o.fixture == "horosphere")
        return make_horosphere_patch(o.extent, o.h);
    if (o.fixture == "equidistant")
        return make_equidistant_patch(o.d, o.extent, o.h);
    throw InputError("unknown surface fixture: " + o.fixture +
                     " (expected geodesic-plane|horosphere|equidistant, or --grid)");
}

int cmd_surface_check(const RunConfig& cfg, const SurfaceOptions& o) {
    const ParamSurface s = build_surface_fixture(o);
    const FundamentalForms f = fundamental_forms(s);
    const PrincipalCurvatures pc = principal_curvatures(f);
    const GridField<double> K = intrinsic_curvature(f, s.du, s.dv);

    double residual = 0.0, k_lo = std::numeric_limits<double>::infinity(), k_hi = -k_lo;
    for (std::size_t iu = K.margin; iu + K.margin < K.nu; ++iu)
        for (std::size_t iv = K.margin; iv + K.margin < K.nv; ++iv) {
            const double k = K.at(iu, iv);
            k_lo = std::min(k_lo, k);
            k_hi = std::max(k_hi, k);
            residual = std::max(residual, std::abs(k + 1.0 - pc.lambda1.at(iu, iv) *
                                                                  pc.lambda2.at(iu, iv)));
        }
    const CurvatureCertificate cert = small_curvature_certificate(s, o.probes, cfg.seed);

    const bool pass = residual <= cfg.gauss_tol && cert.probe_ok;

    if (cfg.format == "csv") {
        std::ostringstream os;
        os << "iu,iv,lambda1,lambda2\n";
        for (std::size_t iu = 1; iu + 1 < s.nu; ++iu)
            for (std::size_t iv = 1; iv + 1 < s.nv; ++iv) {
                char line[96];
                std::snprintf(line, sizeof line, "%zu,%zu,%.12g,%.12g\n", iu, iv,
                              pc.lambda1.at(iu, iv), pc.lambda2.at(iu, iv));
                os << line;
            }
        emit(cfg, os.str());
        return pass ? kExitPass : kExitToleranceFailure;
    }

    ordered_json j;
    j["fixture"] = o.grid_path.empty() ? o.fixture : "csv:" + o.grid_path;
    ordered_json params;
    params["h"] = num(o.h);
    if (o.grid_path.empty()) params["extent"] = num(o.extent);
    if (o.fixture == "equidistant") params["d"] = num(o.d);
    j["params"] = params;
    j["lambda1_range"] = {num(pc.min1), num(pc.max1)};
    j["lambda2_range"] = {num(pc.min2), num(pc.max2)};
    j["intrinsic_curvature_range"] = {num(k_lo), num(k_hi)};
    j["gauss_residual"] = num(residual);
    ordered_json cj;
    cj["max_abs_principal"] = num(cert.max_abs_principal);
    cj["quasi_constant"] = cert.quasi ? num(*cert.quasi) : ordered_json(nullptr);
    cj["probes"] = cert.probes;
    cj["probe_max_kappa"] = cert.probes ? num(cert.probe_max_kappa) : ordered_json(nullptr);
    cj["probe_ok"] = cert.probe_ok;
    j["certificate"] = cj;
    j["pass"] = pass;
    emit(cfg, j.dump(2));
    return pass ? kExitPass : kExitToleranceFailure;
}

// ------------------------------------------------------------------- tube

struct TubeOptions {
    double l = 100.0;
    std::string bump = "smoothstep";
    std::string curve_csv;
};

std::string tube_curve_csv(const TubeMetric& m, std::size_t rows) {
    std::ostringstream os;
    os << "r,k_ff,k_gg,k_fg\n";
    const double lo = m.r0() + 1e-6;
    for (std::size_t i = 0; i <= rows; ++i) {
        const double r = lo + (0.0 - lo) * static_cast<double>(i) / static_cast<double>(rows);
        const CurvatureTriple t = curvature_triple(m, r);
        char line[128];
        std::snprintf(line, sizeof line, "%.12g,%.12g,%.12g,%.12g\n", r, t.k_ff, t.k_gg, t.k_fg);
        os << line;
    }
    return os.str();
}

int cmd_tube(const RunConfig& cfg, const TubeOptions& o) {
    const TubeMetric m(o.l, bump_by_name(o.bump));
    const PinchingReport pinch = pinching_verify(m, cfg.samples);
    const BoundaryFormReport bdry = boundary_form_check(m);

    const bool pass = pinch.l_emp <= pinch.l_formula + 1e-9 * o.l * o.l &&
                      bdry.max_deviation() < cfg.boundary_tol;

    if (!o.curve_csv.empty()) {
        std::ofstream out(o.curve_csv, std::ios::binary);
        if (!out)
            throw InputError("cannot open output file " + o.curve_csv);
        out << tube_curve_csv(m, 2000);
    }
    if (cfg.format == "csv") {
        emit(cfg, tube_curve_csv(m, 2000));
        return pass ? kExitPass : kExitToleranceFailure;
    }

    ordered_json j;
    j["l"] = num(o.l);
    j["bump"] = o.bump;
    j["r0"] = num(m.r0());
    j["samples"] = cfg.samples;
    j["L_emp"] = num(pinch.l_emp);
    j["L_formula"] = num(pinch.l_formula);
    j["exact_region_max_dev"] = num(pinch.exact_region_dev);
    ordered_json bj;
    bj["f_outer_dev"] = num(bdry.dev_f_outer);
    bj["g_outer_dev"] = num(bdry.dev_g_outer);
    bj["f_inner_dev"] = num(bdry.dev_f_inner);
    bj["g_inner_dev"] = num(bdry.dev_g_inner);
    bj["f_at_zero"] = num(bdry.f_at_zero);
    bj["g_at_zero"] = num(bdry.g_at_zero);
    bj["f_at_core"] = num(bdry.f_at_core);
    bj["fp_at_core"] = num(bdry.fp_at_core);
    bj["g_at_core"] = num(bdry.g_at_core);
    j["boundary"] = bj;
    j["pass"] = pass;
    emit(cfg, j.dump(2));
    return pass ? kExitPass : kExitToleranceFailure;
}

// ---------------------------------------------------------------- surgery

struct SurgeryOptions {
    std::string script_path;
    std::string slopeseqn;  // "r1,r2,r3,r4,r5"
    std::optional<long long> r7;
    bool normalize_output = false;
};

int cmd_surgery(const RunConfig& cfg, const SurgeryOptions& o) {
    namespace sg = hypgeo::surgery;
    sg::FillingSpec spec;
    if (!o.slopeseqn.empty()) {
        std::vector<sg::Int> rs;
        std::stringstream ss(o.slopeseqn);
        std::string tok;
        while (std::getline(ss, tok, ','))
            rs.emplace_back(tok);
        if (rs.size() != 5)
            throw InputError("--slopeseqn expects five integers r1,r2,r3,r4,r5");
        const sg::Int r = o.r7 ? sg::Int(*o.r7) : sg::Int(-rs[2] - 1);
        spec = sg::reproduce_slopeseqn(rs[0], rs[1], rs[2], rs[3], rs[4], r);
    } else if (!o.script_path.empty()) {
        std::ifstream in(o.script_path);
        if (!in)
            throw InputError("cannot open move script " + o.script_path);
        std::stringstream buffer;
        buffer << in.rdbuf();
        spec = sg::run_move_script(sg::parse_move_script(buffer.str()));
    } else {
        throw InputError("surgery: provide a move script path or --slopeseqn");
    }

    if (cfg.format == "csv") {
        std::ostringstream os;
        os << "cusp,d,p,q\n";
        for (std::size_t i = 0; i < spec.entries.size(); ++i) {
            if (!spec.entries[i])
                os << (i + 1) << ",inf,,\n";
            else
                os << (i + 1) << "," << spec.entries[i]->d << "," << spec.entries[i]->pair.p << ","
                   << spec.entries[i]->pair.q << "\n";
        }
        emit(cfg, os.str());
        return kExitPass;
    }

    ordered_json j = ordered_json::parse(sg::filling_to_json(spec));
    j["cusps"] = spec.entries.size();
    if (o.normalize_output)
        j["normalized_formatted"] = sg::format_filling(spec.normalized());
    emit(cfg, j.dump(2));
    return kExitPass;
}

// ------------------------------------------------------------ genus, tri

struct GenusOptions {
    long long p = 2;
    long long base_genus = 0;
    long long branch = 0;
    std::optional<long long> lk;
};

int cmd_genus(const RunConfig& cfg, const GenusOptions& o) {
    namespace sg = hypgeo::surgery;
    const long long genus = sg::riemann_hurwitz_genus(o.p, o.base_genus, o.branch);
    std::optional<long long> comps;
    if (o.lk)
        comps = sg::branched_cover_components(o.p, *o.lk);

    if (cfg.format == "csv") {
        std::ostringstream os;
        os << "p,base_genus,branch_points,genus,components\n";
        os << o.p << "," << o.base_genus << "," << o.branch << "," << genus << ",";
        if (comps)
            os << *comps;
        os << "\n";
        emit(cfg, os.str());
        return kExitPass;
    }
    ordered_json j;
    j["p"] = o.p;
    j["base_genus"] = o.base_genus;
    j["branch_points"] = o.branch;
    j["genus"] = genus;
    j["lk"] = o.lk ? ordered_json(*o.lk) : ordered_json(nullptr);
    j["components"] = comps ? ordered_json(*comps) : ordered_json(nullptr);
    emit(cfg, j.dump(2));
    return kExitPass;
}

std::optional<long long> parse_order(const std::string& s) {
    if (s == "inf" || s == "∞")
        return std::nullopt;
    try {
        std::size_t used = 0;
        const long long v = std::stoll(s, &used);
        if (used != s.size())
            throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw InputError("triangle: order must be an integer or 'inf', got '" + s + "'");
    }
}

int cmd_triangle(const RunConfig& cfg, const std::vector<std::string>& orders) {
    namespace sg = hypgeo::surgery;
    const auto p1 = parse_order(orders[0]);
    const auto p2 = parse_order(orders[1]);
    const auto p3 = parse_order(orders[2]);
    const sg::Geometry g = sg::triangle_orbifold_geometry(p1, p2, p3);
    if (cfg.format == "csv") {
        std::ostringstream os;
        os << "p1,p2,p3,geometry\n"
           << orders[0] << "," << orders[1] << "," << orders[2] << "," << sg::to_string(g) << "\n";
        emit(cfg, os.str());
        return kExitPass;
    }
    ordered_json j;
    j["orders"] = orders;
    j["geometry"] = sg::to_string(g);
    emit(cfg, j.dump(2));
    return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"hyperboloid-model geometry, curve/surface curvature, tube-metric pinching, "
                 "and Dehn-surgery slope calculus"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string config_path;
    app.add_option("--config", config_path, "JSON config file");
    app.add_option("--out", cfg.out, "output file (default stdout)");
    app.add_option("--format", cfg.format, "json|csv")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--seed", cfg.seed, "PRNG seed for randomized fixtures");

    CurveOptions co;
    auto* curve = app.add_subcommand("curve-check", "geodesic curvature and quasi-geodesic checks");
    curve->add_option("--fixture", co.fixture,
                      "geodesic|equidistant|circle|horocycle|perturbed-geodesic")
        ->required();
    curve->add_option("--d", co.d, "equidistant curve offset");
    curve->add_option("--rho", co.rho, "circle radius");
    curve->add_option("--kappa-max", co.kappa_max, "perturbed-geodesic curvature amplitude");
    curve->add_option("--dt", co.dt, "parameter step");
    curve->add_option("--length", co.length, "arc length");
    double k_flag = 0.0;
    auto* kopt = curve->add_option("--k", k_flag, "quasi-geodesic constant to verify");
    curve->add_flag("--quasi", co.require_quasi, "require the quasi-geodesic certificate");

    SurfaceOptions so;
    auto* surf = app.add_subcommand("surface-check", "fundamental forms and the Gauss equation");
    surf->set_help_flag("--help", "print help");  // frees -h for the grid step
    surf->add_option("--fixture", so.fixture, "geodesic-plane|horosphere|equidistant");
    surf->add_option("--grid", so.grid_path, "CSV grid file (see docs for the format)");
    surf->add_option("--d", so.d, "equidistant surface offset");
    surf->add_option("--h", so.h, "grid step");
    surf->add_option("--extent", so.extent, "half-width of the (u,v) chart");
    surf->add_option("--probe", so.probes,
                     "trace this many intrinsic geodesics and check their ambient curvature");

    TubeOptions to;
    auto* tube = app.add_subcommand("tube", "solid-torus metric curvature pinching");
    tube->add_option("--l", to.l, "meridian length (>= e^3 pi)")->required();
    tube->add_option("--bump", to.bump, "smoothstep|exp");
    tube->add_option("--samples", cfg.samples, "radial sample count");
    tube->add_option("--curve-csv", to.curve_csv, "also write (r, k_ff, k_gg, k_fg) CSV here");

    SurgeryOptions sgo;
    auto* surgery = app.add_subcommand("surgery", "apply a twist move script");
    surgery->add_option("script", sgo.script_path, "JSON move script");
    surgery->add_option("--slopeseqn", sgo.slopeseqn, "r1,r2,r3,r4,r5 for the canonical sequence");
    long long r7_flag = 0;
    auto* r7opt = surgery->add_option("--r7", r7_flag, "twist count on cusp 7 (default -r3-1)");
    surgery->add_flag("--normalize", sgo.normalize_output, "also print normalized slopes");

    GenusOptions go;
    auto* genus = app.add_subcommand("genus", "branched-cover genus and component count");
    genus->add_option("--p", go.p, "cover degree")->required();
    genus->add_option("--base-genus", go.base_genus, "genus of the base surface");
    genus->add_option("--branch", go.branch, "number of branch points");
    long long lk_flag = 0;
    auto* lkopt = genus->add_option("--lk", lk_flag, "linking number for the component count");

    std::vector<std::string> tri_orders;
    auto* tri = app.add_subcommand("triangle", "triangle-orbifold geometry type");
    tri->add_option("orders", tri_orders, "three cone orders (integer >= 2 or inf)")
        ->expected(3)
        ->required();

    // global options (--seed, --out, ...) may follow the subcommand
    for (auto* sub : {curve, surf, tube, surgery, genus, tri})
        sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0)
            return app.exit(e);  // --help
        app.exit(e);
        return kExitInputError;
    }

    try {
        if (!config_path.empty()) {
            // the config file is the base; explicit command-line values win
            const auto cli_seed = cfg.seed;
            const auto cli_samples = cfg.samples;
            cfg.load(config_path);
            if (app.count("--seed"))
                cfg.seed = cli_seed;
            if (tube->count("--samples"))
                cfg.samples = cli_samples;
        }
        if (*kopt) co.k_override = k_flag;
        if (*r7opt) sgo.r7 = r7_flag;
        if (*lkopt) go.lk = lk_flag;

        if (curve->parsed())
            return cmd_curve_check(cfg, co);
        if (surf->parsed())
            return cmd_surface_check(cfg, so);
        if (tube->parsed())
            return cmd_tube(cfg, to);
        if (surgery->parsed())
            return cmd_surgery(cfg, sgo);
        if (genus->parsed())
            return cmd_genus(cfg, go);
        if (tri->parsed())
            return cmd_triangle(cfg, tri_orders);
    } catch (const DomainError& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return kExitDomainError;
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDomainError;
    } catch (const std::exception& e) {
        // wrong JSON value types in config/scripts land here
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInputError;
    }
    return kExitInputError;
}
