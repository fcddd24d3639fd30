// shapelab command-line driver: compute, verify, profile, sweep, optimize.
//
// Every command writes its artifacts under --out (or $SHAPELAB_OUT, or the
// working directory) with fixed names, 12-significant-digit numbers and no
// timestamps, so reruns with identical flags produce identical bytes.
//
// Exit codes: 0 success (and, for verify, all inequalities hold),
// 1 an inequality failed, 2 bad input, 3 the linear solver gave up.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "shapelab/distance_field.hpp"
#include "shapelab/families.hpp"
#include "shapelab/functionals.hpp"
#include "shapelab/geometry.hpp"
#include "shapelab/json_io.hpp"
#include "shapelab/optimize.hpp"
#include "shapelab/parallel.hpp"
#include "shapelab/raster.hpp"
#include "shapelab/report.hpp"
#include "shapelab/torsion.hpp"

namespace {

using namespace shapelab;

struct DomainOptions {
    std::string family;
    double param = 1.0;
    std::string domain_file;
    std::string h_text;
    int k = -1;  // -1: take the family's declared value (file domains: 0)
    double q = 0.5;
};

void add_domain_flags(CLI::App* cmd, DomainOptions& d, bool with_q = true) {
    // The grid-step flag is spelled --h, so help must not claim -h.
    cmd->set_help_flag("--help", "Print usage");
    cmd->add_option("--family", d.family,
                    "Domain family: disc, annulus, rectangle, thin_triangle, "
                    "slit_disc, one_slit_disc, wiggly_disc, k_hole_disc, "
                    "channel_join");
    cmd->add_option("--param", d.param,
                    "Family parameter (radius, inner radius, aspect, slit "
                    "count, slit length, amplitude, hole count, channel width)");
    cmd->add_option("--domain", d.domain_file, "Domain JSON file");
    cmd->add_option("--h", d.h_text,
                    "Grid step, decimal or fraction like 1/256 "
                    "(default: family policy, or bounding box / 64)");
    cmd->add_option("--k", d.k,
                    "Hole budget of the class the domain is checked in "
                    "(default: the family's construction)");
    if (with_q) cmd->add_option("--q", d.q, "Torsion exponent in (0, 1/2]");
}

struct ResolvedDomain {
    PlanarDomain domain;
    double h = 0.0;
    int k = 0;
    std::string label;
};

// Unit fraction 1/m at or below the requested step.
double nice_unit_fraction(double h) {
    return 1.0 / std::ceil(1.0 / h);
}

ResolvedDomain resolve_domain(const DomainOptions& d) {
    if (d.family.empty() == d.domain_file.empty())
        throw std::invalid_argument(
            "exactly one of --family and --domain is required");
    ResolvedDomain r;
    if (!d.family.empty()) {
        const FamilySpec spec{parse_family(d.family), d.param};
        r.domain = generate(spec);
        r.h = default_resolution(spec);
        r.k = declared_bounded_complement(spec);
        r.label = d.family;
    } else {
        r.domain = load_domain(d.domain_file);
        const BoundingBox box = bounding_box(r.domain);
        r.h = nice_unit_fraction(std::min(box.width(), box.height()) / 64.0);
        r.k = 0;
        r.label = std::filesystem::path(d.domain_file).filename().string();
    }
    if (!d.h_text.empty()) r.h = parse_resolution(d.h_text);
    if (d.k >= 0) r.k = d.k;
    if (!(d.q > 0.0 && d.q <= 0.5))
        throw std::invalid_argument("--q must lie in (0, 1/2]");
    return r;
}

std::string resolve_out_dir(const std::string& flag) {
    std::string dir = flag;
    if (dir.empty()) {
        if (const char* env = std::getenv("SHAPELAB_OUT"); env && *env)
            dir = env;
        else
            dir = ".";
    }
    std::filesystem::create_directories(dir);
    return dir;
}

JsonValue measure_json(const MeasureReport& m) {
    JsonValue j = JsonValue::object();
    j.set("area", JsonValue::number(m.area));
    j.set("perimeter", JsonValue::number(m.perimeter));
    j.set("boundary_h1", JsonValue::number(m.boundary_h1));
    j.set("slit_length", JsonValue::number(m.slit_length));
    j.set("relaxed_perimeter_lower", JsonValue::number(m.pk_lower));
    j.set("relaxed_perimeter_upper", JsonValue::number(m.pk_upper));
    return j;
}

JsonValue report_json(const InequalityReport& r) {
    JsonValue j = JsonValue::object();
    j.set("name", JsonValue::string(r.name));
    j.set("lhs", JsonValue::number(r.lhs));
    j.set("rhs", JsonValue::number(r.rhs));
    j.set("margin", JsonValue::number(r.margin));
    j.set("tolerance", JsonValue::number(r.tolerance));
    j.set("pass", JsonValue::boolean(r.pass));
    j.set("near_equality", JsonValue::boolean(r.near_equality));
    return j;
}

JsonValue config_json(const ResolvedDomain& r, const DomainOptions& d) {
    JsonValue j = JsonValue::object();
    j.set("input", JsonValue::string(r.label));
    if (!d.family.empty()) j.set("param", JsonValue::number(d.param));
    j.set("h", JsonValue::number(r.h));
    j.set("q", JsonValue::number(d.q));
    j.set("k", JsonValue::integer(r.k));
    return j;
}

JsonValue params_json(const ShapeParams& p) {
    JsonValue j = JsonValue::object();
    j.set("a0", JsonValue::number(p.a0));
    JsonValue cosj = JsonValue::array();
    for (double c : p.cos_coeff) cosj.push(JsonValue::number(c));
    JsonValue sinj = JsonValue::array();
    for (double s : p.sin_coeff) sinj.push(JsonValue::number(s));
    j.set("cos", std::move(cosj));
    j.set("sin", std::move(sinj));
    JsonValue holes = JsonValue::array();
    for (const auto& hole : p.holes) {
        JsonValue hj = JsonValue::object();
        hj.set("x", JsonValue::number(hole.x));
        hj.set("y", JsonValue::number(hole.y));
        hj.set("r", JsonValue::number(hole.r));
        holes.push(std::move(hj));
    }
    j.set("holes", std::move(holes));
    return j;
}

// Warm start for optimize --resume: the "best" block of a previous artifact.
ShapeParams params_from_artifact(const std::string& path) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(read_text_file(path));
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(std::string("resume artifact: ") + e.what());
    }
    if (!j.contains("best") || !j["best"].is_object())
        throw std::invalid_argument("resume artifact: no \"best\" parameter block");
    const nlohmann::json& b = j["best"];
    ShapeParams p;
    p.a0 = b.at("a0").get<double>();
    for (const auto& v : b.at("cos")) p.cos_coeff.push_back(v.get<double>());
    for (const auto& v : b.at("sin")) p.sin_coeff.push_back(v.get<double>());
    if (b.contains("holes"))
        for (const auto& hj : b["holes"])
            p.holes.push_back({hj.at("x").get<double>(), hj.at("y").get<double>(),
                               hj.at("r").get<double>()});
    return p;
}

int run_compute(const DomainOptions& d, const std::string& out_flag,
                double rel_tol) {
    const ResolvedDomain r = resolve_domain(d);
    const std::string dir = resolve_out_dir(out_flag);
    const MeasureReport m = measure(r.domain);
    SolverOptions opts;
    opts.rel_tol = rel_tol;
    const RichardsonTorsion rt = richardson_torsion(r.domain, r.h, opts);
    const FunctionalValue v = evaluate(m, rt.T_extrapolated, d.q, r.k);

    JsonValue j = JsonValue::object();
    j.set("schema", JsonValue::string("shapelab/compute/v1"));
    j.set("config", config_json(r, d));
    j.set("measure", measure_json(m));
    JsonValue tj = JsonValue::object();
    tj.set("h", JsonValue::number(r.h));
    tj.set("T_coarse", JsonValue::number(rt.T_coarse));
    tj.set("T_fine", JsonValue::number(rt.T_fine));
    tj.set("T", JsonValue::number(rt.T_extrapolated));
    tj.set("iterations_coarse", JsonValue::integer(rt.coarse_iterations));
    tj.set("iterations_fine", JsonValue::integer(rt.fine.iterations));
    tj.set("rel_residual", JsonValue::number(rt.fine.rel_residual));
    j.set("torsion", std::move(tj));
    JsonValue fj = JsonValue::object();
    fj.set("F_q", JsonValue::number(v.F_q));
    fj.set("F_qk_lower", JsonValue::number(v.F_qk_lower));
    fj.set("F_qk_upper", JsonValue::number(v.F_qk_upper));
    j.set("functional", std::move(fj));

    const std::string path = dir + "/compute.json";
    write_text_file(path, j.dump() + "\n");
    std::printf("T = %s  F_q = %s  -> %s\n", format_double(rt.T_extrapolated).c_str(),
                format_double(v.F_q).c_str(), path.c_str());
    return 0;
}

int run_verify(const DomainOptions& d, const std::string& out_flag,
               double rel_tol, int samples) {
    const ResolvedDomain r = resolve_domain(d);
    const std::string dir = resolve_out_dir(out_flag);
    const MeasureReport m = measure(r.domain);
    SolverOptions opts;
    opts.rel_tol = rel_tol;
    const RichardsonTorsion rt = richardson_torsion(r.domain, r.h, opts);
    const double T = rt.T_extrapolated;
    // The torsion run already validated the half-step mask; the profile
    // reads its distances so both sides of every chained bound share one
    // grid.
    const DistanceField field = distance_field(rasterize(r.domain, 0.5 * r.h));
    const ParallelProfile prof = profile(field, samples);
    const double rho = field.max_distance;

    std::vector<InequalityReport> reports;
    reports.push_back(isoperimetric(m));
    reports.push_back(saint_venant(m, T));
    for (auto& rep : polya_reports(m, T, rho, r.k)) reports.push_back(rep);
    reports.push_back(f_half_report(m, T, r.k));
    const FunctionalValue v = evaluate(m, T, d.q, r.k);
    if (auto u = universal_bound_report(v)) reports.push_back(*u);
    for (auto& rep : geometric_reports(m, rho, r.k)) reports.push_back(rep);

    // Profile-level checks, reported as worst-excess <= allowed-slack.
    const ConcavityCheck cc = check_concavity(prof);
    reports.push_back(
        make_report("area_profile_concavity", cc.worst, cc.tolerance, 0.0));
    const PerimeterGrowthCheck pg = check_perimeter_growth(prof, r.k);
    reports.push_back(
        make_report("length_profile_growth", pg.worst_excess, pg.tolerance, 0.0));
    const AreaBoundCheck ab = check_area_bound(prof, r.k);
    reports.push_back(
        make_report("area_profile_bound", ab.worst_excess, ab.tolerance, 0.0));
    const TorsionBounds tb = torsion_bounds(prof, m, r.k);
    reports.push_back(
        make_report("torsion_chain_width_parallel", tb.T_polya_lb,
                    tb.T_parallel_lb, 0.02));
    reports.push_back(
        make_report("torsion_chain_parallel_solver", tb.T_parallel_lb, T, 0.02));

    bool all_pass = true;
    for (const auto& rep : reports) all_pass = all_pass && rep.pass;

    JsonValue j = JsonValue::object();
    j.set("schema", JsonValue::string("shapelab/verify/v1"));
    j.set("config", config_json(r, d));
    j.set("measure", measure_json(m));
    JsonValue tj = JsonValue::object();
    tj.set("T", JsonValue::number(T));
    tj.set("rho", JsonValue::number(rho));
    tj.set("T_parallel_lb", JsonValue::number(tb.T_parallel_lb));
    tj.set("T_polya_lb", JsonValue::number(tb.T_polya_lb));
    tj.set("D_k", JsonValue::number(tb.D_k));
    j.set("torsion", std::move(tj));
    JsonValue arr = JsonValue::array();
    for (const auto& rep : reports) arr.push(report_json(rep));
    j.set("reports", std::move(arr));
    j.set("all_pass", JsonValue::boolean(all_pass));

    const std::string path = dir + "/verify.json";
    write_text_file(path, j.dump() + "\n");
    for (const auto& rep : reports)
        std::printf("%-32s %s  lhs=%s rhs=%s\n", rep.name.c_str(),
                    rep.pass ? "pass" : "FAIL", format_double(rep.lhs).c_str(),
                    format_double(rep.rhs).c_str());
    std::printf("%s -> %s\n", all_pass ? "all pass" : "FAILURES", path.c_str());
    return all_pass ? 0 : 1;
}

int run_profile(const DomainOptions& d, const std::string& out_flag,
                int samples) {
    const ResolvedDomain r = resolve_domain(d);
    const std::string dir = resolve_out_dir(out_flag);
    const RasterMask mask = rasterize(r.domain, r.h);
    const DistanceField field = distance_field(mask);
    const ParallelProfile prof = profile(field, samples);

    std::string csv = "t,A,L_diff,L_contour,g\n";
    for (int i = 0; i < prof.samples(); ++i) {
        csv += format_double(prof.t[i]) + "," + format_double(prof.area[i]) +
               "," + format_double(prof.length_diff[i]) + "," +
               format_double(prof.length_contour[i]) + "," +
               format_double(prof.g[i]) + "\n";
    }
    const std::string csv_path = dir + "/profile.csv";
    write_text_file(csv_path, csv);

    // Tube radii for the boundary-content estimates: decreasing, all > 2h.
    const std::vector<double> radii = {16.0 * r.h, 8.0 * r.h, 4.0 * r.h};
    const MinkowskiReport mink = minkowski_estimates(mask, radii);
    JsonValue j = JsonValue::object();
    j.set("schema", JsonValue::string("shapelab/profile/v1"));
    j.set("config", config_json(r, d));
    j.set("rho", JsonValue::number(prof.rho));
    j.set("alpha", JsonValue::number(prof.alpha));
    j.set("p_eff", JsonValue::number(prof.p_eff));
    JsonValue mj = JsonValue::object();
    auto push_all = [](const std::vector<double>& v) {
        JsonValue a = JsonValue::array();
        for (double x : v) a.push(JsonValue::number(x));
        return a;
    };
    mj.set("r", push_all(mink.r));
    mj.set("two_sided", push_all(mink.two_sided));
    mj.set("outer", push_all(mink.outer));
    mj.set("inner_quotient", push_all(mink.inner_quotient));
    mj.set("two_sided_limit", JsonValue::number(mink.two_sided_limit));
    mj.set("outer_limit", JsonValue::number(mink.outer_limit));
    mj.set("inner_limit", JsonValue::number(mink.inner_limit));
    j.set("minkowski", std::move(mj));
    const std::string json_path = dir + "/profile.json";
    write_text_file(json_path, j.dump() + "\n");
    std::printf("rho = %s  -> %s, %s\n", format_double(prof.rho).c_str(),
                csv_path.c_str(), json_path.c_str());
    return 0;
}

int run_sweep(const std::string& family, const std::vector<double>& ramp,
              double q, const std::string& out_flag) {
    if (ramp.size() < 4)
        throw std::invalid_argument("--ramp needs at least 4 values");
    const FamilyKind kind = parse_family(family);
    const std::string dir = resolve_out_dir(out_flag);
    const TrendTable table = run_sequence(kind, ramp, q);

    std::string csv =
        "param,h,area,perimeter,boundary_h1,slit_length,rho,T,F_q,"
        "F_qk_lower,F_qk_upper,co_hausdorff_ref\n";
    for (const TrendRow& row : table.rows) {
        csv += format_double(row.param) + "," + format_double(row.h) + "," +
               format_double(row.area) + "," + format_double(row.perimeter) +
               "," + format_double(row.boundary_h1) + "," +
               format_double(row.slit_length) + "," + format_double(row.rho) +
               "," + format_double(row.T) + "," + format_double(row.F_q) + "," +
               format_double(row.F_qk_lower) + "," +
               format_double(row.F_qk_upper) + "," +
               format_double(row.co_hausdorff_to_ref) + "\n";
    }
    const std::string csv_path = dir + "/sweep.csv";
    write_text_file(csv_path, csv);

    JsonValue j = JsonValue::object();
    j.set("schema", JsonValue::string("shapelab/sweep/v1"));
    JsonValue cj = JsonValue::object();
    cj.set("family", JsonValue::string(family));
    JsonValue rampj = JsonValue::array();
    for (double p : ramp) rampj.push(JsonValue::number(p));
    cj.set("ramp", std::move(rampj));
    cj.set("q", JsonValue::number(q));
    j.set("config", std::move(cj));
    j.set("T_strictly_decreasing", JsonValue::boolean(table.T_strictly_decreasing));
    j.set("F_strictly_decreasing", JsonValue::boolean(table.F_strictly_decreasing));
    j.set("F_strictly_increasing", JsonValue::boolean(table.F_strictly_increasing));
    j.set("h1_strictly_increasing", JsonValue::boolean(table.h1_strictly_increasing));
    j.set("perimeter_rel_spread", JsonValue::number(table.perimeter_rel_spread));
    j.set("F_last_over_first", JsonValue::number(table.F_last_over_first));
    const std::string json_path = dir + "/sweep.json";
    write_text_file(json_path, j.dump() + "\n");
    std::printf("%zu rows -> %s, %s\n", table.rows.size(), csv_path.c_str(),
                json_path.c_str());
    return 0;
}

int run_optimize(const OptimizationConfig& config, const std::string& out_flag,
                 const std::optional<ShapeParams>& start) {
    const std::string dir = resolve_out_dir(out_flag);
    const OptimizationRun run = optimize_shape(config, start);

    JsonValue j = JsonValue::object();
    j.set("schema", JsonValue::string("shapelab/optimize/v1"));
    JsonValue cj = JsonValue::object();
    cj.set("q", JsonValue::number(config.q));
    cj.set("k", JsonValue::integer(config.k));
    cj.set("budget", JsonValue::integer(config.budget));
    cj.set("seed", JsonValue::integer(static_cast<long long>(config.seed)));
    cj.set("h_coarse", JsonValue::number(config.h_coarse));
    cj.set("h_fine", JsonValue::number(config.h_fine));
    cj.set("modes", JsonValue::integer(config.modes));
    j.set("config", std::move(cj));
    j.set("universal_bound", JsonValue::number(run.universal_bound));
    j.set("initial", params_json(run.initial));
    j.set("initial_fine", JsonValue::number(run.initial_fine));
    j.set("best", params_json(run.best));
    j.set("best_coarse", JsonValue::number(run.best_coarse));
    j.set("best_fine", JsonValue::number(run.best_fine));
    j.set("gap", JsonValue::number(run.gap));
    j.set("bound_violation", JsonValue::boolean(run.bound_violation));
    j.set("restarts", JsonValue::integer(run.restarts));
    j.set("infeasible_count", JsonValue::integer(run.infeasible_count));
    j.set("solver_failures", JsonValue::integer(run.solver_failures));
    JsonValue hist = JsonValue::array();
    for (const EvalRecord& e : run.history) {
        JsonValue ej = JsonValue::object();
        ej.set("value", JsonValue::number(e.value));
        ej.set("feasible", JsonValue::boolean(e.feasible));
        hist.push(std::move(ej));
    }
    j.set("history", std::move(hist));

    const std::string path = dir + "/optimize.json";
    write_text_file(path, j.dump() + "\n");
    std::printf("best F_q = %s (start %s, bound %s) -> %s\n",
                format_double(run.best_fine).c_str(),
                format_double(run.initial_fine).c_str(),
                format_double(run.universal_bound).c_str(), path.c_str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"shapelab: torsion, perimeter and shape-functional laboratory "
                 "for planar domains with holes and slits"};
    app.set_help_flag("--help", "Print usage");
    app.require_subcommand(1);
    app.fallthrough();  // `--out` and `--threads` may follow the subcommand

    std::string out_flag;
    int threads = 1;
    app.add_option("--out", out_flag,
                   "Output directory (default: $SHAPELAB_OUT or .)");
    app.add_option("--threads", threads,
                   "Upper bound on worker threads (this build is sequential)")
        ->check(CLI::PositiveNumber);

    DomainOptions dom;
    double rel_tol = 1e-8;
    int samples = 96;

    CLI::App* compute = app.add_subcommand(
        "compute", "Measure a domain, solve for torsion, evaluate F_q");
    add_domain_flags(compute, dom);
    compute->add_option("--rel-tol", rel_tol, "Solver relative residual");

    CLI::App* verify = app.add_subcommand(
        "verify", "Run the full inequality suite (exit 1 on any failure)");
    add_domain_flags(verify, dom);
    verify->add_option("--rel-tol", rel_tol, "Solver relative residual");
    verify->add_option("--samples", samples, "Profile sample count");

    CLI::App* profile_cmd = app.add_subcommand(
        "profile", "Interior parallel profile CSV and boundary-content limits");
    add_domain_flags(profile_cmd, dom, /*with_q=*/false);
    profile_cmd->add_option("--samples", samples, "Profile sample count");

    std::string sweep_family;
    std::vector<double> ramp;
    double sweep_q = 0.5;
    CLI::App* sweep = app.add_subcommand(
        "sweep", "Family parameter ramp; trend table CSV");
    sweep->set_help_flag("--help", "Print usage");
    sweep->add_option("--family", sweep_family, "Family name")->required();
    sweep->add_option("--ramp", ramp, "Comma-separated parameter ramp")
        ->required()
        ->delimiter(',');
    sweep->add_option("--q", sweep_q, "Torsion exponent in (0, 1/2]");

    OptimizationConfig oc;
    std::string h_coarse_text, h_fine_text;
    CLI::App* optimize = app.add_subcommand(
        "optimize", "Minimize F_q over radial Fourier shapes with round holes");
    optimize->set_help_flag("--help", "Print usage");
    optimize->add_option("--q", oc.q, "Torsion exponent in (0, 1/2)");
    optimize->add_option("--k", oc.k, "Number of holes in the parametrization");
    optimize->add_option("--budget", oc.budget, "Coarse objective evaluations");
    optimize->add_option("--seed", oc.seed, "Simplex jitter seed");
    optimize->add_option("--h-coarse", h_coarse_text, "Search grid step");
    optimize->add_option("--h-fine", h_fine_text, "Re-evaluation grid step");
    optimize->add_option("--modes", oc.modes, "Radial Fourier modes");
    std::string resume_path;
    optimize->add_option("--resume", resume_path,
                         "Warm-start from a previous optimize.json artifact");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (compute->parsed()) return run_compute(dom, out_flag, rel_tol);
        if (verify->parsed()) return run_verify(dom, out_flag, rel_tol, samples);
        if (profile_cmd->parsed()) return run_profile(dom, out_flag, samples);
        if (sweep->parsed()) return run_sweep(sweep_family, ramp, sweep_q, out_flag);
        if (optimize->parsed()) {
            if (!h_coarse_text.empty()) oc.h_coarse = parse_resolution(h_coarse_text);
            if (!h_fine_text.empty()) oc.h_fine = parse_resolution(h_fine_text);
            std::optional<ShapeParams> start;
            if (!resume_path.empty()) start = params_from_artifact(resume_path);
            return run_optimize(oc, out_flag, start);
        }
    } catch (const SolverFailure& e) {
        std::fprintf(stderr, "solver failure: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 2;
}
