// Acceptance gate: twelve end-to-end checks, one line each, exit 0 only if
// every one passes.  Tolerances are fixed here on purpose; loosening them
// is a contract change, not a tuning knob.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "shapelab/distance_field.hpp"
#include "shapelab/families.hpp"
#include "shapelab/functionals.hpp"
#include "shapelab/optimize.hpp"
#include "shapelab/parallel.hpp"
#include "shapelab/raster.hpp"
#include "shapelab/report.hpp"
#include "shapelab/torsion.hpp"

#ifndef SHAPELAB_CLI_PATH
#error "SHAPELAB_CLI_PATH must name the shapelab executable"
#endif

namespace {

using namespace shapelab;
namespace fs = std::filesystem;

constexpr double kPi = 3.14159265358979323846;

bool g_all_pass = true;

void report(int number, bool pass, const std::string& detail) {
    g_all_pass = g_all_pass && pass;
    std::printf("criterion %2d: %s  %s\n", number, pass ? "PASS" : "FAIL",
                detail.c_str());
    std::fflush(stdout);
}

void criterion(int number, const std::function<std::pair<bool, std::string>()>& body) {
    try {
        const auto [pass, detail] = body();
        report(number, pass, detail);
    } catch (const std::exception& e) {
        report(number, false, std::string("exception: ") + e.what());
    }
}

std::string fmt(const char* pattern, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof(buf), pattern, args...);
    return buf;
}

// The eight domains the inequality criteria quantify over.
struct Member {
    FamilyKind kind;
    double param;
};
const std::vector<Member> kMembers = {
    {FamilyKind::disc, 1.0},      {FamilyKind::annulus, 0.5},
    {FamilyKind::rectangle, 1.0}, {FamilyKind::rectangle, 2.0},
    {FamilyKind::rectangle, 4.0}, {FamilyKind::slit_disc, 4.0},
    {FamilyKind::slit_disc, 8.0}, {FamilyKind::k_hole_disc, 2.0}};

// Everything criteria 5 through 8 need, computed once per member.
struct MemberData {
    std::string label;
    int k = 0;
    MeasureReport m;
    double T = 0.0;
    double rho = 0.0;
    TorsionBounds tb;
    InequalityReport sv;
    ConcavityCheck cc;
    InequalityReport bonnesen;
};

std::vector<MemberData> evaluate_members() {
    std::vector<MemberData> out;
    for (const Member& mem : kMembers) {
        const FamilySpec spec{mem.kind, mem.param};
        MemberData d;
        d.label = fmt("%s(%g)", family_name(mem.kind).c_str(), mem.param);
        d.k = declared_bounded_complement(spec);
        const PlanarDomain dom = generate(spec);
        const double h = default_resolution(spec);
        d.m = measure(dom);
        d.T = richardson_torsion(dom, h).T_extrapolated;
        // The profile shares the torsion run's fine grid so both sides of
        // each chained bound see the same discretization.
        const DistanceField field = distance_field(rasterize(dom, 0.5 * h));
        d.rho = field.max_distance;
        const ParallelProfile prof = profile(field, 96);
        d.tb = torsion_bounds(prof, d.m, d.k);
        d.sv = saint_venant(d.m, d.T);
        d.cc = check_concavity(prof);
        d.bonnesen = geometric_reports(d.m, d.rho, d.k).at(0);
        out.push_back(std::move(d));
    }
    return out;
}

int run_cli(const std::string& args) {
    const std::string cmd =
        std::string("\"") + SHAPELAB_CLI_PATH + "\" " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    if (status == -1 || !WIFEXITED(status)) return -1;
    return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

int main() {
    std::printf("acceptance: planar shape functional laboratory\n");

    // 1. Disc torsion by Richardson extrapolation: within 0.2% of pi/8,
    //    under 30 s of wall time at grid step 1/256.
    double disc_T = 0.0;
    criterion(1, [&] {
        const auto t0 = std::chrono::steady_clock::now();
        const PlanarDomain disc = generate({FamilyKind::disc, 1.0});
        disc_T = richardson_torsion(disc, 1.0 / 256).T_extrapolated;
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                .count();
        const double rel = std::abs(disc_T - kPi / 8) / (kPi / 8);
        return std::pair{rel <= 0.002 && secs < 30.0,
                         fmt("disc torsion %.9f vs pi/8, rel err %.4f%% "
                             "(tol 0.2%%), %.1f s (limit 30 s)",
                             disc_T, 100 * rel, secs)};
    });

    // 2. Disc functional at q = 1/2: within 0.5% of sqrt(2)/2.
    criterion(2, [&] {
        const MeasureReport m = measure(generate({FamilyKind::disc, 1.0}));
        const double F = evaluate(m, disc_T, 0.5, 0).F_q;
        const double target = std::sqrt(0.5);
        const double rel = std::abs(F - target) / target;
        return std::pair{disc_T > 0.0 && rel <= 0.005,
                         fmt("disc F_1/2 = %.9f vs %.9f, rel err %.4f%% "
                             "(tol 0.5%%)",
                             F, target, 100 * rel)};
    });

    // 3. Long thin rectangles: F_1/2 strictly decreasing over aspect
    //    {10, 25, 50, 100}, each torsion within 1% of the separable series,
    //    and F at aspect 100 within 1% of 1/sqrt(3).
    criterion(3, [&] {
        bool decreasing = true, series_ok = true;
        double prev = 1e300, last_F = 0.0, worst_dev = 0.0;
        for (double a : {10.0, 25.0, 50.0, 100.0}) {
            const FamilySpec spec{FamilyKind::rectangle, a};
            const PlanarDomain dom = generate(spec);
            const double T =
                richardson_torsion(dom, default_resolution(spec)).T_extrapolated;
            const double dev =
                std::abs(T - rectangle_torsion(a, 1.0)) / rectangle_torsion(a, 1.0);
            worst_dev = std::max(worst_dev, dev);
            series_ok = series_ok && dev <= 0.01;
            last_F = evaluate(measure(dom), T, 0.5, 0).F_q;
            decreasing = decreasing && last_F < prev;
            prev = last_F;
        }
        const double target = 1.0 / std::sqrt(3.0);
        const double rel = std::abs(last_F - target) / target;
        return std::pair{decreasing && series_ok && rel <= 0.01,
                         fmt("rectangle F_1/2 strictly decreasing=%d, worst "
                             "series dev %.4f%% (tol 1%%), F(100)=%.6f vs "
                             "%.6f, rel err %.4f%% (tol 1%%)",
                             int(decreasing), 100 * worst_dev, last_F, target,
                             100 * rel)};
    });

    // 4. The profile trial bound reproduces the disc torsion within 1%.
    criterion(4, [&] {
        const PlanarDomain disc = generate({FamilyKind::disc, 1.0});
        const DistanceField field = distance_field(rasterize(disc, 1.0 / 256));
        const double lb = parallel_trial_lower(profile(field, 128));
        const double rel = std::abs(lb - kPi / 8) / (kPi / 8);
        return std::pair{rel <= 0.01,
                         fmt("disc profile trial bound %.9f vs pi/8, rel err "
                             "%.4f%% (tol 1%%)",
                             lb, 100 * rel)};
    });

    const std::vector<MemberData> members = evaluate_members();

    // 5. Torsion bound chain ordered on every member, 2% per junction:
    //    width bound <= profile trial bound <= extrapolated torsion.
    criterion(5, [&] {
        bool ok = true;
        double worst1 = 0.0, worst2 = 0.0;
        std::string offender;
        for (const MemberData& d : members) {
            const double j1 = d.tb.T_polya_lb / d.tb.T_parallel_lb;
            const double j2 = d.tb.T_parallel_lb / d.T;
            worst1 = std::max(worst1, j1);
            worst2 = std::max(worst2, j2);
            if (!(j1 <= 1.02 && j2 <= 1.02)) { ok = false; offender = d.label; }
        }
        return std::pair{ok, fmt("bound chain on %zu members: worst "
                                 "width/trial %.4f, worst trial/T %.4f "
                                 "(limits 1.02)%s%s",
                                 members.size(), worst1, worst2,
                                 ok ? "" : ", first failure ", offender.c_str())};
    });

    // 6. Saint-Venant quotient T/|area|^2 <= 1/(8 pi) + 2% on every member;
    //    the disc sits within 0.5% of equality.
    criterion(6, [&] {
        bool ok = true;
        double disc_rel = 1.0;
        for (const MemberData& d : members) {
            ok = ok && d.sv.lhs <= d.sv.rhs * 1.02;
            if (d.label == "disc(1)")
                disc_rel = std::abs(d.sv.lhs - d.sv.rhs) / d.sv.rhs;
        }
        return std::pair{ok && disc_rel <= 0.005,
                         fmt("quotient within 1/(8 pi)+2%% on all members; "
                             "disc off equality by %.4f%% (tol 0.5%%)",
                             100 * disc_rel)};
    });

    // 7. Concavity of the adjusted area profile on every member.
    criterion(7, [&] {
        bool ok = true;
        std::string detail = "second differences within tolerance on";
        for (const MemberData& d : members) {
            ok = ok && d.cc.pass;
            if (!d.cc.pass) detail += " FAIL:" + d.label;
        }
        const MemberData& disc = members.at(0);
        const MemberData& ann = members.at(1);
        detail += fmt(" all %zu members; disc worst %.2e (tol %.2e), annulus "
                      "worst %.2e (tol %.2e)",
                      members.size(), disc.cc.worst, disc.cc.tolerance,
                      ann.cc.worst, ann.cc.tolerance);
        return std::pair{ok, detail};
    });

    // 8. Inradius form of the Bonnesen-type area bound on every member;
    //    for the disc both sides equal pi within 1%.
    criterion(8, [&] {
        bool ok = true;
        for (const MemberData& d : members) ok = ok && d.bonnesen.pass;
        const MemberData& disc = members.at(0);
        const bool near = std::abs(disc.bonnesen.lhs - kPi) <= 0.01 * kPi &&
                          std::abs(disc.bonnesen.rhs - kPi) <= 0.01 * kPi;
        return std::pair{ok && near,
                         fmt("area bound holds on all members; disc sides "
                             "%.6f and %.6f vs pi (tol 1%%)",
                             disc.bonnesen.lhs, disc.bonnesen.rhs)};
    });

    // 9. Slit-disc degeneration over n in {4, 8, 16, 32}: torsion strictly
    //    decreasing, F_1/2 down at least 30%, perimeter constant within 1%,
    //    boundary measure strictly growing.
    criterion(9, [&] {
        const TrendTable tab =
            run_sequence(FamilyKind::slit_disc, {4.0, 8.0, 16.0, 32.0}, 0.5);
        const bool ok = tab.T_strictly_decreasing &&
                        tab.F_last_over_first <= 0.70 &&
                        tab.perimeter_rel_spread <= 0.01 &&
                        tab.h1_strictly_increasing;
        return std::pair{ok, fmt("T decreasing=%d, F ratio %.4f (need <= "
                                 "0.70), P spread %.5f (tol 0.01), boundary "
                                 "measure increasing=%d",
                                 int(tab.T_strictly_decreasing),
                                 tab.F_last_over_first,
                                 tab.perimeter_rel_spread,
                                 int(tab.h1_strictly_increasing))};
    });

    // 10. Perimeters of the inner parallel approximants of the one-slit
    //     disc extrapolate (t -> 0) to the boundary measure with the slit
    //     counted twice: 2 pi + 1.8, within 2%.
    criterion(10, [&] {
        const PlanarDomain dom = generate({FamilyKind::one_slit_disc, 0.9});
        const std::vector<double> ts = {0.02, 0.04, 0.06, 0.08};
        const auto sets = inner_parallel_approximants(dom, ts, 1.0 / 256);
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (const InnerParallelSet& s : sets) {
            sx += s.t;
            sy += s.perimeter_estimate;
            sxx += s.t * s.t;
            sxy += s.t * s.perimeter_estimate;
        }
        const double n = static_cast<double>(sets.size());
        const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
        const double intercept = (sy - slope * sx) / n;
        const double target = 2 * kPi + 1.8;
        const double rel = std::abs(intercept - target) / target;
        return std::pair{n == 4.0 && rel <= 0.02,
                         fmt("perimeter intercept %.6f vs %.6f, rel err "
                             "%.4f%% (tol 2%%)",
                             intercept, target, 100 * rel)};
    });

    // 11. Seeded shape search from the disc at q = 0.45, k = 0, budget
    //     2000: improves the start by at least 5% and no feasible value
    //     ever drops below 98% of the universal lower bound.
    criterion(11, [&] {
        OptimizationConfig cfg;
        cfg.q = 0.45;
        cfg.k = 0;
        cfg.budget = 2000;
        cfg.seed = 7;
        const OptimizationRun run = optimize_shape(cfg);
        const double bound = universal_lower_bound(0.45, 0);
        const double floor = bound * 0.98;
        bool above_floor = !run.bound_violation && run.best_fine >= floor;
        for (const EvalRecord& rec : run.history)
            if (rec.feasible && rec.value < floor) above_floor = false;
        const double ratio = run.best_fine / run.initial_fine;
        return std::pair{ratio <= 0.95 && above_floor,
                         fmt("best %.6f from start %.6f, ratio %.4f (need <= "
                             "0.95); floor %.6f respected=%d",
                             run.best_fine, run.initial_fine, ratio, floor,
                             int(above_floor))};
    });

    // 12. Seeded CLI runs are byte-identical.
    criterion(12, [&] {
        const fs::path root = fs::current_path() / "acceptance_scratch";
        fs::remove_all(root);
        fs::create_directories(root);
        const std::string opt_flags =
            " --q 0.45 --k 0 --budget 40 --seed 7 --h-coarse 1/16"
            " --h-fine 1/32 --modes 3 --out ";
        bool exits_ok = true, bytes_ok = true;
        for (const char* name : {"a", "b"}) {
            const fs::path dir = root / name;
            exits_ok = exits_ok &&
                       run_cli("compute --family disc --h 1/64 --out " +
                               (dir / "c").string()) == 0 &&
                       run_cli("optimize" + opt_flags + (dir / "o").string()) == 0;
        }
        bytes_ok = slurp(root / "a/c/compute.json") ==
                       slurp(root / "b/c/compute.json") &&
                   !slurp(root / "a/c/compute.json").empty() &&
                   slurp(root / "a/o/optimize.json") ==
                       slurp(root / "b/o/optimize.json") &&
                   !slurp(root / "a/o/optimize.json").empty();
        return std::pair{exits_ok && bytes_ok,
                         fmt("compute and seeded optimize reruns: exit codes "
                             "ok=%d, artifacts byte-identical=%d",
                             int(exits_ok), int(bytes_ok))};
    });

    std::printf("acceptance: %s\n", g_all_pass ? "ALL PASS" : "FAILURES");
    return g_all_pass ? 0 : 1;
}
