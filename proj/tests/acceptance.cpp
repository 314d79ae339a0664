// Acceptance suite: one criterion per run line, each executed at its stated
// tolerance. Criteria whose pinned parameters are analytically unattainable
// (see the packing and concentration measurements printed alongside) are
// still executed faithfully and reported clause by clause, followed by
// demonstration runs of the same pipeline on spectrally matched
// configurations.
//
// Usage: acceptance [--criterion N]...   (no arguments runs all ten)

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <map>
#include <sstream>
#include <vector>

#include "oracles.hpp"
#include "pwframes/experiment.hpp"
#include "pwframes/fourier_line.hpp"
#include "pwframes/frames.hpp"
#include "pwframes/upper_half_plane.hpp"

using namespace pwframes;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Check {
    bool ok = true;
    void require(bool condition, const std::string& label) {
        std::printf("    %-4s %s\n", condition ? "ok" : "FAIL", label.c_str());
        ok = ok && condition;
    }
    void note(const std::string& text) { std::printf("         %s\n", text.c_str()); }
};

std::string fmt(double v) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.6g", v);
    return buffer;
}

int iteration_bound(double contraction, double tol) {
    if (contraction <= 0.0) return 11;
    return static_cast<int>(std::ceil(std::log(tol) / std::log(contraction))) + 10;
}

// ---- pinned hyperbolic setup of criteria 3-5 ------------------------

struct HyperbolicRun {
    ModelPtr model;
    Lattice lattice;
    FrameSystem frame;
};

HyperbolicRun build_hyperbolic(double omega, int kt, int kphi, double rho, int n,
                               MultiplierKind mult, int bound_budget) {
    ModelPtr model = build_helgason_model(omega, kt, kphi);
    Lattice lattice = build_lattice(*model, {-2.0, 2.0, 0.5, 4.0}, rho, 0, 1);
    FamilyParams params;
    FunctionalFamily family = make_functional_family(*model, lattice, FunctionalKind::Dirac,
                                                     params, n, 0.5, 2.0, 7);
    FrameSystem frame = build_frame(family, model, mult, bound_budget);
    return {std::move(model), std::move(lattice), std::move(frame)};
}

// Round-trip clauses shared by criteria 3-5: certification, relative error,
// iteration budget. Returns pass/fail of those clauses.
bool round_trip_clauses(Check& check, const HyperbolicRun& run, const char* tag,
                        double tol, SolverMode mode) {
    const FrameSystem& frame = run.frame;
    check.require(frame.certified(),
                  std::string(tag) + " frame certified (A=" + fmt(frame.bounds().lower) +
                      ", B=" + fmt(frame.bounds().upper) + ")");
    if (!frame.certified()) return false;
    PwFunction truth = random_pw(run.model, 99);
    ReconstructionReport report;
    reconstruct(frame, analysis(frame, truth), tol, 0, mode, &truth, &report);
    const int bound = iteration_bound(frame.contraction(), 1e-8);
    check.require(report.rel_error <= 1e-6, std::string(tag) + " rel_error = " +
                                                fmt(report.rel_error) + " <= 1e-6");
    check.require(report.iterations <= bound,
                  std::string(tag) + " iterations " + std::to_string(report.iterations) +
                      " <= " + std::to_string(bound));
    return check.ok;
}

// ---- criteria -------------------------------------------------------

bool criterion1() {
    Check check;
    const auto t0 = Clock::now();
    auto model = build_fourier_model(0.5, 257, QuadRule::Midpoint);
    BandProfile profile = BandProfile::random(0.5, 6, 11);
    double prev_err = 1.0;
    for (long truncation : {500L, 1000L, 2000L}) {
        const ParsevalReport report = parseval_check(profile, model, truncation);
        const double err = std::abs(report.ratio - 1.0);
        check.require(err <= 1e-2, "J=" + std::to_string(truncation) +
                                       ": |discrete/continuous - 1| = " + fmt(err) +
                                       " <= 1e-2");
        check.require(err <= prev_err, "J=" + std::to_string(truncation) +
                                           ": error improves monotonically");
        prev_err = err;
    }
    const double elapsed = seconds_since(t0);
    check.require(elapsed < 5.0, "runtime " + fmt(elapsed) + " s < 5 s");
    return check.ok;
}

bool criterion2() {
    Check check;
    const auto t0 = Clock::now();
    BandProfile profile = BandProfile::random(0.5, 6, 11);
    std::map<long, Complex> samples;
    for (long j = -2000; j <= 2000; ++j)
        samples[j] = profile.sample(static_cast<double>(j));
    const auto probes = oracles::uniform_reals(100, -8.0, 8.0, 5);
    double prev_err = 0.0;
    for (long truncation : {500L, 1000L, 2000L}) {
        double worst = 0.0;
        for (double x : probes)
            worst = std::max(worst, std::abs(shannon_reconstruct(samples, 0.5, x, truncation) -
                                             profile.sample(x)));
        check.require(worst <= 1e-2, "J=" + std::to_string(truncation) +
                                         ": max error over 100 probes = " + fmt(worst) +
                                         " <= 1e-2");
        if (truncation > 500)
            check.require(worst <= 0.5 * prev_err,
                          "J=" + std::to_string(truncation) + ": halving-rate improvement");
        prev_err = worst;
    }
    const double elapsed = seconds_since(t0);
    check.require(elapsed < 5.0, "runtime " + fmt(elapsed) + " s < 5 s");
    return check.ok;
}

bool criterion3() {
    Check check;
    const auto t0 = Clock::now();
    HyperbolicRun run = build_hyperbolic(2.0, 24, 16, 0.25, 0, MultiplierKind::Shifted, 2500);
    const int k = run.model->node_count();
    const int j_count = static_cast<int>(run.lattice.points.size());
    check.note("hyperbolic box area = 7; hexagonal packing bound for rho/2 = 0.125 is ~517 points");
    check.require(j_count >= 2 * k, "lattice J = " + std::to_string(j_count) +
                                        " >= 2K = " + std::to_string(2 * k));
    round_trip_clauses(check, run, "pinned", 1e-8, SolverMode::Richardson);
    const double elapsed = seconds_since(t0);
    check.require(elapsed < 60.0, "runtime " + fmt(elapsed) + " s < 60 s");

    check.note("demonstration on a box-matched band grid (not the pinned criterion):");
    Check demo;
    const auto t1 = Clock::now();
    HyperbolicRun small = build_hyperbolic(2.0, 2, 2, 0.25, 0, MultiplierKind::Shifted, 200000);
    demo.require(static_cast<int>(small.lattice.points.size()) >=
                     2 * small.model->node_count(),
                 "demo K_t=2, K_phi=2: J = " + std::to_string(small.lattice.points.size()) +
                     " >= 2K = " + std::to_string(2 * small.model->node_count()));
    round_trip_clauses(demo, small, "demo", 1e-8, SolverMode::Richardson);
    demo.require(seconds_since(t1) < 60.0, "demo runtime < 60 s");
    return check.ok;
}

bool derivative_criterion(MultiplierKind mult, const char* name) {
    Check check;
    for (int n : {1, 2}) {
        HyperbolicRun run = build_hyperbolic(2.0, 24, 16, 0.25, n, mult, 2500);
        round_trip_clauses(check, run,
                           (std::string("pinned n=") + std::to_string(n)).c_str(), 1e-8,
                           SolverMode::Richardson);
    }

    check.note(std::string(name) +
               " demonstrations (single-eigenvalue grid, Neumann solver; then a "
               "multi-eigenvalue grid, oracle-certified bounds, CG solver):");
    Check demo;
    for (int n : {1, 2}) {
        HyperbolicRun small = build_hyperbolic(2.0, 2, 2, 0.25, n, mult, 200000);
        round_trip_clauses(demo, small,
                           (std::string("demo K_t=2 n=") + std::to_string(n)).c_str(),
                           1e-8, SolverMode::Richardson);
    }
    for (int n : {1, 2}) {
        HyperbolicRun multi = build_hyperbolic(4.0, 4, 2, 0.25, n, mult, 20000);
        if (!multi.frame.certified()) {
            FrameSystem oracle_frame = oracles::with_oracle_bounds(multi.frame);
            demo.note("power iteration stagnates on the clustered n=" + std::to_string(n) +
                      " spectrum (low-confidence); using eigendecomposition-oracle bounds");
            multi.frame = std::move(oracle_frame);
        }
        round_trip_clauses(demo, multi,
                           (std::string("demo K_t=4 omega=4 n=") + std::to_string(n)).c_str(),
                           1e-12, SolverMode::ConjugateGradient);
    }
    return check.ok;
}

bool criterion4() { return derivative_criterion(MultiplierKind::Shifted, "shifted"); }

bool criterion5() {
    Check check;
    const bool hyperbolic_part = derivative_criterion(MultiplierKind::Pure, "pure");
    check.ok = hyperbolic_part;

    // the same request on a line model whose spectrum reaches zero must be
    // rejected with the documented error
    auto line = build_fourier_model(0.5, 257, QuadRule::Midpoint);  // t = 0 node
    Lattice lattice = oracles::lattice_from_points({0.0, 1.0, 2.0}, 1.0);
    FamilyParams params;
    FunctionalFamily family = make_functional_family(*line, lattice, FunctionalKind::Dirac,
                                                     params, 1, 0.5, 2.0, 1);
    bool rejected = false;
    std::string message;
    try {
        static_cast<void>(build_frame(family, line, MultiplierKind::Pure));
    } catch (const Error& e) {
        rejected = true;
        message = e.what();
    }
    check.require(rejected && message ==
                                  "pure-derivative sampling requires spectrum bounded "
                                  "away from zero",
                  "euclid1d pure request rejected with the documented error");
    return check.ok;
}

bool criterion6() {
    Check check;
    auto model = build_helgason_model(2.0, 24, 16);
    const double band_sup = 2.0 * 2.0 + 0.25;
    bool all_hold = true;
    for (int i = 0; i < 100; ++i) {
        PwFunction f = random_pw(model, 4000 + static_cast<std::uint64_t>(i));
        const double base = norm(f);
        for (double s : {0.5, 1.0, 2.0}) {
            const BernsteinReport report = bernstein_verify(f, s);
            all_hold = all_hold && report.holds &&
                       report.lhs <= std::pow(band_sup, s) * base * (1.0 + 1e-12);
        }
    }
    check.require(all_hold, "100 random f, s in {1/2, 1, 2}: ||D^s f|| <= (w^2+1/4)^s ||f||");

    Eigen::VectorXcd c = Eigen::VectorXcd::Zero(model->node_count());
    int extreme = 0;
    for (const auto& node : model->nodes())
        if (node.eigenvalue == model->max_eigenvalue()) extreme = node.id;
    c[extreme] = Complex(0.7, -0.4);
    PwFunction peak(model, c);
    bool equality = true;
    for (double s : {0.5, 1.0, 2.0}) {
        const BernsteinReport report = bernstein_verify(peak, s);
        equality = equality && std::abs(report.lhs - report.rhs) <= 1e-12 * report.rhs;
    }
    check.require(equality, "extreme-node function attains equality within 1e-12");
    return check.ok;
}

bool criterion7() {
    Check check;
    int system = 0;
    bool all_ok = true;
    const auto audit = [&](const FrameSystem& frame, std::uint64_t seed) {
        ++system;
        const double contraction = frame.contraction();
        PwFunction h = random_pw(frame.model(), seed);
        SolveLog log;
        static_cast<void>(
            invert_frame_operator(frame, h, 1e-10, 0, SolverMode::Richardson, &log));
        bool ok = frame.certified() && log.converged;
        double worst = 0.0;
        for (std::size_t i = 1; i < log.residuals.size(); ++i) {
            const double ratio = log.residuals[i] / log.residuals[i - 1];
            worst = std::max(worst, ratio);
            ok = ok && ratio <= contraction + 0.05;
        }
        std::printf("         system %2d: contraction=%.4f worst residual ratio=%.4f\n",
                    system, contraction, worst);
        all_ok = all_ok && ok;
    };

    for (std::uint64_t seed : {3ULL, 5ULL, 12ULL}) {
        for (double delta : {0.1, 0.2}) {
            auto model = build_fourier_model(0.5, 17, QuadRule::Midpoint);
            auto points = jittered_sample_points(0.5, 12, delta, seed);
            Lattice lattice = oracles::lattice_from_points(points.points, 1.0);
            FamilyParams params;
            auto family = make_functional_family(*model, lattice, FunctionalKind::Dirac,
                                                 params, 0, 0.5, 2.0, 1);
            audit(build_frame(family, model, MultiplierKind::Shifted), 100 + seed);
        }
    }
    audit(build_hyperbolic(2.0, 2, 2, 0.25, 0, MultiplierKind::Shifted, 200000).frame, 201);
    audit(build_hyperbolic(2.0, 2, 2, 0.30, 0, MultiplierKind::Shifted, 200000).frame, 202);
    audit(build_hyperbolic(2.0, 2, 3, 0.25, 0, MultiplierKind::Shifted, 200000).frame, 203);
    audit(build_hyperbolic(2.0, 2, 3, 0.25, 1, MultiplierKind::Pure, 200000).frame, 204);

    check.require(all_ok && system == 10,
                  "10 random certified systems: residual ratios <= (B-A)/B + 0.05");
    return check.ok;
}

bool criterion8() {
    Check check;
    HyperbolicRun run = build_hyperbolic(2.0, 2, 3, 0.25, 0, MultiplierKind::Shifted, 200000);
    const PlancherelPolyaReport report = plancherel_polya_report(run.frame, 100, 4);
    check.require(report.lower - 1e-10 <= report.empirical_lower,
                  "A = " + fmt(report.lower) + " <= A_emp = " + fmt(report.empirical_lower));
    check.require(report.empirical_upper <= report.upper + 1e-10,
                  "B_emp = " + fmt(report.empirical_upper) + " <= B = " + fmt(report.upper));
    check.require(report.noise_gain <= report.noise_gain_bound * 1.1,
                  "noise gain " + fmt(report.noise_gain) + " <= sqrt(B)/A * 1.1 = " +
                      fmt(report.noise_gain_bound * 1.1));
    return check.ok;
}

bool criterion9() {
    Check check;
    auto model = build_helgason_model(2.0, 24, 16);
    PwFunction f = random_pw(model, 5);
    const Point z{1.0, 2.0};
    const LaplacianCheck coarse = laplacian_pointwise_check(f, z, 2e-3);
    const LaplacianCheck fine = laplacian_pointwise_check(f, z, 1e-3);
    check.require(fine.rel_err <= 1e-5,
                  "rel_err at h=1e-3 is " + fmt(fine.rel_err) + " <= 1e-5");
    check.require(fine.rel_err <= coarse.rel_err / 3.0,
                  "halving h reduces the error by >= 3x (observed O(h^2)): " +
                      fmt(coarse.rel_err) + " -> " + fmt(fine.rel_err));
    return check.ok;
}

bool criterion10() {
    Check check;
    // rho grown on the pinned box until J < K
    HyperbolicRun run = build_hyperbolic(2.0, 24, 16, 1.0, 0, MultiplierKind::Shifted, 5000);
    const int k = run.model->node_count();
    check.require(static_cast<int>(run.lattice.points.size()) < k,
                  "J = " + std::to_string(run.lattice.points.size()) + " < K = " +
                      std::to_string(k));
    check.require(run.frame.bounds().lower <= 1e-12 * run.frame.bounds().upper,
                  "A = " + fmt(run.frame.bounds().lower) + " <= 1e-12 * B");
    check.require(!run.frame.certified(), "certification fails");

    bool refused = false;
    try {
        static_cast<void>(reconstruct(run.frame, Eigen::VectorXcd::Zero(run.frame.size()),
                                      1e-8));
    } catch (const NotCertifiedError&) {
        refused = true;
    }
    check.require(refused, "reconstruction refused for the uncertified frame");

    // the harness exits with code 2 and writes the failure flag
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "pwframes_acceptance_c10";
    fs::remove_all(dir);
    ExperimentConfig config = load_config_string(R"json({
      "model": {"kind": "hyperbolic", "omega": 2.0, "K_t": 24, "K_phi": 16},
      "domain": {"x": [-2.0, 2.0], "y": [0.5, 4.0]},
      "rho": 1.0,
      "seed": 1
    })json");
    const CommandResult result = cmd_reconstruct(config, dir.string());
    check.require(result.exit_code == 2, "cmd_reconstruct exit code 2");
    return check.ok;
}

struct Criterion {
    int id;
    const char* title;
    bool (*run)();
};

const Criterion kCriteria[] = {
    {1, "Parseval discrete-vs-continuous norm", criterion1},
    {2, "Shannon cardinal-series reconstruction", criterion2},
    {3, "hyperbolic round-trip reconstruction", criterion3},
    {4, "derivative sampling (shifted multiplier)", criterion4},
    {5, "pure-derivative sampling", criterion5},
    {6, "Bernstein inequality", criterion6},
    {7, "Neumann contraction", criterion7},
    {8, "Plancherel-Polya bounds and noise stability", criterion8},
    {9, "Laplacian finite-difference consistency", criterion9},
    {10, "rank-deficiency failure detection", criterion10},
};

}  // namespace

int main(int argc, char** argv) {
    std::vector<int> selected;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc)
            selected.push_back(std::atoi(argv[++i]));
    }

    int failures = 0;
    for (const Criterion& criterion : kCriteria) {
        if (!selected.empty() &&
            std::find(selected.begin(), selected.end(), criterion.id) == selected.end())
            continue;
        std::printf("criterion %d: %s\n", criterion.id, criterion.title);
        const bool ok = criterion.run();
        std::printf("criterion %d: %s\n", criterion.id, ok ? "PASS" : "FAIL");
        if (!ok) ++failures;
    }
    if (failures > 0) std::printf("%d criterion(s) failed\n", failures);
    return failures > 0 ? 1 : 0;
}
