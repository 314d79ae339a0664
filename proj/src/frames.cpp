#include "pwframes/frames.hpp"

#include <cmath>
#include <limits>
#include <random>

#include <json.hpp>

namespace pwframes {

namespace {

// <a, b> with the Plancherel weights; fixed evaluation order.
Complex wdot(const Eigen::VectorXd& w, const Eigen::VectorXcd& a,
             const Eigen::VectorXcd& b) {
    Complex acc(0.0, 0.0);
    for (Eigen::Index m = 0; m < w.size(); ++m) acc += w[m] * a[m] * std::conj(b[m]);
    return acc;
}

double wnorm(const Eigen::VectorXd& w, const Eigen::VectorXcd& a) {
    return std::sqrt(std::max(0.0, wdot(w, a, a).real()));
}

Eigen::VectorXcd apply_weights(const Eigen::VectorXd& w, const Eigen::VectorXcd& c) {
    Eigen::VectorXcd out(c.size());
    for (Eigen::Index m = 0; m < c.size(); ++m) out[m] = w[m] * c[m];
    return out;
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
    return seed ^ (0x9e3779b97f4a7c15ULL * (stream + 1));
}

Eigen::VectorXcd random_unit(Eigen::Index n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::VectorXcd v(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double re = gauss(rng);
        const double im = gauss(rng);
        v[i] = Complex(re, im);
    }
    const double nv = v.norm();
    if (nv > 0.0) v /= nv;
    return v;
}

struct PowerEstimate {
    double value = 0.0;
    double residual = 0.0;
    int iterations = 0;
    bool converged = false;
};

// Power iteration with Rayleigh quotients in the weighted geometry. The
// operator is self-adjoint, so the quotient converges from below and the
// eigen-residual bounds the estimate's distance to the spectrum.
template <typename Op>
PowerEstimate power_iterate(const Op& apply, const Eigen::VectorXd& w, int max_iterations,
                            std::uint64_t seed, double scale_hint) {
    PowerEstimate est;
    Eigen::VectorXcd v = random_unit(w.size(), seed);
    const double nv = wnorm(w, v);
    if (nv > 0.0) v /= nv;

    double best_residual = std::numeric_limits<double>::infinity();
    int stagnant = 0;
    for (int it = 1; it <= max_iterations; ++it) {
        est.iterations = it;
        const Eigen::VectorXcd u = apply(v);
        est.value = wdot(w, u, v).real();
        est.residual = wnorm(w, u - est.value * v);
        const double scale = std::max(std::abs(est.value), scale_hint);
        if (est.residual <= 1e-13 * std::max(scale, 1e-300)) {
            est.converged = true;
            break;
        }
        if (est.residual >= 0.9999 * best_residual) {
            if (++stagnant >= 64) break;
        } else {
            stagnant = 0;
        }
        best_residual = std::min(best_residual, est.residual);
        const double nu = wnorm(w, u);
        if (nu == 0.0) {
            est.value = 0.0;
            est.residual = 0.0;
            est.converged = true;
            break;
        }
        v = u / nu;
    }
    return est;
}

}  // namespace

FrameSystem::FrameSystem(ModelPtr model, Eigen::MatrixXcd representers,
                         int derivative_order, MultiplierKind multiplier,
                         FrameBounds bounds, bool certified)
    : model_(std::move(model)),
      representers_(std::move(representers)),
      derivative_order_(derivative_order),
      multiplier_(multiplier),
      bounds_(std::move(bounds)),
      certified_(certified) {
    if (!model_) throw Error("null model");
    if (representers_.rows() != model_->node_count())
        throw Error("representer matrix does not match the model's node count");
    if (representers_.cols() < 1) throw Error("frame needs at least one representer");
}

double FrameSystem::contraction() const {
    if (!(bounds_.upper > 0.0)) return 1.0;
    return (bounds_.upper - bounds_.lower) / bounds_.upper;
}

PwFunction FrameSystem::representer_function(int j) const {
    if (j < 0 || j >= size()) throw Error("representer index out of range");
    return PwFunction(model_, representers_.col(j));
}

FrameSystem build_frame(const FunctionalFamily& family, const ModelPtr& model,
                        MultiplierKind multiplier, int bound_iterations,
                        std::uint64_t bound_seed) {
    if (family.functionals.empty()) throw Error("family needs at least one functional");
    if (multiplier == MultiplierKind::Pure && !(model->min_eigenvalue() > 0.0))
        throw Error("pure-derivative sampling requires spectrum bounded away from zero");

    const int k = model->node_count();
    const int j_count = static_cast<int>(family.functionals.size());
    Eigen::MatrixXcd reps(k, j_count);
    for (int j = 0; j < j_count; ++j)
        reps.col(j) =
            representer(family.functionals[j], family.derivative_order, model, multiplier)
                .coeff();

    FrameSystem probe(model, reps, family.derivative_order, multiplier, FrameBounds{}, false);
    FrameBounds bounds = estimate_frame_bounds(probe, bound_iterations, bound_seed);
    // Unconverged estimates cannot certify: a wrong lower bound would void
    // the contraction guarantee of the inversion.
    const bool certified = j_count >= k && bounds.upper > 0.0 &&
                           bounds.lower > kCertifyThreshold * bounds.upper &&
                           !bounds.low_confidence;
    return FrameSystem(model, std::move(reps), family.derivative_order, multiplier,
                       std::move(bounds), certified);
}

Eigen::VectorXcd analysis(const FrameSystem& frame, const PwFunction& f) {
    if (f.model() != frame.model()) throw Error("incompatible spectral models");
    const Eigen::VectorXd& w = frame.model()->weights();
    return frame.representers().adjoint() * apply_weights(w, f.coeff());
}

PwFunction synthesis(const FrameSystem& frame, const Eigen::VectorXcd& v) {
    if (v.size() != frame.size())
        throw Error("coefficient sequence length does not match frame size");
    return PwFunction(frame.model(), frame.representers() * v);
}

PwFunction frame_operator(const FrameSystem& frame, const PwFunction& f) {
    return synthesis(frame, analysis(frame, f));
}

FrameBounds estimate_frame_bounds(const FrameSystem& frame, int iterations,
                                  std::uint64_t seed) {
    if (iterations < 1) throw Error("iteration budget must be positive");
    const Eigen::VectorXd& w = frame.model()->weights();
    const Eigen::MatrixXcd& r = frame.representers();
    const auto apply_f = [&](const Eigen::VectorXcd& c) -> Eigen::VectorXcd {
        return r * (r.adjoint() * apply_weights(w, c));
    };

    FrameBounds bounds;
    const PowerEstimate top = power_iterate(apply_f, w, iterations, mix_seed(seed, 0), 0.0);
    bounds.upper = top.value + top.residual;
    bounds.iterations_upper = top.iterations;
    bounds.residual_upper = top.residual;

    if (frame.size() < frame.model()->node_count()) {
        // Rank audit: fewer functionals than dimensions cannot be a frame.
        bounds.lower = 0.0;
        bounds.method = "power_iteration; rank-deficient (J < K)";
        bounds.low_confidence = top.residual > 1e-10 * std::max(bounds.upper, 1e-300);
        return bounds;
    }

    const double shift = bounds.upper;
    const auto apply_shifted = [&](const Eigen::VectorXcd& c) -> Eigen::VectorXcd {
        return shift * c - apply_f(c);
    };
    const PowerEstimate bottom =
        power_iterate(apply_shifted, w, iterations, mix_seed(seed, 1), shift);
    bounds.lower = std::max(0.0, shift - bottom.value - bottom.residual);
    bounds.iterations_lower = bottom.iterations;
    bounds.residual_lower = bottom.residual;
    bounds.method = "power_iteration";
    const double scale = std::max(bounds.upper, 1e-300);
    bounds.low_confidence =
        top.residual > 1e-10 * scale || bottom.residual > 1e-10 * scale;
    return bounds;
}

namespace {

int derive_max_iter(const FrameSystem& frame, double tol, int max_iter) {
    if (max_iter > 0) return max_iter;
    const double c = frame.contraction();
    if (c <= 0.0) return 11;
    const int base = static_cast<int>(std::ceil(std::log(tol) / std::log(c)));
    return std::max(1, base) + 10;
}

}  // namespace

PwFunction invert_frame_operator(const FrameSystem& frame, const PwFunction& h,
                                 double tol, int max_iter, SolverMode mode,
                                 SolveLog* log) {
    if (!frame.certified())
        throw NotCertifiedError("frame not certified; inversion undefined");
    if (!(tol > 0.0)) throw Error("tolerance must be positive");
    if (h.model() != frame.model()) throw Error("incompatible spectral models");

    const Eigen::VectorXd& w = frame.model()->weights();
    const Eigen::MatrixXcd& r = frame.representers();
    const auto apply_f = [&](const Eigen::VectorXcd& c) -> Eigen::VectorXcd {
        return r * (r.adjoint() * apply_weights(w, c));
    };

    SolveLog local;
    SolveLog& out = log ? *log : local;
    out = SolveLog{};

    const double h_norm = wnorm(w, h.coeff());
    if (h_norm == 0.0) {
        out.converged = true;
        return PwFunction::zero(frame.model());
    }

    const double upper = frame.bounds().upper;
    const int budget = derive_max_iter(frame, tol, max_iter);

    Eigen::VectorXcd g;
    if (mode == SolverMode::Richardson) {
        // Neumann partial sums: g_0 = h/B, g_{m+1} = g_m + (h - F g_m)/B.
        g = h.coeff() / upper;
        for (int it = 1; it <= budget; ++it) {
            out.iterations = it;
            const Eigen::VectorXcd residual = h.coeff() - apply_f(g);
            const double rel = wnorm(w, residual) / h_norm;
            out.residuals.push_back(rel);
            if (rel <= tol) {
                out.converged = true;
                break;
            }
            if (it < budget) g += residual / upper;
        }
    } else {
        // Conjugate gradients in the weighted inner product.
        g = Eigen::VectorXcd::Zero(h.coeff().size());
        Eigen::VectorXcd residual = h.coeff();
        Eigen::VectorXcd direction = residual;
        double rr = wdot(w, residual, residual).real();
        for (int it = 1; it <= budget; ++it) {
            out.iterations = it;
            const double rel = std::sqrt(std::max(0.0, rr)) / h_norm;
            out.residuals.push_back(rel);
            if (rel <= tol) {
                out.converged = true;
                break;
            }
            const Eigen::VectorXcd f_dir = apply_f(direction);
            const double curvature = wdot(w, f_dir, direction).real();
            if (!(curvature > 0.0)) break;
            const double alpha = rr / curvature;
            g += alpha * direction;
            if (it % 50 == 0)
                residual = h.coeff() - apply_f(g);
            else
                residual -= alpha * f_dir;
            const double rr_next = wdot(w, residual, residual).real();
            direction = residual + (rr_next / rr) * direction;
            rr = rr_next;
        }
    }
    return PwFunction(frame.model(), std::move(g));
}

std::vector<PwFunction> dual_frame(const FrameSystem& frame, double tol) {
    std::vector<PwFunction> duals;
    duals.reserve(static_cast<std::size_t>(frame.size()));
    for (int j = 0; j < frame.size(); ++j)
        duals.push_back(
            invert_frame_operator(frame, frame.representer_function(j), tol));
    return duals;
}

PwFunction reconstruct(const FrameSystem& frame, const Eigen::VectorXcd& samples,
                       double tol, int max_iter, SolverMode mode,
                       const PwFunction* reference, ReconstructionReport* report) {
    if (!frame.certified())
        throw NotCertifiedError("frame not certified; reconstruction undefined");
    if (samples.size() != frame.size())
        throw Error("sample count does not match frame size");

    const PwFunction rhs = synthesis(frame, samples);
    SolveLog log;
    PwFunction result = invert_frame_operator(frame, rhs, tol, max_iter, mode, &log);

    ReconstructionReport local;
    ReconstructionReport& rep = report ? *report : local;
    rep = ReconstructionReport{};
    rep.iterations = log.iterations;
    rep.residuals = log.residuals;
    rep.lower = frame.bounds().lower;
    rep.upper = frame.bounds().upper;
    rep.contraction = frame.contraction();
    if (!log.converged) rep.flags.push_back("max_iter_exceeded");
    if (frame.bounds().low_confidence) rep.flags.push_back("low_confidence_bounds");

    const double sample_norm = samples.norm();
    if (sample_norm > 0.0) {
        // Consistent samples reproduce to ~ tol * sqrt(B/A) (the residual is
        // measured through the synthesis operator); anything beyond that
        // lies outside the analysis range.
        const double mismatch = (analysis(frame, result) - samples).norm();
        const double conditioning =
            std::sqrt(std::max(1.0, frame.bounds().upper /
                                        std::max(frame.bounds().lower, 1e-300)));
        if (mismatch > 10.0 * tol * conditioning * sample_norm)
            rep.flags.push_back("projected");
    }
    if (reference) {
        const double ref_norm = norm(*reference);
        if (ref_norm > 0.0) {
            Eigen::VectorXcd diff = result.coeff() - reference->coeff();
            rep.rel_error = wnorm(frame.model()->weights(), diff) / ref_norm;
        }
    }
    return result;
}

std::string reconstruction_report_json(const ReconstructionReport& report,
                                       double timing_ms) {
    nlohmann::ordered_json j;
    j["iterations"] = report.iterations;
    j["residuals"] = report.residuals;
    j["A"] = report.lower;
    j["B"] = report.upper;
    j["contraction"] = report.contraction;
    if (std::isfinite(report.rel_error))
        j["rel_error"] = report.rel_error;
    else
        j["rel_error"] = nullptr;
    j["flags"] = report.flags;
    if (timing_ms >= 0.0) j["timing_ms"] = timing_ms;
    return j.dump(2);
}

PlancherelPolyaReport plancherel_polya_report(const FrameSystem& frame, int trials,
                                              std::uint64_t seed) {
    if (trials < 1) throw Error("trial count must be positive");
    PlancherelPolyaReport report;
    report.lower = frame.bounds().lower;
    report.upper = frame.bounds().upper;
    report.empirical_lower = std::numeric_limits<double>::infinity();
    report.empirical_upper = 0.0;
    for (int i = 0; i < trials; ++i) {
        const PwFunction f = random_pw(frame.model(), mix_seed(seed, 100 + i));
        const double energy = analysis(frame, f).squaredNorm();
        report.empirical_lower = std::min(report.empirical_lower, energy);
        report.empirical_upper = std::max(report.empirical_upper, energy);
    }

    report.noise_gain = std::numeric_limits<double>::quiet_NaN();
    report.noise_gain_bound =
        report.lower > 0.0 ? std::sqrt(report.upper) / report.lower
                           : std::numeric_limits<double>::infinity();
    if (!frame.certified()) return report;

    // Stability experiment: perturb consistent samples and measure the
    // reconstruction error per unit of sample noise.
    const PwFunction f0 = random_pw(frame.model(), mix_seed(seed, 7));
    const Eigen::VectorXcd base = analysis(frame, f0);
    const double eps = 1e-3 * std::max(base.norm(), 1.0);
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
        const Eigen::VectorXcd noise = random_unit(base.size(), mix_seed(seed, 900 + i));
        const Eigen::VectorXcd perturbed = base + eps * noise;
        const PwFunction g = reconstruct(frame, perturbed, 1e-12, 0,
                                         SolverMode::ConjugateGradient, nullptr, nullptr);
        Eigen::VectorXcd diff = g.coeff() - f0.coeff();
        worst = std::max(worst, wnorm(frame.model()->weights(), diff) / eps);
    }
    report.noise_gain = worst;
    return report;
}

}  // namespace pwframes
