// Frame engine: analysis/synthesis operators, the frame operator
// F f = sum_j <f, phi_j> phi_j, frame-bound estimation by power iteration,
// Neumann-series inversion, dual frames, sample-based reconstruction, and
// the empirical two-sided sample-norm (Plancherel-Polya) report.

#ifndef PWFRAMES_FRAMES_HPP
#define PWFRAMES_FRAMES_HPP

#include "pwframes/sampling.hpp"

#include <limits>

namespace pwframes {

struct FrameBounds {
    double lower = 0.0;  // A
    double upper = 0.0;  // B
    bool low_confidence = false;
    int iterations_upper = 0;
    int iterations_lower = 0;
    double residual_upper = 0.0;
    double residual_lower = 0.0;
    std::string method;
};

// Immutable after build; safe to share across readers. Columns of the
// representer matrix are the coefficient vectors of phi_j^{(n)}.
class FrameSystem {
public:
    FrameSystem(ModelPtr model, Eigen::MatrixXcd representers, int derivative_order,
                MultiplierKind multiplier, FrameBounds bounds, bool certified);

    const ModelPtr& model() const { return model_; }
    const Eigen::MatrixXcd& representers() const { return representers_; }
    int size() const { return static_cast<int>(representers_.cols()); }  // J
    int derivative_order() const { return derivative_order_; }
    MultiplierKind multiplier() const { return multiplier_; }
    const FrameBounds& bounds() const { return bounds_; }
    bool certified() const { return certified_; }
    double contraction() const;  // (B - A) / B

    PwFunction representer_function(int j) const;

private:
    ModelPtr model_;
    Eigen::MatrixXcd representers_;
    int derivative_order_;
    MultiplierKind multiplier_;
    FrameBounds bounds_;
    bool certified_;
};

// Certification threshold: A > threshold * B separates uniqueness sets from
// numerically rank-deficient systems.
inline constexpr double kCertifyThreshold = 1e-10;

/// Builds representers for the family (with (1+lambda)^n or lambda^n
/// multipliers), estimates frame bounds, and certifies. The pure multiplier
/// requires the model spectrum to be bounded away from zero.
FrameSystem build_frame(const FunctionalFamily& family, const ModelPtr& model,
                        MultiplierKind multiplier, int bound_iterations = 20000,
                        std::uint64_t bound_seed = 7);

/// v_j = <f, phi_j^{(n)}>; equals the sample Phi_j^{(n)}(f).
Eigen::VectorXcd analysis(const FrameSystem& frame, const PwFunction& f);

/// sum_j v_j phi_j^{(n)}; the adjoint of analysis.
PwFunction synthesis(const FrameSystem& frame, const Eigen::VectorXcd& v);

/// F f = synthesis(analysis(f)); self-adjoint, positive semidefinite.
PwFunction frame_operator(const FrameSystem& frame, const PwFunction& f);

/// B from power iteration on F, A = B - (largest eigenvalue of B I - F)
/// from shifted power iteration; estimates are widened by the recorded
/// eigen-residuals. For J < K the lower bound is structurally zero.
FrameBounds estimate_frame_bounds(const FrameSystem& frame, int iterations,
                                  std::uint64_t seed);

enum class SolverMode {
    Richardson,         // Neumann partial sums with relaxation 1/B
    ConjugateGradient,  // accelerated opt-in
};

struct SolveLog {
    int iterations = 0;
    std::vector<double> residuals;  // relative, one entry per iteration
    bool converged = false;
};

/// Solves F g = h. Richardson iterates g <- g + (h - F g)/B, the partial
/// sums of the Neumann series B^{-1} sum (I - F/B)^m h, with per-step error
/// contraction (B-A)/B. max_iter = 0 selects
/// ceil(log(tol)/log((B-A)/B)) + 10. A budget overrun returns the partial
/// result with log.converged = false.
PwFunction invert_frame_operator(const FrameSystem& frame, const PwFunction& h,
                                 double tol, int max_iter = 0,
                                 SolverMode mode = SolverMode::Richardson,
                                 SolveLog* log = nullptr);

/// Dual frame Theta_j = F^{-1} phi_j.
std::vector<PwFunction> dual_frame(const FrameSystem& frame, double tol);

struct ReconstructionReport {
    int iterations = 0;
    std::vector<double> residuals;
    double lower = 0.0;        // A
    double upper = 0.0;        // B
    double contraction = 0.0;  // (B-A)/B
    double rel_error = std::numeric_limits<double>::quiet_NaN();
    std::vector<std::string> flags;
};

/// f = F^{-1}(synthesis(samples)), algebraically sum_j samples_j Theta_j.
/// Inconsistent samples yield the least-residual element and a "projected"
/// flag. rel_error is filled when a reference function is supplied.
PwFunction reconstruct(const FrameSystem& frame, const Eigen::VectorXcd& samples,
                       double tol, int max_iter = 0,
                       SolverMode mode = SolverMode::Richardson,
                       const PwFunction* reference = nullptr,
                       ReconstructionReport* report = nullptr);

/// JSON object with fields {iterations, residuals, A, B, contraction,
/// rel_error, flags} (exactly these names), plus timing_ms when supplied.
std::string reconstruction_report_json(const ReconstructionReport& report,
                                       double timing_ms = -1.0);

struct PlancherelPolyaReport {
    double empirical_lower = 0.0;  // min over trials of sum_j |Phi_j^{(n)}(f)|^2
    double empirical_upper = 0.0;  // max of the same
    double lower = 0.0;            // A
    double upper = 0.0;            // B
    double noise_gain = 0.0;       // reconstruction error / sample noise
    double noise_gain_bound = 0.0; // sqrt(B)/A
};

/// Samples the frame inequality on random unit-norm functions and measures
/// the stability constant of reconstruction under sample perturbations.
PlancherelPolyaReport plancherel_polya_report(const FrameSystem& frame, int trials,
                                              std::uint64_t seed);

}  // namespace pwframes

#endif
