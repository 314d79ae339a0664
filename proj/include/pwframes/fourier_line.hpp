// Classical Paley-Wiener model on the real line: finite Fourier-band
// quadrature grids, the cardinal-series reconstruction, discrete-vs-
// continuous norm comparison, jittered sampling points, and smooth
// band-interior test profiles with closed-form transforms.

#ifndef PWFRAMES_FOURIER_LINE_HPP
#define PWFRAMES_FOURIER_LINE_HPP

#include <map>

#include "pwframes/spectral.hpp"

namespace pwframes {

/// Band grid on [-omega, omega] with eigenvalue (2 pi t)^2 (positive
/// Laplacian -d^2/dx^2) and kernel e^{2 pi i t x}. Weights sum to 2 omega.
ModelPtr build_fourier_model(double omega, int k, QuadRule rule);

/// Truncated cardinal series sum_{|j|<=J} f(j/2w) sinc kernel. Missing
/// indices in `samples` are treated as zero samples.
Complex shannon_reconstruct(const std::map<long, Complex>& samples, double omega,
                            double x, long truncation);

struct ParsevalReport {
    double continuous = 0.0;  // Plancherel norm
    double discrete = 0.0;    // sqrt((1/2w) sum |f(j/2w)|^2)
    double ratio = 0.0;       // discrete / continuous
    bool samples_decayed = false;
    std::vector<std::string> flags;
};

// Smooth band profile cos(pi t / 2w) * (trigonometric polynomial), zero at
// the band edges. Carries the exact transform as a finite combination of
// shifted Dirichlet integrals, so pointwise values of the underlying
// square-integrable function are available at any x.
class BandProfile {
public:
    BandProfile(double omega, std::vector<Complex> cos_coeff,
                std::vector<Complex> sin_coeff);

    /// Deterministic random profile with `harmonics` trigonometric terms.
    static BandProfile random(double omega, int harmonics, std::uint64_t seed);

    double omega() const { return omega_; }

    /// Profile value at spectral parameter t (zero outside the band).
    Complex value(double t) const;

    /// The function itself: integral over the band of value(t) e^{2pi i t x}.
    Complex sample(double x) const;

    /// Coefficients value(t_m) on the model's nodes.
    PwFunction project(const ModelPtr& model) const;

private:
    double omega_;
    std::vector<Complex> cos_coeff_;
    std::vector<Complex> sin_coeff_;
    // Expansion of the profile into exponentials e^{2 pi i s t}.
    std::vector<std::pair<double, Complex>> exp_terms_;
};

/// Norm comparison with samples taken from the model synthesis sum. The
/// report flags non-decaying sample sequences (finite exponential sums do
/// not decay, so the comparison is meaningful only when the audit passes).
ParsevalReport parseval_check(const PwFunction& f, long truncation);

/// Norm comparison with exact samples of the profile's function; this is
/// the convergence form of the discrete-vs-continuous norm identity.
ParsevalReport parseval_check(const BandProfile& profile, const ModelPtr& model,
                              long truncation);

struct JitteredPoints {
    std::vector<double> points;
    bool kadec_margin_exceeded = false;  // delta >= 1/4; recorded, not fatal
};

/// x_j = j/2w + u_j delta/2w with u_j uniform in [-1, 1]; strictly
/// increasing for delta < 1/4 and deterministic per seed.
JitteredPoints jittered_sample_points(double omega, long max_index, double delta,
                                      std::uint64_t seed);

}  // namespace pwframes

#endif
