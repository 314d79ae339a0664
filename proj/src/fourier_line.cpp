#include "pwframes/fourier_line.hpp"

#include <cmath>
#include <cstdlib>
#include <random>

namespace pwframes {

namespace {

constexpr double kPi = 3.1415926535897932384626433832795;

// Normalized sinc, value 1 at the removable singularity.
double sinc(double u) {
    if (u == 0.0) return 1.0;
    const double pu = kPi * u;
    return std::sin(pu) / pu;
}

// integral over [-omega, omega] of e^{2 pi i t X} dt.
double band_integral(double omega, double big_x) {
    return 2.0 * omega * sinc(2.0 * omega * big_x);
}

}  // namespace

ModelPtr build_fourier_model(double omega, int k, QuadRule rule) {
    if (omega <= 0.0) throw Error("bandlimit omega must be positive");
    if (k < 2) throw Error("fourier grid needs at least two nodes");

    std::vector<SpectralNode> nodes;
    nodes.reserve(static_cast<std::size_t>(k));
    for (int m = 0; m < k; ++m) {
        double t = 0.0;
        double weight = 0.0;
        if (rule == QuadRule::Midpoint) {
            const double h = 2.0 * omega / k;
            t = -omega + (m + 0.5) * h;
            weight = h;
        } else {
            const double h = 2.0 * omega / (k - 1);
            t = -omega + m * h;
            weight = (m == 0 || m == k - 1) ? 0.5 * h : h;
        }
        SpectralNode node;
        node.id = m;
        node.t = t;
        node.eigenvalue = (2.0 * kPi * t) * (2.0 * kPi * t);
        node.weight = weight;
        nodes.push_back(node);
    }
    return std::make_shared<SpectralModel>(PointKind::RealLine, omega, std::move(nodes));
}

Complex shannon_reconstruct(const std::map<long, Complex>& samples, double omega,
                            double x, long truncation) {
    if (omega <= 0.0) throw Error("bandlimit omega must be positive");
    Complex acc(0.0, 0.0);
    for (const auto& [j, value] : samples) {
        if (std::labs(j) > truncation) continue;
        acc += value * sinc(2.0 * omega * x - static_cast<double>(j));
    }
    return acc;
}

BandProfile::BandProfile(double omega, std::vector<Complex> cos_coeff,
                         std::vector<Complex> sin_coeff)
    : omega_(omega), cos_coeff_(std::move(cos_coeff)), sin_coeff_(std::move(sin_coeff)) {
    if (omega_ <= 0.0) throw Error("bandlimit omega must be positive");
    if (sin_coeff_.size() != cos_coeff_.size())
        throw Error("profile coefficient lists must have equal length");
    // Expand cos(pi t/2w) * sum_k (a_k cos(k pi t/w) + b_k sin(k pi t/w))
    // into exponentials e^{2 pi i s t} with half-integer shifts s in units
    // of 1/(2w).
    const double q = 1.0 / (4.0 * omega_);
    const Complex I(0.0, 1.0);
    for (std::size_t k = 0; k < cos_coeff_.size(); ++k) {
        for (int tau : {+1, -1}) {
            const Complex gamma =
                0.25 * cos_coeff_[k] - 0.25 * I * static_cast<double>(tau) * sin_coeff_[k];
            for (int sigma : {+1, -1}) {
                const double shift = (2.0 * static_cast<double>(k) * tau + sigma) * q;
                exp_terms_.emplace_back(shift, gamma);
            }
        }
    }
}

BandProfile BandProfile::random(double omega, int harmonics, std::uint64_t seed) {
    if (harmonics < 1) throw Error("profile needs at least one harmonic");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<Complex> a(static_cast<std::size_t>(harmonics) + 1);
    std::vector<Complex> b(static_cast<std::size_t>(harmonics) + 1);
    for (std::size_t k = 0; k < a.size(); ++k) {
        const double scale = 1.0 / (1.0 + static_cast<double>(k));
        a[k] = scale * Complex(gauss(rng), gauss(rng));
        b[k] = k == 0 ? Complex(0.0, 0.0) : scale * Complex(gauss(rng), gauss(rng));
    }
    return BandProfile(omega, std::move(a), std::move(b));
}

Complex BandProfile::value(double t) const {
    if (std::abs(t) > omega_) return Complex(0.0, 0.0);
    Complex acc(0.0, 0.0);
    for (std::size_t k = 0; k < cos_coeff_.size(); ++k) {
        const double u = static_cast<double>(k) * kPi * t / omega_;
        acc += cos_coeff_[k] * std::cos(u) + sin_coeff_[k] * std::sin(u);
    }
    return std::cos(kPi * t / (2.0 * omega_)) * acc;
}

Complex BandProfile::sample(double x) const {
    Complex acc(0.0, 0.0);
    for (const auto& [shift, gamma] : exp_terms_) acc += gamma * band_integral(omega_, x + shift);
    return acc;
}

PwFunction BandProfile::project(const ModelPtr& model) const {
    if (model->point_kind() != PointKind::RealLine)
        throw Error("band profiles live on line models");
    Eigen::VectorXcd c(model->node_count());
    for (const SpectralNode& node : model->nodes()) c[node.id] = value(node.t);
    return PwFunction(model, std::move(c));
}

namespace {

ParsevalReport parseval_core(double omega, double continuous,
                             const std::function<Complex(long)>& sample_at,
                             long truncation) {
    if (continuous == 0.0) throw Error("empty function");
    ParsevalReport report;
    report.continuous = continuous;

    double sum = 0.0;
    double tail_sum = 0.0;  // energy in the outer 10% of indices
    const long tail_start = truncation - std::max(1L, truncation / 10);
    for (long j = -truncation; j <= truncation; ++j) {
        const double e = std::norm(sample_at(j));
        sum += e;
        if (std::labs(j) >= tail_start) tail_sum += e;
    }
    report.discrete = std::sqrt(sum / (2.0 * omega));
    report.ratio = report.discrete / report.continuous;
    report.samples_decayed = sum > 0.0 && tail_sum <= 1e-6 * sum;
    if (!report.samples_decayed) report.flags.push_back("nondecaying_samples");
    return report;
}

}  // namespace

ParsevalReport parseval_check(const PwFunction& f, long truncation) {
    const SpectralModel& model = *f.model();
    if (model.point_kind() != PointKind::RealLine)
        throw Error("parseval check requires a line model");
    const double omega = model.omega();
    const double spacing = 1.0 / (2.0 * omega);
    return parseval_core(
        omega, norm(f),
        [&](long j) { return evaluate(f, {static_cast<double>(j) * spacing, 0.0}); },
        truncation);
}

ParsevalReport parseval_check(const BandProfile& profile, const ModelPtr& model,
                              long truncation) {
    const double omega = model->omega();
    if (std::abs(omega - profile.omega()) > 1e-12 * omega)
        throw Error("profile and model bandlimits differ");
    const double spacing = 1.0 / (2.0 * omega);
    const PwFunction f = profile.project(model);
    return parseval_core(
        omega, norm(f),
        [&](long j) { return profile.sample(static_cast<double>(j) * spacing); },
        truncation);
}

JitteredPoints jittered_sample_points(double omega, long max_index, double delta,
                                      std::uint64_t seed) {
    if (omega <= 0.0) throw Error("bandlimit omega must be positive");
    if (delta < 0.0) throw Error("jitter fraction must be nonnegative");
    JitteredPoints result;
    result.kadec_margin_exceeded = delta >= 0.25;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uniform(-1.0, 1.0);
    const double spacing = 1.0 / (2.0 * omega);
    result.points.reserve(static_cast<std::size_t>(2 * max_index + 1));
    for (long j = -max_index; j <= max_index; ++j)
        result.points.push_back(static_cast<double>(j) * spacing +
                                uniform(rng) * delta * spacing);
    return result;
}

}  // namespace pwframes
