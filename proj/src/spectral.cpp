#include "pwframes/spectral.hpp"

#include <algorithm>
#include <limits>
#include <cmath>
#include <random>

#include "pwframes/upper_half_plane.hpp"

namespace pwframes {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

}  // namespace

SpectralModel::SpectralModel(PointKind kind, double omega, std::vector<SpectralNode> nodes)
    : kind_(kind), omega_(omega), nodes_(std::move(nodes)) {
    if (omega_ <= 0.0) throw Error("bandlimit omega must be positive");
    if (nodes_.empty()) throw Error("spectral model needs at least one node");
    weights_.resize(static_cast<Eigen::Index>(nodes_.size()));
    max_eigenvalue_ = 0.0;
    min_eigenvalue_ = std::numeric_limits<double>::infinity();
    for (std::size_t m = 0; m < nodes_.size(); ++m) {
        const SpectralNode& node = nodes_[m];
        if (node.id != static_cast<int>(m))
            throw Error("node ids must be dense 0..K-1");
        if (!(node.weight > 0.0))
            throw Error("node " + std::to_string(m) + " has non-positive weight");
        const double floor = kind_ == PointKind::HalfPlane ? 0.25 : 0.0;
        if (node.eigenvalue < floor)
            throw Error("node " + std::to_string(m) + " eigenvalue below spectrum floor");
        if (std::abs(node.t) > omega_ * (1.0 + 1e-12))
            throw Error("node " + std::to_string(m) + " outside the band [-omega, omega]");
        weights_[static_cast<Eigen::Index>(m)] = node.weight;
        max_eigenvalue_ = std::max(max_eigenvalue_, node.eigenvalue);
        min_eigenvalue_ = std::min(min_eigenvalue_, node.eigenvalue);
    }
}

Complex SpectralModel::kernel(const SpectralNode& node, Point p) const {
    require_point(p);
    if (kind_ == PointKind::RealLine) return std::polar(1.0, kTwoPi * node.t * p.x);
    return eigenfunction(node.t, node.phi, p);
}

double SpectralModel::distance(Point p, Point q) const {
    if (kind_ == PointKind::RealLine) return std::abs(p.x - q.x);
    return geodesic_distance(p, q);
}

void SpectralModel::require_point(Point p) const {
    if (kind_ == PointKind::HalfPlane && !(p.y > 0.0))
        throw DomainError("point not in the upper half-plane (Im z <= 0)");
}

PwFunction::PwFunction(ModelPtr model, Eigen::VectorXcd coeff)
    : model_(std::move(model)), coeff_(std::move(coeff)) {
    if (!model_) throw Error("null model");
    if (coeff_.size() != model_->node_count())
        throw Error("coefficient length does not match the model's node count");
}

PwFunction PwFunction::zero(ModelPtr model) {
    const Eigen::Index k = model->node_count();
    return PwFunction(std::move(model), Eigen::VectorXcd::Zero(k));
}

Complex inner_product(const PwFunction& f, const PwFunction& g) {
    if (f.model() != g.model()) throw Error("incompatible spectral models");
    const Eigen::VectorXd& w = f.model()->weights();
    Complex acc(0.0, 0.0);
    for (Eigen::Index m = 0; m < w.size(); ++m)
        acc += w[m] * f.coeff()[m] * std::conj(g.coeff()[m]);
    return acc;
}

double norm(const PwFunction& f) {
    return std::sqrt(std::max(0.0, inner_product(f, f).real()));
}

Complex evaluate(const PwFunction& f, Point x) {
    const SpectralModel& model = *f.model();
    model.require_point(x);
    Complex acc(0.0, 0.0);
    for (const SpectralNode& node : model.nodes())
        acc += node.weight * f.coeff()[node.id] * model.kernel(node, x);
    return acc;
}

PwFunction apply_spectral_multiplier(const PwFunction& f,
                                     const std::function<double(double)>& multiplier) {
    Eigen::VectorXcd c = f.coeff();
    for (const SpectralNode& node : f.model()->nodes()) {
        const double value = multiplier(node.eigenvalue);
        if (!std::isfinite(value))
            throw Error("multiplier not finite at node " + std::to_string(node.id) +
                        " (eigenvalue " + std::to_string(node.eigenvalue) + ")");
        c[node.id] *= value;
    }
    return PwFunction(f.model(), std::move(c));
}

BernsteinReport bernstein_verify(const PwFunction& f, double s) {
    if (s < 0.0) throw Error("bernstein exponent must be nonnegative");
    const double nf = norm(f);
    if (nf == 0.0) throw Error("empty function");
    BernsteinReport report;
    report.bound = f.model()->max_eigenvalue();
    report.lhs = norm(apply_spectral_multiplier(f, [s](double lam) { return std::pow(lam, s); }));
    report.rhs = std::pow(report.bound, s) * nf;
    report.holds = report.lhs <= report.rhs * (1.0 + 1e-12);
    return report;
}

PwFunction random_pw(ModelPtr model, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::VectorXcd c(model->node_count());
    for (Eigen::Index m = 0; m < c.size(); ++m) {
        const double re = gauss(rng);
        const double im = gauss(rng);
        c[m] = Complex(re, im);
    }
    PwFunction f(std::move(model), std::move(c));
    const double nf = norm(f);
    if (nf > 0.0) f.coeff() /= nf;
    return f;
}

}  // namespace pwframes
