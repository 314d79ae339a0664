#include "pwframes/upper_half_plane.hpp"

#include <cmath>

#include "pwframes/sampling.hpp"

namespace pwframes {

namespace {

constexpr double kPi = 3.1415926535897932384626433832795;

}  // namespace

double rotated_imaginary_part(double phi, Point z) {
    if (!(z.y > 0.0)) throw DomainError("point not in the upper half-plane (Im z <= 0)");
    const double s = std::sin(phi);
    const double c = std::cos(phi);
    const double denom = (z.x * s + c) * (z.x * s + c) + (z.y * s) * (z.y * s);
    return z.y / denom;
}

Complex eigenfunction(double t, double phi, Point z) {
    const double log_r = std::log(rotated_imaginary_part(phi, z));
    // (it + 1/2) log r through the principal logarithm of a positive real.
    return std::exp(0.5 * log_r) * std::polar(1.0, t * log_r);
}

double geodesic_distance(Point z, Point w) {
    if (!(z.y > 0.0) || !(w.y > 0.0))
        throw DomainError("point not in the upper half-plane (Im z <= 0)");
    const double dx = z.x - w.x;
    const double dy = z.y - w.y;
    const double arg = 1.0 + (dx * dx + dy * dy) / (2.0 * z.y * w.y);
    return std::acosh(std::max(1.0, arg));
}

ModelPtr build_helgason_model(double omega, int k_t, int k_phi) {
    if (omega <= 0.0) throw Error("bandlimit omega must be positive");
    if (k_t < 2 || k_t % 2 != 0)
        throw Error("t-grid must avoid t=0 (zero Plancherel weight)");
    if (k_phi < 1) throw Error("phi-grid needs at least one node");

    const double dt = 2.0 * omega / k_t;
    const double dphi = 2.0 * kPi / k_phi;
    std::vector<SpectralNode> nodes;
    nodes.reserve(static_cast<std::size_t>(k_t) * k_phi);
    for (int i = 0; i < k_t; ++i) {
        const double t = -omega + (i + 0.5) * dt;
        const double plancherel = t * std::tanh(kPi * t) / (8.0 * kPi * kPi);
        for (int l = 0; l < k_phi; ++l) {
            // k_phi and k_{phi+pi} act identically on the half-plane, so the
            // boundary directions live on (0, pi]; each node carries the
            // weight of its {phi, phi+pi} pair from the (0, 2pi] measure.
            const double phi = (l + 0.5) * (kPi / k_phi);
            SpectralNode node;
            node.id = static_cast<int>(nodes.size());
            node.eigenvalue = t * t + 0.25;
            node.weight = plancherel * dt * dphi;
            node.t = t;
            node.phi = phi;
            nodes.push_back(node);
        }
    }
    return std::make_shared<SpectralModel>(PointKind::HalfPlane, omega, std::move(nodes));
}

LaplacianCheck laplacian_pointwise_check(const PwFunction& f, Point z, double h) {
    if (!(h > 0.0)) throw Error("finite-difference step must be positive");
    const SpectralModel& model = *f.model();
    if (model.point_kind() != PointKind::HalfPlane)
        throw Error("laplacian check requires a half-plane model");
    model.require_point(z);
    if (!(z.y - h > 0.0)) throw DomainError("step too large: stencil leaves the half-plane");

    const Complex center = evaluate(f, z);
    const Complex stencil = evaluate(f, {z.x + h, z.y}) + evaluate(f, {z.x - h, z.y}) +
                            evaluate(f, {z.x, z.y + h}) + evaluate(f, {z.x, z.y - h}) -
                            4.0 * center;

    LaplacianCheck check;
    check.fd_value = (z.y * z.y) * stencil / (h * h);
    check.spectral_value =
        evaluate(apply_spectral_multiplier(f, [](double lam) { return -lam; }), z);
    const double scale = std::abs(check.spectral_value);
    const double diff = std::abs(check.fd_value - check.spectral_value);
    check.rel_err = scale > 0.0 ? diff / scale : diff;
    return check;
}

Eigen::VectorXcd functional_transform(const SamplingFunctional& functional,
                                      const SpectralModel& model) {
    if (model.point_kind() != PointKind::HalfPlane)
        throw Error("functional transform requires a half-plane model");
    for (const Point& p : functional.support) model.require_point(p);
    return kernel_moments(functional, model);
}

}  // namespace pwframes
