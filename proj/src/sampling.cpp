#include "pwframes/sampling.hpp"

#include <algorithm>
#include <limits>
#include <cmath>
#include <ostream>
#include <random>

#include <json.hpp>

#include "pwframes/upper_half_plane.hpp"

namespace pwframes {

namespace {

constexpr double kPi = 3.1415926535897932384626433832795;
constexpr double kTwoPi = 2.0 * kPi;

// Mesh resolution of the candidate pool relative to the packing radius.
constexpr double kMeshFraction = 1.0 / 16.0;
constexpr double kJitterFraction = 0.15;
constexpr int kMaxAutoCandidates = 500000;

void require_box(const SpectralModel& model, const DomainBox& box) {
    if (!(box.x_hi > box.x_lo)) throw Error("domain x-interval is empty");
    if (model.point_kind() == PointKind::HalfPlane) {
        if (!(box.y_lo > 0.0))
            throw DomainError("domain outside the upper half-plane (y <= 0)");
        if (!(box.y_hi > box.y_lo)) throw Error("domain y-interval is empty");
    }
}

// Candidate mesh, geodesically near-uniform and scanned in coordinate
// order. On the half-plane the rows are geometric in y so that both the row
// spacing and the in-row spacing are ~step in the hyperbolic metric.
std::vector<Point> candidate_mesh(const SpectralModel& model, const DomainBox& box,
                                  double rho, int candidate_count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::vector<Point> candidates;

    if (model.point_kind() == PointKind::RealLine) {
        const double width = box.x_hi - box.x_lo;
        double step = rho * kMeshFraction;
        if (candidate_count > 0) step = width / candidate_count;
        const int count = std::min(kMaxAutoCandidates,
                                   std::max(2, static_cast<int>(std::ceil(width / step))));
        const double h = width / count;
        candidates.reserve(static_cast<std::size_t>(count));
        for (int i = 0; i < count; ++i) {
            double x = box.x_lo + (i + 0.5) * h + unit(rng) * kJitterFraction * h;
            candidates.push_back({std::clamp(x, box.x_lo, box.x_hi), 0.0});
        }
        return candidates;
    }

    const double area = (box.x_hi - box.x_lo) * (1.0 / box.y_lo - 1.0 / box.y_hi);
    double step = rho * kMeshFraction;
    if (candidate_count > 0) step = std::sqrt(area / candidate_count);
    if (area / (step * step) > kMaxAutoCandidates && candidate_count <= 0)
        step = std::sqrt(area / kMaxAutoCandidates);

    for (double y_row = box.y_lo * std::exp(0.5 * step); y_row < box.y_hi;
         y_row *= std::exp(step)) {
        const double dx = step * y_row;
        const int cols = std::max(1, static_cast<int>(std::ceil((box.x_hi - box.x_lo) / dx)));
        const double h = (box.x_hi - box.x_lo) / cols;
        for (int i = 0; i < cols; ++i) {
            double x = box.x_lo + (i + 0.5) * h + unit(rng) * kJitterFraction * h;
            double y = y_row * (1.0 + unit(rng) * kJitterFraction * step);
            candidates.push_back({std::clamp(x, box.x_lo, box.x_hi),
                                  std::clamp(y, box.y_lo, box.y_hi)});
        }
    }
    return candidates;
}

// Mobius action of the rotation k_phi followed by the translation that
// moves i to center; the image of i e^s lies at geodesic distance s.
Point ball_point(const SpectralModel& model, Point center, double s, double theta) {
    if (model.point_kind() == PointKind::RealLine)
        return {center.x + s * std::cos(theta), 0.0};
    const Complex w(0.0, std::exp(s));
    const double half = 0.5 * theta;
    const Complex rotated = (std::cos(half) * w - std::sin(half)) /
                            (std::sin(half) * w + std::cos(half));
    return {center.y * rotated.real() + center.x, center.y * rotated.imag()};
}

}  // namespace

double SamplingFunctional::total_mass() const {
    double acc = 0.0;
    for (double m : masses) acc += m;
    return acc;
}

Lattice build_lattice(const SpectralModel& model, const DomainBox& box, double rho,
                      int candidate_count, std::uint64_t seed) {
    if (!(rho > 0.0)) throw Error("rho must be positive");
    require_box(model, box);

    const std::vector<Point> candidates =
        candidate_mesh(model, box, rho, candidate_count, seed);
    const double separation = 0.5 * rho;

    Lattice lattice;
    lattice.rho = rho;
    for (const Point& candidate : candidates) {
        bool accept = true;
        // Scan order is spatially coherent, so the most recent accepted
        // points are the likely blockers; walk backwards for an early exit.
        for (auto it = lattice.points.rbegin(); it != lattice.points.rend(); ++it) {
            if (model.distance(candidate, *it) < separation) {
                accept = false;
                break;
            }
        }
        if (accept) lattice.points.push_back(candidate);
    }

    lattice.certificate = verify_lattice(model, lattice, candidates);
    return lattice;
}

LatticeCertificate verify_lattice(const SpectralModel& model, const Lattice& lattice,
                                  const std::vector<Point>& probes) {
    if (lattice.points.empty()) throw Error("empty lattice");
    LatticeCertificate cert;

    cert.min_pairwise_distance = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < lattice.points.size(); ++i)
        for (std::size_t j = i + 1; j < lattice.points.size(); ++j)
            cert.min_pairwise_distance = std::min(
                cert.min_pairwise_distance,
                model.distance(lattice.points[i], lattice.points[j]));
    if (lattice.points.size() == 1)
        cert.min_pairwise_distance = std::numeric_limits<double>::infinity();

    cert.covering_radius = 0.0;
    cert.multiplicity_bound = 0;
    for (const Point& probe : probes) {
        double nearest = std::numeric_limits<double>::infinity();
        int within_rho = 0;
        for (const Point& p : lattice.points) {
            const double d = model.distance(probe, p);
            nearest = std::min(nearest, d);
            if (d < lattice.rho) ++within_rho;
        }
        cert.covering_radius = std::max(cert.covering_radius, nearest);
        cert.multiplicity_bound = std::max(cert.multiplicity_bound, within_rho);
    }
    return cert;
}

std::vector<Point> domain_probes(const SpectralModel& model, const DomainBox& box,
                                 int count, std::uint64_t seed) {
    require_box(model, box);
    if (count < 1) throw Error("probe count must be positive");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ux(box.x_lo, box.x_hi);
    std::vector<Point> probes;
    probes.reserve(static_cast<std::size_t>(count));
    if (model.point_kind() == PointKind::RealLine) {
        for (int i = 0; i < count; ++i) probes.push_back({ux(rng), 0.0});
    } else {
        std::uniform_real_distribution<double> uy(box.y_lo, box.y_hi);
        for (int i = 0; i < count; ++i) probes.push_back({ux(rng), uy(rng)});
    }
    return probes;
}

void write_lattice_csv(const Lattice& lattice, PointKind kind, std::ostream& out) {
    out << "index,coord1,coord2\n";
    for (std::size_t i = 0; i < lattice.points.size(); ++i) {
        out << i << ',' << nlohmann::json(lattice.points[i].x).dump() << ',';
        if (kind == PointKind::HalfPlane)
            out << nlohmann::json(lattice.points[i].y).dump();
        out << '\n';
    }
}

FunctionalFamily make_functional_family(const SpectralModel& model, const Lattice& lattice,
                                        FunctionalKind kind, const FamilyParams& params,
                                        int derivative_order, double c_phi, double big_c_phi,
                                        std::uint64_t seed) {
    if (lattice.points.empty()) throw Error("empty lattice");
    if (derivative_order < 0) throw Error("derivative order must be nonnegative");
    if (!(c_phi > 0.0) || !(big_c_phi >= c_phi))
        throw Error("mass bounds must satisfy 0 < c_phi <= C_phi");
    const double sub_radius =
        params.sub_radius > 0.0 ? params.sub_radius : 0.25 * lattice.rho;
    if (sub_radius > 0.5 * lattice.rho * (1.0 + 1e-12))
        throw Error("sub_radius exceeds rho/2");
    for (double m : params.masses)
        if (!(m > 0.0)) throw Error("masses must be strictly positive");

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    FunctionalFamily family;
    family.derivative_order = derivative_order;
    family.c_phi = c_phi;
    family.big_c_phi = big_c_phi;
    family.functionals.reserve(lattice.points.size());

    for (std::size_t j = 0; j < lattice.points.size(); ++j) {
        SamplingFunctional fun;
        fun.center = lattice.points[j];
        fun.kind = kind;
        switch (kind) {
            case FunctionalKind::Dirac: {
                if (params.masses.empty()) throw Error("dirac mass missing");
                fun.support = {fun.center};
                fun.masses = {params.masses.front()};
                break;
            }
            case FunctionalKind::WeightedDiracs: {
                if (params.masses.empty()) throw Error("weighted family needs masses");
                for (double mass : params.masses) {
                    const double s = sub_radius * unit(rng);
                    const double theta = kTwoPi * unit(rng);
                    fun.support.push_back(ball_point(model, fun.center, s, theta));
                    fun.masses.push_back(mass);
                }
                break;
            }
            case FunctionalKind::BallAverage: {
                const int n_s = std::max(2, params.sub_count);
                if (model.point_kind() == PointKind::RealLine) {
                    // Midpoint rule on [x - r, x + r] with the measure dx,
                    // normalized to total mass one.
                    const int n = 2 * n_s;
                    for (int a = 0; a < n; ++a) {
                        fun.support.push_back(
                            {fun.center.x - sub_radius + (a + 0.5) * 2.0 * sub_radius / n,
                             0.0});
                        fun.masses.push_back(1.0 / n);
                    }
                } else {
                    // Geodesic polar rule; the radial Riemannian density is
                    // sinh(s) ds dtheta. Normalized to total mass one.
                    const int n_theta = 2 * n_s;
                    const double ds = sub_radius / n_s;
                    double total = 0.0;
                    std::vector<double> raw;
                    for (int a = 0; a < n_s; ++a) {
                        const double s = (a + 0.5) * ds;
                        const double radial = std::sinh(s);
                        for (int b = 0; b < n_theta; ++b) {
                            const double theta = (b + 0.5) * kTwoPi / n_theta;
                            fun.support.push_back(ball_point(model, fun.center, s, theta));
                            raw.push_back(radial);
                            total += radial;
                        }
                    }
                    for (double r : raw) fun.masses.push_back(r / total);
                }
                break;
            }
        }
        const double mass = fun.total_mass();
        if (mass < c_phi * (1.0 - 1e-12) || mass > big_c_phi * (1.0 + 1e-12))
            throw Error("mass bounds violated for functional " + std::to_string(j));
        family.functionals.push_back(std::move(fun));
    }
    return family;
}

Complex apply_functional(const SamplingFunctional& functional, const PwFunction& f,
                         int derivative_order) {
    if (derivative_order < 0) throw Error("derivative order must be nonnegative");
    const PwFunction g =
        derivative_order == 0
            ? f
            : apply_spectral_multiplier(f, [derivative_order](double lam) {
                  return std::pow(1.0 + lam, derivative_order);
              });
    Complex acc(0.0, 0.0);
    for (std::size_t k = 0; k < functional.support.size(); ++k)
        acc += functional.masses[k] * evaluate(g, functional.support[k]);
    return acc;
}

Eigen::VectorXcd kernel_moments(const SamplingFunctional& functional,
                                const SpectralModel& model) {
    if (functional.support.size() != functional.masses.size())
        throw Error("functional support/mass size mismatch");
    Eigen::VectorXcd moments(model.node_count());
    for (const SpectralNode& node : model.nodes()) {
        Complex acc(0.0, 0.0);
        for (std::size_t k = 0; k < functional.support.size(); ++k)
            acc += functional.masses[k] * model.kernel(node, functional.support[k]);
        moments[node.id] = acc;
    }
    return moments;
}

PwFunction representer(const SamplingFunctional& functional, int derivative_order,
                       const ModelPtr& model, MultiplierKind multiplier) {
    if (derivative_order < 0) throw Error("derivative order must be nonnegative");
    Eigen::VectorXcd c = kernel_moments(functional, *model);
    for (const SpectralNode& node : model->nodes()) {
        const double base = multiplier == MultiplierKind::Shifted ? 1.0 + node.eigenvalue
                                                                  : node.eigenvalue;
        c[node.id] = std::pow(base, derivative_order) * std::conj(c[node.id]);
    }
    return PwFunction(model, std::move(c));
}

}  // namespace pwframes
