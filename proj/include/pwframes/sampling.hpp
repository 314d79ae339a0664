// Lattices by greedy maximal packing, families of compactly supported
// sampling functionals (Diracs, weighted Diracs, ball averages) with mass
// bounds, derivative sampling, and Riesz representers in the discretized
// Paley-Wiener space.

#ifndef PWFRAMES_SAMPLING_HPP
#define PWFRAMES_SAMPLING_HPP

#include <iosfwd>

#include "pwframes/spectral.hpp"

namespace pwframes {

// Geometry box: [x_lo, x_hi] on the line, [x_lo, x_hi] x [y_lo, y_hi] on
// the upper half-plane (y_lo > 0).
struct DomainBox {
    double x_lo = 0.0;
    double x_hi = 0.0;
    double y_lo = 0.0;
    double y_hi = 0.0;
};

struct LatticeCertificate {
    double min_pairwise_distance = 0.0;
    double covering_radius = 0.0;
    int multiplicity_bound = 0;
};

struct Lattice {
    std::vector<Point> points;
    double rho = 0.0;
    LatticeCertificate certificate;
};

/// Greedy maximal packing over a seeded jittered candidate mesh, scanned in
/// coordinate order: a candidate is accepted iff its distance to every
/// accepted point is >= rho/2. The result is maximal over the candidate
/// pool, so the covering radius over candidates is < rho/2. Deterministic
/// per seed.
Lattice build_lattice(const SpectralModel& model, const DomainBox& box, double rho,
                      int candidate_count, std::uint64_t seed);

/// Recomputes the packing/covering certificate against a probe set.
LatticeCertificate verify_lattice(const SpectralModel& model, const Lattice& lattice,
                                  const std::vector<Point>& probes);

/// Seeded uniform probe points inside the box.
std::vector<Point> domain_probes(const SpectralModel& model, const DomainBox& box,
                                 int count, std::uint64_t seed);

/// CSV rows `index,coord1,coord2`; coord2 empty for line models.
void write_lattice_csv(const Lattice& lattice, PointKind kind, std::ostream& out);

enum class FunctionalKind { Dirac, WeightedDiracs, BallAverage };
enum class MultiplierKind { Shifted, Pure };

// Compactly supported positive measure: support points p_k with masses
// mu_k > 0, all within rho/2 of the center.
struct SamplingFunctional {
    Point center;
    FunctionalKind kind = FunctionalKind::Dirac;
    std::vector<Point> support;
    std::vector<double> masses;

    double total_mass() const;
};

struct FamilyParams {
    std::vector<double> masses = {1.0};  // dirac: masses[0]; weighted: all
    int sub_count = 3;                   // radial resolution of ball rules
    double sub_radius = 0.0;             // support radius; <= rho/2
};

struct FunctionalFamily {
    std::vector<SamplingFunctional> functionals;
    int derivative_order = 0;
    double c_phi = 0.0;  // lower mass bound
    double big_c_phi = 0.0;  // upper mass bound
};

/// One functional per lattice point. Masses are validated against
/// [c_phi, C_phi] member by member; ball averages carry positive Riemannian
/// quadrature weights normalized to total mass one.
FunctionalFamily make_functional_family(const SpectralModel& model, const Lattice& lattice,
                                        FunctionalKind kind, const FamilyParams& params,
                                        int derivative_order, double c_phi, double big_c_phi,
                                        std::uint64_t seed);

/// Phi((1 + Delta)^n f) = sum_k mu_k ((1+Delta)^n f)(p_k).
Complex apply_functional(const SamplingFunctional& functional, const PwFunction& f,
                         int derivative_order);

/// Phi applied to each kernel e_m; for half-plane models this is the
/// Helgason transform of the functional.
Eigen::VectorXcd kernel_moments(const SamplingFunctional& functional,
                                const SpectralModel& model);

/// Riesz representer of f -> Phi(m(Delta)^n f): coefficient at node m is
/// mult(lambda_m)^n conj(Phi(e_m)), so <f, rep> reproduces the sample.
PwFunction representer(const SamplingFunctional& functional, int derivative_order,
                       const ModelPtr& model,
                       MultiplierKind multiplier = MultiplierKind::Shifted);

}  // namespace pwframes

#endif
