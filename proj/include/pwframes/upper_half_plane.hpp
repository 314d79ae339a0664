// Poincare upper half-plane model: hyperbolic geometry, the Helgason
// spectral grid with Plancherel weights (1/8pi^2) t tanh(pi t) dt dphi, and
// the eigenfunctions Im(k_phi z)^{it+1/2}.

#ifndef PWFRAMES_UPPER_HALF_PLANE_HPP
#define PWFRAMES_UPPER_HALF_PLANE_HPP

#include "pwframes/spectral.hpp"

namespace pwframes {

struct SamplingFunctional;

/// Im(k_phi z) for the rotation k_phi = [[cos phi, -sin phi],[sin phi, cos
/// phi]] acting by fractional linear transformation. Closed form
/// y / ((x sin phi + cos phi)^2 + (y sin phi)^2), strictly positive.
double rotated_imaginary_part(double phi, Point z);

/// Eigenfunction value Im(k_phi z)^{it + 1/2}, computed through the
/// principal logarithm of the (positive) rotated imaginary part.
Complex eigenfunction(double t, double phi, Point z);

/// arccosh(1 + |z-w|^2 / (2 Im z Im w)).
double geodesic_distance(Point z, Point w);

/// Spectral model with K_t x K_phi nodes: midpoint t-grid on [-omega,
/// omega] (K_t even, so t = 0 and its zero Plancherel weight are never
/// hit), midpoint phi-grid over the distinct boundary directions (0, pi]
/// (k_phi and k_{phi+pi} act identically, so each node represents its
/// {phi, phi+pi} pair of the (0, 2pi] measure), eigenvalue t^2 + 1/4.
ModelPtr build_helgason_model(double omega, int k_t, int k_phi);

struct LaplacianCheck {
    Complex fd_value;        // y^2 * five-point stencil of evaluate(f,.)
    Complex spectral_value;  // evaluate(multiplier -lambda applied to f)
    double rel_err = 0.0;
};

/// Compares the finite-difference Laplacian y^2(d_xx + d_yy) against the
/// spectral multiplier -(t^2 + 1/4) at a point. Second-order accurate in h.
LaplacianCheck laplacian_pointwise_check(const PwFunction& f, Point z, double h);

/// Helgason transform of a compactly supported sampling functional: the
/// component at node (t, phi) is the functional applied to the
/// eigenfunction, sum_k mass_k e_{(t,phi)}(p_k).
Eigen::VectorXcd functional_transform(const SamplingFunctional& functional,
                                      const SpectralModel& model);

}  // namespace pwframes

#endif
