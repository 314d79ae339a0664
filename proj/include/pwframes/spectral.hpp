// Finite spectral models for Paley-Wiener synthesis: nodes of the
// diagonalized Laplacian with Plancherel quadrature weights, coefficient
// vectors over those nodes, and the pointwise/spectral operations shared by
// the Fourier-line and upper-half-plane realizations.

#ifndef PWFRAMES_SPECTRAL_HPP
#define PWFRAMES_SPECTRAL_HPP

#include <complex>
#include <cstdint>
#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace pwframes {

using Complex = std::complex<double>;

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A point lies outside the model's geometric domain.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Raised when an operation needs a certified frame and has none.
class NotCertifiedError : public Error {
public:
    using Error::Error;
};

enum class PointKind { RealLine, HalfPlane };

// For RealLine models only x is meaningful; HalfPlane points are z = x + iy
// with y > 0.
struct Point {
    double x = 0.0;
    double y = 0.0;
};

// One eigen-direction of the positive Laplacian. `t` is the frequency
// parameter (Fourier frequency, or the Helgason spectral parameter), `phi`
// the boundary angle of half-plane eigenfunctions (unused on the line).
struct SpectralNode {
    int id = 0;
    double eigenvalue = 0.0;
    double weight = 0.0;
    double t = 0.0;
    double phi = 0.0;
};

enum class QuadRule { Midpoint, Trapezoid };

class SpectralModel {
public:
    SpectralModel(PointKind kind, double omega, std::vector<SpectralNode> nodes);

    PointKind point_kind() const { return kind_; }
    double omega() const { return omega_; }
    int node_count() const { return static_cast<int>(nodes_.size()); }
    const std::vector<SpectralNode>& nodes() const { return nodes_; }
    const Eigen::VectorXd& weights() const { return weights_; }

    double max_eigenvalue() const { return max_eigenvalue_; }
    double min_eigenvalue() const { return min_eigenvalue_; }

    /// Eigenfunction of node `node` evaluated at `p`. Deterministic.
    Complex kernel(const SpectralNode& node, Point p) const;

    /// Metric of the underlying geometry: |dx| on the line, the geodesic
    /// distance on the upper half-plane.
    double distance(Point p, Point q) const;

    /// Throws DomainError if `p` is not a valid point of the geometry.
    void require_point(Point p) const;

private:
    PointKind kind_;
    double omega_;
    std::vector<SpectralNode> nodes_;
    Eigen::VectorXd weights_;
    double max_eigenvalue_ = 0.0;
    double min_eigenvalue_ = 0.0;
};

using ModelPtr = std::shared_ptr<const SpectralModel>;

// Coefficient vector over a model's nodes; the discrete transform values of
// a bandlimited function. Immutable model reference, value-semantic data.
class PwFunction {
public:
    PwFunction(ModelPtr model, Eigen::VectorXcd coeff);

    static PwFunction zero(ModelPtr model);

    const ModelPtr& model() const { return model_; }
    const Eigen::VectorXcd& coeff() const { return coeff_; }
    Eigen::VectorXcd& coeff() { return coeff_; }

private:
    ModelPtr model_;
    Eigen::VectorXcd coeff_;
};

/// Plancherel inner product sum_m w_m f_m conj(g_m). Fixed left-to-right
/// summation order.
Complex inner_product(const PwFunction& f, const PwFunction& g);

/// sqrt(<f,f>).
double norm(const PwFunction& f);

/// Pointwise synthesis sum_m w_m c_m e_m(x); the quadrature form of the
/// inversion integral.
Complex evaluate(const PwFunction& f, Point x);

/// Applies a real spectral multiplier c_m -> m(lambda_m) c_m.
PwFunction apply_spectral_multiplier(const PwFunction& f,
                                     const std::function<double(double)>& multiplier);

struct BernsteinReport {
    double lhs = 0.0;    // ||Delta^s f||
    double rhs = 0.0;    // bound^s ||f||
    double bound = 0.0;  // maximal node eigenvalue of the model
    bool holds = false;
};

/// Checks ||Delta^s f|| <= B^s ||f|| with B the model's maximal node
/// eigenvalue; equality is attained exactly on extreme-eigenvalue nodes.
BernsteinReport bernstein_verify(const PwFunction& f, double s);

/// Deterministic unit-norm function with complex Gaussian coefficients.
PwFunction random_pw(ModelPtr model, std::uint64_t seed);

}  // namespace pwframes

#endif
