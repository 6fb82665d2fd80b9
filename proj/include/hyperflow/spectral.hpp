#pragma once

#include <Eigen/Dense>

#include <memory>

namespace hyperflow {

/// Spectral basis shared by all bodies of one (dimension, resolution):
/// quadrature nodes/weights on the sphere plus synthesis/analysis and
/// differentiation operators for the radial series.
///
/// The series is truncated at M = max(8, N/4) modes while keeping N
/// quadrature nodes.  The 4x node oversampling dealiases the nonlinear
/// curvature expressions and keeps the differentiation rounding floor
/// (which grows like M^2 eps) well below the resolved truncation error.
class SpectralBasis {
public:
    virtual ~SpectralBasis() = default;

    int node_count() const { return n_nodes_; }
    int mode_count() const { return n_modes_; }

    /// Angular coordinate of each node: theta in [0, 2pi) for periodic
    /// curves, polar angle phi in (0, pi) for axisymmetric profiles.
    const Eigen::VectorXd& angles() const { return angles_; }

    /// Quadrature weights against the angular measure, such that
    /// sum_j w_j f_j ~ int_{S^{n-1}} f dsigma / (omega_{n-2} factor for
    /// profiles; see derived classes).
    const Eigen::VectorXd& quad_weights() const { return quad_w_; }

    /// Least-squares projection of node values onto the mode space.
    Eigen::VectorXd analyze(const Eigen::VectorXd& values) const;

    /// Node values / first / second angular derivative of a coefficient
    /// vector.
    Eigen::VectorXd synth(const Eigen::VectorXd& coeffs) const;
    Eigen::VectorXd synth_d1(const Eigen::VectorXd& coeffs) const;
    Eigen::VectorXd synth_d2(const Eigen::VectorXd& coeffs) const;

    /// Series value at an arbitrary angle (test/diagnostic path).
    virtual double evaluate(const Eigen::VectorXd& coeffs, double angle) const = 0;

protected:
    int n_nodes_ = 0;
    int n_modes_ = 0;
    Eigen::VectorXd angles_;
    Eigen::VectorXd quad_w_;
    Eigen::MatrixXd synth_;    // N x M
    Eigen::MatrixXd synth_d1_; // N x M
    Eigen::MatrixXd synth_d2_; // N x M
    Eigen::MatrixXd analysis_; // M x N
};

/// Fourier basis on the uniform periodic grid theta_j = 2 pi j / N
/// (curves in H^2).  Trapezoidal quadrature; coefficients ordered
/// [a_0, a_1, b_1, a_2, b_2, ...].
class PeriodicBasis final : public SpectralBasis {
public:
    explicit PeriodicBasis(int n_nodes);
    double evaluate(const Eigen::VectorXd& coeffs, double angle) const override;
};

/// Cosine series r(phi) = sum a_m cos(m phi) collocated at the N-point
/// Gauss rule for the weight (1-x^2)^{(n-3)/2}, x = cos phi (plain
/// Gauss-Legendre when n = 3).  The weight absorbs the sin^{n-3} phi factor
/// of the axisymmetric area element, so smooth integrands stay spectrally
/// exact in every dimension.
class ProfileBasis final : public SpectralBasis {
public:
    ProfileBasis(int dimension, int n_nodes);
    double evaluate(const Eigen::VectorXd& coeffs, double angle) const override;
    int dimension() const { return dim_; }

private:
    int dim_;
};

/// Process-wide cache: bases are immutable and shared across threads.
std::shared_ptr<const PeriodicBasis> periodic_basis(int n_nodes);
std::shared_ptr<const ProfileBasis> profile_basis(int dimension, int n_nodes);

} // namespace hyperflow
