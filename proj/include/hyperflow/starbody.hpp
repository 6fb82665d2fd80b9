#pragma once

#include "hyperflow/spectral.hpp"
#include "hyperflow/symfunc.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <map>
#include <memory>
#include <string>

namespace hyperflow {

enum class BodyMode { PeriodicCurve, AxisymmetricProfile };

std::string to_string(BodyMode mode);
BodyMode body_mode_from_string(const std::string& s);

/// Discrete star-shaped hypersurface in H^n: a radial graph over the unit
/// sphere, sampled at the spectral nodes of its basis.  Immutable after
/// construction.
class StarBody {
public:
    StarBody(int dimension, BodyMode mode, Eigen::VectorXd nodes);

    int dimension() const { return dim_; }
    BodyMode mode() const { return mode_; }
    int resolution() const { return static_cast<int>(nodes_.size()); }
    const Eigen::VectorXd& nodes() const { return nodes_; }
    const SpectralBasis& basis() const { return *basis_; }
    std::shared_ptr<const SpectralBasis> basis_ptr() const { return basis_; }

    /// Radial series coefficients (least-squares projection of the nodes).
    const Eigen::VectorXd& coefficients() const { return coeffs_; }

    /// Radial value of the projected series at an arbitrary angle.
    double radius_at(double angle) const;

private:
    int dim_;
    BodyMode mode_;
    Eigen::VectorXd nodes_;
    std::shared_ptr<const SpectralBasis> basis_;
    Eigen::VectorXd coeffs_;
};

/// Per-node derived geometry of a StarBody.  kappa_rot carries multiplicity
/// n-2 in the principal curvature tuple (absent for n = 2).
struct GeometryFrame {
    int dimension = 0;
    Eigen::VectorXd angle;     // theta (n=2) or polar phi (n>=3)
    Eigen::VectorXd r;         // projected radial values
    Eigen::VectorXd dr;        // d r / d angle
    Eigen::VectorXd ddr;       // d^2 r / d angle^2
    Eigen::VectorXd kappa_mer; // meridian principal curvature (the curve's
                               // geodesic curvature for n=2)
    Eigen::VectorXd kappa_rot; // rotational principal curvature (n>=3)
    Eigen::VectorXd dmu;       // area-element quadrature weight
    Eigen::VectorXd ang_w;     // bare angular quadrature weight
    Eigen::VectorXd nu_r;      // <d_r, nu> = 1/v
    Eigen::VectorXd u;         // support function sinh(r) <d_r, nu>
    Eigen::VectorXd rho;       // cosh r

    int node_count() const { return static_cast<int>(r.size()); }

    /// Principal curvature tuple at node i.
    CurvatureVector lambda_at(int i) const;

    /// H_k(kappa(x_i)).
    double mean_curvature(int i, int k) const;

    double pinching_ratio() const;
    double min_principal_curvature() const;
};

/// Full differential geometry of the radial graph under the hyperbolic
/// metric dr^2 + sinh^2(r) g_S.
GeometryFrame geometry(const StarBody& body);

/// Geodesic sphere of radius r0 centered at the origin.
StarBody make_ball(int dimension, double r0, int resolution);

/// Exact geodesic sphere of radius R centered at distance a along the
/// symmetry axis; radial profile solved per node from the hyperbolic law of
/// cosines  cosh R = cosh a cosh rho - sinh a sinh rho cos(angle).
StarBody make_offcenter_ball(int dimension, double R, double a, int resolution);

struct PerturbationOptions {
    double margin_min = 1e-3; // h-convexity floor required of the output
    int max_halvings = 60;
    std::uint64_t seed = 0;   // 0: use the amplitudes exactly; otherwise
                              // scale each mode by a seeded draw in [-1,1]
                              // (plus a random phase for periodic curves)
};

/// Ball of radius r0 perturbed by the given cosine modes.  Amplitudes are
/// halved together until the body clears the h-convexity floor.
StarBody make_perturbed_ball(int dimension, double r0,
                             const std::map<int, double>& amplitudes,
                             int resolution, const PerturbationOptions& opts = {});

/// min over nodes and principal directions of (kappa_i - 1); h-convex iff
/// nonnegative.
double h_convexity_margin(const StarBody& body);
double h_convexity_margin(const GeometryFrame& frame);

/// min over nodes of (<d_r, nu> - tanh r); nonnegative (up to discretization)
/// for h-convex bodies containing the origin.
double support_lower_bound_check(const StarBody& body);
double support_lower_bound_check(const GeometryFrame& frame);

struct RadiusRange {
    double r_min;
    double r_max;
};
RadiusRange radius_oscillation(const StarBody& body);

/// Best-center enclosure diagnostic: center offset along the symmetry axis
/// (axisymmetric) or in the plane (curves) minimizing outradius/inradius.
struct Enclosure {
    double inradius;
    double outradius;
    double center_offset; // geodesic distance of the best center from origin
};
Enclosure best_center_enclosure(const StarBody& body);

} // namespace hyperflow
