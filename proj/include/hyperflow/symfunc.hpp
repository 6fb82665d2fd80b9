#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace hyperflow {

/// Ordered tuple of the n-1 principal curvatures of a hypersurface point in
/// H^n (normalized so a geodesic sphere of radius r has all entries coth r).
struct CurvatureVector {
    std::vector<double> lambda;

    explicit CurvatureVector(std::vector<double> values);
    CurvatureVector(std::initializer_list<double> values);

    int count() const { return static_cast<int>(lambda.size()); }
    /// Ambient dimension n = count() + 1.
    int ambient_dim() const { return count() + 1; }
};

/// Elementary symmetric function sigma_k via the one-pass coefficient
/// recurrence on prod(1 + t lambda_i).  sigma_0 = 1.
double sigma_k(const CurvatureVector& lambda, int k);
double sigma_k(std::span<const double> lambda, int k);

/// Normalized mean curvature H_k = sigma_k / C(n-1, k).
double normalized_H(const CurvatureVector& lambda, int k);
double normalized_H(std::span<const double> lambda, int k);

/// Garding cone test: sigma_j > 0 for all j <= k, plus the smallest sigma_j
/// as a margin.
struct ConeTest {
    bool inside;
    double margin; // min_{1<=j<=k} sigma_j
};
ConeTest in_garding_cone(const CurvatureVector& lambda, int k);

/// Newton-MacLaurin residuals (H_{k-1}H_l - H_k H_{l-1}, H_l - H_k^{l/k});
/// both nonnegative on the closure of Gamma_k^+, zero iff isotropic.
struct NewtonMacLaurin {
    double quotient_residual;
    double power_residual;
};
NewtonMacLaurin newton_maclaurin_residuals(const CurvatureVector& lambda, int k,
                                           int l);

/// Flow speed F = (H_k / H_l)^{1/(k-l)} on the positive cone.  Throws
/// DomainError when any entry or H_j is nonpositive: a flow step must be
/// retried with a smaller dt, never clamped.
double flow_speed(const CurvatureVector& lambda, int k, int l);
double flow_speed(std::span<const double> lambda, int k, int l);

/// Partial derivatives dF/dlambda_i of the flow speed (all positive on the
/// positive cone; used for parabolic step-size bounds).
std::vector<double> flow_speed_gradient(const CurvatureVector& lambda, int k,
                                        int l);

double binomial(int n, int k);

} // namespace hyperflow
