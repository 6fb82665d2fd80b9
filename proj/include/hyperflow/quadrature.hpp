#pragma once

#include <functional>
#include <vector>

namespace hyperflow {

/// Adaptive Gauss-Kronrod (G7,K15) integration of f over [a,b] to the given
/// absolute tolerance.
double integrate_gk(const std::function<double(double)>& f, double a, double b,
                    double abs_tol = 1e-12, int max_depth = 40);

/// Nodes/weights of the Gauss-Jacobi rule with weight (1-x^2)^alpha on
/// (-1,1):  sum_j w_j f(x_j) ~ int f(x) (1-x^2)^alpha dx.  Nodes returned in
/// decreasing x order (increasing polar angle arccos x).
struct JacobiRule {
    std::vector<double> x;
    std::vector<double> w;
};
JacobiRule gauss_jacobi(int n_points, double alpha);

/// int_0^r sinh^m(t) dt.  Closed-form antiderivative recursion away from 0;
/// a single Gauss-Kronrod panel near 0 where the recursion cancels.
double sinh_power_integral(int m, double r);

/// Steiner moment  int_0^rho cosh^k(s) sinh^{n-1-k}(s) ds.
double steiner_moment(int k, int n, double rho);

} // namespace hyperflow
