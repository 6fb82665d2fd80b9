#include "hyperflow/quadrature.hpp"

#include "hyperflow/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace hyperflow {

namespace {

// (G7,K15) nodes on [-1,1] and weights, Kronrod abscissae ordered by value.
constexpr double kKronrodX[15] = {
    -0.991455371120813, -0.949107912342759, -0.864864423359769,
    -0.741531185599394, -0.586087235467691, -0.405845151377397,
    -0.207784955007898, 0.0,                0.207784955007898,
    0.405845151377397,  0.586087235467691,  0.741531185599394,
    0.864864423359769,  0.949107912342759,  0.991455371120813};
constexpr double kKronrodW[15] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728, 0.204432940075298,
    0.190350578064785, 0.169004726639267, 0.140653259715525,
    0.104790010322250, 0.063092092629979, 0.022935322010529};
constexpr double kGaussW[7] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469, 0.381830050505119, 0.279705391489277,
    0.129484966168870};

struct PanelResult {
    double kronrod;
    double err;
};

PanelResult gk15(const std::function<double(double)>& f, double a, double b) {
    const double h = 0.5 * (b - a);
    const double c = 0.5 * (a + b);
    double fk = 0.0, fg = 0.0;
    for (int i = 0; i < 15; ++i) {
        const double v = f(c + h * kKronrodX[i]);
        fk += kKronrodW[i] * v;
        if (i % 2 == 1) fg += kGaussW[i / 2] * v;
    }
    return {h * fk, std::abs(h * (fk - fg))};
}

double adapt(const std::function<double(double)>& f, double a, double b,
             double tol, int depth) {
    const PanelResult p = gk15(f, a, b);
    if (p.err <= tol || depth <= 0) return p.kronrod;
    const double c = 0.5 * (a + b);
    return adapt(f, a, c, 0.5 * tol, depth - 1) +
           adapt(f, c, b, 0.5 * tol, depth - 1);
}

} // namespace

double integrate_gk(const std::function<double(double)>& f, double a, double b,
                    double abs_tol, int max_depth) {
    if (!(abs_tol > 0)) throw ArgumentError("integrate_gk: tolerance must be positive");
    if (a == b) return 0.0;
    return adapt(f, a, b, abs_tol, max_depth);
}

JacobiRule gauss_jacobi(int n_points, double alpha) {
    if (n_points < 1) throw ArgumentError("gauss_jacobi: need at least one point");
    if (!(alpha > -1.0)) throw ArgumentError("gauss_jacobi: alpha must exceed -1");

    // Golub-Welsch on the symmetric-Jacobi (Gegenbauer) recurrence,
    // a_k = 0, b_k = k(k+2a)/((2k+2a)^2-1).
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n_points, n_points);
    for (int k = 1; k < n_points; ++k) {
        const double kk = static_cast<double>(k);
        const double num = kk * (kk + 2.0 * alpha);
        const double den = (2.0 * kk + 2.0 * alpha) * (2.0 * kk + 2.0 * alpha) - 1.0;
        const double off = std::sqrt(num / den);
        J(k, k - 1) = off;
        J(k - 1, k) = off;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
    if (es.info() != Eigen::Success)
        throw NumericError("gauss_jacobi: eigen decomposition failed");

    // mu0 = int_{-1}^{1} (1-x^2)^alpha dx = 2^{2a+1} B(a+1, a+1)
    const double mu0 = std::exp((2.0 * alpha + 1.0) * std::log(2.0) +
                                2.0 * std::lgamma(alpha + 1.0) -
                                std::lgamma(2.0 * alpha + 2.0));

    JacobiRule rule;
    rule.x.resize(n_points);
    rule.w.resize(n_points);
    for (int i = 0; i < n_points; ++i) {
        // eigenvalues ascend; emit in decreasing x so arccos(x) ascends
        const int src = n_points - 1 - i;
        rule.x[i] = es.eigenvalues()(src);
        const double q0 = es.eigenvectors()(0, src);
        rule.w[i] = mu0 * q0 * q0;
    }
    return rule;
}

double sinh_power_integral(int m, double r) {
    if (m < 0) throw ArgumentError("sinh_power_integral: negative power");
    if (r < 0) throw ArgumentError("sinh_power_integral: negative radius");
    if (r == 0.0) return 0.0;
    if (m == 0) return r;
    if (r < 0.2) {
        // recursion cancels near 0; one GK panel is exact to rounding there
        return gk15([m](double t) { return std::pow(std::sinh(t), m); }, 0.0, r)
            .kronrod;
    }
    const double sh = std::sinh(r), ch = std::cosh(r);
    double val = (m % 2 == 0) ? r : ch - 1.0; // I_0 or I_1
    for (int j = (m % 2 == 0) ? 2 : 3; j <= m; j += 2) {
        val = (std::pow(sh, j - 1) * ch - (j - 1) * val) / j;
    }
    return val;
}

double steiner_moment(int k, int n, double rho) {
    if (k < 0 || k > n - 1) throw ArgumentError("steiner_moment: k out of range");
    if (rho < 0) throw ArgumentError("steiner_moment: rho must be nonnegative");
    if (rho == 0.0) return 0.0;
    return integrate_gk(
        [k, n](double s) {
            return std::pow(std::cosh(s), k) * std::pow(std::sinh(s), n - 1 - k);
        },
        0.0, rho, 1e-12);
}

} // namespace hyperflow
