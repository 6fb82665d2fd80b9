#include "hyperflow/integrals.hpp"

#include "hyperflow/errors.hpp"
#include "hyperflow/quadrature.hpp"
#include "hyperflow/symfunc.hpp"

#include <cmath>
#include <numbers>

namespace hyperflow {

namespace {

double double_factorial(int m) {
    // (-1)!! = 0!! = 1
    double v = 1.0;
    for (int j = m; j >= 2; j -= 2) v *= j;
    return v;
}

void require_k(int n, int k, int lo, int hi) {
    if (k < lo || k > hi)
        throw ArgumentError("curvature index k out of range for dimension " +
                            std::to_string(n));
}

} // namespace

double sphere_measure(int k) {
    if (k < 0) throw ArgumentError("sphere_measure: k must be nonnegative");
    return 2.0 * std::pow(std::numbers::pi, 0.5 * (k + 1)) /
           std::tgamma(0.5 * (k + 1));
}

double curvature_integral(const GeometryFrame& frame, int k) {
    require_k(frame.dimension, k, 0, frame.dimension - 1);
    double acc = 0.0;
    for (int j = 0; j < frame.node_count(); ++j)
        acc += frame.mean_curvature(j, k) * frame.dmu(j);
    return acc;
}

double curvature_integral(const StarBody& body, int k) {
    return curvature_integral(geometry(body), k);
}

double volume(const StarBody& body) {
    const SpectralBasis& B = body.basis();
    const Eigen::VectorXd r = B.synth(body.coefficients());
    const int n = body.dimension();
    const double ang = (n == 2) ? 1.0 : sphere_measure(n - 2);
    double acc = 0.0;
    for (int j = 0; j < B.node_count(); ++j)
        acc += B.quad_weights()(j) * sinh_power_integral(n - 1, r(j));
    return ang * acc;
}

QuermassVector quermassintegrals(const StarBody& body) {
    return quermassintegrals(geometry(body));
}

QuermassVector quermassintegrals(const GeometryFrame& frame) {
    const int n = frame.dimension;
    QuermassVector qv;
    qv.dimension = n;
    qv.V.resize(n);
    qv.W.assign(n + 1, 0.0);

    for (int k = 0; k <= n - 1; ++k)
        qv.V[n - 1 - k] = curvature_integral(frame, k);

    // Volume: radial antiderivative against the bare angular weights.
    {
        const double ang = (n == 2) ? 1.0 : sphere_measure(n - 2);
        double acc = 0.0;
        for (int j = 0; j < frame.node_count(); ++j)
            acc += frame.ang_w(j) * sinh_power_integral(n - 1, frame.r(j));
        qv.W[0] = ang * acc;
    }

    qv.W[n] = sphere_measure(n - 1) / n;
    if (n >= 2) qv.W[1] = qv.area() / n;

    for (int k = 2; k <= n - 1; ++k) {
        double sum = 0.0;
        const int i_max = (k % 2 == 0) ? k / 2 - 1 : (k - 1) / 2;
        for (int i = 0; i <= i_max; ++i) {
            const double c = double_factorial(k - 1) * double_factorial(n - k) /
                             (double_factorial(k - 1 - 2 * i) *
                              double_factorial(n - k + 2 * i));
            sum += (i % 2 == 0 ? 1.0 : -1.0) * c *
                   qv.curvature_integral(k - 1 - 2 * i);
        }
        double wk = sum / n;
        if (k % 2 == 0) {
            const double coeff = double_factorial(k - 1) *
                                 double_factorial(n - k) / double_factorial(n);
            wk += ((k / 2) % 2 == 0 ? 1.0 : -1.0) * coeff * qv.W[0];
        }
        qv.W[k] = wk;
    }
    return qv;
}

double relation_residual(const QuermassVector& qv, int k) {
    const int n = qv.dimension;
    require_k(n, k, 1, n - 1);
    const double lhs = qv.curvature_integral(k);
    const double rhs =
        n * (qv.W[k + 1] + static_cast<double>(k) / (n - k + 1) * qv.W[k - 1]);
    return lhs - rhs;
}

double relation_residual(const StarBody& body, int k) {
    return relation_residual(quermassintegrals(body), k);
}

double steiner_volume(const std::vector<double>& V_list, double vol, double rho,
                      int n) {
    if (rho < 0) throw ArgumentError("steiner_volume: rho must be nonnegative");
    if (static_cast<int>(V_list.size()) != n)
        throw ArgumentError("steiner_volume: V list must have n entries");
    double acc = vol;
    for (int k = 0; k <= n - 1; ++k)
        acc += binomial(n - 1, k) * V_list[k] * steiner_moment(k, n, rho);
    return acc;
}

double minkowski_residual(const GeometryFrame& frame, int k) {
    require_k(frame.dimension, k, 1, frame.dimension - 1);
    double lhs = 0.0, rhs = 0.0;
    for (int j = 0; j < frame.node_count(); ++j) {
        lhs += frame.mean_curvature(j, k) * frame.u(j) * frame.dmu(j);
        rhs += frame.mean_curvature(j, k - 1) * frame.rho(j) * frame.dmu(j);
    }
    const double scale = std::abs(rhs);
    return scale > 1e-8 ? (lhs - rhs) / scale : lhs - rhs;
}

double minkowski_residual(const StarBody& body, int k) {
    return minkowski_residual(geometry(body), k);
}

double heintze_karcher_deficit(const GeometryFrame& frame) {
    double lhs = 0.0, rhs = 0.0;
    for (int j = 0; j < frame.node_count(); ++j) {
        const double h1 = frame.mean_curvature(j, 1);
        if (!(h1 > 0.0))
            throw DomainError("heintze_karcher_deficit: H_1 <= 0 at a node");
        lhs += frame.rho(j) / h1 * frame.dmu(j);
        rhs += frame.u(j) * frame.dmu(j);
    }
    return lhs - rhs;
}

double heintze_karcher_deficit(const StarBody& body) {
    return heintze_karcher_deficit(geometry(body));
}

} // namespace hyperflow
