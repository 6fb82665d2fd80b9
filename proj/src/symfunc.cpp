#include "hyperflow/symfunc.hpp"

#include "hyperflow/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hyperflow {

namespace {

void require_index(std::span<const double> lambda, int k, int lo) {
    const int m = static_cast<int>(lambda.size());
    if (m >= 64) throw ArgumentError("curvature tuple too long");
    if (k < lo || k > m)
        throw ArgumentError("symmetric-function index k out of range");
}

// sigma_1..sigma_k in one pass over the generating polynomial coefficients.
void elementary_up_to(std::span<const double> lambda, int k, double* e) {
    std::fill(e, e + k + 1, 0.0);
    e[0] = 1.0;
    int top = 0;
    for (const double v : lambda) {
        top = std::min(top + 1, k);
        for (int j = top; j >= 1; --j) e[j] += v * e[j - 1];
    }
}

} // namespace

CurvatureVector::CurvatureVector(std::vector<double> values)
    : lambda(std::move(values)) {
    if (lambda.empty())
        throw ArgumentError("CurvatureVector: need n-1 >= 1 entries");
    for (const double v : lambda)
        if (!std::isfinite(v))
            throw ArgumentError("CurvatureVector: entries must be finite");
}

CurvatureVector::CurvatureVector(std::initializer_list<double> values)
    : CurvatureVector(std::vector<double>(values)) {}

double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    double r = 1.0;
    k = std::min(k, n - k);
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

double sigma_k(std::span<const double> lambda, int k) {
    require_index(lambda, k, 0);
    if (k == 0) return 1.0;
    double e[64];
    elementary_up_to(lambda, k, e);
    return e[k];
}

double sigma_k(const CurvatureVector& lambda, int k) {
    return sigma_k(std::span<const double>(lambda.lambda), k);
}

double normalized_H(std::span<const double> lambda, int k) {
    const int m = static_cast<int>(lambda.size());
    require_index(lambda, k, 0);
    return sigma_k(lambda, k) / binomial(m, k);
}

double normalized_H(const CurvatureVector& lambda, int k) {
    return normalized_H(std::span<const double>(lambda.lambda), k);
}

ConeTest in_garding_cone(const CurvatureVector& lambda, int k) {
    require_index(std::span<const double>(lambda.lambda), k, 1);
    double e[64];
    elementary_up_to(std::span<const double>(lambda.lambda), k, e);
    double margin = std::numeric_limits<double>::infinity();
    bool inside = true;
    for (int j = 1; j <= k; ++j) {
        margin = std::min(margin, e[j]);
        inside = inside && e[j] > 0.0;
    }
    return {inside, margin};
}

NewtonMacLaurin newton_maclaurin_residuals(const CurvatureVector& lambda, int k,
                                           int l) {
    const int m = lambda.count();
    if (!(1 <= l && l < k && k <= m))
        throw ArgumentError("newton_maclaurin_residuals: need 1 <= l < k <= n-1");
    if (!in_garding_cone(lambda, k).inside) {
        // admit the closure: allow sigma_j == 0 within rounding
        double e[64];
        elementary_up_to(std::span<const double>(lambda.lambda), k, e);
        for (int j = 1; j <= k; ++j)
            if (e[j] < 0.0)
                throw DomainError(
                    "newton_maclaurin_residuals: tuple outside closure of Gamma_k^+");
    }
    const auto H = [&](int j) { return normalized_H(lambda, j); };
    const double hk = H(k), hl = H(l);
    return {H(k - 1) * hl - hk * H(l - 1),
            hl - std::pow(std::max(hk, 0.0), static_cast<double>(l) / k)};
}

double flow_speed(std::span<const double> lambda, int k, int l) {
    const int m = static_cast<int>(lambda.size());
    if (!(0 <= l && l < k && k <= m))
        throw ArgumentError("flow_speed: need 0 <= l < k <= n-1");
    for (const double v : lambda)
        if (!(v > 0.0))
            throw DomainError("flow_speed: curvature tuple left the positive cone");
    const double hk = normalized_H(lambda, k);
    const double hl = normalized_H(lambda, l);
    if (!(hk > 0.0) || !(hl > 0.0))
        throw DomainError("flow_speed: H_k or H_l nonpositive");
    return std::pow(hk / hl, 1.0 / (k - l));
}

double flow_speed(const CurvatureVector& lambda, int k, int l) {
    return flow_speed(std::span<const double>(lambda.lambda), k, l);
}

std::vector<double> flow_speed_gradient(const CurvatureVector& lambda, int k,
                                        int l) {
    const int m = lambda.count();
    const double F = flow_speed(lambda, k, l);
    const double hk = normalized_H(lambda, k);
    const double hl = normalized_H(lambda, l);
    std::vector<double> grad(m);
    std::vector<double> rest;
    rest.reserve(m - 1);
    for (int i = 0; i < m; ++i) {
        rest.clear();
        for (int j = 0; j < m; ++j)
            if (j != i) rest.push_back(lambda.lambda[j]);
        const std::span<const double> r(rest);
        const double dhk = sigma_k(r, k - 1) / binomial(m, k);
        const double dhl = (l == 0) ? 0.0 : sigma_k(r, l - 1) / binomial(m, l);
        grad[i] = F / (k - l) * (dhk / hk - dhl / hl);
    }
    return grad;
}

} // namespace hyperflow
