#include "hyperflow/ballfuncs.hpp"

#include "hyperflow/errors.hpp"
#include "hyperflow/integrals.hpp"
#include "hyperflow/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <string>

namespace hyperflow {

namespace {

double double_factorial(int m) {
    double v = 1.0;
    for (int j = m; j >= 2; j -= 2) v *= j;
    return v;
}

// cosh^a(r) sinh^b(r) formed in log-space (the powers span many orders of
// magnitude across the radius table)
double cosh_sinh_pow(double r, int a, int b) {
    if (r == 0.0) return b == 0 ? 1.0 : 0.0;
    double lg = a * std::log(std::cosh(r)) + b * std::log(std::sinh(r));
    return std::exp(lg);
}

} // namespace

BallFunctionTable::BallFunctionTable(int dimension, double r_max)
    : n_(dimension), r_max_(r_max) {
    if (n_ < 2) throw ArgumentError("BallFunctionTable: dimension must be >= 2");
    if (!(r_max_ > 0)) throw ArgumentError("BallFunctionTable: r_max must be positive");

    const int grid = 512;
    const double r_lo = 1e-4;
    tables_.resize(n_);
    for (int k = 0; k <= n_ - 1; ++k) {
        Table& t = tables_[k];
        t.r.push_back(0.0);
        t.value.push_back(0.0);
        for (int i = 0; i <= grid; ++i) {
            const double r =
                r_lo * std::pow(r_max_ / r_lo, static_cast<double>(i) / grid);
            t.r.push_back(r);
            t.value.push_back(f_raw(k, r));
        }
        for (std::size_t i = 1; i < t.value.size(); ++i)
            if (!(t.value[i] > t.value[i - 1]))
                throw NumericError("BallFunctionTable: f_k not increasing on grid");
    }
}

double BallFunctionTable::f_raw(int k, double r) const {
    const double omega = sphere_measure(n_ - 1);
    if (k == 0) return omega * sinh_power_integral(n_ - 1, r);
    if (k == n_) return omega / n_;

    const int i_max = (k % 2 == 0) ? k / 2 - 1 : (k - 1) / 2;
    double sum = 0.0;
    for (int i = 0; i <= i_max; ++i) {
        const double c = double_factorial(k - 1) * double_factorial(n_ - k) /
                         (double_factorial(k - 1 - 2 * i) *
                          double_factorial(n_ - k + 2 * i));
        // coth^{k-1-2i} sinh^{n-1} = cosh^{k-1-2i} sinh^{n-k+2i}
        sum += (i % 2 == 0 ? 1.0 : -1.0) * c *
               cosh_sinh_pow(r, k - 1 - 2 * i, n_ - k + 2 * i);
    }
    double val = omega * sum / n_;
    if (k % 2 == 0) {
        const double c = double_factorial(k - 1) * double_factorial(n_ - k) /
                         double_factorial(n_);
        val += ((k / 2) % 2 == 0 ? 1.0 : -1.0) * c * omega *
               sinh_power_integral(n_ - 1, r);
    }
    return val;
}

double BallFunctionTable::f(int k, double r) const {
    if (k < 0 || k > n_) throw ArgumentError("f: index out of range");
    if (r < 0) throw ArgumentError("f: radius must be nonnegative");
    return f_raw(k, r);
}

const BallFunctionTable::Table& BallFunctionTable::table_for(int k) const {
    return tables_.at(k);
}

double BallFunctionTable::f_inverse(int k, double s) const {
    if (k < 0 || k > n_ - 1)
        throw ArgumentError("f_inverse: index must satisfy 0 <= k <= n-1");
    if (s < 0) throw ArgumentError("f_inverse: value must be nonnegative");
    if (s == 0.0) return 0.0;

    const Table& t = table_for(k);
    if (s > t.value.back())
        throw RangeError("f_inverse: value beyond the table range; rebuild the "
                         "table with a larger r_max");
    const auto it = std::lower_bound(t.value.begin(), t.value.end(), s);
    std::size_t hi_i = static_cast<std::size_t>(it - t.value.begin());
    double lo = t.r[hi_i - 1], hi = t.r[hi_i];
    double flo = t.value[hi_i - 1] - s, fhi = t.value[hi_i] - s;
    if (flo == 0.0) return lo;

    // bisection with secant acceleration; f evaluations are closed-form cheap
    double mid = 0.5 * (lo + hi);
    for (int iter = 0; iter < 200; ++iter) {
        const double denom = fhi - flo;
        double cand = (denom != 0.0) ? hi - fhi * (hi - lo) / denom
                                     : 0.5 * (lo + hi);
        if (!(cand > lo && cand < hi)) cand = 0.5 * (lo + hi);
        mid = cand;
        const double fm = f_raw(k, mid) - s;
        if (std::abs(fm) <= 1e-13 * std::max(1.0, std::abs(s)) ||
            hi - lo <= 1e-14 * std::max(1.0, mid)) {
            return mid;
        }
        if ((fm > 0) == (fhi > 0)) {
            hi = mid;
            fhi = fm;
        } else {
            lo = mid;
            flo = fm;
        }
    }
    return mid;
}

double BallFunctionTable::ball_curvature_integral(int k, double r) const {
    if (k < 0 || k > n_ - 1)
        throw ArgumentError("ball_curvature_integral: index out of range");
    if (r < 0) throw ArgumentError("ball_curvature_integral: negative radius");
    return sphere_measure(n_ - 1) * cosh_sinh_pow(r, k, n_ - 1 - k);
}

double BallFunctionTable::g(int k, double s) const {
    if (k < 2 || k > n_) throw ArgumentError("g: index must satisfy 2 <= k <= n");
    if (s < 0) throw ArgumentError("g: value must be nonnegative");
    return n_ * f_raw(k, f_inverse(k - 2, s)) +
           static_cast<double>(n_) * (k - 1) / (n_ - k + 2) * s;
}

double BallFunctionTable::g_inverse(int k, double s) const {
    if (k < 2 || k > n_) throw ArgumentError("g_inverse: index out of range");
    const double at_zero = g(k, 0.0);
    if (s < at_zero - 1e-12 * std::max(1.0, at_zero))
        throw ArgumentError("g_inverse: value below g_k(0)");
    if (s <= at_zero) return 0.0;

    const double s_dom_max = table_for(k - 2).value.back();
    double lo = 0.0, hi = std::min(1.0, s_dom_max);
    while (g(k, hi) < s) {
        if (hi >= s_dom_max) {
            if (g(k, s_dom_max) < s)
                throw RangeError("g_inverse: value beyond the table range");
            break;
        }
        hi = std::min(hi * 4.0, s_dom_max);
    }
    double flo = at_zero - s, fhi = g(k, hi) - s;
    double mid = 0.5 * (lo + hi);
    for (int iter = 0; iter < 200; ++iter) {
        const double denom = fhi - flo;
        double cand = (denom != 0.0) ? hi - fhi * (hi - lo) / denom
                                     : 0.5 * (lo + hi);
        if (!(cand > lo && cand < hi)) cand = 0.5 * (lo + hi);
        mid = cand;
        const double fm = g(k, mid) - s;
        if (std::abs(fm) <= 1e-13 * std::max(1.0, std::abs(s)) ||
            hi - lo <= 1e-14 * std::max(1.0, mid))
            return mid;
        if (fm > 0) {
            hi = mid;
            fhi = fm;
        } else {
            lo = mid;
            flo = fm;
        }
    }
    return mid;
}

double BallFunctionTable::positivity_residual(int k, double s) const {
    return s / n_ -
           static_cast<double>(k - 1) / (n_ - k + 2) * g_inverse(k, s);
}

double BallFunctionTable::h(int k, double s) const {
    if (k == 1)
        throw ArgumentError("h: k = 1 is undefined (g_0 does not exist)");
    if (k < 2 || k > n_ - 1)
        throw ArgumentError("h: index must satisfy 2 <= k <= n-1");
    if (s < 0) throw ArgumentError("h: value must be nonnegative");
    double inner = s / n_;
    if (k >= 3)
        inner -= static_cast<double>(k - 2) / (n_ - k + 3) * g_inverse(k - 1, s);
    if (inner < 0) {
        if (inner < -1e-10 * std::max(1.0, s / n_))
            throw DomainError("h: positivity bound violated");
        inner = 0.0;
    }
    return g(k + 1, inner);
}

double BallFunctionTable::h_chain(int k, int l, double s) const {
    if (!(0 <= l && l < k && k <= n_ - 1 && (k - l) % 2 == 0))
        throw ArgumentError("h_chain: need 0 <= l < k <= n-1 with k-l even");
    double v = s;
    for (int j = l + 2; j <= k; j += 2) v = h(j, v);
    return v;
}

namespace {
std::mutex table_mutex;
std::map<int, std::shared_ptr<const BallFunctionTable>> table_cache;
} // namespace

std::shared_ptr<const BallFunctionTable> ball_functions(int dimension) {
    std::lock_guard lock(table_mutex);
    auto& slot = table_cache[dimension];
    if (!slot) slot = std::make_shared<BallFunctionTable>(dimension);
    return slot;
}

double thm13_rhs(double area, int k, int n) {
    if (!(area > 0)) throw ArgumentError("thm13_rhs: area must be positive");
    if (k < 1 || k > n - 1) throw ArgumentError("thm13_rhs: k out of range");
    const double omega = sphere_measure(n - 1);
    const double q = area / omega;
    const double t1 = std::pow(q, 2.0 / k);
    const double t2 = std::pow(q, 2.0 / k * (n - k - 1.0) / (n - 1.0));
    return omega * std::pow(t1 + t2, 0.5 * k);
}

double thm13_rhs_composition(double area, int k, int n) {
    if (!(area > 0))
        throw ArgumentError("thm13_rhs_composition: area must be positive");
    if (k < 1 || k > n - 1)
        throw ArgumentError("thm13_rhs_composition: k out of range");
    auto bf = ball_functions(n);
    const double s = area / n;
    const double omega = sphere_measure(n - 1);
    // f_1^{-1}(s) = asinh((n s / omega)^{1/(n-1)})
    const double r = std::asinh(std::pow(n * s / omega, 1.0 / (n - 1)));
    return n * bf->f(k + 1, r) +
           static_cast<double>(n) * k / (n - k + 1) * bf->f(k - 1, r);
}

} // namespace hyperflow
