#pragma once

#include <memory>
#include <vector>

namespace hyperflow {

/// Closed-form ball functionals of one ambient dimension plus the monotone
/// composition machinery built on them.  f_k(r) = W_k(B_r) for
/// 0 <= k <= n-1, extended by the constant f_n = omega_{n-1}/n so the
/// top-index compositions of the curvature-integral chains stay defined.
/// Inverses bracket on a cached log-spaced radius table and polish with
/// safeguarded Newton/bisection.  Construction is the only mutation; all
/// evaluations afterwards are const and thread-safe.
class BallFunctionTable {
public:
    explicit BallFunctionTable(int dimension, double r_max = 10.0);

    int dimension() const { return n_; }
    double r_max() const { return r_max_; }

    /// W_k(B_r); f_0 = volume, f_n = omega_{n-1}/n (constant).
    double f(int k, double r) const;

    /// Unique r with f(k, r) = s (relative tolerance 1e-12).
    double f_inverse(int k, double s) const;

    /// int_{dB_r} H_k dmu = omega_{n-1} cosh^k(r) sinh^{n-1-k}(r).
    double ball_curvature_integral(int k, double r) const;

    /// g_k(s) = n f_k(f_{k-2}^{-1}(s)) + n(k-1)/(n-k+2) s, 2 <= k <= n.
    double g(int k, double s) const;
    double g_inverse(int k, double s) const;

    /// s/n - (k-1)/(n-k+2) g_k^{-1}(s); nonnegative for s in the range of
    /// the curvature-integral chain.
    double positivity_residual(int k, double s) const;

    /// h_k(s) = g_{k+1}(s/n - (k-2)/(n-k+3) g_{k-1}^{-1}(s)), 2 <= k <= n-1
    /// (the k = 2 inner term vanishes identically; k = 1 is undefined).
    double h(int k, double s) const;

    /// h_k o h_{k-2} o ... o h_{l+2} applied to s (requires k - l even).
    double h_chain(int k, int l, double s) const;

private:
    struct Table {
        std::vector<double> r;
        std::vector<double> value;
    };
    double f_raw(int k, double r) const;
    const Table& table_for(int k) const;

    int n_;
    double r_max_;
    std::vector<Table> tables_; // per k = 0..n-1
};

/// Shared per-dimension table (lazily built, immutable afterwards).
std::shared_ptr<const BallFunctionTable> ball_functions(int dimension);

/// Explicit right side of the hyperbolic Alexandrov-Fenchel inequality:
/// omega_{n-1} [ (A/omega)^{2/k} + (A/omega)^{(2/k)(n-k-1)/(n-1)} ]^{k/2}.
double thm13_rhs(double area, int k, int n);

/// The same bound written as the f-composition
/// n f_{k+1}(f_1^{-1}(s)) + nk/(n-k+1) f_{k-1}(f_1^{-1}(s)), s = A/n.
/// Equals thm13_rhs identically; kept as the cancellation-identity check.
double thm13_rhs_composition(double area, int k, int n);

} // namespace hyperflow
