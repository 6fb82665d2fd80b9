#pragma once

#include "hyperflow/ballfuncs.hpp"
#include "hyperflow/integrals.hpp"
#include "hyperflow/starbody.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace hyperflow {

/// One inequality evaluation: lhs >= rhs expected, equality on balls.
struct DeficitReport {
    std::string name;       // inequality identifier
    int n = 0, k = -1, l = -1;
    double lhs = 0;
    double rhs = 0;
    double deficit = 0;     // lhs - rhs
    double relative = 0;    // deficit scaled by max(|lhs|,|rhs|) when safe
    double noise = 0;       // measured quadrature noise (Minkowski residual)
    bool equality_expected = false;
    std::string body_id;
    std::uint64_t seed = 0;
};

double relative_deficit(double lhs, double rhs);

/// Thm 1.1:  W_k(K) >= f_k(f_l^{-1}(W_l(K))).
DeficitReport check_thm11(const QuermassVector& qv, const BallFunctionTable& bf,
                          int k, int l);
DeficitReport check_thm11(const StarBody& body, int k, int l);

/// Thm 1.2(i) / Eq. (kl):
/// int H_k >= n f_{k+1}(f_l^{-1}(W_l)) + nk/(n-k+1) f_{k-1}(f_l^{-1}(W_l)).
DeficitReport check_thm12_i(const QuermassVector& qv, const BallFunctionTable& bf,
                            int k, int l);
DeficitReport check_thm12_i(const StarBody& body, int k, int l);

/// Thm 1.2(iv) chain:  int H_k >= h_k o h_{k-2} o ... o h_{l+2}(int H_l),
/// k-l even.  Also exposes the single-step bound int H_k >= h_k(int H_{k-2})
/// and, for k >= 3, the Eq. (2i-2) bound int H_{k-2} >= g_{k-1}(W_{k-3}).
struct Thm12ivReports {
    DeficitReport chain;
    DeficitReport single_step;
    std::optional<DeficitReport> g_bound;
};
Thm12ivReports check_thm12_iv(const QuermassVector& qv,
                              const BallFunctionTable& bf, int k, int l);
Thm12ivReports check_thm12_iv(const StarBody& body, int k, int l);

/// Thm 1.3 / Eq. (eq_add): int H_k >= thm13_rhs(|dK|, k, n).
DeficitReport check_thm13(const QuermassVector& qv, int k);
DeficitReport check_thm13(const StarBody& body, int k);

/// Hyperbolic isoperimetric inequality in H^2:  L^2 >= 4 pi A + A^2.
DeficitReport check_isoperimetric_h2(const StarBody& body);

/// Heintze-Karcher:  int cosh(r)/H_1 dmu >= int u dmu.
DeficitReport check_heintze_karcher(const StarBody& body);

enum class CheckKind {
    Thm11,
    Thm12i,
    Thm12iv,
    Thm13,
    IsoperimetricH2,
    HeintzeKarcher,
};
std::string to_string(CheckKind kind);

/// Seeded corpus of h-convex bodies.  Every 10th seed is a centered ball
/// and every 10th (offset 5) an off-center ball, so equality cases are
/// exercised alongside generic shapes.
struct CorpusConfig {
    std::vector<int> dimensions = {3, 4, 5};
    int seed_begin = 1;
    int seed_count = 100;
    int resolution = 256;
    double r0_min = 0.8;
    double r0_max = 2.0;
    int max_mode = 4;
    double amplitude = 0.08;   // base amplitude, scaled by 1/m^2 per mode
    double margin_min = 1e-3;  // h-convexity floor ("stress" profile: 1e-5)
};

struct CorpusEntry {
    StarBody body;
    std::string id;
    std::uint64_t seed;
    bool is_ball;
};
CorpusEntry make_corpus_body(const CorpusConfig& corpus, int dimension,
                             std::uint64_t seed);

struct SuiteConfig {
    CorpusConfig corpus;
    std::vector<CheckKind> checks = {
        CheckKind::Thm11,    CheckKind::Thm12i,
        CheckKind::Thm12iv,  CheckKind::Thm13,
        CheckKind::HeintzeKarcher, CheckKind::IsoperimetricH2};
    double violation_tol = 1e-7; // relative slack before declaring violation
    double equality_tol = 1e-8;  // |relative deficit| allowed on balls
    int threads = 0;             // 0: HYPERFLOW_THREADS or hardware
};

struct BodyFailure {
    std::string body_id;
    std::string message;
};

struct SuiteReport {
    std::vector<DeficitReport> reports;
    std::vector<BodyFailure> failures;  // generation/range errors, isolated
    int violation_count = 0;
    int fragile_count = 0;              // violations on low-margin bodies
    int equality_miss_count = 0;
    double min_relative_deficit = 0;
    double max_equality_error = 0;
    int bodies_checked = 0;
};

/// Runs every requested check over the corpus.  Per-body errors are recorded
/// and do not abort the suite; reports come back in deterministic seed order
/// regardless of thread count.
SuiteReport run_suite(const SuiteConfig& config);

} // namespace hyperflow
