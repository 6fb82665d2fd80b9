#include "hyperflow/verify.hpp"

#include "hyperflow/errors.hpp"
#include "hyperflow/rng.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <map>
#include <numbers>
#include <thread>

namespace hyperflow {

double relative_deficit(double lhs, double rhs) {
    const double scale = std::max(std::abs(lhs), std::abs(rhs));
    return scale > 1e-8 ? (lhs - rhs) / scale : lhs - rhs;
}

namespace {

DeficitReport make_report(std::string name, int n, int k, int l, double lhs,
                          double rhs) {
    DeficitReport r;
    r.name = std::move(name);
    r.n = n;
    r.k = k;
    r.l = l;
    r.lhs = lhs;
    r.rhs = rhs;
    r.deficit = lhs - rhs;
    r.relative = relative_deficit(lhs, rhs);
    return r;
}

} // namespace

DeficitReport check_thm11(const QuermassVector& qv, const BallFunctionTable& bf,
                          int k, int l) {
    const int n = qv.dimension;
    if (!(0 <= l && l < k && k <= n - 1))
        throw ArgumentError("check_thm11: need 0 <= l < k <= n-1");
    const double lhs = qv.W[k];
    const double rhs = bf.f(k, bf.f_inverse(l, qv.W[l]));
    return make_report("thm11", n, k, l, lhs, rhs);
}

DeficitReport check_thm11(const StarBody& body, int k, int l) {
    return check_thm11(quermassintegrals(body), *ball_functions(body.dimension()),
                       k, l);
}

DeficitReport check_thm12_i(const QuermassVector& qv, const BallFunctionTable& bf,
                            int k, int l) {
    const int n = qv.dimension;
    if (!(0 <= l && l < k && k <= n - 1))
        throw ArgumentError("check_thm12_i: need 0 <= l < k <= n-1");
    const double lhs = qv.curvature_integral(k);
    const double r = bf.f_inverse(l, qv.W[l]);
    const double rhs = n * bf.f(k + 1, r) +
                       static_cast<double>(n) * k / (n - k + 1) * bf.f(k - 1, r);
    return make_report("thm12i", n, k, l, lhs, rhs);
}

DeficitReport check_thm12_i(const StarBody& body, int k, int l) {
    return check_thm12_i(quermassintegrals(body),
                         *ball_functions(body.dimension()), k, l);
}

Thm12ivReports check_thm12_iv(const QuermassVector& qv,
                              const BallFunctionTable& bf, int k, int l) {
    const int n = qv.dimension;
    if (!(0 <= l && l < k && k <= n - 1 && (k - l) % 2 == 0))
        throw ArgumentError("check_thm12_iv: need 0 <= l < k <= n-1, k-l even");
    Thm12ivReports out;
    out.chain = make_report("thm12iv-chain", n, k, l, qv.curvature_integral(k),
                            bf.h_chain(k, l, qv.curvature_integral(l)));
    out.single_step =
        make_report("thm12iv-step", n, k, k - 2, qv.curvature_integral(k),
                    bf.h(k, qv.curvature_integral(k - 2)));
    if (k >= 3)
        out.g_bound = make_report("eq2i2", n, k, -1, qv.curvature_integral(k - 2),
                                  bf.g(k - 1, qv.W[k - 3]));
    return out;
}

Thm12ivReports check_thm12_iv(const StarBody& body, int k, int l) {
    return check_thm12_iv(quermassintegrals(body),
                          *ball_functions(body.dimension()), k, l);
}

DeficitReport check_thm13(const QuermassVector& qv, int k) {
    const int n = qv.dimension;
    if (!(1 <= k && k <= n - 1))
        throw ArgumentError("check_thm13: need 1 <= k <= n-1");
    return make_report("thm13", n, k, -1, qv.curvature_integral(k),
                       thm13_rhs(qv.area(), k, n));
}

DeficitReport check_thm13(const StarBody& body, int k) {
    return check_thm13(quermassintegrals(body), k);
}

DeficitReport check_isoperimetric_h2(const StarBody& body) {
    if (body.dimension() != 2)
        throw ArgumentError("check_isoperimetric_h2: requires n = 2");
    const QuermassVector qv = quermassintegrals(body);
    const double L = qv.area();
    const double A = qv.volume();
    return make_report("iso-h2", 2, -1, -1, L * L,
                       4.0 * std::numbers::pi * A + A * A);
}

DeficitReport check_heintze_karcher(const StarBody& body) {
    const GeometryFrame frame = geometry(body);
    double soft = 0.0, hard = 0.0;
    for (int j = 0; j < frame.node_count(); ++j) {
        const double h1 = frame.mean_curvature(j, 1);
        if (!(h1 > 0.0))
            throw DomainError("check_heintze_karcher: H_1 <= 0 at a node");
        soft += frame.rho(j) / h1 * frame.dmu(j);
        hard += frame.u(j) * frame.dmu(j);
    }
    return make_report("heintze-karcher", body.dimension(), -1, -1, soft, hard);
}

std::string to_string(CheckKind kind) {
    switch (kind) {
        case CheckKind::Thm11: return "thm11";
        case CheckKind::Thm12i: return "thm12i";
        case CheckKind::Thm12iv: return "thm12iv";
        case CheckKind::Thm13: return "thm13";
        case CheckKind::IsoperimetricH2: return "iso-h2";
        case CheckKind::HeintzeKarcher: return "heintze-karcher";
    }
    throw ArgumentError("unknown check kind");
}

CorpusEntry make_corpus_body(const CorpusConfig& corpus, int dimension,
                             std::uint64_t seed) {
    std::mt19937_64 gen(seed * 0x9e3779b97f4a7c15ULL + dimension);
    const double r0 = rand_uniform(gen, corpus.r0_min, corpus.r0_max);
    const std::string tag =
        "n" + std::to_string(dimension) + "-seed" + std::to_string(seed);

    if (seed % 10 == 0) {
        return {make_ball(dimension, r0, corpus.resolution), "ball-" + tag, seed,
                true};
    }
    if (seed % 10 == 5) {
        const double a = 0.3 * r0;
        return {make_offcenter_ball(dimension, r0, a, corpus.resolution),
                "offball-" + tag, seed, true};
    }
    std::map<int, double> amps;
    for (int m = 1; m <= corpus.max_mode; ++m)
        amps[m] = corpus.amplitude / (m * m);
    PerturbationOptions opts;
    opts.margin_min = corpus.margin_min;
    opts.seed = seed * 2654435761ULL + 17 * dimension;
    return {make_perturbed_ball(dimension, r0, amps, corpus.resolution, opts),
            "perturbed-" + tag, seed, false};
}

namespace {

struct BodyOutcome {
    std::vector<DeficitReport> reports;
    std::vector<BodyFailure> failures;
};

void run_checks_on_body(const SuiteConfig& cfg, const CorpusEntry& entry,
                        BodyOutcome& out) {
    const int n = entry.body.dimension();
    auto bf_holder = ball_functions(n);

    QuermassVector qv;
    double noise = 0.0;
    try {
        const GeometryFrame frame = geometry(entry.body);
        qv = quermassintegrals(frame);
        // measured quadrature/differentiation noise of this body, used to
        // separate discretization error from theorem violations
        for (int k = 1; k <= n - 1; ++k)
            noise = std::max(noise, std::abs(minkowski_residual(frame, k)));
    } catch (const std::exception& e) {
        out.failures.push_back({entry.id, e.what()});
        return;
    }

    auto tag = [&](DeficitReport r) {
        r.body_id = entry.id;
        r.seed = entry.seed;
        r.equality_expected = entry.is_ball;
        r.noise = noise;
        out.reports.push_back(std::move(r));
    };

    for (const CheckKind kind : cfg.checks) {
        try {
            switch (kind) {
                case CheckKind::Thm11:
                    for (int k = 1; k <= n - 1; ++k)
                        for (int l = 0; l < k; ++l)
                            tag(check_thm11(qv, *bf_holder, k, l));
                    break;
                case CheckKind::Thm12i:
                    for (int k = 1; k <= n - 1; ++k)
                        for (int l = 0; l < k; ++l)
                            tag(check_thm12_i(qv, *bf_holder, k, l));
                    break;
                case CheckKind::Thm12iv:
                    for (int k = 2; k <= n - 1; ++k)
                        for (int l = k % 2; l < k; l += 2) {
                            Thm12ivReports r = check_thm12_iv(qv, *bf_holder, k, l);
                            tag(r.chain);
                            if (l == k - 2) tag(r.single_step);
                            if (l == k - 2 && r.g_bound) tag(*r.g_bound);
                        }
                    break;
                case CheckKind::Thm13:
                    for (int k = 1; k <= n - 1; ++k) tag(check_thm13(qv, k));
                    break;
                case CheckKind::IsoperimetricH2:
                    if (n == 2) tag(check_isoperimetric_h2(entry.body));
                    break;
                case CheckKind::HeintzeKarcher:
                    if (n >= 3) tag(check_heintze_karcher(entry.body));
                    break; // HK asserted for n >= 3 only
            }
        } catch (const std::exception& e) {
            out.failures.push_back({entry.id, e.what()});
        }
    }
}

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("HYPERFLOW_THREADS")) {
        const int v = std::atoi(env);
        if (v > 0) return v;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

} // namespace

SuiteReport run_suite(const SuiteConfig& config) {
    // enumerate (dimension, seed) tasks in deterministic order
    struct Task {
        int dim;
        std::uint64_t seed;
    };
    std::vector<Task> tasks;
    for (const int dim : config.corpus.dimensions)
        for (int s = 0; s < config.corpus.seed_count; ++s)
            tasks.push_back({dim, static_cast<std::uint64_t>(
                                      config.corpus.seed_begin + s)});

    std::vector<BodyOutcome> outcomes(tasks.size());
    std::atomic<std::size_t> next{0};
    const int n_threads =
        std::max(1, std::min<int>(resolve_threads(config.threads),
                                  static_cast<int>(tasks.size())));

    auto worker = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= tasks.size()) return;
            try {
                const CorpusEntry entry =
                    make_corpus_body(config.corpus, tasks[i].dim, tasks[i].seed);
                run_checks_on_body(config, entry, outcomes[i]);
            } catch (const std::exception& e) {
                outcomes[i].failures.push_back(
                    {"n" + std::to_string(tasks[i].dim) + "-seed" +
                         std::to_string(tasks[i].seed),
                     e.what()});
            }
        }
    };

    if (n_threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_threads);
        for (int i = 0; i < n_threads; ++i) pool.emplace_back(worker);
        for (std::thread& th : pool) th.join();
    }

    SuiteReport report;
    report.bodies_checked = static_cast<int>(tasks.size());
    report.min_relative_deficit = std::numeric_limits<double>::infinity();
    for (BodyOutcome& out : outcomes) {
        for (DeficitReport& r : out.reports) {
            report.min_relative_deficit =
                std::min(report.min_relative_deficit, r.relative);
            if (r.equality_expected)
                report.max_equality_error =
                    std::max(report.max_equality_error, std::abs(r.relative));
            report.reports.push_back(std::move(r));
        }
        for (BodyFailure& f : out.failures) report.failures.push_back(std::move(f));
    }
    if (report.reports.empty()) report.min_relative_deficit = 0.0;

    for (const DeficitReport& r : report.reports) {
        // discretization noise measured on the same body is subtracted
        // before declaring a theorem violation
        if (r.relative < -(config.violation_tol + r.noise)) {
            const bool fragile = config.corpus.margin_min < 1e-3;
            if (fragile)
                ++report.fragile_count;
            else
                ++report.violation_count;
        }
        if (r.equality_expected && std::abs(r.relative) > config.equality_tol)
            ++report.equality_miss_count;
    }
    return report;
}

} // namespace hyperflow
