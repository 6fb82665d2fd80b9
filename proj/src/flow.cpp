#include "hyperflow/flow.hpp"

#include "hyperflow/ballfuncs.hpp"
#include "hyperflow/errors.hpp"
#include "hyperflow/symfunc.hpp"

#include <algorithm>
#include <cmath>

namespace hyperflow {

void FlowConfig::validate(int dimension) const {
    if (!(0 <= l && l < k && k <= dimension - 1))
        throw ArgumentError("FlowConfig: need 0 <= l < k <= n-1");
    if (!(dt_initial > 0) || !(dt_max > 0))
        throw ArgumentError("FlowConfig: step sizes must be positive");
    if (!(cfl_safety > 0) || cfl_safety > 1)
        throw ArgumentError("FlowConfig: cfl_safety must be in (0,1]");
    if (!(t_max > 0)) throw ArgumentError("FlowConfig: t_max must be positive");
    if (!(converge_tol > 0) || !(step_error_tol > 0))
        throw ArgumentError("FlowConfig: tolerances must be positive");
    if (monitor_stride < 1)
        throw ArgumentError("FlowConfig: monitor_stride must be >= 1");
}

std::string to_string(FlowStatus s) {
    switch (s) {
        case FlowStatus::Converged: return "converged";
        case FlowStatus::TMaxReached: return "t_max";
        case FlowStatus::Stalled: return "stalled";
    }
    return "unknown";
}

double forcing_c(const GeometryFrame& frame, int k, int l) {
    double num = 0.0, den = 0.0;
    for (int j = 0; j < frame.node_count(); ++j) {
        const double hl = frame.mean_curvature(j, l);
        if (!(hl > 0.0)) throw DomainError("forcing_c: H_l <= 0 at a node");
        const double F = flow_speed(frame.lambda_at(j).lambda, k, l);
        num += hl * F * frame.dmu(j);
        den += hl * frame.dmu(j);
    }
    if (!(den > 0.0)) throw DomainError("forcing_c: nonpositive denominator");
    return num / den;
}

Eigen::VectorXd radial_velocity(const StarBody& body, const GeometryFrame& frame,
                                double c, int k, int l) {
    (void)body;
    Eigen::VectorXd vel(frame.node_count());
    for (int j = 0; j < frame.node_count(); ++j) {
        if (!(frame.nu_r(j) > 0.0))
            throw NumericError("radial_velocity: star-shapedness lost");
        const double F = flow_speed(frame.lambda_at(j).lambda, k, l);
        vel(j) = (c - F) / frame.nu_r(j);
    }
    return vel;
}

namespace {

// Everything one explicit stage needs, computed from a coefficient vector.
struct StageEval {
    GeometryFrame frame;
    Eigen::VectorXd velocity; // dr/dt at the nodes
    double c = 0;
    double lambda_max = 0;    // parabolic spectral-radius estimate
    double max_speed_dev = 0; // max |c - F|
};

class FlowEngine {
public:
    FlowEngine(const StarBody& body, const FlowConfig& cfg)
        : dim_(body.dimension()),
          mode_(body.mode()),
          basis_(body.basis_ptr()),
          cfg_(cfg) {
        cfg_.validate(dim_);
        coeffs_ = body.coefficients();
        // highest resolved angular frequency, for the parabolic CFL bound
        mode_max_ = (mode_ == BodyMode::PeriodicCurve)
                        ? (basis_->mode_count() - 1) / 2
                        : basis_->mode_count() - 1;
    }

    StarBody make_body(const Eigen::VectorXd& coeffs) const {
        return StarBody(dim_, mode_, basis_->synth(coeffs));
    }

    StageEval evaluate(const Eigen::VectorXd& coeffs) const {
        StageEval ev;
        ev.frame = geometry(make_body(coeffs));
        const int N = ev.frame.node_count();

        Eigen::VectorXd F(N);
        std::vector<double> grad;
        double lam = 0.0;
        for (int j = 0; j < N; ++j) {
            const CurvatureVector cv = ev.frame.lambda_at(j);
            F(j) = flow_speed(cv, cfg_.k, cfg_.l);
            const auto g = flow_speed_gradient(cv, cfg_.k, cfg_.l);
            // diffusion coefficient of the meridian second-derivative term:
            // dF/dkappa_mer / (sinh^2 r (1 + r'^2/sinh^2 r))
            const double w = std::sinh(ev.frame.r(j));
            const double gg = w * w + ev.frame.dr(j) * ev.frame.dr(j);
            lam = std::max(lam, g[0] / gg);
        }
        ev.lambda_max = lam * static_cast<double>(mode_max_) * mode_max_;

        double num = 0.0, den = 0.0;
        for (int j = 0; j < N; ++j) {
            const double hl = ev.frame.mean_curvature(j, cfg_.l);
            if (!(hl > 0.0)) throw DomainError("flow: H_l <= 0 at a node");
            num += hl * F(j) * ev.frame.dmu(j);
            den += hl * ev.frame.dmu(j);
        }
        ev.c = num / den;

        ev.velocity.resize(N);
        double dev = 0.0;
        for (int j = 0; j < N; ++j) {
            ev.velocity(j) = (ev.c - F(j)) / ev.frame.nu_r(j);
            dev = std::max(dev, std::abs(ev.c - F(j)));
        }
        ev.max_speed_dev = dev;
        return ev;
    }

    // One embedded Heun/Euler attempt from `coeffs` with step dt.
    // Returns the error estimate; the updated coefficients go to `out`.
    double heun(const Eigen::VectorXd& coeffs, const StageEval& ev0, double dt,
                Eigen::VectorXd& out) const {
        const Eigen::VectorXd c1 =
            coeffs + dt * basis_->analyze(ev0.velocity);
        const StageEval ev1 = evaluate(c1);
        const Eigen::VectorXd v0 = ev0.velocity, v1 = ev1.velocity;
        out = coeffs + 0.5 * dt * basis_->analyze((v0 + v1).eval());
        return 0.5 * dt * (v1 - v0).cwiseAbs().maxCoeff();
    }

    int dim_;
    BodyMode mode_;
    std::shared_ptr<const SpectralBasis> basis_;
    FlowConfig cfg_;
    Eigen::VectorXd coeffs_;
    int mode_max_;
};

// Transient stage failures that a smaller step may cure.
bool stage_retryable(const std::exception_ptr& ep) {
    try {
        std::rethrow_exception(ep);
    } catch (const DomainError&) {
        return true;
    } catch (const NumericError&) {
        return true;
    } catch (const ArgumentError&) {
        // nonpositive radii reaching the StarBody invariant
        return true;
    } catch (...) {
        return false;
    }
}

TraceRecord make_record(const StageEval& ev, const FlowConfig& cfg, double t,
                        double dt, double Wl0) {
    const int n = ev.frame.dimension;
    TraceRecord rec;
    rec.t = t;
    rec.dt = dt;
    rec.c = ev.c;
    const QuermassVector qv = quermassintegrals(ev.frame);
    rec.W = qv.W;
    rec.V = qv.V;
    const PinchReport pr = pinching_monitor(ev.frame);
    rec.pinch_ratio = pr.ratio;
    rec.hconvex_margin = pr.hconvex_margin;
    rec.support_margin = support_lower_bound_check(ev.frame);
    rec.r_min = ev.frame.r.minCoeff();
    rec.r_max = ev.frame.r.maxCoeff();
    rec.Wl_drift = (qv.W[cfg.l] - Wl0) / Wl0;
    rec.max_speed_dev = ev.max_speed_dev;

    auto weighted = [&](auto&& density) {
        double acc = 0.0;
        for (int j = 0; j < ev.frame.node_count(); ++j)
            acc += density(j) * ev.frame.dmu(j);
        return acc;
    };
    // c - F at node j equals velocity * <d_r,nu>
    auto cmF = [&](int j) { return ev.velocity(j) * ev.frame.nu_r(j); };

    rec.rate_vol = weighted([&](int j) { return cmF(j); });
    rec.rate_area =
        weighted([&](int j) { return (n - 1) * ev.frame.mean_curvature(j, 1) * cmF(j); });
    rec.rate_intHk = weighted([&](int j) {
        const double up = (n - 1 - cfg.k) * ev.frame.mean_curvature(j, cfg.k + 1);
        const double down = cfg.k * ev.frame.mean_curvature(j, cfg.k - 1);
        return (up + down) * cmF(j);
    });
    rec.rate_Wk = (n - cfg.k) / static_cast<double>(n) *
                  weighted([&](int j) { return ev.frame.mean_curvature(j, cfg.k) * cmF(j); });
    rec.rate_Wl = (n - cfg.l) / static_cast<double>(n) *
                  weighted([&](int j) { return ev.frame.mean_curvature(j, cfg.l) * cmF(j); });
    return rec;
}

} // namespace

PinchReport pinching_monitor(const GeometryFrame& frame) {
    return {frame.pinching_ratio(), frame.min_principal_curvature() - 1.0};
}

void FlowTrace::finalize_residuals() {
    const std::size_t n = records.size();
    for (std::size_t i = 0; i < n; ++i) {
        double fd = 0.0;
        if (n >= 2) {
            const std::size_t a = (i == 0) ? 0 : i - 1;
            const std::size_t b = (i + 1 == n) ? i : i + 1;
            if (b > a)
                fd = (records[b].W[k] - records[a].W[k]) /
                     (records[b].t - records[a].t);
        }
        records[i].dWk_residual = (n >= 2) ? fd - records[i].rate_Wk : 0.0;
    }
}

StepResult step(const StarBody& body, const FlowConfig& config) {
    FlowEngine eng(body, config);
    StageEval ev0 = eng.evaluate(eng.coeffs_);
    double dt = std::min(config.dt_initial,
                         std::min(config.dt_max,
                                  config.cfl_safety * 2.0 / ev0.lambda_max));
    StepDiagnostics diag;
    Eigen::VectorXd next;
    for (;;) {
        if (dt < 1e-12) throw FlowStallError("step: dt underflow");
        bool ok = true;
        try {
            diag.error_estimate = eng.heun(eng.coeffs_, ev0, dt, next);
        } catch (...) {
            if (!stage_retryable(std::current_exception())) throw;
            ok = false;
        }
        if (ok && diag.error_estimate <= config.step_error_tol) break;
        dt *= 0.5;
        ++diag.rejections;
    }
    diag.dt_used = dt;
    diag.c = ev0.c;
    return {eng.make_body(next), diag};
}

StarBody fixed_heun_step(const StarBody& body, const FlowConfig& config,
                         double dt) {
    FlowEngine eng(body, config);
    const StageEval ev0 = eng.evaluate(eng.coeffs_);
    Eigen::VectorXd next;
    eng.heun(eng.coeffs_, ev0, dt, next);
    return eng.make_body(next);
}

namespace {

// Project the W_l drift out with a uniform radial shift (secant solve on
// the constant mode).
void renormalize_Wl(FlowEngine& eng, StageEval& ev, double Wl0, int l) {
    double d0 = 0.0;
    double f0 = quermassintegrals(ev.frame).W[l] - Wl0;
    if (f0 == 0.0) return;
    double d1 = -f0 / std::max(1e-12, std::abs(Wl0)) * 1e-3;
    for (int it = 0; it < 8; ++it) {
        Eigen::VectorXd c = eng.coeffs_;
        c(0) += d1;
        const StageEval trial = eng.evaluate(c);
        const double f1 = quermassintegrals(trial.frame).W[l] - Wl0;
        if (std::abs(f1) <= 1e-14 * std::abs(Wl0)) {
            eng.coeffs_ = c;
            ev = trial;
            return;
        }
        const double d2 = d1 - f1 * (d1 - d0) / (f1 - f0);
        d0 = d1;
        f0 = f1;
        d1 = d2;
    }
    eng.coeffs_(0) += d1;
    ev = eng.evaluate(eng.coeffs_);
}

// least-squares fit of log(pinch-1) against t over the trailing half
void fit_decay(RunResult& result) {
    std::vector<double> ts, ys;
    const double t_half = 0.5 * result.t_end;
    for (const TraceRecord& r : result.trace.records) {
        if (r.t >= t_half && r.pinch_ratio > 1.0) {
            ts.push_back(r.t);
            ys.push_back(std::log(r.pinch_ratio - 1.0));
        }
    }
    if (ts.size() < 3) return;
    const double nn = static_cast<double>(ts.size());
    double st = 0, sy = 0, stt = 0, sty = 0, syy = 0;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        st += ts[i];
        sy += ys[i];
        stt += ts[i] * ts[i];
        sty += ts[i] * ys[i];
        syy += ys[i] * ys[i];
    }
    const double denom = nn * stt - st * st;
    if (denom == 0) return;
    const double slope = (nn * sty - st * sy) / denom;
    const double intercept = (sy - slope * st) / nn;
    double ss_res = 0, ss_tot = 0;
    const double ybar = sy / nn;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        const double fit = slope * ts[i] + intercept;
        ss_res += (ys[i] - fit) * (ys[i] - fit);
        ss_tot += (ys[i] - ybar) * (ys[i] - ybar);
    }
    result.decay_rate = slope;
    result.decay_r2 = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0;
}

} // namespace

RunResult run(const StarBody& body, const FlowConfig& config) {
    FlowEngine eng(body, config);
    const int n = body.dimension();

    StageEval ev = eng.evaluate(eng.coeffs_);
    const QuermassVector qv0 = quermassintegrals(ev.frame);
    const double Wl0 = qv0.W[config.l];

    FlowTrace trace;
    trace.dimension = n;
    trace.k = config.k;
    trace.l = config.l;

    RunResult result{.final_body = eng.make_body(eng.coeffs_)};
    result.Wl_initial = Wl0;
    result.expected_limit_radius = ball_functions(n)->f_inverse(config.l, Wl0);

    double t = 0.0;
    double dt = std::min({config.dt_initial, config.dt_max,
                          config.cfl_safety * 2.0 / ev.lambda_max});
    long accepted = 0, rejected = 0;

    trace.records.push_back(make_record(ev, config, t, dt, Wl0));

    const double margin_floor =
        std::min(0.0, trace.records.front().hconvex_margin) - 1e-6;

    bool converged =
        trace.records.front().pinch_ratio - 1.0 <= config.converge_tol;

    while (!converged && t < config.t_max) {
        Eigen::VectorXd next;
        double err = 0.0;
        for (;;) {
            if (dt < 1e-12) throw FlowStallError("run: dt underflow");
            bool ok = true;
            try {
                err = eng.heun(eng.coeffs_, ev, dt, next);
            } catch (...) {
                if (!stage_retryable(std::current_exception())) throw;
                ok = false;
            }
            if (ok && err <= config.step_error_tol) break;
            dt *= 0.5;
            ++rejected;
        }
        eng.coeffs_ = next;
        t += dt;
        ++accepted;
        ev = eng.evaluate(eng.coeffs_);

        if (ev.frame.min_principal_curvature() - 1.0 < margin_floor)
            throw MonitorViolationError(
                "run: h-convexity margin fell below tolerance; "
                "discretization too coarse");

        converged = ev.frame.pinching_ratio() - 1.0 <= config.converge_tol;
        const bool record_now = converged || t >= config.t_max ||
                                accepted % config.monitor_stride == 0;
        if (record_now) {
            if (config.renormalize_W_l && !converged)
                renormalize_Wl(eng, ev, Wl0, config.l);
            trace.records.push_back(make_record(ev, config, t, dt, Wl0));
        }

        // grow dt within the error controller and the parabolic cap
        const double cap = config.cfl_safety * 2.0 / ev.lambda_max;
        double grow = 5.0;
        if (err > 0)
            grow = std::clamp(0.9 * std::sqrt(config.step_error_tol / err),
                              0.2, 5.0);
        dt = std::min({dt * grow, cap, config.dt_max});
    }

    trace.finalize_residuals();

    result.final_body = eng.make_body(eng.coeffs_);
    result.trace = std::move(trace);
    result.status = converged ? FlowStatus::Converged : FlowStatus::TMaxReached;
    result.t_end = t;
    result.accepted_steps = accepted;
    result.rejected_steps = rejected;
    result.Wl_final = quermassintegrals(ev.frame).W[config.l];
    result.final_max_speed_dev = ev.max_speed_dev;

    double mass = 0.0, rbar = 0.0;
    for (int j = 0; j < ev.frame.node_count(); ++j) {
        mass += ev.frame.dmu(j);
        rbar += ev.frame.r(j) * ev.frame.dmu(j);
    }
    result.final_mean_radius = rbar / mass;

    fit_decay(result);
    return result;
}

VariationalResiduals variational_check(const FlowTrace& trace, std::size_t i) {
    if (trace.records.size() < 3 || i == 0 || i + 1 >= trace.records.size())
        throw ArgumentError("variational_check: need an interior record");
    const TraceRecord& a = trace.records[i - 1];
    const TraceRecord& m = trace.records[i];
    const TraceRecord& b = trace.records[i + 1];
    const double dt = b.t - a.t;
    const int n = trace.dimension;
    const int k = trace.k;
    auto fd = [&](auto&& get) { return (get(b) - get(a)) / dt; };
    return {
        fd([&](const TraceRecord& r) { return r.W[0]; }) - m.rate_vol,
        fd([&](const TraceRecord& r) { return r.V[n - 1]; }) - m.rate_area,
        fd([&](const TraceRecord& r) { return r.V[n - 1 - k]; }) - m.rate_intHk,
        fd([&](const TraceRecord& r) { return r.W[k]; }) - m.rate_Wk,
    };
}

} // namespace hyperflow
