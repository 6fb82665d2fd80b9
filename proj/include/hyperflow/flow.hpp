#pragma once

#include "hyperflow/integrals.hpp"
#include "hyperflow/starbody.hpp"

#include <Eigen/Dense>

#include <optional>
#include <string>
#include <vector>

namespace hyperflow {

/// Parameters of the quermassintegral-preserving flow
/// dX/dt = (c(t) - (H_k/H_l)^{1/(k-l)}) nu with c(t) chosen so W_l is
/// conserved.
struct FlowConfig {
    int k = 2;
    int l = 0;
    double dt_initial = 1e-6;
    double dt_max = 1.0;
    double cfl_safety = 0.5;     // fraction of the explicit parabolic limit
    double t_max = 200.0;
    double converge_tol = 1e-6;  // stop when pinching ratio - 1 <= this
    double step_error_tol = 1e-8;
    bool renormalize_W_l = false;
    int monitor_stride = 25;

    void validate(int dimension) const;
};

/// One recorded monitor sample plus the Prop-3.1-style rate integrals used
/// by the variational residual checks.
struct TraceRecord {
    double t = 0;
    double dt = 0;
    double c = 0;
    std::vector<double> W;          // W_0..W_n
    std::vector<double> V;          // V_0..V_{n-1}
    double pinch_ratio = 0;
    double hconvex_margin = 0;
    double support_margin = 0;
    double r_min = 0;
    double r_max = 0;
    double Wl_drift = 0;            // relative drift of the conserved W_l
    double dWk_residual = 0;        // centered-FD dW_k/dt minus formula
    // instantaneous variational rates at this state:
    double rate_vol = 0;            // int (c-F) dmu
    double rate_area = 0;           // int (n-1) H_1 (c-F) dmu
    double rate_intHk = 0;          // int [(n-1-k)H_{k+1}+kH_{k-1}](c-F) dmu
    double rate_Wk = 0;             // (n-k)/n int H_k (c-F) dmu
    double rate_Wl = 0;             // (n-l)/n int H_l (c-F) dmu (== 0)
    double max_speed_dev = 0;       // max |c - F| over nodes
};

struct FlowTrace {
    int dimension = 0;
    int k = 0, l = 0;
    std::vector<TraceRecord> records;

    /// Fill the dWk_residual column from centered differences of W_k
    /// across neighbouring records (one-sided at the ends).
    void finalize_residuals();
};

enum class FlowStatus { Converged, TMaxReached, Stalled };
std::string to_string(FlowStatus s);

struct StepDiagnostics {
    double dt_used = 0;
    double error_estimate = 0;
    int rejections = 0;
    double c = 0;
};

/// c(t) = int H_l F dmu / int H_l dmu for F = (H_k/H_l)^{1/(k-l)}.
double forcing_c(const GeometryFrame& frame, int k, int l);

/// Radial speed dr/dt = (c - F)/<d_r, nu> at each node.
Eigen::VectorXd radial_velocity(const StarBody& body, const GeometryFrame& frame,
                                double c, int k, int l);

/// One accepted adaptive step (embedded Heun/Euler pair; rejects and halves
/// dt on error-tolerance misses and on positivity loss of the speed).
struct StepResult {
    StarBody body;
    StepDiagnostics diagnostics;
};
StepResult step(const StarBody& body, const FlowConfig& config);

struct PinchReport {
    double ratio;
    double hconvex_margin;
};
PinchReport pinching_monitor(const GeometryFrame& frame);

struct RunResult {
    StarBody final_body;
    FlowTrace trace;
    FlowStatus status = FlowStatus::TMaxReached;
    double t_end = 0;
    long accepted_steps = 0;
    long rejected_steps = 0;
    double Wl_initial = 0;
    double Wl_final = 0;
    double expected_limit_radius = 0; // f_l^{-1}(W_l(K_0))
    double final_mean_radius = 0;     // dmu-weighted mean radius
    double final_max_speed_dev = 0;   // max |c-F| at the final state
    // least-squares fit of log(pinch-1) vs t over the trailing half
    std::optional<double> decay_rate;
    std::optional<double> decay_r2;
};

RunResult run(const StarBody& body, const FlowConfig& config);

/// Variational residuals of Prop 3.1 at record i of a trace: centered
/// finite differences of Vol, |S|, int H_k, W_k across the neighbouring
/// records minus the recorded instantaneous rates.
struct VariationalResiduals {
    double vol;
    double area;
    double intHk;
    double Wk;
};
VariationalResiduals variational_check(const FlowTrace& trace, std::size_t i);

/// Fixed-dt Heun stepping (no adaptivity) for time-convergence studies.
StarBody fixed_heun_step(const StarBody& body, const FlowConfig& config,
                         double dt);

} // namespace hyperflow
