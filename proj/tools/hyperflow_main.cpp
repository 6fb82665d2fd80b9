// hyperflow CLI: curvature-flow runs, inequality verification suites, and
// ball-function tables for hypersurfaces in hyperbolic space.

#include "hyperflow/ballfuncs.hpp"
#include "hyperflow/errors.hpp"
#include "hyperflow/flow.hpp"
#include "hyperflow/io.hpp"
#include "hyperflow/verify.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>

namespace fs = std::filesystem;
using namespace hyperflow;

namespace {

struct CommonOpts {
    std::string config_path;
    std::string out_dir = ".";
    std::uint64_t seed = 0;
    int resolution = 0;
    bool quiet = false;
};

int run_flow_cmd(const CommonOpts& opts) {
    const nlohmann::json cfg_json = load_json_file(opts.config_path);
    if (!cfg_json.contains("flow") || !cfg_json.contains("body"))
        throw ConfigError("flow config requires `body` and `flow` sections");

    const FlowConfig cfg = flow_config_from_json(cfg_json["flow"]);
    const StarBody body =
        body_from_spec(cfg_json["body"], opts.resolution, opts.seed);
    cfg.validate(body.dimension());

    const RunResult result = run(body, cfg);

    fs::create_directories(opts.out_dir);
    const fs::path trace_path = fs::path(opts.out_dir) / "trace.csv";
    const fs::path body_path = fs::path(opts.out_dir) / "final_body.json";
    write_trace_csv(result.trace, trace_path);
    write_json_file(body_to_json(result.final_body), body_path);
    write_manifest(opts.out_dir, "flow", cfg_json, opts.seed,
                   {trace_path.string(), body_path.string()});

    if (!opts.quiet) {
        std::cout << "status: " << to_string(result.status)
                  << "  t_end: " << result.t_end
                  << "  steps: " << result.accepted_steps << " (+"
                  << result.rejected_steps << " rejected)\n"
                  << "W_l drift: "
                  << (result.Wl_final - result.Wl_initial) / result.Wl_initial
                  << "  pinch-1: "
                  << result.trace.records.back().pinch_ratio - 1.0 << '\n'
                  << "limit radius: expected "
                  << result.expected_limit_radius << ", measured mean "
                  << result.final_mean_radius << '\n';
        if (result.decay_rate)
            std::cout << "pinch decay rate: " << *result.decay_rate
                      << " (R^2 = " << *result.decay_r2 << ")\n";
    }
    switch (result.status) {
        case FlowStatus::Converged: return 0;
        case FlowStatus::TMaxReached: return 2;
        case FlowStatus::Stalled: return 3;
    }
    return 3;
}

int run_verify_cmd(const CommonOpts& opts, bool emit_bodies) {
    const nlohmann::json cfg_json = load_json_file(opts.config_path);
    SuiteConfig cfg = suite_config_from_json(cfg_json);
    if (opts.resolution > 0) cfg.corpus.resolution = opts.resolution;
    if (opts.seed != 0) cfg.corpus.seed_begin = static_cast<int>(opts.seed);

    fs::create_directories(opts.out_dir);
    std::vector<std::string> outputs;

    if (emit_bodies) {
        const fs::path dir = fs::path(opts.out_dir) / "bodies";
        fs::create_directories(dir);
        for (const int dim : cfg.corpus.dimensions) {
            for (int s = 0; s < cfg.corpus.seed_count; ++s) {
                const auto entry = make_corpus_body(
                    cfg.corpus, dim, cfg.corpus.seed_begin + s);
                const fs::path p = dir / (entry.id + ".json");
                write_json_file(body_to_json(entry.body), p);
                outputs.push_back(p.string());
            }
        }
    }

    const SuiteReport report = run_suite(cfg);

    const fs::path json_path = fs::path(opts.out_dir) / "suite_report.json";
    const fs::path csv_path = fs::path(opts.out_dir) / "suite_report.csv";
    write_json_file(suite_report_to_json(report), json_path);
    write_suite_csv(report, csv_path);
    outputs.push_back(json_path.string());
    outputs.push_back(csv_path.string());
    write_manifest(opts.out_dir, "verify", cfg_json,
                   static_cast<std::uint64_t>(cfg.corpus.seed_begin), outputs);

    if (!opts.quiet) {
        std::cout << "bodies: " << report.bodies_checked
                  << "  reports: " << report.reports.size()
                  << "  violations: " << report.violation_count
                  << "  fragile: " << report.fragile_count
                  << "  equality misses: " << report.equality_miss_count << '\n'
                  << "min relative deficit: " << report.min_relative_deficit
                  << "  max equality error: " << report.max_equality_error
                  << '\n';
        for (const BodyFailure& f : report.failures)
            std::cout << "  [skipped] " << f.body_id << ": " << f.message << '\n';
    }
    return report.violation_count > 0 ? 4 : 0;
}

int run_ball_tables_cmd(int n, double r_min, double r_max, int count,
                        const std::vector<double>& extra,
                        const CommonOpts& opts) {
    if (n < 2) throw ConfigError("ball-tables: dimension must be >= 2");
    std::vector<double> radii = extra;
    if (count > 0) {
        if (!(r_min >= 0) || !(r_max > r_min))
            throw ConfigError("ball-tables: need 0 <= r-min < r-max");
        for (int i = 0; i < count; ++i)
            radii.push_back(count == 1 ? r_min
                                       : r_min + (r_max - r_min) * i / (count - 1));
    }
    if (radii.empty()) throw ConfigError("ball-tables: empty radius grid");

    fs::create_directories(opts.out_dir);
    const fs::path path = fs::path(opts.out_dir) / "ball_tables.csv";
    write_ball_table_csv(n, radii, path);
    write_manifest(opts.out_dir, "ball-tables",
                   nlohmann::json{{"n", n}, {"radii", radii}}, 0,
                   {path.string()});
    if (!opts.quiet) std::cout << "wrote " << path.string() << '\n';
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"quermassintegral-preserving curvature flows in H^n"};
    app.require_subcommand(1);

    CommonOpts opts;

    auto add_common = [&](CLI::App* cmd, bool needs_config) {
        if (needs_config)
            cmd->add_option("--config", opts.config_path, "JSON configuration")
                ->required();
        cmd->add_option("--out", opts.out_dir, "output directory");
        cmd->add_option("--seed", opts.seed, "seed override");
        cmd->add_option("--resolution", opts.resolution, "node count override");
        cmd->add_flag("--quiet", opts.quiet, "suppress progress output");
    };

    CLI::App* flow_cmd = app.add_subcommand("flow", "run one curvature flow");
    add_common(flow_cmd, true);

    bool emit_bodies = false;
    CLI::App* verify_cmd =
        app.add_subcommand("verify", "run an inequality verification suite");
    add_common(verify_cmd, true);
    verify_cmd->add_flag("--emit-bodies", emit_bodies,
                         "write every generated corpus body as JSON");

    int bt_n = 3;
    double bt_rmin = 0.0, bt_rmax = 3.0;
    int bt_count = 0;
    std::vector<double> bt_extra;
    CLI::App* tables_cmd =
        app.add_subcommand("ball-tables", "emit f_k / V_j tables over a radius grid");
    tables_cmd->add_option("--n", bt_n, "ambient dimension")->required();
    tables_cmd->add_option("--r-min", bt_rmin, "grid start");
    tables_cmd->add_option("--r-max", bt_rmax, "grid end");
    tables_cmd->add_option("--count", bt_count, "grid point count");
    tables_cmd->add_option("--r", bt_extra, "explicit radius (repeatable)");
    tables_cmd->add_option("--out", opts.out_dir, "output directory");
    tables_cmd->add_flag("--quiet", opts.quiet, "suppress progress output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (flow_cmd->parsed()) return run_flow_cmd(opts);
        if (verify_cmd->parsed()) return run_verify_cmd(opts, emit_bodies);
        if (tables_cmd->parsed())
            return run_ball_tables_cmd(bt_n, bt_rmin, bt_rmax, bt_count,
                                       bt_extra, opts);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 1;
    } catch (const ArgumentError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 1;
    } catch (const FlowStallError& e) {
        std::cerr << "flow stalled: " << e.what() << '\n';
        return 3;
    } catch (const MonitorViolationError& e) {
        std::cerr << "monitor violation: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
