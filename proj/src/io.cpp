#include "hyperflow/io.hpp"

#include "hyperflow/ballfuncs.hpp"
#include "hyperflow/errors.hpp"
#include "hyperflow/integrals.hpp"

#include <cstdio>
#include <fstream>
#include <map>

namespace hyperflow {

using nlohmann::json;

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

json body_to_json(const StarBody& body) {
    json j;
    j["dimension"] = body.dimension();
    j["mode"] = to_string(body.mode());
    std::vector<double> nodes(body.nodes().begin(), body.nodes().end());
    j["nodes"] = nodes;
    return j;
}

StarBody body_from_json(const json& j) {
    try {
        const int dim = j.at("dimension").get<int>();
        const BodyMode mode = body_mode_from_string(j.at("mode").get<std::string>());
        const std::vector<double> nodes = j.at("nodes").get<std::vector<double>>();
        Eigen::VectorXd v(nodes.size());
        for (std::size_t i = 0; i < nodes.size(); ++i) v(i) = nodes[i];
        return StarBody(dim, mode, std::move(v));
    } catch (const json::exception& e) {
        throw ConfigError(std::string("body: ") + e.what());
    }
}

json flow_config_to_json(const FlowConfig& cfg) {
    return json{{"k", cfg.k},
                {"l", cfg.l},
                {"dt_initial", cfg.dt_initial},
                {"dt_max", cfg.dt_max},
                {"cfl_safety", cfg.cfl_safety},
                {"t_max", cfg.t_max},
                {"converge_tol", cfg.converge_tol},
                {"step_error_tol", cfg.step_error_tol},
                {"renormalize_W_l", cfg.renormalize_W_l},
                {"monitor_stride", cfg.monitor_stride}};
}

FlowConfig flow_config_from_json(const json& j) {
    FlowConfig cfg;
    try {
        cfg.k = j.at("k").get<int>();
        cfg.l = j.at("l").get<int>();
        if (j.contains("dt_initial")) cfg.dt_initial = j["dt_initial"].get<double>();
        if (j.contains("dt_max")) cfg.dt_max = j["dt_max"].get<double>();
        if (j.contains("cfl_safety")) cfg.cfl_safety = j["cfl_safety"].get<double>();
        if (j.contains("t_max")) cfg.t_max = j["t_max"].get<double>();
        if (j.contains("converge_tol"))
            cfg.converge_tol = j["converge_tol"].get<double>();
        if (j.contains("step_error_tol"))
            cfg.step_error_tol = j["step_error_tol"].get<double>();
        if (j.contains("renormalize_W_l"))
            cfg.renormalize_W_l = j["renormalize_W_l"].get<bool>();
        if (j.contains("monitor_stride"))
            cfg.monitor_stride = j["monitor_stride"].get<int>();
    } catch (const json::exception& e) {
        throw ConfigError(std::string("flow config: ") + e.what());
    }
    return cfg;
}

StarBody body_from_spec(const json& j, int resolution_override,
                        std::uint64_t seed_override) {
    try {
        if (j.contains("nodes")) return body_from_json(j);

        const std::string gen = j.at("generator").get<std::string>();
        const int dim = j.at("dimension").get<int>();
        int N = j.value("resolution", 128);
        if (resolution_override > 0) N = resolution_override;

        if (gen == "ball") {
            return make_ball(dim, j.at("r0").get<double>(), N);
        }
        if (gen == "offcenter-ball") {
            return make_offcenter_ball(dim, j.at("R").get<double>(),
                                       j.at("a").get<double>(), N);
        }
        if (gen == "perturbed-ball") {
            std::map<int, double> amps;
            for (const auto& [key, val] : j.at("amplitudes").items())
                amps[std::stoi(key)] = val.get<double>();
            PerturbationOptions opts;
            opts.seed = j.value("seed", std::uint64_t{0});
            if (seed_override != 0) opts.seed = seed_override;
            opts.margin_min = j.value("margin_min", 1e-3);
            return make_perturbed_ball(dim, j.at("r0").get<double>(), amps, N,
                                       opts);
        }
        throw ConfigError("unknown body generator: " + gen);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("body spec: ") + e.what());
    }
}

json deficit_to_json(const DeficitReport& r) {
    json parameters{{"n", r.n}};
    if (r.k >= 0) parameters["k"] = r.k;
    if (r.l >= 0) parameters["l"] = r.l;
    return json{{"name", r.name},
                {"lhs", r.lhs},
                {"rhs", r.rhs},
                {"deficit", r.deficit},
                {"relative", r.relative},
                {"noise", r.noise},
                {"equality_expected", r.equality_expected},
                {"body_id", r.body_id},
                {"seed", r.seed},
                {"parameters", parameters}};
}

json suite_report_to_json(const SuiteReport& report) {
    json arr = json::array();
    for (const DeficitReport& r : report.reports) arr.push_back(deficit_to_json(r));
    json failures = json::array();
    for (const BodyFailure& f : report.failures)
        failures.push_back({{"body_id", f.body_id}, {"message", f.message}});
    return json{{"reports", arr},
                {"failures", failures},
                {"summary",
                 {{"bodies_checked", report.bodies_checked},
                  {"violations", report.violation_count},
                  {"fragile", report.fragile_count},
                  {"equality_misses", report.equality_miss_count},
                  {"min_relative_deficit", report.min_relative_deficit},
                  {"max_equality_error", report.max_equality_error}}}};
}

void write_suite_csv(const SuiteReport& report, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open " + path.string());
    out << "name,n,k,l,lhs,rhs,deficit,relative,noise,equality_expected,body_id,seed\n";
    for (const DeficitReport& r : report.reports) {
        out << r.name << ',' << r.n << ',' << r.k << ',' << r.l << ','
            << format_double(r.lhs) << ',' << format_double(r.rhs) << ','
            << format_double(r.deficit) << ',' << format_double(r.relative) << ','
            << format_double(r.noise) << ',' << (r.equality_expected ? 1 : 0)
            << ',' << r.body_id << ',' << r.seed << '\n';
    }
}

SuiteConfig suite_config_from_json(const json& j) {
    SuiteConfig cfg;
    try {
        if (j.contains("corpus")) {
            const json& c = j["corpus"];
            if (c.contains("dimensions"))
                cfg.corpus.dimensions = c["dimensions"].get<std::vector<int>>();
            cfg.corpus.seed_begin = c.value("seed_begin", cfg.corpus.seed_begin);
            cfg.corpus.seed_count = c.value("seed_count", cfg.corpus.seed_count);
            cfg.corpus.resolution = c.value("resolution", cfg.corpus.resolution);
            cfg.corpus.r0_min = c.value("r0_min", cfg.corpus.r0_min);
            cfg.corpus.r0_max = c.value("r0_max", cfg.corpus.r0_max);
            cfg.corpus.max_mode = c.value("max_mode", cfg.corpus.max_mode);
            cfg.corpus.amplitude = c.value("amplitude", cfg.corpus.amplitude);
            cfg.corpus.margin_min = c.value("margin_min", cfg.corpus.margin_min);
        }
        if (j.contains("checks")) {
            cfg.checks.clear();
            for (const auto& name : j["checks"]) {
                const std::string s = name.get<std::string>();
                if (s == "thm11") cfg.checks.push_back(CheckKind::Thm11);
                else if (s == "thm12i") cfg.checks.push_back(CheckKind::Thm12i);
                else if (s == "thm12iv") cfg.checks.push_back(CheckKind::Thm12iv);
                else if (s == "thm13") cfg.checks.push_back(CheckKind::Thm13);
                else if (s == "iso-h2") cfg.checks.push_back(CheckKind::IsoperimetricH2);
                else if (s == "heintze-karcher")
                    cfg.checks.push_back(CheckKind::HeintzeKarcher);
                else throw ConfigError("unknown check: " + s);
            }
        }
        cfg.violation_tol = j.value("violation_tol", cfg.violation_tol);
        cfg.equality_tol = j.value("equality_tol", cfg.equality_tol);
        cfg.threads = j.value("threads", cfg.threads);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("suite config: ") + e.what());
    }
    return cfg;
}

void write_trace_csv(const FlowTrace& trace, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open " + path.string());
    const int n = trace.dimension;
    out << "t,dt,c";
    for (int i = 0; i <= n; ++i) out << ",W_" << i;
    for (int i = 0; i < n; ++i) out << ",V_" << i;
    out << ",pinch,hconvex_margin,support_margin,r_min,r_max,Wl_drift,"
           "dWk_residual,rate_vol,rate_area,rate_intHk,rate_Wk,rate_Wl,"
           "max_speed_dev\n";
    for (const TraceRecord& r : trace.records) {
        out << format_double(r.t) << ',' << format_double(r.dt) << ','
            << format_double(r.c);
        for (const double w : r.W) out << ',' << format_double(w);
        for (const double v : r.V) out << ',' << format_double(v);
        out << ',' << format_double(r.pinch_ratio) << ','
            << format_double(r.hconvex_margin) << ','
            << format_double(r.support_margin) << ',' << format_double(r.r_min)
            << ',' << format_double(r.r_max) << ',' << format_double(r.Wl_drift)
            << ',' << format_double(r.dWk_residual) << ','
            << format_double(r.rate_vol) << ',' << format_double(r.rate_area)
            << ',' << format_double(r.rate_intHk) << ','
            << format_double(r.rate_Wk) << ',' << format_double(r.rate_Wl) << ','
            << format_double(r.max_speed_dev) << '\n';
    }
}

void write_ball_table_csv(int dimension, const std::vector<double>& radii,
                          const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open " + path.string());
    auto bf = ball_functions(dimension);
    const int n = dimension;
    out << "r";
    for (int k = 0; k <= n - 1; ++k) out << ",f_" << k;
    out << ",W_" << n;
    for (int j = n - 1; j >= 0; --j) out << ",V_" << j;
    out << '\n';
    for (const double r : radii) {
        out << format_double(r);
        for (int k = 0; k <= n - 1; ++k) out << ',' << format_double(bf->f(k, r));
        out << ',' << format_double(sphere_measure(n - 1) / n);
        for (int j = n - 1; j >= 0; --j)
            out << ',' << format_double(bf->ball_curvature_integral(n - 1 - j, r));
        out << '\n';
    }
}

void write_manifest(const std::filesystem::path& out_dir,
                    const std::string& command, const json& config,
                    std::uint64_t seed,
                    const std::vector<std::string>& outputs) {
    json j{{"command", command},
           {"config", config},
           {"seed", seed},
           {"version", kVersion},
           {"outputs", outputs}};
    write_json_file(j, out_dir / "manifest.json");
}

json load_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open " + path.string());
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
}

void write_json_file(const json& j, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open " + path.string());
    out << j.dump(2) << '\n';
}

} // namespace hyperflow
