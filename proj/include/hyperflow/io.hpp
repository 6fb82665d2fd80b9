#pragma once

#include "hyperflow/flow.hpp"
#include "hyperflow/starbody.hpp"
#include "hyperflow/verify.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>
#include <vector>

namespace hyperflow {

inline constexpr const char* kVersion = "0.1.0";

/// Body wire format: {"dimension": n, "mode": "...", "nodes": [...]}.
nlohmann::json body_to_json(const StarBody& body);
StarBody body_from_json(const nlohmann::json& j);

nlohmann::json flow_config_to_json(const FlowConfig& cfg);
FlowConfig flow_config_from_json(const nlohmann::json& j);

/// Body specification inside run configs: either an inline body or a
/// generator clause {"generator": "ball"|"offcenter-ball"|"perturbed-ball",
/// ...params}.
StarBody body_from_spec(const nlohmann::json& j, int resolution_override,
                        std::uint64_t seed_override);

nlohmann::json deficit_to_json(const DeficitReport& r);
nlohmann::json suite_report_to_json(const SuiteReport& report);
void write_suite_csv(const SuiteReport& report, const std::filesystem::path& path);

SuiteConfig suite_config_from_json(const nlohmann::json& j);

void write_trace_csv(const FlowTrace& trace, const std::filesystem::path& path);

/// Emits f_k / W_n / V_j columns over a radius grid (the `ball-tables`
/// subcommand payload).
void write_ball_table_csv(int dimension, const std::vector<double>& radii,
                          const std::filesystem::path& path);

/// Reproducibility sidecar: {"command", "config", "seed", "version",
/// "outputs": [...]} written next to every set of output files.
void write_manifest(const std::filesystem::path& out_dir,
                    const std::string& command, const nlohmann::json& config,
                    std::uint64_t seed,
                    const std::vector<std::string>& outputs);

nlohmann::json load_json_file(const std::filesystem::path& path);
void write_json_file(const nlohmann::json& j, const std::filesystem::path& path);

/// Canonical float formatting for CSV payloads ("%.17g": shortest exact
/// round-trip, locale-independent).
std::string format_double(double v);

} // namespace hyperflow
