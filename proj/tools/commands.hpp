#pragma once

#include "config.hpp"

#include <json.hpp>

#include <string>

namespace hexlat::app {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitPrecision = 3;
inline constexpr int kExitConsistency = 4;

inline constexpr int kCheckSchemaVersion = 1;

/// Each command writes its artifacts into cfg.out and returns the checks
/// section of the report.
nlohmann::ordered_json cmd_sums(const RunConfig& cfg);
nlohmann::ordered_json cmd_solve(const RunConfig& cfg);
nlohmann::ordered_json cmd_field(const RunConfig& cfg);
nlohmann::ordered_json cmd_moduli(const RunConfig& cfg);
nlohmann::ordered_json cmd_sweep(const RunConfig& cfg);

/// Runs `command`, writes check.json (also on failure when the output
/// directory is usable) and maps errors to exit codes.
int run_command(const std::string& command, const RunConfig& cfg);

/// Fixed 17-significant-digit formatting used for CSV output.
std::string num(double v);

}  // namespace hexlat::app
