#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "scsamp/acquisition.hpp"
#include "scsamp/ensemble.hpp"
#include "scsamp/operators.hpp"
#include "scsamp/recovery.hpp"
#include "scsamp/types.hpp"

namespace scsamp {

void to_json(nlohmann::json& j, const GridConfig& cfg);
void from_json(const nlohmann::json& j, GridConfig& cfg);

// Matrices persist as raw little-endian float64 row-major .bin files
// (re/im interleaved for complex) with a JSON sidecar holding shape and dtype.
void save_matrix(const std::filesystem::path& base, const RMat& m);
void save_matrix(const std::filesystem::path& base, const CMat& m);
RMat load_rmatrix(const std::filesystem::path& base);
CMat load_cmatrix(const std::filesystem::path& base);

void save_ensemble(const std::filesystem::path& dir, const EnsembleModel& ens);
EnsembleModel load_ensemble(const std::filesystem::path& dir);

void save_operator_set(const std::filesystem::path& dir, const OperatorSet& ops);
OperatorSet load_operator_set(const std::filesystem::path& dir);

void save_measurements(const std::filesystem::path& dir, const MeasurementSet& meas);
MeasurementSet load_measurements(const std::filesystem::path& dir);

void save_recovery_result(const std::filesystem::path& dir, const RecoveryResult& rec);

void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

std::string format_double(double v);

const char* git_describe();

// Standard per-run manifest: config echo, root seed, build stamp, wall time.
nlohmann::json run_manifest(const nlohmann::json& config_echo, std::uint64_t root_seed,
                            double wall_time_s);

void write_json(const std::filesystem::path& path, const nlohmann::json& j);
nlohmann::json read_json(const std::filesystem::path& path);

}  // namespace scsamp
