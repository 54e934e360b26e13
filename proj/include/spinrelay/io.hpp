#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <ostream>
#include <span>
#include <string>
#include <variant>

#include "spinrelay/experiments.hpp"
#include "spinrelay/fidelity.hpp"

namespace spinrelay::io {

/// Numbers in every CSV use 12 significant digits.
std::string format_number(double value);

inline constexpr const char* kTraceHeader = "t,kind,f_exc,f_coh,f_av";
inline constexpr const char* kSweepHeader =
    "swept_name,swept_value,n,j_boundary,gamma,tau,f_exc_m,f_coh_m,f_av_m,t_m,p_suc,n_measurements,status";

void write_trace_csv(std::ostream& os, const FidelityTrace& trace);
/// Empty fields for quantities a failed record does not have.
void write_sweep_csv(std::ostream& os, std::span<const SweepRecord> records);

using ManifestValue = std::variant<double, std::int64_t, std::string>;

/// Everything needed to regenerate an output file: written next to it as
/// `<file>.manifest.json`.
struct RunManifest {
  std::string command;
  std::map<std::string, ManifestValue> parameters;
  std::string artifact_version;
  std::string timestamp;  // UTC, ISO 8601
  std::uint64_t seed = 42;
};

std::string utc_timestamp();
std::string manifest_json(const RunManifest& manifest);
RunManifest parse_manifest(const std::string& json_text);
void write_manifest(const std::filesystem::path& path, const RunManifest& manifest);

/// `dir/out.csv` -> `dir/out.manifest.json`.
std::filesystem::path manifest_path_for(const std::filesystem::path& output);

}  // namespace spinrelay::io
