#include "spinrelay/io.hpp"

#include <chrono>
#include <ctime>
#include <fstream>

#include <fmt/format.h>
#include <json.hpp>

#include "spinrelay/errors.hpp"

namespace spinrelay::io {

std::string format_number(double value) { return fmt::format("{:.12g}", value); }

void write_trace_csv(std::ostream& os, const FidelityTrace& trace) {
  os << kTraceHeader << '\n';
  for (std::size_t i = 0; i < trace.size(); ++i) {
    os << format_number(trace.times()[i]) << ',' << to_string(trace.kinds()[i]) << ','
       << format_number(trace.f_exc()[i]) << ',' << format_number(trace.f_coh()[i]) << ','
       << format_number(trace.f_av()[i]) << '\n';
  }
}

namespace {

std::string optional_field(const std::optional<double>& v) { return v ? format_number(*v) : std::string(); }

}  // namespace

void write_sweep_csv(std::ostream& os, std::span<const SweepRecord> records) {
  os << kSweepHeader << '\n';
  for (const SweepRecord& r : records) {
    os << r.swept_name << ',' << format_number(r.swept_value) << ',' << r.n << ','
       << format_number(r.j_boundary) << ',' << format_number(r.gamma) << ',' << format_number(r.tau) << ','
       << optional_field(r.f_exc_m) << ',' << optional_field(r.f_coh_m) << ',' << optional_field(r.f_av_m)
       << ',' << optional_field(r.t_m) << ',' << optional_field(r.p_suc) << ','
       << (r.n_measurements ? std::to_string(*r.n_measurements) : std::string()) << ','
       << to_string(r.status) << '\n';
  }
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm utc{};
  gmtime_r(&now, &utc);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &utc);
  return buf;
}

std::string manifest_json(const RunManifest& manifest) {
  nlohmann::ordered_json j;
  j["command"] = manifest.command;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  for (const auto& [key, value] : manifest.parameters) {
    std::visit([&params, &key](const auto& v) { params[key] = v; }, value);
  }
  j["parameters"] = params;
  j["artifact_version"] = manifest.artifact_version;
  j["timestamp"] = manifest.timestamp;
  j["seed"] = manifest.seed;
  return j.dump(2) + "\n";
}

RunManifest parse_manifest(const std::string& json_text) {
  const nlohmann::json j = nlohmann::json::parse(json_text);
  RunManifest m;
  m.command = j.at("command").get<std::string>();
  m.artifact_version = j.at("artifact_version").get<std::string>();
  m.timestamp = j.at("timestamp").get<std::string>();
  m.seed = j.at("seed").get<std::uint64_t>();
  for (const auto& [key, value] : j.at("parameters").items()) {
    if (value.is_string()) {
      m.parameters[key] = value.get<std::string>();
    } else if (value.is_number_integer()) {
      m.parameters[key] = value.get<std::int64_t>();
    } else if (value.is_number()) {
      m.parameters[key] = value.get<double>();
    } else {
      throw ConfigError("manifest parameter '" + key + "' is neither a number nor a string");
    }
  }
  return m;
}

void write_manifest(const std::filesystem::path& path, const RunManifest& manifest) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write " + path.string());
  os << manifest_json(manifest);
}

std::filesystem::path manifest_path_for(const std::filesystem::path& output) {
  std::filesystem::path p = output;
  p.replace_extension(".manifest.json");
  return p;
}

}  // namespace spinrelay::io
