#include "poloc/sim/config.hpp"

#include <cmath>
#include <functional>
#include <map>

#include "json.hpp"
#include "poloc/bytes.hpp"

namespace poloc::sim {

using nlohmann::json;

std::string_view to_string(PowMode m) {
  switch (m) {
    case PowMode::analytic: return "analytic";
    case PowMode::hashing: return "hashing";
    case PowMode::disabled: return "disabled";
  }
  return "?";
}

PowMode parse_pow_mode(std::string_view s) {
  if (s == "analytic") return PowMode::analytic;
  if (s == "hashing") return PowMode::hashing;
  if (s == "disabled") return PowMode::disabled;
  throw InvalidArgument("unknown pow_mode '" + std::string(s) + "'");
}

std::string_view to_string(ForgedDistribution d) {
  return d == ForgedDistribution::uniform ? "uniform" : "poisson";
}

ForgedDistribution parse_forged_distribution(std::string_view s) {
  if (s == "uniform") return ForgedDistribution::uniform;
  if (s == "poisson") return ForgedDistribution::poisson;
  throw InvalidArgument("unknown forged_distribution '" + std::string(s) + "'");
}

void ScenarioConfig::validate() const {
  auto require = [](bool ok, const char* msg) {
    if (!ok) throw InvalidArgument(msg);
  };
  require(vehicle_count >= 1, "vehicle_count must be at least 1");
  require(malicious_fraction >= 0 && malicious_fraction <= 1, "malicious_fraction must lie in [0, 1]");
  require(forged_min <= forged_max, "forged_min must not exceed forged_max");
  require(forged_mean >= 0 && std::isfinite(forged_mean), "forged_mean must be non-negative");
  require(forged_min_length >= 1, "forged_min_length must be at least 1");
  require(trajectory_length_min >= 1 && trajectory_length_min <= trajectory_length_max,
          "trajectory_length range must be non-empty and start at 1 or more");
  require(traverse_time_min > 0 && traverse_time_min <= traverse_time_max,
          "traverse_time range must be non-empty and positive");
  require(start_window >= 0, "start_window must be non-negative");
  require(threshold_t >= 1 && threshold_t <= rsu_count, "threshold_t must lie in [1, rsu_count]");
  require(operating_rate > 0 && operating_rate < 1, "operating_rate must lie in (0, 1)");
  require(hash_rate > 0 && std::isfinite(hash_rate), "hash_rate must be positive");
  require(output_bits >= 1 && output_bits <= pow::kFullOutputBits, "output_bits must lie in [1, 256]");
  require(table_time_min > 0 && table_time_min <= table_time_max && table_time_step > 0,
          "target table time grid must be non-empty");
  require(rsu_count >= 2, "rsu_count must be at least 2");
  require(repetitions >= 1, "repetitions must be at least 1");
  detection().validate();
}

detection::DetectionParams ScenarioConfig::detection() const {
  return {check_window, length_limit, similarity_threshold};
}

std::vector<double> ScenarioConfig::table_times() const {
  std::vector<double> out;
  for (double t = table_time_min; t <= table_time_max + 1e-9; t += table_time_step) out.push_back(t);
  return out;
}

pow::TargetTable ScenarioConfig::target_table() const {
  pow::TableBuildOptions opts;
  opts.operating_rate = operating_rate;
  return pow::build_target_table({operating_rate}, table_times(), hash_rate, output_bits, opts);
}

namespace {

// One entry per config field: how to read it from JSON and write it back.
struct Field {
  std::function<void(ScenarioConfig&, const json&)> read;
  std::function<json(const ScenarioConfig&)> write;
};

template <class T>
Field plain(T ScenarioConfig::*member) {
  return {[member](ScenarioConfig& c, const json& j) { c.*member = j.get<T>(); },
          [member](const ScenarioConfig& c) { return json(c.*member); }};
}

template <class E>
Field enumerated(E ScenarioConfig::*member, E (*parse)(std::string_view),
                 std::string_view (*show)(E)) {
  return {[member, parse](ScenarioConfig& c, const json& j) {
            c.*member = parse(j.get<std::string>());
          },
          [member, show](const ScenarioConfig& c) { return json(std::string(show(c.*member))); }};
}

const std::map<std::string, Field>& fields() {
  static const std::map<std::string, Field> f = {
      {"vehicle_count", plain(&ScenarioConfig::vehicle_count)},
      {"malicious_fraction", plain(&ScenarioConfig::malicious_fraction)},
      {"forged_distribution", enumerated(&ScenarioConfig::forged_distribution,
                                         parse_forged_distribution, to_string)},
      {"forged_min", plain(&ScenarioConfig::forged_min)},
      {"forged_max", plain(&ScenarioConfig::forged_max)},
      {"forged_mean", plain(&ScenarioConfig::forged_mean)},
      {"forged_cap", plain(&ScenarioConfig::forged_cap)},
      {"forged_jitter", plain(&ScenarioConfig::forged_jitter)},
      {"forged_min_length", plain(&ScenarioConfig::forged_min_length)},
      {"trajectory_length_min", plain(&ScenarioConfig::trajectory_length_min)},
      {"trajectory_length_max", plain(&ScenarioConfig::trajectory_length_max)},
      {"traverse_time_min", plain(&ScenarioConfig::traverse_time_min)},
      {"traverse_time_max", plain(&ScenarioConfig::traverse_time_max)},
      {"start_window", plain(&ScenarioConfig::start_window)},
      {"threshold_t", plain(&ScenarioConfig::threshold_t)},
      {"operating_rate", plain(&ScenarioConfig::operating_rate)},
      {"hash_rate", plain(&ScenarioConfig::hash_rate)},
      {"output_bits", plain(&ScenarioConfig::output_bits)},
      {"table_time_min", plain(&ScenarioConfig::table_time_min)},
      {"table_time_max", plain(&ScenarioConfig::table_time_max)},
      {"table_time_step", plain(&ScenarioConfig::table_time_step)},
      {"pow_mode", enumerated(&ScenarioConfig::pow_mode, parse_pow_mode, to_string)},
      {"check_window", plain(&ScenarioConfig::check_window)},
      {"length_limit", plain(&ScenarioConfig::length_limit)},
      {"similarity_threshold", plain(&ScenarioConfig::similarity_threshold)},
      {"rsu_count", plain(&ScenarioConfig::rsu_count)},
      {"topology", enumerated(&ScenarioConfig::topology, parse_topology, to_string)},
      {"drive_protocol", plain(&ScenarioConfig::drive_protocol)},
      {"rng_seed", plain(&ScenarioConfig::rng_seed)},
      {"repetitions", plain(&ScenarioConfig::repetitions)},
  };
  return f;
}

bool type_matches(const json& current, const json& given) {
  if (current.is_boolean()) return given.is_boolean();
  if (current.is_string()) return given.is_string();
  if (current.is_number_unsigned()) return given.is_number_unsigned();
  if (current.is_number()) return given.is_number();
  return false;
}

}  // namespace

ScenarioConfig config_from_json(std::string_view text, ScenarioConfig cfg) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what(), {});
  }
  if (!doc.is_object()) throw ConfigError("config must be a JSON object", {});

  std::vector<std::string> unknown, bad;
  for (const auto& [key, value] : doc.items()) {
    auto it = fields().find(key);
    if (it == fields().end()) {
      unknown.push_back(key);
      continue;
    }
    if (!type_matches(it->second.write(cfg), value)) {
      bad.push_back(key);
      continue;
    }
    try {
      it->second.read(cfg, value);
    } catch (const std::exception&) {
      bad.push_back(key);
    }
  }
  if (!unknown.empty() || !bad.empty()) {
    std::string msg = "config schema violation:";
    std::vector<std::string> all;
    for (const auto& k : unknown) {
      msg += " unknown key '" + k + "';";
      all.push_back(k);
    }
    for (const auto& k : bad) {
      msg += " bad value for '" + k + "';";
      all.push_back(k);
    }
    throw ConfigError(msg, all);
  }
  return cfg;
}

std::string config_to_json(const ScenarioConfig& cfg) {
  json out = json::object();
  for (const auto& [key, f] : fields()) out[key] = f.write(cfg);
  return out.dump(2) + "\n";
}

std::string config_hash(const ScenarioConfig& cfg) {
  std::string canonical = config_to_json(cfg);
  return to_hex(sha256(canonical));
}

}  // namespace poloc::sim
