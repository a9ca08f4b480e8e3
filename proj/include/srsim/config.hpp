#pragma once

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "srsim/engine.hpp"

namespace srsim {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace cfg {

inline std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(trim(cur));
  if (out.size() == 1 && out[0].empty()) out.clear();
  return out;
}

inline std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

inline std::string join_doubles(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out.push_back(',');
    out += format_double(v[i]);
  }
  return out;
}

// Known sections and keys; anything else is rejected with its full path.
inline const std::map<std::string, std::set<std::string>>& schema() {
  static const std::map<std::string, std::set<std::string>> s = {
      {"scenario",
       {"kind", "policy", "t_iterations", "seed", "num_bss", "num_deployments", "d_ap_ap",
        "d_ap_sta", "d_ap_sta_min", "d_ap_sta_max", "objective"}},
      {"radio",
       {"noise_dbm", "cca_dbm", "capture_threshold_db", "disruption_dbm", "env_capture_geq",
        "estimator_capture_strict"}},
      {"path_loss", {"pl0_db", "exponent", "min_distance_m"}},
      {"actions", {"cst_dbm", "power_dbm", "default_cst_dbm", "default_power_dbm"}},
      {"learning",
       {"lambda", "epsilon0", "omega", "mu", "global_decay", "measurement_noise_db"}},
      {"rate_table", {"mcs_min_rssi_dbm", "mcs_rate_mbps"}},
      {"output", {"out_dir", "trace_level"}},
      {"sweep", {"variable", "values", "policies"}},
      {"abstract_game", {"num_actions", "payoffs_player0", "payoffs_player1"}},
  };
  return s;
}

struct RawConfig {
  std::map<std::string, std::string> values;  // "section.key" -> raw text

  bool has(const std::string& path) const { return values.count(path) > 0; }
  std::string get(const std::string& path, const std::string& fallback) const {
    auto it = values.find(path);
    return it == values.end() ? fallback : it->second;
  }
};

inline RawConfig parse_ini(std::istream& in) {
  RawConfig raw;
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#' || t[0] == ';') continue;
    if (t.front() == '[') {
      if (t.back() != ']')
        throw ConfigError("config line " + std::to_string(lineno) + ": malformed section header");
      section = trim(t.substr(1, t.size() - 2));
      if (schema().count(section) == 0)
        throw ConfigError("unknown section '" + section + "'");
      continue;
    }
    const std::size_t eq = t.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
    if (section.empty())
      throw ConfigError("config line " + std::to_string(lineno) + ": key outside any section");
    const std::string key = trim(t.substr(0, eq));
    const std::string value = trim(t.substr(eq + 1));
    const std::string path = section + "." + key;
    if (schema().at(section).count(key) == 0) throw ConfigError("unknown key '" + path + "'");
    if (raw.values.count(path)) throw ConfigError("duplicate key '" + path + "'");
    raw.values[path] = value;
  }
  return raw;
}

inline double parse_double(const std::string& path, const std::string& text) {
  const std::string t = trim(text);
  if (t.empty()) throw ConfigError(path + ": expected a number, got empty value");
  char* end = nullptr;
  const double v = std::strtod(t.c_str(), &end);
  if (end != t.c_str() + t.size()) throw ConfigError(path + ": invalid number '" + t + "'");
  return v;
}

inline long long parse_int(const std::string& path, const std::string& text) {
  const std::string t = trim(text);
  if (t.empty()) throw ConfigError(path + ": expected an integer, got empty value");
  char* end = nullptr;
  const long long v = std::strtoll(t.c_str(), &end, 10);
  if (end != t.c_str() + t.size()) throw ConfigError(path + ": invalid integer '" + t + "'");
  return v;
}

inline std::uint64_t parse_u64(const std::string& path, const std::string& text) {
  const std::string t = trim(text);
  if (t.empty() || t[0] == '-') throw ConfigError(path + ": expected a non-negative integer");
  char* end = nullptr;
  const unsigned long long v = std::strtoull(t.c_str(), &end, 10);
  if (end != t.c_str() + t.size()) throw ConfigError(path + ": invalid integer '" + t + "'");
  return v;
}

inline bool parse_bool(const std::string& path, const std::string& text) {
  const std::string t = trim(text);
  if (t == "true") return true;
  if (t == "false") return false;
  throw ConfigError(path + ": expected true or false, got '" + t + "'");
}

inline std::vector<double> parse_double_list(const std::string& path, const std::string& text) {
  std::vector<double> out;
  for (const std::string& item : split(text, ',')) out.push_back(parse_double(path, item));
  return out;
}

inline PolicyKind parse_policy_name(const std::string& path, const std::string& name) {
  if (name == "static") return PolicyKind::static_policy;
  if (name == "eps_greedy") return PolicyKind::eps_greedy;
  if (name == "regret_matching") return PolicyKind::regret_matching;
  throw ConfigError(path + ": unknown policy '" + name +
                    "' (expected static, eps_greedy, regret_matching)");
}

inline std::string policy_name(PolicyKind p) {
  switch (p) {
    case PolicyKind::static_policy: return "static";
    case PolicyKind::eps_greedy: return "eps_greedy";
    case PolicyKind::regret_matching: return "regret_matching";
  }
  return "?";
}

inline ScenarioKind parse_kind(const std::string& path, const std::string& name) {
  if (name == "toy_strong") return ScenarioKind::toy_strong;
  if (name == "toy_weak") return ScenarioKind::toy_weak;
  if (name == "random") return ScenarioKind::random_deploy;
  if (name == "custom") return ScenarioKind::custom;
  if (name == "abstract_game") return ScenarioKind::abstract_game;
  throw ConfigError(path + ": unknown scenario kind '" + name +
                    "' (expected toy_strong, toy_weak, random, custom, abstract_game)");
}

inline std::string kind_name(ScenarioKind k) {
  switch (k) {
    case ScenarioKind::toy_strong: return "toy_strong";
    case ScenarioKind::toy_weak: return "toy_weak";
    case ScenarioKind::random_deploy: return "random";
    case ScenarioKind::custom: return "custom";
    case ScenarioKind::abstract_game: return "abstract_game";
  }
  return "?";
}

}  // namespace cfg

struct SweepSpec {
  std::string variable = "d_ap_ap";
  std::vector<std::string> values;
  std::vector<std::string> policies;
};

struct OutputSpec {
  std::string out_dir = "out";
  std::string trace_level = "full";  // summary | full | debug
};

struct RunConfig {
  ScenarioSpec spec;
  OutputSpec output;
  SweepSpec sweep;
  Objective objective = Objective::sum;
  // Raw action lists kept for canonical echo.
  std::vector<double> cst_values_dbm;
  std::vector<double> power_values_dbm;
  Action default_action;
  std::string omega_text = "auto";
  std::string mu_text = "auto";
  std::string canonical_text;
  std::string config_hash_hex;
};

namespace cfg {

inline void ensure_fixed_value(const RawConfig& raw, const std::string& path, double expected,
                               const std::string& why) {
  if (raw.has(path) && parse_double(path, raw.get(path, "")) != expected)
    throw ConfigError(path + ": fixed at " + format_double(expected) + " for " + why);
}

inline std::string canonical_body(const RunConfig& c) {
  std::ostringstream out;
  const ScenarioSpec& s = c.spec;
  out << "[scenario]\n";
  out << "kind = " << kind_name(s.kind) << "\n";
  out << "policy = ";
  for (std::size_t i = 0; i < s.policies.size(); ++i)
    out << (i ? "," : "") << policy_name(s.policies[i]);
  out << "\n";
  out << "t_iterations = " << s.t_iterations << "\n";
  out << "seed = " << s.seed << "\n";
  out << "num_bss = " << s.num_bss << "\n";
  out << "num_deployments = " << s.num_deployments << "\n";
  out << "d_ap_ap = " << format_double(s.d_ap_ap) << "\n";
  out << "d_ap_sta = " << format_double(s.d_ap_sta) << "\n";
  out << "d_ap_sta_min = " << format_double(s.d_ap_sta_min) << "\n";
  out << "d_ap_sta_max = " << format_double(s.d_ap_sta_max) << "\n";
  out << "objective = " << (c.objective == Objective::sum ? "sum" : "min") << "\n";
  out << "[radio]\n";
  out << "noise_dbm = " << format_double(s.radio.noise_dbm) << "\n";
  out << "cca_dbm = " << format_double(s.radio.cca_dbm) << "\n";
  out << "capture_threshold_db = " << format_double(s.radio.capture_threshold_db) << "\n";
  out << "disruption_dbm = " << format_double(s.radio.disruption_dbm) << "\n";
  out << "env_capture_geq = " << (s.radio.env_capture_geq ? "true" : "false") << "\n";
  out << "estimator_capture_strict = "
      << (s.learning.estimator_capture_strict ? "true" : "false") << "\n";
  out << "[path_loss]\n";
  out << "pl0_db = " << format_double(s.path_loss.pl0_db) << "\n";
  out << "exponent = " << format_double(s.path_loss.exponent) << "\n";
  out << "min_distance_m = " << format_double(s.path_loss.min_distance_m) << "\n";
  out << "[actions]\n";
  out << "cst_dbm = " << join_doubles(c.cst_values_dbm) << "\n";
  out << "power_dbm = " << join_doubles(c.power_values_dbm) << "\n";
  out << "default_cst_dbm = " << format_double(c.default_action.cst_dbm) << "\n";
  out << "default_power_dbm = " << format_double(c.default_action.tx_power_dbm) << "\n";
  out << "[learning]\n";
  out << "lambda = " << format_double(s.learning.lambda) << "\n";
  out << "epsilon0 = " << format_double(s.learning.epsilon0) << "\n";
  out << "omega = " << c.omega_text << "\n";
  out << "mu = " << c.mu_text << "\n";
  out << "global_decay = " << (s.learning.global_decay ? "true" : "false") << "\n";
  out << "measurement_noise_db = " << format_double(s.learning.measurement_noise_db) << "\n";
  out << "[rate_table]\n";
  std::vector<double> rssi, rate;
  for (const RateEntry& e : s.rate_table.entries) {
    rssi.push_back(e.min_rssi_dbm);
    rate.push_back(e.rate_mbps);
  }
  out << "mcs_min_rssi_dbm = " << join_doubles(rssi) << "\n";
  out << "mcs_rate_mbps = " << join_doubles(rate) << "\n";
  out << "[output]\n";
  out << "out_dir = " << c.output.out_dir << "\n";
  out << "trace_level = " << c.output.trace_level << "\n";
  out << "[sweep]\n";
  out << "variable = " << c.sweep.variable << "\n";
  out << "values = ";
  for (std::size_t i = 0; i < c.sweep.values.size(); ++i) out << (i ? "," : "") << c.sweep.values[i];
  out << "\n";
  out << "policies = ";
  for (std::size_t i = 0; i < c.sweep.policies.size(); ++i)
    out << (i ? "," : "") << c.sweep.policies[i];
  out << "\n";
  out << "[abstract_game]\n";
  out << "num_actions = ";
  for (std::size_t i = 0; i < c.spec.game.num_actions.size(); ++i)
    out << (i ? "," : "") << c.spec.game.num_actions[i];
  out << "\n";
  for (int p = 0; p < 2; ++p) {
    out << "payoffs_player" << p << " = ";
    if (p < static_cast<int>(c.spec.game.payoffs.size()) && !c.spec.game.num_actions.empty()) {
      const int cols = c.spec.game.num_actions.back();
      const auto& t = c.spec.game.payoffs[p];
      for (std::size_t i = 0; i < t.size(); ++i) {
        if (i) out << (i % cols == 0 ? ";" : ",");
        out << format_double(t[i]);
      }
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace cfg

// Fully resolve, validate, and fingerprint a raw key-value configuration.
inline RunConfig resolve_config(const cfg::RawConfig& raw) {
  using namespace cfg;
  RunConfig c;
  ScenarioSpec& s = c.spec;

  s.kind = parse_kind("scenario.kind", raw.get("scenario.kind", "toy_weak"));
  const bool toy = s.kind == ScenarioKind::toy_strong || s.kind == ScenarioKind::toy_weak;

  const long long num_bss = parse_int("scenario.num_bss", raw.get("scenario.num_bss", "2"));
  if (num_bss < 1 || num_bss > 64) throw ConfigError("scenario.num_bss: must be in [1, 64]");
  s.num_bss = static_cast<int>(num_bss);
  if (toy) {
    if (raw.has("scenario.num_bss") && s.num_bss != 2)
      throw ConfigError("scenario.num_bss: fixed at 2 for toy scenarios");
    const char* why = s.kind == ScenarioKind::toy_strong ? "toy_strong" : "toy_weak";
    ensure_fixed_value(raw, "scenario.d_ap_ap", s.kind == ScenarioKind::toy_strong ? 5.0 : 4.0,
                       why);
    ensure_fixed_value(raw, "scenario.d_ap_sta", 2.0, why);
  }

  const long long t_iter =
      parse_int("scenario.t_iterations", raw.get("scenario.t_iterations", "200"));
  if (t_iter < 1) throw ConfigError("scenario.t_iterations: must be >= 1");
  s.t_iterations = static_cast<int>(t_iter);
  s.seed = parse_u64("scenario.seed", raw.get("scenario.seed", "1"));
  const long long num_dep =
      parse_int("scenario.num_deployments", raw.get("scenario.num_deployments", "100"));
  if (num_dep < 1) throw ConfigError("scenario.num_deployments: must be >= 1");
  s.num_deployments = static_cast<int>(num_dep);

  s.d_ap_ap = parse_double("scenario.d_ap_ap", raw.get("scenario.d_ap_ap", "10"));
  s.d_ap_sta = parse_double("scenario.d_ap_sta", raw.get("scenario.d_ap_sta", "2"));
  s.d_ap_sta_min = parse_double("scenario.d_ap_sta_min", raw.get("scenario.d_ap_sta_min", "3"));
  s.d_ap_sta_max = parse_double("scenario.d_ap_sta_max", raw.get("scenario.d_ap_sta_max", "5"));
  if (!(s.d_ap_ap > 0)) throw ConfigError("scenario.d_ap_ap: must be > 0");
  if (!(s.d_ap_sta > 0)) throw ConfigError("scenario.d_ap_sta: must be > 0");
  if (!(s.d_ap_sta_min > 0) || !(s.d_ap_sta_max >= s.d_ap_sta_min))
    throw ConfigError("scenario.d_ap_sta_min/d_ap_sta_max: need 0 < min <= max");
  apply_toy_geometry(s);

  const std::string objective = raw.get("scenario.objective", "sum");
  if (objective == "sum")
    c.objective = Objective::sum;
  else if (objective == "min")
    c.objective = Objective::min;
  else
    throw ConfigError("scenario.objective: expected sum or min, got '" + objective + "'");

  s.radio.noise_dbm = parse_double("radio.noise_dbm", raw.get("radio.noise_dbm", "-95"));
  s.radio.cca_dbm = parse_double("radio.cca_dbm", raw.get("radio.cca_dbm", "-82"));
  s.radio.capture_threshold_db =
      parse_double("radio.capture_threshold_db", raw.get("radio.capture_threshold_db", "10"));
  s.radio.disruption_dbm =
      parse_double("radio.disruption_dbm", raw.get("radio.disruption_dbm", "-90"));
  s.radio.env_capture_geq =
      parse_bool("radio.env_capture_geq", raw.get("radio.env_capture_geq", "true"));
  s.learning.estimator_capture_strict = parse_bool(
      "radio.estimator_capture_strict", raw.get("radio.estimator_capture_strict", "true"));
  if (s.radio.noise_dbm < -174 || s.radio.noise_dbm > 0)
    throw ConfigError("radio.noise_dbm: must be in [-174, 0]");
  if (s.radio.cca_dbm < -120 || s.radio.cca_dbm > 0)
    throw ConfigError("radio.cca_dbm: must be in [-120, 0]");
  if (s.radio.capture_threshold_db < 0 || s.radio.capture_threshold_db > 100)
    throw ConfigError("radio.capture_threshold_db: must be in [0, 100]");
  if (s.radio.disruption_dbm < -120 || s.radio.disruption_dbm > 0)
    throw ConfigError("radio.disruption_dbm: must be in [-120, 0]");

  s.path_loss.pl0_db = parse_double("path_loss.pl0_db", raw.get("path_loss.pl0_db", "40"));
  s.path_loss.exponent = parse_double("path_loss.exponent", raw.get("path_loss.exponent", "8.7"));
  s.path_loss.min_distance_m =
      parse_double("path_loss.min_distance_m", raw.get("path_loss.min_distance_m", "1"));
  if (s.path_loss.pl0_db < 0 || s.path_loss.pl0_db > 150)
    throw ConfigError("path_loss.pl0_db: must be in [0, 150]");
  if (!(s.path_loss.exponent > 0)) throw ConfigError("path_loss.exponent: must be > 0");
  if (!(s.path_loss.min_distance_m > 0))
    throw ConfigError("path_loss.min_distance_m: must be > 0");

  const std::string default_cst_list = toy ? "-72,-82" : "-62,-72,-82";
  const std::string default_power_list = toy ? "10,20" : "5,10,15,20";
  c.cst_values_dbm = parse_double_list("actions.cst_dbm", raw.get("actions.cst_dbm", default_cst_list));
  c.power_values_dbm =
      parse_double_list("actions.power_dbm", raw.get("actions.power_dbm", default_power_list));
  if (c.cst_values_dbm.empty()) throw ConfigError("actions.cst_dbm: must be non-empty");
  if (c.power_values_dbm.empty()) throw ConfigError("actions.power_dbm: must be non-empty");
  for (std::size_t i = 0; i < c.cst_values_dbm.size(); ++i)
    for (std::size_t j = i + 1; j < c.cst_values_dbm.size(); ++j)
      if (c.cst_values_dbm[i] == c.cst_values_dbm[j])
        throw ConfigError("actions.cst_dbm: duplicate value");
  for (std::size_t i = 0; i < c.power_values_dbm.size(); ++i)
    for (std::size_t j = i + 1; j < c.power_values_dbm.size(); ++j)
      if (c.power_values_dbm[i] == c.power_values_dbm[j])
        throw ConfigError("actions.power_dbm: duplicate value");
  s.action_set = make_action_grid(c.cst_values_dbm, c.power_values_dbm);
  c.default_action.cst_dbm =
      parse_double("actions.default_cst_dbm", raw.get("actions.default_cst_dbm", "-82"));
  c.default_action.tx_power_dbm =
      parse_double("actions.default_power_dbm", raw.get("actions.default_power_dbm", "20"));
  s.default_action_index = find_action_index(s.action_set, c.default_action);
  if (s.default_action_index < 0)
    throw ConfigError("actions.default_cst_dbm/default_power_dbm: default action (" +
                      format_double(c.default_action.cst_dbm) + ", " +
                      format_double(c.default_action.tx_power_dbm) +
                      ") is not in the configured grid");

  const std::string policy_text = raw.get("scenario.policy", "regret_matching");
  std::vector<std::string> policy_names = split(policy_text, ',');
  if (policy_names.empty()) throw ConfigError("scenario.policy: must be non-empty");
  const int policy_count = s.kind == ScenarioKind::abstract_game ? 2 : s.num_bss;
  if (policy_names.size() == 1)
    policy_names.assign(policy_count, policy_names[0]);
  if (static_cast<int>(policy_names.size()) != policy_count)
    throw ConfigError("scenario.policy: expected 1 or " + std::to_string(policy_count) +
                      " comma-separated names");
  s.policies.clear();
  for (const std::string& name : policy_names)
    s.policies.push_back(parse_policy_name("scenario.policy", name));

  s.learning.lambda = parse_double("learning.lambda", raw.get("learning.lambda", "0.95"));
  if (!(s.learning.lambda > 0.0 && s.learning.lambda <= 1.0))
    throw ConfigError("learning.lambda: must be in (0, 1], got " +
                      format_double(s.learning.lambda));
  s.learning.epsilon0 = parse_double("learning.epsilon0", raw.get("learning.epsilon0", "0.1"));
  if (s.learning.epsilon0 < 0.0 || s.learning.epsilon0 > 1.0)
    throw ConfigError("learning.epsilon0: must be in [0, 1]");
  c.omega_text = trim(raw.get("learning.omega", "auto"));
  if (c.omega_text == "auto") {
    s.learning.omega = -1.0;
  } else {
    s.learning.omega = parse_double("learning.omega", c.omega_text);
    if (!(s.learning.omega >= 1.0)) throw ConfigError("learning.omega: must be >= 1 or auto");
    c.omega_text = format_double(s.learning.omega);
  }
  c.mu_text = trim(raw.get("learning.mu", "auto"));
  if (c.mu_text == "auto") {
    s.learning.mu = -1.0;
  } else {
    s.learning.mu = parse_double("learning.mu", c.mu_text);
    if (!(s.learning.mu > 0.0)) throw ConfigError("learning.mu: must be > 0 or auto");
    c.mu_text = format_double(s.learning.mu);
  }
  s.learning.global_decay =
      parse_bool("learning.global_decay", raw.get("learning.global_decay", "false"));
  s.learning.measurement_noise_db = parse_double("learning.measurement_noise_db",
                                                 raw.get("learning.measurement_noise_db", "0"));
  if (s.learning.measurement_noise_db < 0.0)
    throw ConfigError("learning.measurement_noise_db: must be >= 0");

  const RateTable def = default_rate_table();
  std::vector<double> def_rssi, def_rate;
  for (const RateEntry& e : def.entries) {
    def_rssi.push_back(e.min_rssi_dbm);
    def_rate.push_back(e.rate_mbps);
  }
  const std::vector<double> rssi = parse_double_list(
      "rate_table.mcs_min_rssi_dbm", raw.get("rate_table.mcs_min_rssi_dbm", join_doubles(def_rssi)));
  const std::vector<double> rate = parse_double_list(
      "rate_table.mcs_rate_mbps", raw.get("rate_table.mcs_rate_mbps", join_doubles(def_rate)));
  if (rssi.size() != rate.size() || rssi.empty())
    throw ConfigError("rate_table.mcs_min_rssi_dbm/mcs_rate_mbps: lists must be non-empty and equal length");
  s.rate_table.entries.clear();
  for (std::size_t i = 0; i < rssi.size(); ++i)
    s.rate_table.entries.push_back({static_cast<int>(i), rssi[i], rate[i]});
  try {
    validate_rate_table(s.rate_table);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("rate_table.mcs_min_rssi_dbm/mcs_rate_mbps: ") + e.what());
  }

  c.output.out_dir = raw.get("output.out_dir", "out");
  if (c.output.out_dir.empty()) throw ConfigError("output.out_dir: must be non-empty");
  c.output.trace_level = raw.get("output.trace_level", "full");
  if (c.output.trace_level != "summary" && c.output.trace_level != "full" &&
      c.output.trace_level != "debug")
    throw ConfigError("output.trace_level: expected summary, full or debug, got '" +
                      c.output.trace_level + "'");

  c.sweep.variable = raw.get("sweep.variable", "d_ap_ap");
  if (c.sweep.variable != "d_ap_ap" && c.sweep.variable != "seed" && c.sweep.variable != "policy")
    throw ConfigError("sweep.variable: expected d_ap_ap, seed or policy, got '" +
                      c.sweep.variable + "'");
  c.sweep.values = split(raw.get("sweep.values", ""), ',');
  c.sweep.policies = split(raw.get("sweep.policies", ""), ',');
  for (const std::string& p : c.sweep.policies) parse_policy_name("sweep.policies", p);

  if (s.kind == ScenarioKind::abstract_game) {
    const std::vector<std::string> counts =
        split(raw.get("abstract_game.num_actions", "2,2"), ',');
    if (counts.size() != 2)
      throw ConfigError("abstract_game.num_actions: exactly two players supported here");
    s.game.num_actions.clear();
    for (const std::string& t : counts) {
      const long long k = parse_int("abstract_game.num_actions", t);
      if (k < 2) throw ConfigError("abstract_game.num_actions: each player needs >= 2 actions");
      s.game.num_actions.push_back(static_cast<int>(k));
    }
    s.game.payoffs.clear();
    for (int p = 0; p < 2; ++p) {
      const std::string path = "abstract_game.payoffs_player" + std::to_string(p);
      const std::string text = raw.get(path, "");
      if (cfg::trim(text).empty()) throw ConfigError(path + ": required for abstract_game runs");
      std::vector<double> flat;
      const std::vector<std::string> rows = split(text, ';');
      if (static_cast<int>(rows.size()) != s.game.num_actions[0])
        throw ConfigError(path + ": expected " + std::to_string(s.game.num_actions[0]) +
                          " semicolon-separated rows");
      for (const std::string& row : rows) {
        const std::vector<double> vals = parse_double_list(path, row);
        if (static_cast<int>(vals.size()) != s.game.num_actions[1])
          throw ConfigError(path + ": expected " + std::to_string(s.game.num_actions[1]) +
                            " values per row");
        for (double v : vals) {
          if (v < 0.0 || v > 1.0) throw ConfigError(path + ": payoffs must lie in [0, 1]");
          flat.push_back(v);
        }
      }
      s.game.payoffs.push_back(std::move(flat));
    }
  }

  c.canonical_text = cfg::canonical_body(c);
  char hex[17];
  std::snprintf(hex, sizeof(hex), "%016llx",
                static_cast<unsigned long long>(fnv1a64(c.canonical_text)));
  c.config_hash_hex = hex;
  return c;
}

// Overrides are (key path, value) pairs applied on top of the file contents.
inline RunConfig parse_config_text(const std::string& text,
                                   const std::vector<std::pair<std::string, std::string>>&
                                       overrides = {}) {
  std::istringstream in(text);
  cfg::RawConfig raw = cfg::parse_ini(in);
  for (const auto& [path, value] : overrides) {
    const std::size_t dot = path.find('.');
    if (dot == std::string::npos) throw ConfigError("override '" + path + "': expected section.key");
    const std::string section = path.substr(0, dot);
    const std::string key = path.substr(dot + 1);
    auto it = cfg::schema().find(section);
    if (it == cfg::schema().end() || it->second.count(key) == 0)
      throw ConfigError("unknown key '" + path + "'");
    raw.values[path] = value;
  }
  return resolve_config(raw);
}

inline RunConfig parse_config_file(const std::string& path,
                                   const std::vector<std::pair<std::string, std::string>>&
                                       overrides = {}) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str(), overrides);
}

}  // namespace srsim
