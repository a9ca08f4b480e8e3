#pragma once

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include "srsim/config.hpp"
#include "srsim/engine.hpp"
#include "srsim/output.hpp"

namespace srsim {
namespace cli {

struct CliOptions {
  std::string config_path;  // empty -> built-in defaults
  std::vector<std::pair<std::string, std::string>> overrides;
};

inline RunConfig load_config(const CliOptions& opts) {
  if (opts.config_path.empty()) return parse_config_text("", opts.overrides);
  return parse_config_file(opts.config_path, opts.overrides);
}

inline std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open output file '" + path.string() + "'");
  return os;
}

inline void write_resolved_config(const std::filesystem::path& dir, const RunConfig& config) {
  std::ofstream os = open_output(dir / "config_resolved.ini");
  os << "# schema=config.v1\n";
  os << "# config_hash=" << config.config_hash_hex << "\n";
  os << config.canonical_text;
}

inline int cmd_run(const RunConfig& config, std::ostream& console) {
  const std::filesystem::path dir(config.output.out_dir);
  std::filesystem::create_directories(dir);
  write_resolved_config(dir, config);
  const bool want_trace = config.output.trace_level != "summary";
  const bool want_agents = config.output.trace_level == "debug";

  if (config.spec.kind == ScenarioKind::random_deploy) {
    const CampaignResult campaign = run_campaign(config.spec);
    {
      std::ofstream os = open_output(dir / "summary.txt");
      out::write_campaign_summary(os, config, campaign);
    }
    if (want_trace) {
      const EpisodeResult episode = run_episode(config.spec, want_agents, 0);
      std::ofstream os = open_output(dir / "trace.csv");
      out::write_trace(os, config, episode);
      if (want_agents) {
        std::ofstream agents = open_output(dir / "agents.csv");
        out::write_agents(agents, config, episode.snapshots.back());
      }
    }
    console << "kind=campaign deployments=" << campaign.per_deployment.size()
            << " mean_of_means_mbps=" << out::fmt_mbps(campaign.mean_of_means_mbps)
            << " mean_of_mins_mbps=" << out::fmt_mbps(campaign.mean_of_mins_mbps) << "\n";
  } else {
    const EpisodeResult episode = run_episode(config.spec, want_agents, 0);
    {
      std::ofstream os = open_output(dir / "summary.txt");
      out::write_episode_summary(os, config, episode.summary);
    }
    if (want_trace) {
      std::ofstream os = open_output(dir / "trace.csv");
      out::write_trace(os, config, episode);
    }
    if (want_agents) {
      std::ofstream agents = open_output(dir / "agents.csv");
      out::write_agents(agents, config, episode.snapshots.back());
    }
    console << "kind=episode t=" << config.spec.t_iterations
            << " mean_throughput_mbps=" << out::fmt_mbps(episode.summary.mean_throughput_mbps)
            << " min_bss_throughput_mbps="
            << out::fmt_mbps(episode.summary.min_bss_throughput_mbps) << "\n";
  }
  console << "out_dir=" << dir.string() << "\n";
  return 0;
}

namespace detail {

// Mean/min pair for one sweep cell: campaign aggregates for random scenarios,
// single-episode aggregates otherwise.
inline std::pair<double, double> evaluate_cell(const ScenarioSpec& spec) {
  if (spec.kind == ScenarioKind::random_deploy) {
    const CampaignResult c = run_campaign(spec);
    return {c.mean_of_means_mbps, c.mean_of_mins_mbps};
  }
  const EpisodeResult e = run_episode(spec);
  return {e.summary.mean_throughput_mbps, e.summary.min_bss_throughput_mbps};
}

// CSV-safe label: the bare name when every BSS runs the same policy, a
// '+'-joined list otherwise (commas would break the sweep column format).
inline std::string joined_policy_name(const ScenarioSpec& spec) {
  bool uniform = true;
  for (PolicyKind p : spec.policies) uniform = uniform && p == spec.policies[0];
  if (uniform && !spec.policies.empty()) return cfg::policy_name(spec.policies[0]);
  std::string joined;
  for (std::size_t i = 0; i < spec.policies.size(); ++i)
    joined += (i ? "+" : "") + cfg::policy_name(spec.policies[i]);
  return joined;
}

inline void set_all_policies(ScenarioSpec& spec, const std::string& name) {
  const PolicyKind kind = cfg::parse_policy_name("sweep.policies", name);
  spec.policies.assign(spec.policies.size(), kind);
}

}  // namespace detail

inline int cmd_sweep(const RunConfig& config, std::ostream& console) {
  if (config.spec.kind == ScenarioKind::abstract_game)
    throw ConfigError("sweep: not supported for abstract_game scenarios");
  if (config.sweep.values.empty())
    throw ConfigError("sweep.values: must be non-empty for sweep runs");

  std::vector<out::SweepRow> rows;
  const std::string base_policy = detail::joined_policy_name(config.spec);

  if (config.sweep.variable == "policy") {
    if (!config.sweep.policies.empty())
      throw ConfigError("sweep.policies: not used when sweep.variable is policy");
    for (const std::string& name : config.sweep.values) {
      ScenarioSpec spec = config.spec;
      const PolicyKind kind = cfg::parse_policy_name("sweep.values", name);
      spec.policies.assign(spec.policies.size(), kind);
      const auto [mean, mn] = detail::evaluate_cell(spec);
      rows.push_back({"policy", cfg::policy_name(kind), cfg::policy_name(kind), mean, mn});
    }
  } else {
    std::vector<std::string> policies = config.sweep.policies;
    if (policies.empty()) policies.push_back(base_policy);
    for (const std::string& value : config.sweep.values) {
      ScenarioSpec base = config.spec;
      std::string value_text;
      if (config.sweep.variable == "d_ap_ap") {
        if (base.kind == ScenarioKind::toy_strong || base.kind == ScenarioKind::toy_weak)
          throw ConfigError("sweep.variable: d_ap_ap is fixed for toy scenarios");
        const double d = cfg::parse_double("sweep.values", value);
        if (!(d > 0)) throw ConfigError("sweep.values: d_ap_ap values must be > 0");
        base.d_ap_ap = d;
        value_text = cfg::format_double(d);
      } else {  // seed
        base.seed = cfg::parse_u64("sweep.values", value);
        value_text = std::to_string(base.seed);
      }
      for (const std::string& policy : policies) {
        ScenarioSpec spec = base;
        if (policy != base_policy) detail::set_all_policies(spec, policy);
        const auto [mean, mn] = detail::evaluate_cell(spec);
        rows.push_back({config.sweep.variable, value_text, policy, mean, mn});
      }
    }
  }

  const std::filesystem::path dir(config.output.out_dir);
  std::filesystem::create_directories(dir);
  write_resolved_config(dir, config);
  {
    std::ofstream os = open_output(dir / "sweep.csv");
    out::write_sweep(os, config, rows);
  }
  console << "kind=sweep variable=" << config.sweep.variable << " rows=" << rows.size() << "\n";
  console << "out_dir=" << dir.string() << "\n";
  return 0;
}

inline int cmd_oracle(const RunConfig& config, std::ostream& console) {
  if (config.spec.kind == ScenarioKind::abstract_game)
    throw ConfigError("oracle: not supported for abstract_game scenarios");
  Rng geometry_rng(derive_seed(config.spec.seed, "geometry", 0));
  const Deployment dep = build_deployment(config.spec, geometry_rng);
  const OptimumResult best = brute_force_optimum(dep, config.spec.action_set, config.objective,
                                                 config.spec.rate_table);
  std::vector<Action> profile(best.profile.size());
  for (std::size_t i = 0; i < best.profile.size(); ++i)
    profile[i] = config.spec.action_set[static_cast<std::size_t>(best.profile[i])];
  const MacOutcome outcome = simulate_profile(dep, profile, config.spec.rate_table);
  const double sum = profile_objective(outcome, Objective::sum);
  const double mn = profile_objective(outcome, Objective::min);
  const bool nash = is_pure_nash(dep, config.spec.action_set, best.profile,
                                 config.spec.rate_table);
  out::write_oracle(console, config, best, sum, mn, nash);
  return 0;
}

}  // namespace cli
}  // namespace srsim
