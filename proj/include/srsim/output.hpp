#pragma once

#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include "srsim/config.hpp"
#include "srsim/engine.hpp"
#include "srsim/mac.hpp"

namespace srsim {
namespace out {

inline std::string fmt(const char* format, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), format, v);
  return buf;
}

inline std::string fmt_mbps(double v) { return fmt("%.6f", v); }
inline std::string fmt_reward(double v) { return fmt("%.9f", v); }

inline void write_file_header(std::ostream& os, const char* schema, const RunConfig& config) {
  os << "# schema=" << schema << "\n";
  os << "# config_hash=" << config.config_hash_hex << "\n";
}

// One row per (iteration, BSS); t is 1-based as seen by the learning rule.
inline void write_trace(std::ostream& os, const RunConfig& config, const EpisodeResult& episode) {
  write_file_header(os, "trace.v1", config);
  os << "t,bss_id,action_index,cst_dbm,power_dbm,throughput_mbps,reward\n";
  // Abstract-game actions are bare matrix indices; the radio columns stay empty.
  const bool radio = config.spec.kind != ScenarioKind::abstract_game;
  const std::vector<Action>& actions = config.spec.action_set;
  for (const IterationRecord& rec : episode.records) {
    for (std::size_t n = 0; n < rec.action_index.size(); ++n) {
      os << rec.t << ',' << n << ',' << rec.action_index[n] << ',';
      if (radio) {
        const Action& a = actions.at(static_cast<std::size_t>(rec.action_index[n]));
        os << cfg::format_double(a.cst_dbm) << ',' << cfg::format_double(a.tx_power_dbm);
      } else {
        os << ',';
      }
      os << ',' << fmt_mbps(rec.throughput_mbps[n]) << ',' << fmt_reward(rec.reward[n]) << "\n";
    }
  }
}

inline void write_episode_summary(std::ostream& os, const RunConfig& config,
                                  const RunSummary& summary) {
  write_file_header(os, "summary.v1", config);
  os << "kind=episode\n";
  os << "mean_throughput_mbps=" << fmt_mbps(summary.mean_throughput_mbps) << "\n";
  os << "min_bss_throughput_mbps=" << fmt_mbps(summary.min_bss_throughput_mbps) << "\n";
  for (std::size_t n = 0; n < summary.per_bss_mean_throughput_mbps.size(); ++n) {
    const std::string p = "bss." + std::to_string(n) + ".";
    os << p << "mean_throughput_mbps=" << fmt_mbps(summary.per_bss_mean_throughput_mbps[n])
       << "\n";
    os << p << "external_regret=" << fmt_reward(summary.final_external_regret[n]) << "\n";
    os << p << "internal_regret=" << fmt_reward(summary.final_internal_regret[n]) << "\n";
    os << p << "action_hist=";
    const std::vector<int>& hist = summary.action_histogram[n];
    for (std::size_t k = 0; k < hist.size(); ++k) os << (k ? "," : "") << k << ':' << hist[k];
    os << "\n";
  }
}

inline void write_campaign_summary(std::ostream& os, const RunConfig& config,
                                   const CampaignResult& campaign) {
  write_file_header(os, "summary.v1", config);
  os << "kind=campaign\n";
  os << "num_deployments=" << campaign.per_deployment.size() << "\n";
  os << "mean_of_means_mbps=" << fmt_mbps(campaign.mean_of_means_mbps) << "\n";
  os << "mean_of_mins_mbps=" << fmt_mbps(campaign.mean_of_mins_mbps) << "\n";
  for (std::size_t d = 0; d < campaign.per_deployment.size(); ++d) {
    const std::string p = "deployment." + std::to_string(d) + ".";
    os << p << "mean_mbps=" << fmt_mbps(campaign.per_deployment[d].mean_throughput_mbps) << "\n";
    os << p << "min_mbps=" << fmt_mbps(campaign.per_deployment[d].min_bss_throughput_mbps)
       << "\n";
  }
}

struct SweepRow {
  std::string variable;
  std::string value;
  std::string policy;
  double mean_throughput_mbps = 0.0;
  double min_throughput_mbps = 0.0;
};

inline void write_sweep(std::ostream& os, const RunConfig& config,
                        const std::vector<SweepRow>& rows) {
  write_file_header(os, "sweep.v1", config);
  os << "variable,value,policy,mean_throughput_mbps,min_throughput_mbps\n";
  for (const SweepRow& row : rows) {
    os << row.variable << ',' << row.value << ',' << row.policy << ','
       << fmt_mbps(row.mean_throughput_mbps) << ',' << fmt_mbps(row.min_throughput_mbps) << "\n";
  }
}

// Final learner state (debug trace level): regret rows, policy, anchor action.
inline void write_agents(std::ostream& os, const RunConfig& config,
                         const std::vector<AgentSnapshot>& final_snapshots) {
  write_file_header(os, "agents.v1", config);
  for (std::size_t n = 0; n < final_snapshots.size(); ++n) {
    const AgentSnapshot& snap = final_snapshots[n];
    const std::string p = "bss." + std::to_string(n) + ".";
    if (snap.pi.empty()) {
      os << p << "learner=none\n";
      continue;
    }
    const std::size_t k = snap.pi.size();
    os << p << "last_action=" << snap.last_action << "\n";
    os << p << "pi=";
    for (std::size_t i = 0; i < k; ++i) os << (i ? "," : "") << fmt_reward(snap.pi[i]);
    os << "\n";
    for (std::size_t j = 0; j < k; ++j) {
      os << p << "q." << j << "=";
      for (std::size_t i = 0; i < k; ++i)
        os << (i ? "," : "") << fmt_reward(snap.q[j * k + i]);
      os << "\n";
    }
  }
}

inline void write_oracle(std::ostream& os, const RunConfig& config, const OptimumResult& best,
                         double sum_mbps, double min_mbps, bool pure_nash) {
  write_file_header(os, "oracle.v1", config);
  os << "objective=" << (config.objective == Objective::sum ? "sum" : "min") << "\n";
  os << "profile_indices=";
  for (std::size_t n = 0; n < best.profile.size(); ++n) os << (n ? "," : "") << best.profile[n];
  os << "\n";
  os << "profile_actions=";
  for (std::size_t n = 0; n < best.profile.size(); ++n) {
    const Action& a = config.spec.action_set.at(static_cast<std::size_t>(best.profile[n]));
    os << (n ? ";" : "") << "(" << cfg::format_double(a.cst_dbm) << ","
       << cfg::format_double(a.tx_power_dbm) << ")";
  }
  os << "\n";
  os << "sum_throughput_mbps=" << fmt_mbps(sum_mbps) << "\n";
  os << "min_throughput_mbps=" << fmt_mbps(min_mbps) << "\n";
  os << "pure_nash=" << (pure_nash ? "true" : "false") << "\n";
}

}  // namespace out
}  // namespace srsim
