#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "srsim/abstract_game.hpp"
#include "srsim/actions.hpp"
#include "srsim/channel.hpp"
#include "srsim/deployment.hpp"
#include "srsim/estimator.hpp"
#include "srsim/learning.hpp"
#include "srsim/mac.hpp"
#include "srsim/rng.hpp"

namespace srsim {

enum class ScenarioKind { toy_strong, toy_weak, random_deploy, custom, abstract_game };
enum class PolicyKind { static_policy, eps_greedy, regret_matching };

struct LearningParams {
  double lambda = 0.95;
  double epsilon0 = 0.1;
  double omega = -1.0;  // <= 0 means auto: 2 * num_bss
  double mu = -1.0;     // <= 0 means auto: 2 * (K - 1)
  bool global_decay = false;
  double measurement_noise_db = 0.0;
  bool estimator_capture_strict = true;
};

struct ScenarioSpec {
  ScenarioKind kind = ScenarioKind::toy_weak;
  int num_bss = 2;
  double d_ap_ap = 4.0;
  double d_ap_sta = 2.0;
  double d_ap_sta_min = 3.0;
  double d_ap_sta_max = 5.0;
  std::vector<Action> action_set;
  int default_action_index = 0;
  std::vector<PolicyKind> policies;
  int t_iterations = 200;
  std::uint64_t seed = 1;
  int num_deployments = 100;
  RadioParams radio;
  PathLossModel path_loss;
  RateTable rate_table;
  LearningParams learning;
  AbstractGame game;  // used only by ScenarioKind::abstract_game
};

inline double resolved_omega(const ScenarioSpec& spec) {
  return spec.learning.omega > 0.0 ? spec.learning.omega : 2.0 * spec.num_bss;
}

// The two fixed scenarios pin their geometry; callers building specs by hand
// go through this to stay on it.
inline void apply_toy_geometry(ScenarioSpec& spec) {
  if (spec.kind == ScenarioKind::toy_strong) {
    spec.num_bss = 2;
    spec.d_ap_ap = 5.0;
    spec.d_ap_sta = 2.0;
  } else if (spec.kind == ScenarioKind::toy_weak) {
    spec.num_bss = 2;
    spec.d_ap_ap = 4.0;
    spec.d_ap_sta = 2.0;
  }
}

// Fixed two-BSS line geometry with the STAs flanking outward; random
// deployments draw each STA on a uniform annulus around its AP.
inline Deployment build_deployment(const ScenarioSpec& spec, Rng& rng) {
  Deployment dep;
  dep.radio = spec.radio;
  dep.path_loss = spec.path_loss;
  dep.bss_list.resize(spec.num_bss);
  for (int i = 0; i < spec.num_bss; ++i)
    dep.bss_list[i].ap = {spec.d_ap_ap * i, 0.0};

  switch (spec.kind) {
    case ScenarioKind::toy_strong:
    case ScenarioKind::toy_weak:
    case ScenarioKind::custom: {
      for (int i = 0; i < spec.num_bss; ++i) {
        if (spec.num_bss == 2) {
          const double dir = i == 0 ? -1.0 : 1.0;
          dep.bss_list[i].sta = {dep.bss_list[i].ap.x + dir * spec.d_ap_sta, 0.0};
        } else {
          dep.bss_list[i].sta = {dep.bss_list[i].ap.x, spec.d_ap_sta};
        }
      }
      break;
    }
    case ScenarioKind::random_deploy: {
      for (int i = 0; i < spec.num_bss; ++i) {
        const double radius = rng.uniform_range(spec.d_ap_sta_min, spec.d_ap_sta_max);
        const double angle = rng.uniform_range(0.0, 6.283185307179586476925286766559);
        dep.bss_list[i].sta = {dep.bss_list[i].ap.x + radius * std::cos(angle),
                               dep.bss_list[i].ap.y + radius * std::sin(angle)};
      }
      break;
    }
    case ScenarioKind::abstract_game:
      throw std::logic_error("build_deployment: abstract games have no deployment");
  }
  validate_deployment(dep);
  return dep;
}

// Defining game structure of the two fixed scenarios; must hold under the
// committed channel defaults before any learning run is meaningful.
inline void verify_toy_calibration(const ScenarioSpec& spec) {
  ScenarioSpec probe = spec;
  Rng rng(0);
  const Deployment dep = build_deployment(probe, rng);
  const Action reuse_high{-72.0, 20.0};
  const Action reuse_low{-72.0, 10.0};
  const auto full_reuse_ok = [&](const MacOutcome& out) {
    for (const BssOutcome& o : out.bss)
      if (o.capture_failed || o.airtime_share != 1.0) return false;
    return true;
  };
  const MacOutcome high = simulate_profile(dep, {reuse_high, reuse_high}, spec.rate_table);
  if (spec.kind == ScenarioKind::toy_strong) {
    if (!full_reuse_ok(high))
      throw std::runtime_error(
          "calibration gate violated: strong scenario must allow full reuse at (-72, 20)");
  } else if (spec.kind == ScenarioKind::toy_weak) {
    bool all_failed = true;
    for (const BssOutcome& o : high.bss) all_failed = all_failed && o.capture_failed;
    if (!all_failed)
      throw std::runtime_error(
          "calibration gate violated: weak scenario must break capture at (-72, 20)");
    const MacOutcome low = simulate_profile(dep, {reuse_low, reuse_low}, spec.rate_table);
    if (!full_reuse_ok(low))
      throw std::runtime_error(
          "calibration gate violated: weak scenario must allow full reuse at (-72, 10)");
  }
}

struct IterationRecord {
  int t = 0;
  std::vector<int> action_index;
  std::vector<double> throughput_mbps;
  std::vector<double> reward;
  std::vector<std::vector<double>> hypothetical;  // agent-side estimates, played entry = actual
};

struct AgentSnapshot {
  std::vector<double> q;
  std::vector<double> pi;
  int last_action = -1;
};

struct RunSummary {
  double mean_throughput_mbps = 0.0;
  double min_bss_throughput_mbps = 0.0;
  std::vector<double> per_bss_mean_throughput_mbps;
  std::vector<std::vector<int>> action_histogram;  // [bss][action]
  std::vector<double> final_external_regret;       // against environment truth
  std::vector<double> final_internal_regret;
};

struct EpisodeResult {
  std::vector<IterationRecord> records;
  RunSummary summary;
  std::vector<std::vector<AgentSnapshot>> snapshots;  // [t][bss], regret-matching agents only
};

namespace detail {

// Memoizing view of simulate_profile keyed by the joint action-index tuple;
// episodes revisit few distinct profiles, the truth-regret pass many times.
class ProfileCache {
 public:
  ProfileCache(const Deployment& dep, const std::vector<Action>& action_set,
               const RateTable& rate_table)
      : dep_(dep), action_set_(action_set), rate_table_(rate_table) {}

  const MacOutcome& evaluate(const std::vector<int>& idx) {
    auto it = cache_.find(idx);
    if (it != cache_.end()) return it->second;
    std::vector<Action> profile(idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i) profile[i] = action_set_[idx[i]];
    return cache_.emplace(idx, simulate_profile(dep_, profile, rate_table_)).first->second;
  }

 private:
  const Deployment& dep_;
  const std::vector<Action>& action_set_;
  const RateTable& rate_table_;
  std::map<std::vector<int>, MacOutcome> cache_;
};

struct LossTables {
  std::vector<std::vector<double>> ap_ap;   // [i][j] loss AP i -> AP j
  std::vector<std::vector<double>> ap_sta;  // [i][j] loss AP i -> STA j
};

inline LossTables compute_losses(const Deployment& dep) {
  const int n = dep.num_bss();
  LossTables lt;
  lt.ap_ap.assign(n, std::vector<double>(n, 0.0));
  lt.ap_sta.assign(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      lt.ap_ap[i][j] = path_loss_db(dep.path_loss, distance(dep.bss_list[i].ap, dep.bss_list[j].ap));
      lt.ap_sta[i][j] =
          path_loss_db(dep.path_loss, distance(dep.bss_list[i].ap, dep.bss_list[j].sta));
    }
  }
  return lt;
}

inline EstimatorInputs make_estimator_inputs(const ScenarioSpec& spec, const LossTables& losses,
                                             const std::vector<Action>& profile, int self,
                                             Rng* noise_rng) {
  EstimatorInputs in;
  const int n = static_cast<int>(profile.size());
  const double sigma = spec.learning.measurement_noise_db;
  const auto measure = [&](double value) {
    return sigma > 0.0 && noise_rng != nullptr ? value + noise_rng->gaussian(sigma) : value;
  };
  for (int m = 0; m < n; ++m) {
    if (m == self) continue;
    in.neighbor_rssi_at_self_dbm.push_back(
        measure(profile[m].tx_power_dbm - losses.ap_ap[m][self]));
    in.self_at_neighbor_ap_ref_dbm.push_back(measure(-losses.ap_ap[self][m]));
    in.self_at_neighbor_sta_ref_dbm.push_back(measure(-losses.ap_sta[self][m]));
    in.interferer_at_own_sta_dbm.push_back(
        measure(profile[m].tx_power_dbm - losses.ap_sta[m][self]));
  }
  in.own_sta_ref_dbm = measure(-losses.ap_sta[self][self]);
  in.cca_dbm = spec.radio.cca_dbm;
  in.capture_threshold_db = spec.radio.capture_threshold_db;
  in.disruption_dbm = spec.radio.disruption_dbm;
  in.noise_dbm = spec.radio.noise_dbm;
  in.omega = resolved_omega(spec);
  in.capture_strict = spec.learning.estimator_capture_strict;
  return in;
}

inline EpisodeResult run_abstract_episode(const ScenarioSpec& spec, bool capture_snapshots) {
  validate_game(spec.game);
  const int players = spec.game.num_players();
  if (!spec.policies.empty()) {
    if (static_cast<int>(spec.policies.size()) != players)
      throw std::invalid_argument("run_episode: one policy per player required");
    for (PolicyKind p : spec.policies)
      if (p != PolicyKind::regret_matching)
        throw std::invalid_argument("run_episode: abstract games support regret_matching only");
  }
  const std::uint64_t episode_seed = derive_seed(spec.seed, "deploy", 0);

  std::vector<AgentState> agents;
  agents.reserve(players);
  for (int n = 0; n < players; ++n)
    agents.emplace_back(spec.game.num_actions[n], spec.learning.lambda,
                        derive_seed(episode_seed, "agent", n), spec.learning.mu,
                        spec.learning.global_decay);

  EpisodeResult result;
  std::vector<int> joint(players, 0);
  std::vector<History> histories(players);
  for (int t = 1; t <= spec.t_iterations; ++t) {
    for (int n = 0; n < players; ++n) joint[n] = rm_select_action(agents[n]);
    IterationRecord rec;
    rec.t = t;
    rec.action_index = joint;
    for (int n = 0; n < players; ++n) {
      std::vector<double> hyp(spec.game.num_actions[n]);
      std::vector<int> swapped = joint;
      for (int k = 0; k < spec.game.num_actions[n]; ++k) {
        swapped[n] = k;
        hyp[k] = spec.game.payoff(n, swapped);
      }
      const double actual = hyp[joint[n]];
      rec.throughput_mbps.push_back(actual);
      rec.reward.push_back(actual);
      rec.hypothetical.push_back(hyp);
      histories[n].push_back({joint[n], actual, hyp});
      rm_update(agents[n], actual, hyp);
    }
    if (capture_snapshots) {
      std::vector<AgentSnapshot> snap(players);
      for (int n = 0; n < players; ++n)
        snap[n] = {agents[n].q, agents[n].pi, agents[n].last_action};
      result.snapshots.push_back(std::move(snap));
    }
    result.records.push_back(std::move(rec));
  }

  RunSummary& s = result.summary;
  s.per_bss_mean_throughput_mbps.assign(players, 0.0);
  s.action_histogram.assign(players, {});
  for (int n = 0; n < players; ++n) s.action_histogram[n].assign(spec.game.num_actions[n], 0);
  for (const IterationRecord& rec : result.records)
    for (int n = 0; n < players; ++n) {
      s.per_bss_mean_throughput_mbps[n] += rec.throughput_mbps[n];
      s.action_histogram[n][rec.action_index[n]] += 1;
    }
  double total = 0.0;
  double mn = std::numeric_limits<double>::infinity();
  for (int n = 0; n < players; ++n) {
    s.per_bss_mean_throughput_mbps[n] /= spec.t_iterations;
    total += s.per_bss_mean_throughput_mbps[n];
    mn = std::min(mn, s.per_bss_mean_throughput_mbps[n]);
  }
  s.mean_throughput_mbps = total / players;
  s.min_bss_throughput_mbps = mn;
  for (int n = 0; n < players; ++n) {
    s.final_external_regret.push_back(external_regret(histories[n]));
    s.final_internal_regret.push_back(internal_regret(histories[n]));
  }
  return result;
}

}  // namespace detail

// One repeated-game episode: simultaneous selection, environment evaluation,
// bandit feedback, learning updates. deployment_index picks the substream (a
// campaign runs indices 0..num_deployments-1; a single episode uses 0).
inline EpisodeResult run_episode(const ScenarioSpec& spec, bool capture_snapshots = false,
                                 int deployment_index = 0) {
  if (spec.t_iterations < 1) throw std::invalid_argument("run_episode: t_iterations must be >= 1");
  if (spec.kind == ScenarioKind::abstract_game)
    return detail::run_abstract_episode(spec, capture_snapshots);

  if (spec.action_set.empty()) throw std::invalid_argument("run_episode: empty action set");
  if (spec.default_action_index < 0 ||
      spec.default_action_index >= static_cast<int>(spec.action_set.size()))
    throw std::invalid_argument("run_episode: default action outside the action set");
  if (static_cast<int>(spec.policies.size()) != spec.num_bss)
    throw std::invalid_argument("run_episode: one policy per BSS required");
  validate_rate_table(spec.rate_table);
  if (spec.kind == ScenarioKind::toy_strong || spec.kind == ScenarioKind::toy_weak)
    verify_toy_calibration(spec);

  const std::uint64_t dep_seed = derive_seed(spec.seed, "deploy", deployment_index);
  Rng geometry_rng(derive_seed(spec.seed, "geometry", deployment_index));
  const Deployment dep = build_deployment(spec, geometry_rng);
  const detail::LossTables losses = detail::compute_losses(dep);
  detail::ProfileCache cache(dep, spec.action_set, spec.rate_table);
  const int n = spec.num_bss;
  const int k = static_cast<int>(spec.action_set.size());
  const double gamma_max = spec.rate_table.max_rate_mbps();

  std::vector<AgentState> rm_agents;
  std::vector<EpsilonGreedyAgent> eg_agents;
  std::vector<int> rm_slot(n, -1), eg_slot(n, -1);
  std::vector<Rng> noise_rngs;
  noise_rngs.reserve(n);
  for (int i = 0; i < n; ++i)
    noise_rngs.emplace_back(derive_seed(dep_seed, "measure", i));
  for (int i = 0; i < n; ++i) {
    if (spec.policies[i] == PolicyKind::regret_matching) {
      rm_slot[i] = static_cast<int>(rm_agents.size());
      rm_agents.emplace_back(k, spec.learning.lambda, derive_seed(dep_seed, "agent", i),
                             spec.learning.mu, spec.learning.global_decay);
      // Starting from the configured default action mirrors an operator bring-up
      // where every BSS boots on the conservative setting.
      rm_agents.back().last_action = spec.default_action_index;
    } else if (spec.policies[i] == PolicyKind::eps_greedy) {
      eg_slot[i] = static_cast<int>(eg_agents.size());
      eg_agents.emplace_back(k, spec.learning.epsilon0, derive_seed(dep_seed, "agent", i));
    }
  }

  EpisodeResult result;
  std::vector<int> joint(n, 0);
  for (int t = 1; t <= spec.t_iterations; ++t) {
    for (int i = 0; i < n; ++i) {
      switch (spec.policies[i]) {
        case PolicyKind::static_policy:
          joint[i] = static_select_action(spec.default_action_index);
          break;
        case PolicyKind::eps_greedy:
          joint[i] = eg_agents[eg_slot[i]].select(t);
          break;
        case PolicyKind::regret_matching:
          joint[i] = rm_select_action(rm_agents[rm_slot[i]]);
          break;
      }
    }
    const MacOutcome& outcome = cache.evaluate(joint);

    IterationRecord rec;
    rec.t = t;
    rec.action_index = joint;
    std::vector<Action> profile(n);
    for (int i = 0; i < n; ++i) profile[i] = spec.action_set[joint[i]];
    for (int i = 0; i < n; ++i) {
      const double tput = outcome.bss[i].throughput_mbps;
      const double reward = std::clamp(tput / gamma_max, 0.0, 1.0);
      rec.throughput_mbps.push_back(tput);
      rec.reward.push_back(reward);

      const EstimatorInputs inputs = detail::make_estimator_inputs(
          spec, losses, profile, i,
          spec.learning.measurement_noise_db > 0.0 ? &noise_rngs[i] : nullptr);
      std::vector<double> hyp(k);
      for (int a = 0; a < k; ++a)
        hyp[a] = estimate_reward(inputs, spec.action_set[a], spec.rate_table, gamma_max);
      hyp[joint[i]] = reward;
      rec.hypothetical.push_back(hyp);

      if (spec.policies[i] == PolicyKind::regret_matching) {
        rm_update(rm_agents[rm_slot[i]], reward, rec.hypothetical.back());
      } else if (spec.policies[i] == PolicyKind::eps_greedy) {
        eg_agents[eg_slot[i]].update(joint[i], reward);
      }
    }
    if (capture_snapshots) {
      std::vector<AgentSnapshot> snap(n);
      for (int i = 0; i < n; ++i)
        if (rm_slot[i] >= 0)
          snap[i] = {rm_agents[rm_slot[i]].q, rm_agents[rm_slot[i]].pi,
                     rm_agents[rm_slot[i]].last_action};
      result.snapshots.push_back(std::move(snap));
    }
    result.records.push_back(std::move(rec));
  }

  // Analysis pass: regrets against environment truth (exact counterfactual
  // re-simulation), invisible to the agents themselves.
  std::vector<History> truth(n);
  for (const IterationRecord& rec : result.records) {
    for (int i = 0; i < n; ++i) {
      std::vector<double> hyp(k);
      std::vector<int> swapped = rec.action_index;
      for (int a = 0; a < k; ++a) {
        swapped[i] = a;
        hyp[a] = std::clamp(cache.evaluate(swapped).bss[i].throughput_mbps / gamma_max, 0.0, 1.0);
      }
      truth[i].push_back({rec.action_index[i], hyp[rec.action_index[i]], hyp});
    }
  }

  RunSummary& s = result.summary;
  s.per_bss_mean_throughput_mbps.assign(n, 0.0);
  s.action_histogram.assign(n, std::vector<int>(k, 0));
  for (const IterationRecord& rec : result.records)
    for (int i = 0; i < n; ++i) {
      s.per_bss_mean_throughput_mbps[i] += rec.throughput_mbps[i];
      s.action_histogram[i][rec.action_index[i]] += 1;
    }
  double total = 0.0;
  double mn = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    s.per_bss_mean_throughput_mbps[i] /= spec.t_iterations;
    total += s.per_bss_mean_throughput_mbps[i];
    mn = std::min(mn, s.per_bss_mean_throughput_mbps[i]);
  }
  s.mean_throughput_mbps = total / n;
  s.min_bss_throughput_mbps = mn;
  for (int i = 0; i < n; ++i) {
    s.final_external_regret.push_back(external_regret(truth[i]));
    s.final_internal_regret.push_back(internal_regret(truth[i]));
  }
  return result;
}

struct CampaignResult {
  double mean_of_means_mbps = 0.0;
  double mean_of_mins_mbps = 0.0;
  std::vector<RunSummary> per_deployment;
};

// Aggregate over num_deployments independent random deployments.
inline CampaignResult run_campaign(const ScenarioSpec& spec) {
  if (spec.kind != ScenarioKind::random_deploy)
    throw std::invalid_argument("run_campaign: requires the random scenario kind");
  if (spec.num_deployments < 1)
    throw std::invalid_argument("run_campaign: num_deployments must be >= 1");
  CampaignResult result;
  for (int d = 0; d < spec.num_deployments; ++d) {
    EpisodeResult ep = run_episode(spec, false, d);
    result.mean_of_means_mbps += ep.summary.mean_throughput_mbps;
    result.mean_of_mins_mbps += ep.summary.min_bss_throughput_mbps;
    result.per_deployment.push_back(std::move(ep.summary));
  }
  result.mean_of_means_mbps /= spec.num_deployments;
  result.mean_of_mins_mbps /= spec.num_deployments;
  return result;
}

}  // namespace srsim
