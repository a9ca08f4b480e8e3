#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "srsim/actions.hpp"
#include "srsim/channel.hpp"
#include "srsim/deployment.hpp"

namespace srsim {

// Entry [i][j] = received power from AP i at (AP|STA) of BSS j, at i's current
// transmit power. ap_to_sta diagonal holds the serving-link RSSIs.
struct RssiMatrix {
  std::vector<std::vector<double>> ap_to_ap;
  std::vector<std::vector<double>> ap_to_sta;
};

inline RssiMatrix compute_rssi_matrix(const Deployment& dep, const std::vector<Action>& profile) {
  if (profile.size() != dep.bss_list.size())
    throw std::invalid_argument("profile length does not match BSS count");
  const int n = dep.num_bss();
  RssiMatrix m;
  m.ap_to_ap.assign(n, std::vector<double>(n, 0.0));
  m.ap_to_sta.assign(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      m.ap_to_ap[i][j] = rssi_dbm(profile[i].tx_power_dbm, dep.path_loss,
                                  distance(dep.bss_list[i].ap, dep.bss_list[j].ap));
      m.ap_to_sta[i][j] = rssi_dbm(profile[i].tx_power_dbm, dep.path_loss,
                                   distance(dep.bss_list[i].ap, dep.bss_list[j].sta));
    }
  }
  return m;
}

// edge[i][j]: BSS j senses BSS i (j defers to i's transmissions).
struct SensingGraph {
  std::vector<std::vector<bool>> edge;
};

inline SensingGraph sensing_graph(const RssiMatrix& m, const std::vector<Action>& profile) {
  const int n = static_cast<int>(profile.size());
  SensingGraph g;
  g.edge.assign(n, std::vector<bool>(n, false));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) g.edge[i][j] = m.ap_to_ap[i][j] >= profile[j].cst_dbm;
  return g;
}

struct BssOutcome {
  double airtime_share = 0.0;
  double sinr_db = 0.0;
  int mcs = -1;
  double throughput_mbps = 0.0;
  bool starved = false;
  bool capture_failed = false;
};

struct MacOutcome {
  std::vector<BssOutcome> bss;
};

// Analytical contention model:
//  - mutually-sensing groups (components of the AND-symmetrized graph) split
//    airtime evenly;
//  - a BSS that is sensed but does not sense back transmits over the sensing
//    one, which is squeezed to the residual share (0 = starved under
//    full-buffer traffic);
//  - transmissions overlap exactly with the BSSs on neither side of a sensing
//    relation; those interferers set the SINR and can disrupt reception
//    outright when received above radio.disruption_dbm;
//  - rate follows the SINR-limited effective signal quality.
inline MacOutcome simulate_profile(const Deployment& dep, const std::vector<Action>& profile,
                                   const RateTable& rate_table) {
  const RssiMatrix m = compute_rssi_matrix(dep, profile);
  const SensingGraph g = sensing_graph(m, profile);
  const int n = dep.num_bss();

  std::vector<int> component(n, -1);
  for (int i = 0; i < n; ++i) {
    if (component[i] >= 0) continue;
    std::vector<int> stack{i};
    component[i] = i;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (int v = 0; v < n; ++v) {
        if (component[v] < 0 && g.edge[u][v] && g.edge[v][u]) {
          component[v] = i;
          stack.push_back(v);
        }
      }
    }
  }
  std::vector<int> comp_size(n, 0);
  for (int i = 0; i < n; ++i) comp_size[component[i]] += 1;

  std::vector<double> base(n), airtime(n);
  for (int i = 0; i < n; ++i) base[i] = 1.0 / comp_size[component[i]];
  airtime = base;
  // Starvation chains settle within n passes (each pass propagates one hop).
  for (int pass = 0; pass < n; ++pass) {
    for (int j = 0; j < n; ++j) {
      double aggressor_time = 0.0;
      bool has_aggressor = false;
      for (int i = 0; i < n; ++i) {
        if (i != j && g.edge[i][j] && !g.edge[j][i]) {
          has_aggressor = true;
          aggressor_time += airtime[i];
        }
      }
      if (has_aggressor) airtime[j] = std::min(base[j], std::max(0.0, 1.0 - aggressor_time));
    }
  }

  MacOutcome out;
  out.bss.resize(n);
  for (int j = 0; j < n; ++j) {
    BssOutcome& o = out.bss[j];
    o.airtime_share = airtime[j];
    bool has_aggressor = false;
    for (int i = 0; i < n; ++i)
      if (i != j && g.edge[i][j] && !g.edge[j][i]) has_aggressor = true;
    o.starved = has_aggressor && airtime[j] <= 0.0;

    std::vector<double> interferers;
    bool disrupted = false;
    for (int i = 0; i < n; ++i) {
      if (i == j || g.edge[i][j] || g.edge[j][i]) continue;
      interferers.push_back(m.ap_to_sta[i][j]);
      if (m.ap_to_sta[i][j] >= dep.radio.disruption_dbm) disrupted = true;
    }
    const double serving = m.ap_to_sta[j][j];
    o.sinr_db = sinr_db(serving, interferers, dep.radio.noise_dbm);
    const bool capture_ok = dep.radio.env_capture_geq
                                ? o.sinr_db >= dep.radio.capture_threshold_db
                                : o.sinr_db > dep.radio.capture_threshold_db;
    o.capture_failed = !capture_ok || disrupted;

    const double effective_dbm = std::min(serving, dep.radio.noise_dbm + o.sinr_db);
    const RateSelection rs = select_rate(rate_table, effective_dbm);
    o.mcs = rs.mcs;
    o.throughput_mbps = o.capture_failed ? 0.0 : o.airtime_share * rs.rate_mbps;
  }
  return out;
}

enum class Objective { sum, min };

struct OptimumResult {
  std::vector<int> profile;  // indices into the action set
  double value = 0.0;
};

inline double profile_objective(const MacOutcome& outcome, Objective objective) {
  double sum = 0.0;
  double mn = outcome.bss.empty() ? 0.0 : outcome.bss[0].throughput_mbps;
  for (const BssOutcome& o : outcome.bss) {
    sum += o.throughput_mbps;
    mn = std::min(mn, o.throughput_mbps);
  }
  return objective == Objective::sum ? sum : mn;
}

// Exhaustive search over joint profiles in lexicographic index order; ties keep
// the first (lexicographically smallest) maximizer.
inline OptimumResult brute_force_optimum(const Deployment& dep,
                                         const std::vector<Action>& action_set,
                                         Objective objective, const RateTable& rate_table,
                                         std::uint64_t enumeration_budget = 1000000) {
  const int n = dep.num_bss();
  const std::uint64_t k = action_set.size();
  if (k == 0) throw std::invalid_argument("brute_force_optimum: empty action set");
  std::uint64_t total = 1;
  for (int i = 0; i < n; ++i) {
    if (total > enumeration_budget / k)
      throw std::invalid_argument(
          "brute_force_optimum: joint action space exceeds enumeration budget");
    total *= k;
  }

  std::vector<int> idx(n, 0);
  std::vector<Action> profile(n, action_set[0]);
  OptimumResult best;
  best.value = -1.0;
  for (;;) {
    for (int i = 0; i < n; ++i) profile[i] = action_set[idx[i]];
    const double value = profile_objective(simulate_profile(dep, profile, rate_table), objective);
    if (value > best.value) {
      best.value = value;
      best.profile = idx;
    }
    int pos = n - 1;
    while (pos >= 0) {
      if (++idx[pos] < static_cast<int>(k)) break;
      idx[pos] = 0;
      --pos;
    }
    if (pos < 0) break;
  }
  return best;
}

// True iff no BSS can strictly raise its own throughput by a unilateral switch.
inline bool is_pure_nash(const Deployment& dep, const std::vector<Action>& action_set,
                         const std::vector<int>& profile_idx, const RateTable& rate_table,
                         double tolerance = 1e-9) {
  std::vector<Action> profile(profile_idx.size());
  for (std::size_t i = 0; i < profile_idx.size(); ++i) profile[i] = action_set[profile_idx[i]];
  const MacOutcome base = simulate_profile(dep, profile, rate_table);
  for (std::size_t nidx = 0; nidx < profile.size(); ++nidx) {
    const Action saved = profile[nidx];
    for (const Action& alt : action_set) {
      if (alt == saved) continue;
      profile[nidx] = alt;
      const MacOutcome dev = simulate_profile(dep, profile, rate_table);
      if (dev.bss[nidx].throughput_mbps > base.bss[nidx].throughput_mbps + tolerance) {
        return false;
      }
    }
    profile[nidx] = saved;
  }
  return true;
}

}  // namespace srsim
