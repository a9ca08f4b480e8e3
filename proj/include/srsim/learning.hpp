#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "srsim/rng.hpp"

namespace srsim {

// Regret-matching agent state. q(j,k) accumulates swap regret "j should have
// been k"; the preference vector pi is rebuilt from the played row after every
// update. mu = 2(K-1) unless overridden.
struct AgentState {
  int num_actions = 0;
  std::vector<double> q;   // row-major K x K, diagonal stays 0
  std::vector<double> pi;  // probability vector
  int last_action = -1;
  double mu = 0.0;
  double lambda = 0.95;
  bool global_decay = false;
  Rng rng;

  AgentState(int k, double lambda_, std::uint64_t seed, double mu_override = -1.0,
             bool global_decay_ = false)
      : num_actions(k),
        q(static_cast<std::size_t>(k) * k, 0.0),
        pi(k, 1.0 / k),
        mu(mu_override > 0.0 ? mu_override : 2.0 * (k - 1)),
        lambda(lambda_),
        global_decay(global_decay_),
        rng(seed) {
    if (k < 2) throw std::invalid_argument("AgentState: need at least two actions");
    if (!(lambda_ > 0.0 && lambda_ <= 1.0))
      throw std::invalid_argument("AgentState: lambda must be in (0, 1]");
  }

  double& q_at(int j, int k) { return q[static_cast<std::size_t>(j) * num_actions + k]; }
  double q_at(int j, int k) const { return q[static_cast<std::size_t>(j) * num_actions + k]; }
};

// Pure-strategy argmax of pi. Ties keep the previous action when it is among
// the maximizers; otherwise a seeded-RNG uniform pick among them.
inline int rm_select_action(AgentState& s) {
  double best = s.pi[0];
  for (double v : s.pi) best = std::max(best, v);
  std::vector<int> maximizers;
  for (int k = 0; k < s.num_actions; ++k)
    if (s.pi[k] == best) maximizers.push_back(k);
  int chosen;
  if (s.last_action >= 0 &&
      std::find(maximizers.begin(), maximizers.end(), s.last_action) != maximizers.end()) {
    chosen = s.last_action;
  } else if (maximizers.size() == 1) {
    chosen = maximizers[0];
  } else {
    chosen = maximizers[s.rng.uniform_int(static_cast<int>(maximizers.size()))];
  }
  s.last_action = chosen;
  return chosen;
}

// One update step: decay-and-accumulate the played row of q, then rebuild pi
// from it. Rewards outside [0,1] signal an estimator bug and are rejected.
inline void rm_update(AgentState& s, double actual_reward, const std::vector<double>& hypothetical) {
  const int k = s.num_actions;
  const int a = s.last_action;
  if (a < 0 || a >= k) throw std::logic_error("rm_update: no action has been played");
  if (static_cast<int>(hypothetical.size()) != k)
    throw std::invalid_argument("rm_update: hypothetical vector has wrong length");
  if (!(actual_reward >= 0.0 && actual_reward <= 1.0))
    throw std::invalid_argument("rm_update: actual reward outside [0, 1]");
  for (double h : hypothetical)
    if (!(h >= 0.0 && h <= 1.0))
      throw std::invalid_argument("rm_update: hypothetical reward outside [0, 1]");
  if (hypothetical[a] != actual_reward)
    throw std::invalid_argument("rm_update: hypothetical of the played action must equal the actual reward");

  if (s.global_decay) {
    for (double& v : s.q) v *= s.lambda;
  }
  for (int j = 0; j < k; ++j) {
    if (j == a) continue;
    const double decayed = s.global_decay ? s.q_at(a, j) : s.lambda * s.q_at(a, j);
    s.q_at(a, j) = std::max(0.0, decayed + (hypothetical[j] - actual_reward));
  }

  double row_sum = 0.0;
  for (int j = 0; j < k; ++j)
    if (j != a) row_sum += s.q_at(a, j);
  if (row_sum <= s.mu) {
    double others = 0.0;
    for (int j = 0; j < k; ++j) {
      if (j == a) continue;
      s.pi[j] = s.q_at(a, j) / s.mu;
      others += s.pi[j];
    }
    s.pi[a] = 1.0 - others;
  } else {
    // Proportional fallback keeps pi a probability vector when the played row
    // outgrows mu (reachable under adversarial reward sequences).
    for (int j = 0; j < k; ++j) s.pi[j] = j == a ? 0.0 : s.q_at(a, j) / row_sum;
  }
}

struct HistoryStep {
  int action = 0;
  double actual_reward = 0.0;
  std::vector<double> hypothetical_rewards;
};

using History = std::vector<HistoryStep>;

inline void validate_history(const History& h) {
  if (h.empty()) throw std::invalid_argument("regret: history must be non-empty");
  const std::size_t k = h[0].hypothetical_rewards.size();
  for (const HistoryStep& step : h) {
    if (step.hypothetical_rewards.size() != k)
      throw std::invalid_argument("regret: inconsistent hypothetical vector length");
    if (step.action < 0 || step.action >= static_cast<int>(k))
      throw std::invalid_argument("regret: action index out of range");
  }
}

// Best fixed action in hindsight minus what was actually collected.
inline double external_regret(const History& h) {
  validate_history(h);
  const std::size_t k = h[0].hypothetical_rewards.size();
  double actual_sum = 0.0;
  for (const HistoryStep& step : h) actual_sum += step.actual_reward;
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < k; ++j) {
    double s = 0.0;
    for (const HistoryStep& step : h) s += step.hypothetical_rewards[j];
    best = std::max(best, s - actual_sum);
  }
  return best;
}

// Best pairwise swap in hindsight: max over ordered (j, k) of the gain from
// having played k on exactly the iterations where j was played.
inline double internal_regret(const History& h) {
  validate_history(h);
  const int k = static_cast<int>(h[0].hypothetical_rewards.size());
  double best = -std::numeric_limits<double>::infinity();
  for (int j = 0; j < k; ++j) {
    for (int l = 0; l < k; ++l) {
      if (l == j) continue;
      double s = 0.0;
      for (const HistoryStep& step : h)
        if (step.action == j) s += step.hypothetical_rewards[l] - step.hypothetical_rewards[j];
      best = std::max(best, s);
    }
  }
  return best;
}

// Epsilon-greedy selection with eps(t) = eps0 / sqrt(t); greedy argmax of the
// per-action value estimates with ties to the lowest index.
inline int eg_select_action(int t, const std::vector<double>& value_estimates, double eps0,
                            Rng& rng) {
  if (t < 1) throw std::invalid_argument("eg_select_action: t must be >= 1");
  if (value_estimates.empty()) throw std::invalid_argument("eg_select_action: empty estimates");
  const double eps = eps0 / std::sqrt(static_cast<double>(t));
  if (rng.uniform01() < eps) return rng.uniform_int(static_cast<int>(value_estimates.size()));
  int best = 0;
  for (int i = 1; i < static_cast<int>(value_estimates.size()); ++i)
    if (value_estimates[i] > value_estimates[best]) best = i;
  return best;
}

inline int static_select_action(int default_action_index) { return default_action_index; }

// Empirical-mean tracker backing the epsilon-greedy baseline.
struct EpsilonGreedyAgent {
  std::vector<double> mean_reward;
  std::vector<int> count;
  double eps0;
  Rng rng;

  EpsilonGreedyAgent(int k, double eps0_, std::uint64_t seed)
      : mean_reward(k, 0.0), count(k, 0), eps0(eps0_), rng(seed) {
    if (k < 1) throw std::invalid_argument("EpsilonGreedyAgent: need at least one action");
  }

  int select(int t) { return eg_select_action(t, mean_reward, eps0, rng); }

  void update(int action, double reward) {
    count[action] += 1;
    mean_reward[action] += (reward - mean_reward[action]) / count[action];
  }
};

}  // namespace srsim
