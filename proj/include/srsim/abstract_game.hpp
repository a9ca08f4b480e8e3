#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "srsim/learning.hpp"
#include "srsim/rng.hpp"

namespace srsim {

// Normal-form game with payoffs in [0, 1], stored as one flat tensor per
// player over joint action indices (player 0 varies slowest).
struct AbstractGame {
  std::vector<int> num_actions;                // per player
  std::vector<std::vector<double>> payoffs;    // [player][flat joint index]

  int num_players() const { return static_cast<int>(num_actions.size()); }

  std::size_t joint_count() const {
    std::size_t total = 1;
    for (int k : num_actions) total *= static_cast<std::size_t>(k);
    return total;
  }

  std::size_t flat_index(const std::vector<int>& joint) const {
    std::size_t idx = 0;
    for (std::size_t n = 0; n < joint.size(); ++n)
      idx = idx * static_cast<std::size_t>(num_actions[n]) + static_cast<std::size_t>(joint[n]);
    return idx;
  }

  double payoff(int player, const std::vector<int>& joint) const {
    return payoffs[player][flat_index(joint)];
  }
};

inline void validate_game(const AbstractGame& g) {
  if (g.num_players() < 2) throw std::invalid_argument("abstract game: need at least two players");
  for (int k : g.num_actions)
    if (k < 2) throw std::invalid_argument("abstract game: each player needs at least two actions");
  if (g.payoffs.size() != g.num_actions.size())
    throw std::invalid_argument("abstract game: one payoff tensor per player required");
  for (const auto& tensor : g.payoffs) {
    if (tensor.size() != g.joint_count())
      throw std::invalid_argument("abstract game: payoff tensor size mismatch");
    for (double v : tensor)
      if (!(v >= 0.0 && v <= 1.0))
        throw std::invalid_argument("abstract game: payoffs must lie in [0, 1]");
  }
}

// Correlated-equilibrium check: under the joint distribution, no player gains
// more than `tolerance` by swapping any recommended action j for some k.
inline bool verify_correlated_equilibrium(const AbstractGame& g,
                                          const std::vector<double>& joint_distribution,
                                          double tolerance) {
  validate_game(g);
  if (joint_distribution.size() != g.joint_count())
    throw std::invalid_argument("verify_correlated_equilibrium: distribution size mismatch");
  double mass = 0.0;
  for (double p : joint_distribution) {
    if (p < -1e-12) throw std::invalid_argument("verify_correlated_equilibrium: negative probability");
    mass += p;
  }
  if (std::abs(mass - 1.0) > 1e-9)
    throw std::invalid_argument("verify_correlated_equilibrium: distribution must sum to 1");

  const int players = g.num_players();
  std::vector<int> joint(players, 0);
  for (int n = 0; n < players; ++n) {
    const int kn = g.num_actions[n];
    for (int j = 0; j < kn; ++j) {
      for (int k = 0; k < kn; ++k) {
        if (k == j) continue;
        double gain = 0.0;
        std::fill(joint.begin(), joint.end(), 0);
        for (;;) {
          if (joint[n] == j) {
            const double p = joint_distribution[g.flat_index(joint)];
            if (p > 0.0) {
              std::vector<int> swapped = joint;
              swapped[n] = k;
              gain += p * (g.payoff(n, swapped) - g.payoff(n, joint));
            }
          }
          int pos = players - 1;
          while (pos >= 0) {
            if (++joint[pos] < g.num_actions[pos]) break;
            joint[pos] = 0;
            --pos;
          }
          if (pos < 0) break;
        }
        if (gain > tolerance) return false;
      }
    }
  }
  return true;
}

struct AbstractPlayResult {
  std::vector<History> histories;        // per player, with true counterfactuals
  std::vector<double> empirical;         // joint action frequencies
};

// Repeated play with every player running regret matching under full
// counterfactual feedback.
inline AbstractPlayResult play_regret_matching(const AbstractGame& g, int t_iterations,
                                               double lambda, std::uint64_t seed,
                                               double mu_override = -1.0) {
  validate_game(g);
  if (t_iterations < 1) throw std::invalid_argument("play_regret_matching: need t >= 1");
  const int players = g.num_players();
  std::vector<AgentState> agents;
  agents.reserve(players);
  for (int n = 0; n < players; ++n)
    agents.emplace_back(g.num_actions[n], lambda, derive_seed(seed, "agent", n), mu_override);

  AbstractPlayResult result;
  result.histories.assign(players, {});
  result.empirical.assign(g.joint_count(), 0.0);
  std::vector<int> joint(players, 0);
  for (int t = 1; t <= t_iterations; ++t) {
    for (int n = 0; n < players; ++n) joint[n] = rm_select_action(agents[n]);
    result.empirical[g.flat_index(joint)] += 1.0;
    for (int n = 0; n < players; ++n) {
      std::vector<double> hyp(g.num_actions[n]);
      std::vector<int> swapped = joint;
      for (int k = 0; k < g.num_actions[n]; ++k) {
        swapped[n] = k;
        hyp[k] = g.payoff(n, swapped);
      }
      const double actual = hyp[joint[n]];
      result.histories[n].push_back({joint[n], actual, hyp});
      rm_update(agents[n], actual, hyp);
    }
  }
  for (double& p : result.empirical) p /= t_iterations;
  return result;
}

}  // namespace srsim
