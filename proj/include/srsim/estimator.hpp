#pragma once

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "srsim/actions.hpp"
#include "srsim/channel.hpp"

namespace srsim {

// Measured quantities a BSS needs to score a candidate action. Neighbor vectors
// are aligned (one slot per neighbor, in a fixed order). The *_ref_dbm fields
// are receptions of OWN transmissions normalized to a 0 dBm transmit power, so
// a candidate power P puts them at ref + P.
struct EstimatorInputs {
  std::vector<double> neighbor_rssi_at_self_dbm;     // neighbor APs heard at own AP, current powers
  std::vector<double> self_at_neighbor_ap_ref_dbm;   // own signal at neighbor APs, 0 dBm tx
  std::vector<double> self_at_neighbor_sta_ref_dbm;  // own signal at neighbor STAs, 0 dBm tx
  std::vector<double> interferer_at_own_sta_dbm;     // neighbor APs heard at own STA, current powers
  double own_sta_ref_dbm = 0.0;                      // serving link at 0 dBm tx
  double cca_dbm = -82.0;
  double capture_threshold_db = 10.0;
  double disruption_dbm = -90.0;
  double noise_dbm = -95.0;
  double omega = 4.0;
  bool capture_strict = true;

  std::size_t num_neighbors() const { return neighbor_rssi_at_self_dbm.size(); }
};

inline void validate_estimator_inputs(const EstimatorInputs& in) {
  const std::size_t n = in.num_neighbors();
  if (in.self_at_neighbor_ap_ref_dbm.size() != n || in.self_at_neighbor_sta_ref_dbm.size() != n ||
      in.interferer_at_own_sta_dbm.size() != n)
    throw std::invalid_argument("estimator inputs: neighbor vectors must be aligned");
  if (!(in.omega >= 1.0)) throw std::invalid_argument("estimator inputs: omega must be >= 1");
}

// psi_cont = 1 + number of neighbors the candidate CST would keep deferring to.
inline int contention_term(const EstimatorInputs& in, double candidate_cst_dbm) {
  validate_estimator_inputs(in);
  int count = 1;
  for (double r : in.neighbor_rssi_at_self_dbm)
    if (r >= candidate_cst_dbm) ++count;
  return count;
}

// psi_fair penalizes a candidate that would turn this BSS into a hidden
// aggressor: some neighbor becomes undetectable at the candidate CST while own
// transmissions would both silence its AP (>= CCA) and land on its STA hard
// enough (>= disruption level) to actually do harm.
inline double fairness_term(const EstimatorInputs& in, const Action& candidate) {
  validate_estimator_inputs(in);
  for (std::size_t m = 0; m < in.num_neighbors(); ++m) {
    const bool undetectable = in.neighbor_rssi_at_self_dbm[m] < candidate.cst_dbm;
    const bool silences_ap = in.self_at_neighbor_ap_ref_dbm[m] + candidate.tx_power_dbm >= in.cca_dbm;
    const bool harms_sta =
        in.self_at_neighbor_sta_ref_dbm[m] + candidate.tx_power_dbm >= in.disruption_dbm;
    if (undetectable && silences_ap && harms_sta) return in.omega;
  }
  return 1.0;
}

// eta = 1 iff the estimated SINR clears the capture threshold. Neighbors still
// sensed at the candidate CST are assumed deferred-to (no overlap); the rest
// count as concurrent interferers at their current powers.
inline int capture_gate(const EstimatorInputs& in, const Action& candidate) {
  validate_estimator_inputs(in);
  std::vector<double> interferers;
  for (std::size_t m = 0; m < in.num_neighbors(); ++m)
    if (in.neighbor_rssi_at_self_dbm[m] < candidate.cst_dbm)
      interferers.push_back(in.interferer_at_own_sta_dbm[m]);
  const double gamma = sinr_db(in.own_sta_ref_dbm + candidate.tx_power_dbm, interferers,
                               in.noise_dbm);
  const bool ok = in.capture_strict ? gamma > in.capture_threshold_db
                                    : gamma >= in.capture_threshold_db;
  return ok ? 1 : 0;
}

// r_hat = eta / (psi_cont * psi_fair) * rate(serving at candidate power) / gamma_max.
inline double estimate_reward(const EstimatorInputs& in, const Action& candidate,
                              const RateTable& rate_table, double gamma_max_mbps) {
  if (!(gamma_max_mbps > 0.0))
    throw std::invalid_argument("estimate_reward: gamma_max must be positive");
  const double eta = capture_gate(in, candidate);
  const double psi_cont = contention_term(in, candidate.cst_dbm);
  const double psi_fair = fairness_term(in, candidate);
  const RateSelection rs = select_rate(rate_table, in.own_sta_ref_dbm + candidate.tx_power_dbm);
  const double nu = rs.rate_mbps / gamma_max_mbps;
  return std::clamp(eta / (psi_cont * psi_fair) * nu, 0.0, 1.0);
}

}  // namespace srsim
