#pragma once

#include <stdexcept>
#include <vector>

namespace srsim {

// One joint knob setting: carrier-sense threshold S and transmit power P.
struct Action {
  double cst_dbm = -82.0;
  double tx_power_dbm = 20.0;

  friend bool operator==(const Action& a, const Action& b) {
    return a.cst_dbm == b.cst_dbm && a.tx_power_dbm == b.tx_power_dbm;
  }
};

// Grid in the listed order: outer loop over CST values, inner over powers.
// Action indices everywhere refer to this ordering.
inline std::vector<Action> make_action_grid(const std::vector<double>& cst_values_dbm,
                                            const std::vector<double>& power_values_dbm) {
  if (cst_values_dbm.empty() || power_values_dbm.empty())
    throw std::invalid_argument("action grid: cst and power lists must be non-empty");
  std::vector<Action> grid;
  grid.reserve(cst_values_dbm.size() * power_values_dbm.size());
  for (double s : cst_values_dbm)
    for (double p : power_values_dbm) grid.push_back({s, p});
  return grid;
}

// Restricted 4-action set used by the two fixed scenarios:
// index 0: (-72, 10), 1: (-72, 20), 2: (-82, 10), 3: (-82, 20).
inline std::vector<Action> toy_action_set() { return make_action_grid({-72, -82}, {10, 20}); }

// Full 12-action grid used by random deployments.
inline std::vector<Action> full_action_grid() {
  return make_action_grid({-62, -72, -82}, {5, 10, 15, 20});
}

inline int find_action_index(const std::vector<Action>& set, const Action& a) {
  for (std::size_t k = 0; k < set.size(); ++k)
    if (set[k] == a) return static_cast<int>(k);
  return -1;
}

}  // namespace srsim
