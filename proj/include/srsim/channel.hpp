#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace srsim {

inline double dbm_to_mw(double dbm) { return std::pow(10.0, dbm / 10.0); }

inline double mw_to_dbm(double mw) {
  if (!(mw > 0.0)) throw std::domain_error("mw_to_dbm: power must be positive");
  return 10.0 * std::log10(mw);
}

// Log-distance path loss; distances below min_distance_m are clamped to it.
struct PathLossModel {
  double pl0_db = 40.0;
  double exponent = 8.7;
  double min_distance_m = 1.0;
};

inline double path_loss_db(const PathLossModel& model, double distance_m) {
  if (!(distance_m >= 0.0)) throw std::invalid_argument("path_loss_db: distance must be >= 0");
  return model.pl0_db +
         10.0 * model.exponent * std::log10(std::max(distance_m, model.min_distance_m));
}

inline double rssi_dbm(double tx_power_dbm, const PathLossModel& model, double distance_m) {
  return tx_power_dbm - path_loss_db(model, distance_m);
}

// Signal-to-interference-plus-noise ratio; the sum happens in mW.
inline double sinr_db(double signal_dbm, const std::vector<double>& interferers_dbm,
                      double noise_dbm) {
  double denom_mw = dbm_to_mw(noise_dbm);
  for (double i : interferers_dbm) denom_mw += dbm_to_mw(i);
  return signal_dbm - mw_to_dbm(denom_mw);
}

struct RateEntry {
  int mcs = 0;
  double min_rssi_dbm = 0.0;
  double rate_mbps = 0.0;
};

struct RateTable {
  std::vector<RateEntry> entries;

  double max_rate_mbps() const {
    if (entries.empty()) throw std::logic_error("RateTable: empty");
    return entries.back().rate_mbps;
  }
};

inline void validate_rate_table(const RateTable& table) {
  if (table.entries.empty()) throw std::invalid_argument("rate table: must not be empty");
  for (std::size_t i = 0; i < table.entries.size(); ++i) {
    if (table.entries[i].mcs != static_cast<int>(i))
      throw std::invalid_argument("rate table: mcs indices must be 0..n-1 in order");
    if (i > 0) {
      if (!(table.entries[i].min_rssi_dbm > table.entries[i - 1].min_rssi_dbm))
        throw std::invalid_argument("rate table: min_rssi must be strictly increasing");
      if (!(table.entries[i].rate_mbps > table.entries[i - 1].rate_mbps))
        throw std::invalid_argument("rate table: rate_mbps must be strictly increasing");
    }
  }
}

// 20 MHz, 1 spatial stream, 3.2 us GI: rate = 234 subcarriers * bits * coding / 16 us.
// Sensitivity thresholds follow the standard minimum-sensitivity ladder from -82 dBm.
inline RateTable default_rate_table() {
  static const double kMinRssi[12] = {-82, -79, -77, -74, -70, -66, -65, -64, -59, -57, -54, -52};
  static const double kRate[12] = {7.3125, 14.625,  21.9375, 29.25,    43.875,   58.5,
                                   65.8125, 73.125, 87.75,   97.5,     109.6875, 121.875};
  RateTable t;
  t.entries.reserve(12);
  for (int m = 0; m < 12; ++m) t.entries.push_back({m, kMinRssi[m], kRate[m]});
  return t;
}

struct RateSelection {
  int mcs = -1;  // -1 designates the zero-rate (out-of-range) result
  double rate_mbps = 0.0;
};

// Highest entry whose min_rssi <= rssi; boundary inclusive.
inline RateSelection select_rate(const RateTable& table, double rssi_at_sta_dbm) {
  RateSelection best;
  for (const RateEntry& e : table.entries) {
    if (rssi_at_sta_dbm >= e.min_rssi_dbm) best = {e.mcs, e.rate_mbps};
  }
  return best;
}

}  // namespace srsim
