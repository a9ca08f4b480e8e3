#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "srsim/channel.hpp"

namespace srsim {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

inline double distance(const Vec2& a, const Vec2& b) { return std::hypot(a.x - b.x, a.y - b.y); }

struct Bss {
  Vec2 ap;
  Vec2 sta;
};

struct RadioParams {
  double noise_dbm = -95.0;
  double cca_dbm = -82.0;
  double capture_threshold_db = 10.0;
  // Received co-channel power at a STA at or above this level wrecks reception
  // of a concurrent frame even when the long-run SINR clears the capture bar.
  double disruption_dbm = -90.0;
  // Environment-side capture comparison: success iff SINR >= threshold when true,
  // strict > when false (the estimator side has its own flag, strict by default).
  bool env_capture_geq = true;
};

struct Deployment {
  std::vector<Bss> bss_list;
  RadioParams radio;
  PathLossModel path_loss;

  int num_bss() const { return static_cast<int>(bss_list.size()); }
};

inline void validate_deployment(const Deployment& dep) {
  if (dep.bss_list.empty()) throw std::invalid_argument("deployment: needs at least one BSS");
  for (const Bss& b : dep.bss_list) {
    if (!std::isfinite(b.ap.x) || !std::isfinite(b.ap.y) || !std::isfinite(b.sta.x) ||
        !std::isfinite(b.sta.y))
      throw std::invalid_argument("deployment: positions must be finite");
  }
}

}  // namespace srsim
