#pragma once

#include <cstdint>

#include <json.hpp>

#include "core/error.hpp"

namespace og {

/// Shared knobs for every numerical procedure. All tolerances are explicit;
/// these are the shipped defaults, not hidden constants.
struct SolverConfig {
  double bisect_tol = 1e-6;
  double feas_tol = 1e-7;
  int dykstra_max_iter = 5000;
  double dykstra_residual_tol = 1e-9;
  double strict_pos_tol = 1e-10;
  uint64_t seed = 0;
  int level_cap = 3;

  /// Tighter bisection used by the unitization gauge, whose consumers expect
  /// agreement at 1e-6.
  static SolverConfig unitization_defaults() {
    SolverConfig cfg;
    cfg.bisect_tol = 1e-7;
    cfg.feas_tol = 1e-9;
    return cfg;
  }

  void validate() const;

  /// Field-by-field override of `*this` from a JSON object; unknown keys are
  /// rejected with their JSON path.
  void update_from_json(const nlohmann::json& j);

  nlohmann::json to_json() const;
};

}  // namespace og
