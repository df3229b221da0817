#include "core/config.hpp"

namespace og {

void SolverConfig::validate() const {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0)) fail(ErrorCode::InvalidArgument, std::string("SolverConfig: ") + name + " must be strictly positive");
  };
  positive(bisect_tol, "bisect_tol");
  positive(feas_tol, "feas_tol");
  positive(dykstra_residual_tol, "dykstra_residual_tol");
  positive(strict_pos_tol, "strict_pos_tol");
  if (dykstra_max_iter < 1) fail(ErrorCode::InvalidArgument, "SolverConfig: dykstra_max_iter must be >= 1");
  if (level_cap < 1) fail(ErrorCode::InvalidArgument, "SolverConfig: level_cap must be >= 1");
}

void SolverConfig::update_from_json(const nlohmann::json& j) {
  if (!j.is_object()) fail(ErrorCode::Parse, "config: expected a JSON object at /");
  for (const auto& [key, value] : j.items()) {
    try {
      if (key == "bisect_tol") bisect_tol = value.get<double>();
      else if (key == "feas_tol") feas_tol = value.get<double>();
      else if (key == "dykstra_max_iter") dykstra_max_iter = value.get<int>();
      else if (key == "dykstra_residual_tol") dykstra_residual_tol = value.get<double>();
      else if (key == "strict_pos_tol") strict_pos_tol = value.get<double>();
      else if (key == "seed") seed = value.get<uint64_t>();
      else if (key == "level_cap") level_cap = value.get<int>();
      else fail(ErrorCode::Parse, "config: unknown field at /" + key);
    } catch (const nlohmann::json::exception&) {
      fail(ErrorCode::Parse, "config: bad value at /" + key);
    }
  }
  validate();
}

nlohmann::json SolverConfig::to_json() const {
  return nlohmann::json{
      {"bisect_tol", bisect_tol},
      {"feas_tol", feas_tol},
      {"dykstra_max_iter", dykstra_max_iter},
      {"dykstra_residual_tol", dykstra_residual_tol},
      {"strict_pos_tol", strict_pos_tol},
      {"seed", seed},
      {"level_cap", level_cap},
  };
}

}  // namespace og
