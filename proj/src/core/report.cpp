#include "core/report.hpp"

#include <algorithm>

namespace og {

void CheckReport::merge(const CheckReport& other) {
  trials += other.trials;
  max_slack = std::max(max_slack, other.max_slack);
  violations.insert(violations.end(), other.violations.begin(), other.violations.end());
  for (const auto& [key, value] : other.notes) {
    auto it = notes.find(key);
    if (it == notes.end()) notes[key] = value;
    else it->second = std::max(it->second, value);
  }
}

nlohmann::json CheckReport::to_json() const {
  nlohmann::json v = nlohmann::json::array();
  for (const Violation& violation : violations) {
    v.push_back({{"seed", violation.seed}, {"witness", violation.witness}, {"slack", violation.slack}});
  }
  nlohmann::json j{
      {"law_name", law_name},
      {"trials", trials},
      {"tolerance", tolerance},
      {"max_slack", max_slack},
      {"violations", v},
  };
  if (!notes.empty()) j["notes"] = notes;
  return j;
}

}  // namespace og
