#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

namespace og {

struct Violation {
  uint64_t seed = 0;
  std::string witness;
  double slack = 0.0;
};

/// Outcome of one law checked over a batch of trials. max_slack tracks every
/// measured slack, so violations are nonempty exactly when max_slack exceeds
/// the tolerance the run used.
struct CheckReport {
  std::string law_name;
  long trials = 0;
  double tolerance = 0.0;
  double max_slack = 0.0;
  std::vector<Violation> violations;
  std::map<std::string, double> notes;  // side observations (gaps, skips)

  bool clean() const { return violations.empty(); }

  void record(uint64_t seed, const std::string& witness, double slack) {
    if (slack > max_slack) max_slack = slack;
    if (slack > tolerance) violations.push_back({seed, witness, slack});
  }

  void merge(const CheckReport& other);

  nlohmann::json to_json() const;
};

}  // namespace og
