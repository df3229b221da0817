#pragma once

#include <optional>
#include <string>
#include <vector>

#include "core/config.hpp"
#include "core/extension.hpp"
#include "core/report.hpp"

namespace og {

/// A bundled regression instance: a space together with its distinguished
/// element and/or functional. Exposed by the CLI under fixed ids:
///   "5.10"  span{(-2,0,1)}, element x
///   "5.11"  span{(2,n,0),(0,n,1)}, element y-x
///   "6.5"   span{(-n,0,1)}, functional x -> n
///   "6.6"   span{(n,n,0),(0,n,1)}, functional (x,y) -> (0, n/2)
///   "6.7"   the "6.6" family swept over a list of sizes
struct BundledInstance {
  OperatorSpace space;
  std::optional<LevelElement> element;
  std::optional<Functional> functional;
};

BundledInstance bundled_instance(const std::string& id, int n);

/// Runs the regression checks for one bundled id over the given sizes.
/// Violations encode failed assertions (each measured against its own pinned
/// tolerance, so the report tolerance is zero); notes carry the measured
/// values.
CheckReport run_bundled_example(const std::string& id, const std::vector<int>& ns,
                                const SolverConfig& cfg);

}  // namespace og
