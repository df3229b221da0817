#pragma once

#include <optional>

#include "core/config.hpp"
#include "core/report.hpp"
#include "core/space.hpp"

namespace og {

struct GaugeResult {
  double value = 0.0;
  std::optional<LevelElement> witness;  // near-optimal accretive perturbation
  long iterations = 0;                  // total projection sweeps
  bool converged = false;
};

/// Largest inducing gauge: the infimum of ||Re(z + p)|| over accretive
/// perturbations p drawn from the space. Bisection on the target value with a
/// three-set alternating-projection feasibility oracle (subspace of realized
/// real parts, PSD cone, spectral ball). Throws SolverIndeterminate when a
/// feasibility probe ends undecided at the iteration cap.
GaugeResult nu_max(const OperatorSpace& space, const LevelElement& z, const SolverConfig& cfg);

/// Brute-force oracle for diagonal spaces at level 1: grid minimization of
/// the max-of-absolute-affine objective over the cone parameters, one coarse
/// pass plus two shrinking refinement passes. Independent of the projection
/// solver above.
double nu_max_diag_oracle(const OperatorSpace& space, const LevelElement& z, int grid);

/// nu <= nu_max and h(z) = max(nu_max(z), nu_max(-z)), on random samples.
CheckReport check_dominance(const OperatorSpace* space, long trials, uint64_t seed,
                            const SolverConfig& cfg);

/// Compares nu_max against the order-unit gauge. Asserts agreement when the
/// ambient identity lies in the space; otherwise reports the measured gap
/// without asserting (notes carry the per-basis-element gaps).
CheckReport check_uniqueness(const OperatorSpace* space, long trials, uint64_t seed,
                             const SolverConfig& cfg);

}  // namespace og
