#pragma once

#include "core/config.hpp"
#include "core/report.hpp"
#include "core/space.hpp"

namespace og {

/// Element (A, X) of the unitization: a level-n element of the base space
/// paired with an n-by-n scalar matrix.
struct UnitizedElement {
  LevelElement base;
  CMat scalar;
};

UnitizedElement make_unitized(LevelElement base, CMat scalar);

/// The unitization gauge: inf{ t > 0 : tI - Re(X) strictly positive and
/// nu((tI - Re X)^{-1/2} A (tI - Re X)^{-1/2}) <= 1 }, found by monotone
/// bisection. Feasibility at t uses cfg.strict_pos_tol and cfg.feas_tol;
/// bisection stops at width cfg.bisect_tol.
double gauge_u(const UnitizedElement& elem, const SolverConfig& cfg);

/// Direct feasibility probe at a fixed t; exposed for the bisection-soundness
/// spot checks.
bool gauge_u_feasible(const UnitizedElement& elem, double t, const SolverConfig& cfg);

/// Matrix-compatibility and gauge axioms for the unitization gauge, plus the
/// order-unit cross-formula (the gauge computed as the threshold at which
/// t*(0,I) - (A,X) becomes accretive) and the archimedean property.
CheckReport check_unitization_laws(const OperatorSpace* space, long trials, uint64_t seed,
                                   double tol, const SolverConfig& cfg);

}  // namespace og
