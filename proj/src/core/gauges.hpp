#pragma once

#include <string>

#include "core/config.hpp"
#include "core/report.hpp"
#include "core/space.hpp"

namespace og {

enum class GaugeKind { Nu, H, NuE, NuMax };

GaugeKind gauge_kind_from_name(const std::string& name);
std::string gauge_kind_name(GaugeKind kind);

/// ||(Re z)_+||: the norm of the positive part of the real part.
double gauge_nu(const LevelElement& z);

/// ||Re z|| = max(gauge_nu(z), gauge_nu(-z)).
double gauge_h(const LevelElement& z);

/// The norm recovered from the gauge through the level-2n corner element
/// [0 2z; 0 0]; coincides with the spectral norm of the realization.
double gauge_norm(const LevelElement& z);

/// Order-unit gauge against the designated unit, or the ambient identity when
/// none is designated: max(lambda_max(e^{-1/2} Re(z) e^{-1/2}), 0) blockwise.
double gauge_nu_e(const OperatorSpace& space, const LevelElement& z);

double eval_gauge(GaugeKind kind, const OperatorSpace& space, const LevelElement& z,
                  const SolverConfig& cfg);

// Law suites. A null space pointer runs each trial on a fresh battery space.
CheckReport check_matrix_compatible(GaugeKind kind, const OperatorSpace* space, long trials,
                                    uint64_t seed, double tol, const SolverConfig& cfg);
CheckReport check_gauge_axioms(GaugeKind kind, const OperatorSpace* space, long trials,
                               uint64_t seed, double tol, const SolverConfig& cfg);
CheckReport check_normality(const OperatorSpace* space, long trials, uint64_t seed, double tol,
                            const SolverConfig& cfg);
CheckReport check_linf_norm_laws(const OperatorSpace* space, long trials, uint64_t seed,
                                 double tol, const SolverConfig& cfg);
CheckReport check_c_proper(const OperatorSpace* space, long trials, uint64_t seed, double tol,
                           const SolverConfig& cfg);

}  // namespace og
