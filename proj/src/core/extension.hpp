#pragma once

#include <optional>

#include "core/config.hpp"
#include "core/report.hpp"
#include "core/space.hpp"

namespace og {

/// A linear functional on the space, given by its value on each basis
/// element. Applied entrywise at higher levels.
struct Functional {
  CVec values;  // length = space dimension
};

/// phi applied entrywise to a level-n element: an n-by-n scalar matrix.
CMat apply_functional(const OperatorSpace& space, const Functional& f, const LevelElement& z);

/// Accretive elements map to accretive scalars. Exact on diagonal spaces at
/// level 1 (cone generators enumerated); sampled at levels up to `levels`.
CheckReport is_real_cp(const OperatorSpace& space, const Functional& f, int levels, long trials,
                       uint64_t seed, double tol);

/// ||Re phi(z)|| <= ||Re z|| on samples; on diagonal spaces at level 1 with
/// at most 3 effective real parameters the supremum of |Re phi| over the
/// h-unit ball is computed exactly by vertex enumeration (notes["exact_sup"]).
CheckReport is_real_cc(const OperatorSpace& space, const Functional& f, int levels, long trials,
                       uint64_t seed, double tol);

/// Exact supremum of |Re phi| over the h-unit ball at level 1, when the
/// vertex enumeration applies (diagonal space, <= 3 effective parameters).
std::optional<double> exact_contraction_sup(const OperatorSpace& space, const Functional& f);

/// sup{ Re phi(v) : v self-adjoint in the space, unit - v >= 0 entrywise }.
/// Any positive extension must send the unit at least this high; +infinity
/// signals an unbounded improving direction. Diagonal spaces, level 1, at
/// most 3 self-adjoint parameters.
double extension_lower_bound(const OperatorSpace& space, const Functional& f,
                             const CMat& ambient_unit);

}  // namespace og
