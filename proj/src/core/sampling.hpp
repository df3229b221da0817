#pragma once

#include "core/rng.hpp"
#include "core/space.hpp"

namespace og {

/// Random complex n-by-k scalar matrix with standard gaussian entries.
CMat random_scalar(Rng& rng, int n, int k);

CMat random_hermitian(Rng& rng, int n);

/// Random strictly positive matrix (gaussian G -> G G* + eps I).
CMat random_positive(Rng& rng, int n, double floor = 0.25);

struct SpaceOptions {
  int ambient_dim = 3;
  int basis_size = 2;
  bool diagonal = false;
  bool designated_unit = false;  // basis[0] strictly positive, unit = e_0
};

OperatorSpace random_space(Rng& rng, const SpaceOptions& opts);

/// Deterministic mixed battery used by the checkers when no space is pinned:
/// cycles ambient dimensions 2..4, full and diagonal representations, with
/// and without designated units. Spaces with trivial accretive cones are
/// avoided so normality/dominance trials do not exhaust their samplers.
OperatorSpace battery_space(uint64_t seed);

}  // namespace og
