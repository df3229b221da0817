#pragma once

#include <optional>
#include <vector>

#include "core/matrix.hpp"
#include "core/rng.hpp"

namespace og {

/**
 * A concrete operator space: the span of k linearly independent d-by-d
 * matrices inside the full matrix algebra, with an optional designated unit
 * given by its coefficients against the basis. Immutable after construction.
 */
struct OperatorSpace {
  int ambient_dim = 0;                       // d
  std::vector<CMat> basis;                   // k independent d-by-d matrices
  std::optional<CVec> unit_coeffs;           // length k when present
  bool diagonal = false;                     // every basis element is diagonal

  int dim() const { return static_cast<int>(basis.size()); }
  bool has_unit() const { return unit_coeffs.has_value(); }
  CMat unit_realized() const;
};

/// Validates independence (singular-value threshold 1e-10 relative) and the
/// unit (Hermitian within 1e-9, strictly positive), and detects the diagonal
/// representation automatically.
OperatorSpace build_space(std::vector<CMat> basis,
                          std::optional<CVec> unit_coeffs = std::nullopt);

/// The amplified basis of level-n elements, realized as (n*d)-by-(n*d)
/// matrices. Ordering is basis-major, then matrix positions row-major:
/// index = i*n*n + r*n + s places basis element i in block (r, s).
std::vector<CMat> amplify(const OperatorSpace& space, int level);

/**
 * An element of the level-n matrix space over the basis, carried both as a
 * coefficient vector against the amplified basis (see `amplify` for the
 * ordering) and as its realized ambient matrix.
 */
struct LevelElement {
  int level = 1;
  CVec coeffs;    // length n*n*k, basis-major
  CMat realized;  // (n*d)-by-(n*d)
};

LevelElement make_element(const OperatorSpace& space, int level, const CVec& coeffs);
LevelElement zero_element(const OperatorSpace& space, int level);

/// Least-squares coefficients of m against the amplified basis; accepted iff
/// the Frobenius residual is <= tol*(1 + ||m||_F).
CVec membership(const OperatorSpace& space, const CMat& m, int level, double tol);
LevelElement element_from_matrix(const OperatorSpace& space, const CMat& m, double tol);

/// True iff lambda_min(Re(realized)) >= -tol.
bool is_accretive(const OperatorSpace& space, const LevelElement& z, double tol);

/// The smallest self-adjoint space containing this one: the span of the basis
/// together with its adjoints, dependent vectors pruned. A designated unit is
/// carried over.
OperatorSpace star_closure(const OperatorSpace& space);

enum class SampleMode { Generic, SelfAdjoint, Accretive };

inline constexpr int kAccretiveSampleCap = 500;

/// Deterministic sampling given (seed); Accretive mode retries up to
/// kAccretiveSampleCap times and reports exhaustion for spaces whose cone is
/// essentially trivial.
LevelElement sample_element(const OperatorSpace& space, int level, uint64_t seed,
                            SampleMode mode);

// ---- element arithmetic (coefficients and realization move in lockstep) ----

LevelElement elem_add(const LevelElement& a, const LevelElement& b);
LevelElement elem_scale(const LevelElement& z, complexd factor);
/// X* z X for a scalar matrix X of shape n-by-k; lands at level k.
LevelElement elem_congruence(const LevelElement& z, const CMat& x);
/// Y* z X for scalar matrices of shape n-by-k.
LevelElement elem_sandwich(const LevelElement& z, const CMat& y, const CMat& x);
LevelElement elem_direct_sum(const LevelElement& a, const LevelElement& b);
/// z* resolved back to coefficients; requires the adjoint to be a member.
LevelElement elem_adjoint(const OperatorSpace& space, const LevelElement& z, double tol);
/// The level-2n corner element [0 2z; 0 0].
LevelElement elem_corner_double(const LevelElement& z);

// ---- level-1 *-structure, shared by the samplers and the diagonal oracles ----

/**
 * Real-linear structure of the space at level 1:
 *  - sa_basis: coefficient vectors of a real basis of {v in Z : v = v*};
 *  - star_basis: real basis of {v in Z : v* in Z} with star_adjoint[j] the
 *    coefficients of star_basis[j]*.
 * Self-adjoint elements at level n are assembled blockwise from these.
 */
struct StarStructure {
  std::vector<CVec> sa_basis;
  std::vector<CVec> star_basis;
  std::vector<CVec> star_adjoint;
};

StarStructure star_structure(const OperatorSpace& space);

}  // namespace og
