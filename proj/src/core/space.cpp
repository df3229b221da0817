#include "core/space.hpp"

#include <algorithm>
#include <string>

namespace og {

namespace {

CVec vec_c(const CMat& m) {
  CVec v(m.size());
  Eigen::Index idx = 0;
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) v(idx++) = m(r, c);
  return v;
}

RVec vec_r_of(const CVec& v) {
  RVec out(2 * v.size());
  out.head(v.size()) = v.real();
  out.tail(v.size()) = v.imag();
  return out;
}

RVec vec_r(const CMat& m) { return vec_r_of(vec_c(m)); }

bool is_diagonal_matrix(const CMat& m) {
  const double scale = 1.0 + max_abs(m);
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      if (r != c && std::abs(m(r, c)) > 1e-12 * scale) return false;
  return true;
}

/// Columns of the coordinate matrix are the vectorized basis elements.
CMat coordinate_matrix(const std::vector<CMat>& basis) {
  const Eigen::Index d2 = basis.front().size();
  CMat coords(d2, static_cast<Eigen::Index>(basis.size()));
  for (size_t i = 0; i < basis.size(); ++i) coords.col(i) = vec_c(basis[i]);
  return coords;
}

/// Real null-space basis at relative threshold 1e-10.
std::vector<RVec> real_null_space(const RMat& m) {
  Eigen::JacobiSVD<RMat> svd(m, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double top = sv.size() > 0 ? sv(0) : 0.0;
  const double thresh = 1e-10 * std::max(top, 1e-300);
  std::vector<RVec> out;
  for (Eigen::Index i = 0; i < svd.matrixV().cols(); ++i) {
    if (i >= sv.size() || sv(i) <= thresh) out.push_back(svd.matrixV().col(i));
  }
  return out;
}

CVec rho_to_coeffs(const RVec& rho) {
  const Eigen::Index k = rho.size() / 2;
  CVec c(k);
  for (Eigen::Index i = 0; i < k; ++i) c(i) = complexd(rho(i), rho(k + i));
  return c;
}

Eigen::Map<const Eigen::Matrix<complexd, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>
coeff_block(const CVec& coeffs, int level, int basis_index) {
  const int n = level;
  return Eigen::Map<const Eigen::Matrix<complexd, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
      coeffs.data() + static_cast<size_t>(basis_index) * n * n, n, n);
}

void write_coeff_block(CVec& coeffs, int level, int basis_index, const CMat& block) {
  const int n = level;
  for (int r = 0; r < n; ++r)
    for (int s = 0; s < n; ++s)
      coeffs(static_cast<Eigen::Index>(basis_index) * n * n + r * n + s) = block(r, s);
}

int infer_basis_count(const LevelElement& z) {
  return static_cast<int>(z.coeffs.size()) / (z.level * z.level);
}

}  // namespace

CMat OperatorSpace::unit_realized() const {
  if (!unit_coeffs) fail(ErrorCode::Unit, "space has no designated unit");
  CMat e = CMat::Zero(ambient_dim, ambient_dim);
  for (int i = 0; i < dim(); ++i) e += (*unit_coeffs)(i)*basis[i];
  return e;
}

OperatorSpace build_space(std::vector<CMat> basis, std::optional<CVec> unit_coeffs) {
  if (basis.empty()) fail(ErrorCode::InvalidArgument, "build_space: empty basis");
  const Eigen::Index d = basis.front().rows();
  for (const CMat& b : basis) {
    if (b.rows() != b.cols() || b.rows() != d) {
      fail(ErrorCode::Dimension, "build_space: basis matrices must be square of equal dimension");
    }
  }
  const CMat coords = coordinate_matrix(basis);
  Eigen::JacobiSVD<CMat> svd(coords);
  const auto& sv = svd.singularValues();
  const double top = sv(0);
  const double smallest = sv(sv.size() - 1);
  if (static_cast<Eigen::Index>(basis.size()) > d * d || smallest <= 1e-10 * top) {
    fail(ErrorCode::Rank, "build_space: dependent basis, smallest singular value " +
                              std::to_string(smallest) + " against largest " + std::to_string(top));
  }

  OperatorSpace space;
  space.ambient_dim = static_cast<int>(d);
  space.basis = std::move(basis);
  space.diagonal = std::all_of(space.basis.begin(), space.basis.end(), is_diagonal_matrix);

  if (unit_coeffs) {
    if (unit_coeffs->size() != space.dim()) {
      fail(ErrorCode::Unit, "build_space: unit coefficient count " +
                                std::to_string(unit_coeffs->size()) + " does not match basis size");
    }
    space.unit_coeffs = std::move(unit_coeffs);
    const CMat e = space.unit_realized();
    if (max_abs(e - e.adjoint()) > 1e-9 * (1.0 + max_abs(e))) {
      fail(ErrorCode::Unit, "build_space: designated unit is not Hermitian within 1e-9");
    }
    const double lmin = lambda_min(0.5 * (e + e.adjoint()));
    if (lmin <= 1e-9) {
      fail(ErrorCode::Unit, "build_space: designated unit has lambda_min " +
                                std::to_string(lmin) + ", not strictly positive");
    }
  }
  return space;
}

std::vector<CMat> amplify(const OperatorSpace& space, int level) {
  if (level < 1) fail(ErrorCode::InvalidArgument, "amplify: level must be >= 1");
  const int d = space.ambient_dim;
  const int n = level;
  std::vector<CMat> out;
  out.reserve(static_cast<size_t>(space.dim()) * n * n);
  for (int i = 0; i < space.dim(); ++i) {
    for (int r = 0; r < n; ++r) {
      for (int s = 0; s < n; ++s) {
        CMat m = CMat::Zero(n * d, n * d);
        m.block(r * d, s * d, d, d) = space.basis[i];
        out.push_back(std::move(m));
      }
    }
  }
  return out;
}

LevelElement make_element(const OperatorSpace& space, int level, const CVec& coeffs) {
  if (level < 1) fail(ErrorCode::InvalidArgument, "make_element: level must be >= 1");
  const int d = space.ambient_dim;
  const int n = level;
  if (coeffs.size() != static_cast<Eigen::Index>(space.dim()) * n * n) {
    fail(ErrorCode::Dimension, "make_element: expected " +
                                   std::to_string(space.dim() * n * n) + " coefficients, got " +
                                   std::to_string(coeffs.size()));
  }
  CMat realized = CMat::Zero(n * d, n * d);
  for (int i = 0; i < space.dim(); ++i) {
    const auto block = coeff_block(coeffs, n, i);
    for (int r = 0; r < n; ++r)
      for (int s = 0; s < n; ++s)
        if (block(r, s) != complexd(0.0, 0.0))
          realized.block(r * d, s * d, d, d) += block(r, s) * space.basis[i];
  }
  return LevelElement{level, coeffs, std::move(realized)};
}

LevelElement zero_element(const OperatorSpace& space, int level) {
  return make_element(space, level, CVec::Zero(static_cast<Eigen::Index>(space.dim()) * level * level));
}

CVec membership(const OperatorSpace& space, const CMat& m, int level, double tol) {
  const int d = space.ambient_dim;
  const int n = level;
  if (m.rows() != n * d || m.cols() != n * d) {
    fail(ErrorCode::Dimension, "membership: matrix is " + std::to_string(m.rows()) + "x" +
                                   std::to_string(m.cols()) + ", expected " +
                                   std::to_string(n * d) + " at level " + std::to_string(n));
  }
  // The least-squares problem decouples into one d*d system per block, all
  // sharing the coordinate matrix of the basis.
  const CMat coords = coordinate_matrix(space.basis);
  Eigen::CompleteOrthogonalDecomposition<CMat> cod(coords);
  CVec coeffs(static_cast<Eigen::Index>(space.dim()) * n * n);
  double residual_sq = 0.0;
  for (int r = 0; r < n; ++r) {
    for (int s = 0; s < n; ++s) {
      const CVec rhs = vec_c(m.block(r * d, s * d, d, d));
      const CVec c = cod.solve(rhs);
      residual_sq += (coords * c - rhs).squaredNorm();
      for (int i = 0; i < space.dim(); ++i)
        coeffs(static_cast<Eigen::Index>(i) * n * n + r * n + s) = c(i);
    }
  }
  const double residual = std::sqrt(residual_sq);
  if (residual > tol * (1.0 + m.norm())) {
    fail(ErrorCode::NotMember,
         "membership: residual " + std::to_string(residual) + " exceeds threshold");
  }
  return coeffs;
}

LevelElement element_from_matrix(const OperatorSpace& space, const CMat& m, double tol) {
  const int level = static_cast<int>(m.rows()) / space.ambient_dim;
  return make_element(space, level, membership(space, m, level, tol));
}

bool is_accretive(const OperatorSpace& space, const LevelElement& z, double tol) {
  (void)space;
  return lambda_min(real_part(z.realized)) >= -tol;
}

OperatorSpace star_closure(const OperatorSpace& space) {
  std::vector<CMat> kept;
  std::vector<CVec> ortho;  // orthonormal vectorizations of kept elements
  auto try_add = [&](const CMat& cand) {
    CVec v = vec_c(cand);
    const double orig = v.norm();
    if (orig <= 0.0) return;
    for (int pass = 0; pass < 2; ++pass)
      for (const CVec& q : ortho) v -= q.dot(v) * q;
    if (v.norm() > 1e-10 * orig) {
      ortho.push_back(v / v.norm());
      kept.push_back(cand);
    }
  };
  for (const CMat& b : space.basis) try_add(b);
  for (const CMat& b : space.basis) try_add(b.adjoint());

  std::optional<CVec> unit;
  if (space.has_unit()) {
    CVec padded = CVec::Zero(static_cast<Eigen::Index>(kept.size()));
    padded.head(space.dim()) = *space.unit_coeffs;
    unit = padded;
  }
  return build_space(std::move(kept), std::move(unit));
}

StarStructure star_structure(const OperatorSpace& space) {
  const int k = space.dim();
  const Eigen::Index d2 = static_cast<Eigen::Index>(space.ambient_dim) * space.ambient_dim;

  // rho in R^{2k} parameterizes v = sum (rho_i + i rho_{k+i}) b_i.
  RMat sa_map(2 * d2, 2 * k);
  for (int j = 0; j < k; ++j) {
    const CMat b = space.basis[j];
    sa_map.col(j) = vec_r(b - b.adjoint());
    sa_map.col(k + j) = vec_r(complexd(0, 1) * (b + b.adjoint()));
  }

  // Orthonormal basis of the coordinate span, for projecting adjoints.
  const CMat coords = coordinate_matrix(space.basis);
  Eigen::HouseholderQR<CMat> qr(coords);
  const CMat q_full = qr.householderQ();
  const CMat q = q_full.leftCols(k);
  auto perp = [&](const CVec& x) -> CVec { return x - q * (q.adjoint() * x); };

  RMat star_map(2 * d2, 2 * k);
  for (int j = 0; j < k; ++j) {
    const CMat b = space.basis[j];
    star_map.col(j) = vec_r_of(perp(vec_c(b.adjoint())));
    star_map.col(k + j) = vec_r_of(perp(vec_c(CMat(complexd(0, -1) * b.adjoint()))));
  }

  StarStructure out;
  for (const RVec& rho : real_null_space(sa_map)) out.sa_basis.push_back(rho_to_coeffs(rho));
  for (const RVec& rho : real_null_space(star_map)) {
    const CVec c = rho_to_coeffs(rho);
    CMat v = CMat::Zero(space.ambient_dim, space.ambient_dim);
    for (int i = 0; i < k; ++i) v += c(i) * space.basis[i];
    out.star_basis.push_back(c);
    out.star_adjoint.push_back(membership(space, v.adjoint(), 1, 1e-7));
  }
  return out;
}

namespace {

CVec sample_sa_coeffs(const OperatorSpace& space, const StarStructure& st, int level, Rng& rng) {
  const int n = level;
  const int k = space.dim();
  CVec coeffs = CVec::Zero(static_cast<Eigen::Index>(k) * n * n);
  auto add_at = [&](int r, int s, const CVec& c1) {
    for (int i = 0; i < k; ++i) coeffs(static_cast<Eigen::Index>(i) * n * n + r * n + s) += c1(i);
  };
  for (int r = 0; r < n; ++r) {
    for (const CVec& c1 : st.sa_basis) add_at(r, r, rng.gaussian() * c1);
  }
  for (int r = 0; r < n; ++r) {
    for (int s = r + 1; s < n; ++s) {
      for (size_t j = 0; j < st.star_basis.size(); ++j) {
        const double t = rng.gaussian();
        add_at(r, s, t * st.star_basis[j]);
        add_at(s, r, t * st.star_adjoint[j]);
      }
    }
  }
  return coeffs;
}

}  // namespace

LevelElement sample_element(const OperatorSpace& space, int level, uint64_t seed, SampleMode mode) {
  Rng rng(seed);
  const int n = level;
  const int k = space.dim();
  const Eigen::Index count = static_cast<Eigen::Index>(k) * n * n;

  if (mode == SampleMode::Generic) {
    CVec coeffs(count);
    for (Eigen::Index i = 0; i < count; ++i) coeffs(i) = complexd(rng.gaussian(), rng.gaussian());
    return make_element(space, level, coeffs);
  }

  const StarStructure st = star_structure(space);
  if (mode == SampleMode::SelfAdjoint) {
    return make_element(space, level, sample_sa_coeffs(space, st, level, rng));
  }

  // Accretive: a PSD-projected self-adjoint part plus a skew part i*w when the
  // space admits them, with plain rejection on generic samples interleaved.
  for (int attempt = 0; attempt < kAccretiveSampleCap; ++attempt) {
    LevelElement candidate = zero_element(space, level);
    if (attempt % 2 == 0) {
      const CVec w = sample_sa_coeffs(space, st, level, rng);
      const CVec s_raw = sample_sa_coeffs(space, st, level, rng);
      LevelElement cand = make_element(space, level, CVec(complexd(0, 1) * w));
      const LevelElement s_elem = make_element(space, level, s_raw);
      const CMat psd = positive_part(real_part(s_elem.realized));
      try {
        const CVec ps_coeffs = membership(space, psd, level, 1e-9);
        cand = elem_add(cand, make_element(space, level, ps_coeffs));
      } catch (const Error&) {
        // projection left the space; skew-only candidate stands
      }
      candidate = std::move(cand);
    } else {
      CVec coeffs(count);
      for (Eigen::Index i = 0; i < count; ++i) coeffs(i) = complexd(rng.gaussian(), rng.gaussian());
      candidate = make_element(space, level, coeffs);
      if (!is_accretive(space, candidate, 1e-12)) continue;
    }
    if (candidate.realized.norm() > 1e-8 && is_accretive(space, candidate, 1e-9)) {
      return candidate;
    }
  }
  fail(ErrorCode::SamplingExhausted,
       "sample_element: no nonzero accretive sample after " +
           std::to_string(kAccretiveSampleCap) + " attempts; the cone may be trivial");
}

LevelElement elem_add(const LevelElement& a, const LevelElement& b) {
  if (a.level != b.level || a.coeffs.size() != b.coeffs.size()) {
    fail(ErrorCode::Dimension, "elem_add: level or coefficient mismatch");
  }
  return LevelElement{a.level, a.coeffs + b.coeffs, a.realized + b.realized};
}

LevelElement elem_scale(const LevelElement& z, complexd factor) {
  return LevelElement{z.level, factor * z.coeffs, factor * z.realized};
}

LevelElement elem_congruence(const LevelElement& z, const CMat& x) {
  return elem_sandwich(z, x, x);
}

LevelElement elem_sandwich(const LevelElement& z, const CMat& y, const CMat& x) {
  const int n = z.level;
  if (x.rows() != n || y.rows() != n || x.cols() != y.cols()) {
    fail(ErrorCode::Dimension, "elem_sandwich: scalar matrices must be level-by-k");
  }
  const int k_level = static_cast<int>(x.cols());
  const int kb = infer_basis_count(z);
  const int d = static_cast<int>(z.realized.rows()) / n;
  CVec coeffs(static_cast<Eigen::Index>(kb) * k_level * k_level);
  for (int i = 0; i < kb; ++i) {
    const CMat block = coeff_block(z.coeffs, n, i);
    write_coeff_block(coeffs, k_level, i, y.adjoint() * block * x);
  }
  const CMat lift_y = kron(y, CMat::Identity(d, d));
  const CMat lift_x = kron(x, CMat::Identity(d, d));
  return LevelElement{k_level, std::move(coeffs), lift_y.adjoint() * z.realized * lift_x};
}

LevelElement elem_direct_sum(const LevelElement& a, const LevelElement& b) {
  const int kb = infer_basis_count(a);
  if (kb != infer_basis_count(b)) {
    fail(ErrorCode::Dimension, "elem_direct_sum: elements come from different spaces");
  }
  const int n = a.level, m = b.level, nm = n + m;
  CVec coeffs = CVec::Zero(static_cast<Eigen::Index>(kb) * nm * nm);
  for (int i = 0; i < kb; ++i) {
    CMat block = CMat::Zero(nm, nm);
    block.topLeftCorner(n, n) = coeff_block(a.coeffs, n, i);
    block.bottomRightCorner(m, m) = coeff_block(b.coeffs, m, i);
    write_coeff_block(coeffs, nm, i, block);
  }
  return LevelElement{nm, std::move(coeffs), direct_sum(a.realized, b.realized)};
}

LevelElement elem_adjoint(const OperatorSpace& space, const LevelElement& z, double tol) {
  return make_element(space, z.level, membership(space, z.realized.adjoint(), z.level, tol));
}

LevelElement elem_corner_double(const LevelElement& z) {
  const int n = z.level;
  const int kb = infer_basis_count(z);
  const Eigen::Index nd = z.realized.rows();
  CVec coeffs = CVec::Zero(static_cast<Eigen::Index>(kb) * 4 * n * n);
  for (int i = 0; i < kb; ++i) {
    CMat block = CMat::Zero(2 * n, 2 * n);
    block.topRightCorner(n, n) = 2.0 * coeff_block(z.coeffs, n, i);
    write_coeff_block(coeffs, 2 * n, i, block);
  }
  CMat realized = CMat::Zero(2 * nd, 2 * nd);
  realized.topRightCorner(nd, nd) = 2.0 * z.realized;
  return LevelElement{2 * n, std::move(coeffs), std::move(realized)};
}

}  // namespace og
