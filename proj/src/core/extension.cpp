#include "core/extension.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "core/gauges.hpp"

namespace og {

CMat apply_functional(const OperatorSpace& space, const Functional& f, const LevelElement& z) {
  if (f.values.size() != space.dim()) {
    fail(ErrorCode::Dimension, "apply_functional: functional does not match the space");
  }
  const int n = z.level;
  if (z.coeffs.size() != static_cast<Eigen::Index>(space.dim()) * n * n) {
    fail(ErrorCode::Dimension, "apply_functional: element does not match the space");
  }
  CMat out = CMat::Zero(n, n);
  for (int i = 0; i < space.dim(); ++i)
    for (int r = 0; r < n; ++r)
      for (int s = 0; s < n; ++s)
        out(r, s) += f.values(i) * z.coeffs(static_cast<Eigen::Index>(i) * n * n + r * n + s);
  return out;
}

namespace {

constexpr double kRankTol = 1e-10;

/// Real parameterization of a diagonal space at level 1. rho in R^{2k} maps
/// to the element with coefficients rho_i + i rho_{k+i}; `re_map` gives the
/// realized diagonal real part, `im_map` the imaginary part, `g` the real
/// part of the functional.
struct DiagGeometry {
  int ambient_dim = 0;
  int k = 0;
  RMat re_map;     // d x 2k
  RMat im_map;     // d x 2k
  RVec g;          // 2k
  RMat row_basis;  // 2k x m, lift of effective coordinates
  RMat ker_basis;  // 2k x q, directions with vanishing realized real part
  RMat b;          // d x m = re_map * row_basis, full column rank
  RVec g_eff;      // m
  RVec g_ker;      // q
};

DiagGeometry diag_geometry(const OperatorSpace& space, const Functional* f) {
  if (!space.diagonal) fail(ErrorCode::Unsupported, "exact mode requires a diagonal space");
  const int d = space.ambient_dim;
  const int k = space.dim();
  DiagGeometry geo;
  geo.ambient_dim = d;
  geo.k = k;
  geo.re_map = RMat::Zero(d, 2 * k);
  geo.im_map = RMat::Zero(d, 2 * k);
  geo.g = RVec::Zero(2 * k);
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < d; ++j) {
      const complexd e = space.basis[i](j, j);
      geo.re_map(j, i) = e.real();
      geo.re_map(j, k + i) = -e.imag();
      geo.im_map(j, i) = e.imag();
      geo.im_map(j, k + i) = e.real();
    }
    if (f) {
      geo.g(i) = f->values(i).real();
      geo.g(k + i) = -f->values(i).imag();
    }
  }
  Eigen::JacobiSVD<RMat> svd(geo.re_map, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double top = sv.size() > 0 ? sv(0) : 0.0;
  int m = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > kRankTol * std::max(top, 1e-300)) ++m;
  geo.row_basis = svd.matrixV().leftCols(m);
  geo.ker_basis = svd.matrixV().rightCols(2 * k - m);
  geo.b = geo.re_map * geo.row_basis;
  geo.g_eff = geo.row_basis.transpose() * geo.g;
  geo.g_ker = geo.ker_basis.transpose() * geo.g;
  return geo;
}

CVec rho_to_coeffs(const RVec& rho) {
  const Eigen::Index k = rho.size() / 2;
  CVec c(k);
  for (Eigen::Index i = 0; i < k; ++i) c(i) = complexd(rho(i), rho(k + i));
  return c;
}

/// Extreme rays of { sigma : B sigma >= 0 } for B with full column rank
/// m <= 3: directions with m-1 independent active constraints.
std::vector<RVec> cone_extreme_rays(const RMat& b) {
  const int m = static_cast<int>(b.cols());
  const int rows = static_cast<int>(b.rows());
  std::vector<RVec> rays;
  auto feasible = [&](const RVec& sigma) {
    for (int j = 0; j < rows; ++j) {
      if (b.row(j).dot(sigma) < -1e-9 * (1.0 + b.row(j).norm())) return false;
    }
    return true;
  };
  auto push_unique = [&](const RVec& sigma) {
    for (const RVec& r : rays) {
      if ((r - sigma).norm() < 1e-8) return;
    }
    rays.push_back(sigma);
  };
  if (m == 1) {
    for (double sign : {1.0, -1.0}) {
      RVec sigma(1);
      sigma(0) = sign;
      if (feasible(sigma)) push_unique(sigma);
    }
    return rays;
  }
  std::vector<int> pick(m - 1, 0);
  auto process = [&](const std::vector<int>& subset) {
    RMat active(m - 1, m);
    for (int i = 0; i < m - 1; ++i) active.row(i) = b.row(subset[i]);
    Eigen::JacobiSVD<RMat> svd(active, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    int rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
      if (sv(i) > 1e-10 * std::max(sv(0), 1e-300)) ++rank;
    if (rank != m - 1) return;
    RVec dir = svd.matrixV().col(m - 1);
    dir.normalize();
    for (double sign : {1.0, -1.0}) {
      const RVec sigma = sign * dir;
      if (feasible(sigma)) push_unique(sigma);
    }
  };
  // all (m-1)-subsets of rows; m <= 3 keeps this a handful
  if (m == 2) {
    for (int j = 0; j < rows; ++j) process({j});
  } else {
    for (int j0 = 0; j0 < rows; ++j0)
      for (int j1 = j0 + 1; j1 < rows; ++j1) process({j0, j1});
  }
  return rays;
}

/// Vertices of { sigma : |B sigma|_inf <= 1 }; B full column rank, so the
/// polytope is bounded and symmetric.
std::vector<RVec> box_vertices(const RMat& b) {
  const int m = static_cast<int>(b.cols());
  const int rows = static_cast<int>(b.rows());
  std::vector<RVec> verts;
  auto feasible = [&](const RVec& sigma) {
    for (int j = 0; j < rows; ++j) {
      if (std::abs(b.row(j).dot(sigma)) > 1.0 + 1e-9) return false;
    }
    return true;
  };
  std::vector<int> subset(m);
  std::vector<int> signs(m);
  auto solve_and_keep = [&]() {
    RMat active(m, m);
    RVec rhs(m);
    for (int i = 0; i < m; ++i) {
      active.row(i) = b.row(subset[i]);
      rhs(i) = signs[i];
    }
    Eigen::FullPivLU<RMat> lu(active);
    if (!lu.isInvertible()) return;
    const RVec sigma = lu.solve(rhs);
    if (feasible(sigma)) verts.push_back(sigma);
  };
  std::vector<int> idx(m);
  auto rec_subsets = [&](auto&& self, int start, int depth) -> void {
    if (depth == m) {
      for (int pattern = 0; pattern < (1 << m); ++pattern) {
        for (int i = 0; i < m; ++i) {
          subset[i] = idx[i];
          signs[i] = (pattern >> i) & 1 ? 1 : -1;
        }
        solve_and_keep();
      }
      return;
    }
    for (int j = start; j < rows; ++j) {
      idx[depth] = j;
      self(self, j + 1, depth + 1);
    }
  };
  rec_subsets(rec_subsets, 0, 0);
  return verts;
}

/// Vertices of { sigma : B sigma <= u }, pointed since B has full column rank.
std::vector<RVec> polyhedron_vertices(const RMat& b, const RVec& u) {
  const int m = static_cast<int>(b.cols());
  const int rows = static_cast<int>(b.rows());
  std::vector<RVec> verts;
  auto feasible = [&](const RVec& sigma) {
    for (int j = 0; j < rows; ++j) {
      if (b.row(j).dot(sigma) > u(j) + 1e-9 * (1.0 + std::abs(u(j)))) return false;
    }
    return true;
  };
  std::vector<int> idx(m);
  auto rec = [&](auto&& self, int start, int depth) -> void {
    if (depth == m) {
      RMat active(m, m);
      RVec rhs(m);
      for (int i = 0; i < m; ++i) {
        active.row(i) = b.row(idx[i]);
        rhs(i) = u(idx[i]);
      }
      Eigen::FullPivLU<RMat> lu(active);
      if (!lu.isInvertible()) return;
      const RVec sigma = lu.solve(rhs);
      if (feasible(sigma)) verts.push_back(sigma);
      return;
    }
    for (int j = start; j < rows; ++j) {
      idx[depth] = j;
      self(self, j + 1, depth + 1);
    }
  };
  rec(rec, 0, 0);
  return verts;
}

}  // namespace

CheckReport is_real_cp(const OperatorSpace& space, const Functional& f, int levels, long trials,
                       uint64_t seed, double tol) {
  CheckReport report;
  report.law_name = "real-cp";
  report.tolerance = tol;
  double skipped = 0.0;

  if (space.diagonal) {
    const DiagGeometry geo = diag_geometry(space, &f);
    if (geo.b.cols() <= 3) {
      report.notes["exact_level1"] = 1.0;
      for (const RVec& ray : cone_extreme_rays(geo.b)) {
        const LevelElement p = make_element(space, 1, rho_to_coeffs(geo.row_basis * ray));
        const double value = apply_functional(space, f, p)(0, 0).real();
        report.trials += 1;
        report.record(seed, "cone generator", -value);
      }
      // the cone contains the lines of vanishing real part; positivity forces
      // the functional's real part to vanish there
      for (Eigen::Index j = 0; j < geo.ker_basis.cols(); ++j) {
        const LevelElement p = make_element(space, 1, rho_to_coeffs(geo.ker_basis.col(j)));
        const double value = apply_functional(space, f, p)(0, 0).real();
        report.trials += 1;
        report.record(seed, "cone line", std::abs(value));
      }
    }
  }

  for (int level = 1; level <= levels; ++level) {
    for (long t = 0; t < trials; ++t) {
      const uint64_t tseed = seed ^ (0x9e3779b97f4a7c15ULL * (static_cast<uint64_t>(t) + 7919 * level));
      report.trials += 1;
      try {
        const LevelElement z = sample_element(space, level, tseed, SampleMode::Accretive);
        const CMat image = apply_functional(space, f, z);
        report.record(tseed, "sampled level " + std::to_string(level),
                      -lambda_min(real_part(image)));
      } catch (const Error& e) {
        if (e.code() != ErrorCode::SamplingExhausted) throw;
        skipped += 1.0;
      }
    }
  }
  if (skipped > 0.0) report.notes["skipped"] = skipped;
  return report;
}

std::optional<double> exact_contraction_sup(const OperatorSpace& space, const Functional& f) {
  if (!space.diagonal) return std::nullopt;
  const DiagGeometry geo = diag_geometry(space, &f);
  if (geo.b.cols() > 3) return std::nullopt;
  // unbounded directions: the h-unit ball contains the whole kernel
  for (Eigen::Index j = 0; j < geo.g_ker.size(); ++j) {
    if (std::abs(geo.g_ker(j)) > 1e-10 * (1.0 + geo.g.norm())) {
      return std::numeric_limits<double>::infinity();
    }
  }
  double sup = 0.0;
  for (const RVec& vertex : box_vertices(geo.b)) {
    sup = std::max(sup, std::abs(geo.g_eff.dot(vertex)));
  }
  return sup;
}

CheckReport is_real_cc(const OperatorSpace& space, const Functional& f, int levels, long trials,
                       uint64_t seed, double tol) {
  CheckReport report;
  report.law_name = "real-cc";
  report.tolerance = tol;

  if (const std::optional<double> sup = exact_contraction_sup(space, f)) {
    if (std::isinf(*sup)) {
      report.notes["exact_sup_unbounded"] = 1.0;
      report.trials += 1;
      report.record(seed, "exact supremum unbounded", 1.0);
    } else {
      report.notes["exact_sup"] = *sup;
      report.trials += 1;
      report.record(seed, "exact supremum over h-unit ball", *sup - 1.0);
    }
  } else {
    report.notes["sampling_only"] = 1.0;
  }

  for (int level = 1; level <= levels; ++level) {
    for (long t = 0; t < trials; ++t) {
      const uint64_t tseed = seed ^ (0x9e3779b97f4a7c15ULL * (static_cast<uint64_t>(t) + 104729 * level));
      const LevelElement z = sample_element(space, level, tseed, SampleMode::Generic);
      const CMat image = apply_functional(space, f, z);
      report.trials += 1;
      report.record(tseed, "sampled level " + std::to_string(level),
                    spectral_norm(real_part(image)) - gauge_h(z));
    }
  }
  return report;
}

double extension_lower_bound(const OperatorSpace& space, const Functional& f,
                             const CMat& ambient_unit) {
  if (!space.diagonal) fail(ErrorCode::Unsupported, "extension_lower_bound: space must be diagonal");
  if (ambient_unit.rows() != space.ambient_dim || ambient_unit.cols() != space.ambient_dim) {
    fail(ErrorCode::Dimension, "extension_lower_bound: unit dimension mismatch");
  }
  const int d = space.ambient_dim;
  RVec u(d);
  for (int j = 0; j < d; ++j) {
    const complexd e = ambient_unit(j, j);
    if (std::abs(e.imag()) > 1e-12 || e.real() <= 0.0) {
      fail(ErrorCode::InvalidArgument, "extension_lower_bound: unit must be entrywise positive diagonal");
    }
    u(j) = e.real();
  }
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c)
      if (r != c && std::abs(ambient_unit(r, c)) > 1e-12) {
        fail(ErrorCode::InvalidArgument, "extension_lower_bound: unit must be diagonal");
      }

  const DiagGeometry geo = diag_geometry(space, &f);

  // self-adjoint parameterization: rho directions with vanishing imaginary part
  Eigen::JacobiSVD<RMat> svd(geo.im_map, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double top = sv.size() > 0 ? sv(0) : 0.0;
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > kRankTol * std::max(top, 1e-300)) ++rank;
  const RMat sa_lift = svd.matrixV().rightCols(2 * geo.k - rank);
  const int s = static_cast<int>(sa_lift.cols());
  if (s == 0) return 0.0;  // only v = 0 is self-adjoint
  if (s > 3) fail(ErrorCode::Unsupported, "extension_lower_bound: more than 3 self-adjoint parameters");

  const RMat vn = geo.re_map * sa_lift;  // d x s, full column rank
  const RVec g_sa = sa_lift.transpose() * geo.g;

  // improving recession directions make the bound infinite
  for (const RVec& ray : cone_extreme_rays(RMat(-vn))) {
    if (g_sa.dot(ray) > 1e-9 * (1.0 + g_sa.norm())) {
      return std::numeric_limits<double>::infinity();
    }
  }
  double bound = 0.0;
  for (const RVec& vertex : polyhedron_vertices(vn, u)) {
    bound = std::max(bound, g_sa.dot(vertex));
  }
  return bound;
}

}  // namespace og
