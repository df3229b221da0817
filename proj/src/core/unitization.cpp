#include "core/unitization.hpp"

#include <cmath>

#include "core/gauges.hpp"
#include "core/sampling.hpp"

namespace og {

UnitizedElement make_unitized(LevelElement base, CMat scalar) {
  if (scalar.rows() != base.level || scalar.cols() != base.level) {
    fail(ErrorCode::Dimension, "make_unitized: scalar part must be level-by-level");
  }
  return UnitizedElement{std::move(base), std::move(scalar)};
}

bool gauge_u_feasible(const UnitizedElement& elem, double t, const SolverConfig& cfg) {
  if (!(t > 0.0)) return false;
  const int n = elem.base.level;
  const CMat x_t = t * CMat::Identity(n, n) - real_part(elem.scalar);
  const HermitianEig eig = hermitian_eig(x_t);
  if (eig.values.minCoeff() <= cfg.strict_pos_tol) return false;
  const RVec inv_sqrt = eig.values.cwiseSqrt().cwiseInverse();
  const CMat s = eig.vectors * inv_sqrt.asDiagonal() * eig.vectors.adjoint();
  return gauge_nu(elem_congruence(elem.base, s)) <= 1.0 + cfg.feas_tol;
}

double gauge_u(const UnitizedElement& elem, const SolverConfig& cfg) {
  const double re_top = lambda_max(real_part(elem.scalar));
  const double nu_a = gauge_nu(elem.base);
  double lo = std::max(re_top, 0.0);
  // Any t with t - lambda_max(Re X) >= nu(A) + 1 is feasible; keep hi above lo
  // even when Re X is very negative.
  double hi = std::max(lo, re_top + nu_a) + 1.0;
  while (hi - lo > cfg.bisect_tol) {
    const double mid = 0.5 * (lo + hi);
    if (gauge_u_feasible(elem, mid, cfg)) hi = mid;
    else lo = mid;
  }
  return hi;
}

namespace {

UnitizedElement sample_unitized(const OperatorSpace& space, int level, Rng& rng) {
  LevelElement base = sample_element(space, level, rng.next_u64(), SampleMode::Generic);
  CMat scalar = random_scalar(rng, level, level);
  return UnitizedElement{std::move(base), std::move(scalar)};
}

UnitizedElement u_scale(const UnitizedElement& e, complexd factor) {
  return UnitizedElement{elem_scale(e.base, factor), factor * e.scalar};
}

UnitizedElement u_add(const UnitizedElement& a, const UnitizedElement& b) {
  return UnitizedElement{elem_add(a.base, b.base), a.scalar + b.scalar};
}

UnitizedElement u_congruence(const UnitizedElement& e, const CMat& x) {
  return UnitizedElement{elem_congruence(e.base, x), congruence(x, e.scalar)};
}

UnitizedElement u_direct_sum(const UnitizedElement& a, const UnitizedElement& b) {
  return UnitizedElement{elem_direct_sum(a.base, b.base), direct_sum(a.scalar, b.scalar)};
}

/// gauge through the order-unit formula: the least t at which
/// t*(0,I) - (A,X) lies in the accretive cone of the unitization, i.e.
/// u(A, X - tI) vanishes.
double gauge_u_via_order_unit(const UnitizedElement& e, const SolverConfig& cfg) {
  const int n = e.base.level;
  const CMat eye = CMat::Identity(n, n);
  auto accretive_at = [&](double t) {
    const UnitizedElement shifted{e.base, e.scalar - t * eye};
    return gauge_u(shifted, cfg) <= 10.0 * cfg.bisect_tol;
  };
  double lo = 0.0;
  double hi = gauge_u(e, cfg) + 1.0;
  if (accretive_at(lo)) return 0.0;
  while (hi - lo > cfg.bisect_tol) {
    const double mid = 0.5 * (lo + hi);
    if (accretive_at(mid)) hi = mid;
    else lo = mid;
  }
  return hi;
}

}  // namespace

CheckReport check_unitization_laws(const OperatorSpace* space, long trials, uint64_t seed,
                                   double tol, const SolverConfig& cfg) {
  CheckReport report;
  report.law_name = "unitization";
  report.trials = trials;
  report.tolerance = tol;
  const int level_hi = std::min(2, cfg.level_cap);
  constexpr double kScales[] = {0.0, 0.5, 2.0};
  // the cross-formula runs a bisection of bisections; cap its share of work
  const long cross_every = std::max(1L, trials / 256);

  for (long t = 0; t < trials; ++t) {
    const uint64_t trial_seed = seed ^ (0x9e3779b97f4a7c15ULL * (static_cast<uint64_t>(t) + 1));
    Rng rng = Rng::fork(seed, static_cast<uint64_t>(t));
    const OperatorSpace sp = space ? *space : battery_space(rng.next_u64());

    const int n = rng.uniform_int(1, level_hi);
    const int m = rng.uniform_int(1, level_hi);
    const int klev = rng.uniform_int(1, 2);
    const UnitizedElement a = sample_unitized(sp, n, rng);
    const UnitizedElement b = sample_unitized(sp, m, rng);
    const double ua = gauge_u(a, cfg);
    const double ub = gauge_u(b, cfg);

    const CMat x = random_scalar(rng, n, klev);
    const double x_norm = spectral_norm(x);
    report.record(trial_seed, "congruence n=" + std::to_string(n) + " k=" + std::to_string(klev),
                  gauge_u(u_congruence(a, x), cfg) - x_norm * x_norm * ua);

    report.record(trial_seed, "direct-sum",
                  std::abs(gauge_u(u_direct_sum(a, b), cfg) - std::max(ua, ub)));

    if (n == m) {
      report.record(trial_seed, "subadditivity",
                    gauge_u(u_add(a, b), cfg) - ua - ub);
    }
    for (double scale : kScales) {
      report.record(trial_seed, "homogeneity t=" + std::to_string(scale),
                    std::abs(gauge_u(u_scale(a, scale), cfg) - scale * ua) / (1.0 + scale));
    }

    // embedding isometry u(A, 0) = nu(A)
    const UnitizedElement embedded{a.base, CMat::Zero(n, n)};
    report.record(trial_seed, "embedding", std::abs(gauge_u(embedded, cfg) - gauge_nu(a.base)));

    // the unit (0, I) has gauge one
    const UnitizedElement unit{zero_element(sp, n), CMat::Identity(n, n)};
    report.record(trial_seed, "unit-gauge", std::abs(gauge_u(unit, cfg) - 1.0));

    // order-unit cross-formula
    if (t % cross_every == 0) {
      report.record(trial_seed, "order-unit formula",
                    std::abs(gauge_u_via_order_unit(a, cfg) - ua));
    }

    // archimedean: past the gauge value, t*(0,I) - (A,X) is accretive
    const double t_arch = ua + std::max(tol, 100.0 * cfg.bisect_tol);
    const UnitizedElement shifted{a.base, a.scalar - t_arch * CMat::Identity(n, n)};
    report.record(trial_seed, "archimedean", gauge_u(shifted, cfg) - 10.0 * cfg.bisect_tol);

    // C-properness at level 1
    if (n == 1) {
      bool all_null = true;
      for (int q = 0; q < 4 && all_null; ++q) {
        const complexd rot = std::pow(complexd(0.0, 1.0), q);
        all_null = gauge_u(u_scale(a, rot), cfg) <= tol;
      }
      if (all_null) {
        report.record(trial_seed, "c-proper",
                      spectral_norm(a.base.realized) + max_abs(a.scalar) - 100.0 * tol);
      }
    }
  }
  return report;
}

}  // namespace og
