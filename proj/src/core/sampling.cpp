#include "core/sampling.hpp"

namespace og {

CMat random_scalar(Rng& rng, int n, int k) {
  CMat m(n, k);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < k; ++c) m(r, c) = complexd(rng.gaussian(), rng.gaussian());
  return m;
}

CMat random_hermitian(Rng& rng, int n) {
  const CMat g = random_scalar(rng, n, n);
  return 0.5 * (g + g.adjoint());
}

CMat random_positive(Rng& rng, int n, double floor) {
  const CMat g = random_scalar(rng, n, n);
  return g * g.adjoint() / static_cast<double>(n) + floor * CMat::Identity(n, n);
}

OperatorSpace random_space(Rng& rng, const SpaceOptions& opts) {
  const int d = opts.ambient_dim;
  const int k = opts.basis_size;
  for (int attempt = 0; attempt < 10; ++attempt) {
    std::vector<CMat> basis;
    basis.reserve(k);
    for (int i = 0; i < k; ++i) {
      if (opts.diagonal) {
        CMat b = CMat::Zero(d, d);
        for (int j = 0; j < d; ++j) {
          b(j, j) = (i == 0 && opts.designated_unit) ? complexd(0.5 + rng.uniform(), 0.0)
                                                     : complexd(rng.gaussian(), 0.0);
        }
        basis.push_back(std::move(b));
      } else if (i == 0 && opts.designated_unit) {
        basis.push_back(random_positive(rng, d));
      } else {
        basis.push_back(random_scalar(rng, d, d));
      }
    }
    std::optional<CVec> unit;
    if (opts.designated_unit) {
      CVec e = CVec::Zero(k);
      e(0) = 1.0;
      unit = e;
    }
    try {
      return build_space(std::move(basis), std::move(unit));
    } catch (const Error&) {
      // dependent draw; sample again
    }
  }
  fail(ErrorCode::Rank, "random_space: could not draw an independent basis");
}

OperatorSpace battery_space(uint64_t seed) {
  Rng rng(seed ^ 0x5851f42d4c957f2dULL);
  rng.next_u64();
  SpaceOptions opts;
  opts.ambient_dim = rng.uniform_int(2, 4);
  opts.basis_size = rng.uniform_int(1, 3);
  const int variant = rng.uniform_int(0, 3);
  opts.diagonal = (variant == 1 || variant == 3);
  opts.designated_unit = (variant == 2 || variant == 3);
  if (!opts.diagonal && !opts.designated_unit) {
    // anchor the cone with a strictly positive basis element so accretive
    // sampling stays feasible
    Rng sub(rng.next_u64());
    OperatorSpace space = random_space(sub, opts);
    space.basis[0] = random_positive(sub, opts.ambient_dim);
    return build_space(std::move(space.basis), std::nullopt);
  }
  Rng sub(rng.next_u64());
  return random_space(sub, opts);
}

}  // namespace og
