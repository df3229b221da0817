#include "core/matrix.hpp"

#include <string>

namespace og {

namespace {

void require_square(const CMat& m, const char* op) {
  if (m.rows() != m.cols()) {
    fail(ErrorCode::Dimension, std::string(op) + ": matrix is " +
                                   std::to_string(m.rows()) + "x" +
                                   std::to_string(m.cols()) + ", expected square");
  }
}

}  // namespace

bool approx_equal(const CMat& a, const CMat& b, double tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  return max_abs(a - b) <= tol;
}

double max_abs(const CMat& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().maxCoeff();
}

CMat real_part(const CMat& m) {
  require_square(m, "real_part");
  return 0.5 * (m + m.adjoint());
}

CMat imag_part(const CMat& m) {
  require_square(m, "imag_part");
  return (m - m.adjoint()) / complexd(0.0, 2.0);
}

HermitianEig hermitian_eig(const CMat& h) {
  require_square(h, "hermitian_eig");
  const double asym = max_abs(h - h.adjoint());
  if (asym > 1e-8 * (1.0 + max_abs(h))) {
    fail(ErrorCode::NotHermitian,
         "hermitian_eig: asymmetry " + std::to_string(asym) + " exceeds 1e-8");
  }
  const CMat sym = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<CMat> solver(sym);
  if (solver.info() != Eigen::Success) {
    fail(ErrorCode::NotHermitian, "hermitian_eig: eigensolver failed to converge");
  }
  return HermitianEig{solver.eigenvalues(), solver.eigenvectors()};
}

double lambda_min(const CMat& h) { return hermitian_eig(h).values.minCoeff(); }

double lambda_max(const CMat& h) { return hermitian_eig(h).values.maxCoeff(); }

CMat positive_part(const CMat& h) {
  const HermitianEig eig = hermitian_eig(h);
  const RVec clipped = eig.values.cwiseMax(0.0);
  return eig.vectors * clipped.asDiagonal() * eig.vectors.adjoint();
}

double spectral_norm(const CMat& m) {
  if (m.size() == 0) return 0.0;
  const CMat gram = m.adjoint() * m;
  Eigen::SelfAdjointEigenSolver<CMat> solver(gram);
  const double top = solver.eigenvalues().maxCoeff();
  return std::sqrt(std::max(top, 0.0));
}

CMat project_psd(const CMat& h) { return positive_part(h); }

CMat project_spectral_ball(const CMat& h, const CMat& center, double radius) {
  if (h.rows() != center.rows() || h.cols() != center.cols()) {
    fail(ErrorCode::Dimension, "project_spectral_ball: dimension mismatch");
  }
  if (radius < 0.0) {
    fail(ErrorCode::InvalidArgument, "project_spectral_ball: negative radius");
  }
  const HermitianEig eig = hermitian_eig(h - center);
  const RVec clipped = eig.values.cwiseMax(-radius).cwiseMin(radius);
  return center + CMat(eig.vectors * clipped.asDiagonal() * eig.vectors.adjoint());
}

CMat direct_sum(const CMat& a, const CMat& b) {
  CMat out = CMat::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  out.topLeftCorner(a.rows(), a.cols()) = a;
  out.bottomRightCorner(b.rows(), b.cols()) = b;
  return out;
}

CMat congruence(const CMat& x, const CMat& a) {
  require_square(a, "congruence");
  if (x.rows() != a.rows()) {
    fail(ErrorCode::Dimension, "congruence: X is " + std::to_string(x.rows()) +
                                   "x" + std::to_string(x.cols()) +
                                   " against A of size " + std::to_string(a.rows()));
  }
  return x.adjoint() * a * x;
}

CMat kron(const CMat& a, const CMat& b) {
  CMat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

CMat inv_sqrt_pd(const CMat& h, double strict_tol) {
  const HermitianEig eig = hermitian_eig(h);
  if (eig.values.minCoeff() <= strict_tol) {
    fail(ErrorCode::InvalidArgument,
         "inv_sqrt_pd: smallest eigenvalue " + std::to_string(eig.values.minCoeff()) +
             " is not strictly positive");
  }
  const RVec inv_sqrt = eig.values.cwiseSqrt().cwiseInverse();
  return eig.vectors * inv_sqrt.asDiagonal() * eig.vectors.adjoint();
}

}  // namespace og
