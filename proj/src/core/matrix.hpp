#pragma once

#include <Eigen/Dense>
#include <complex>

#include "core/error.hpp"

namespace og {

using complexd = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;
using RMat = Eigen::MatrixXd;

/// Entrywise comparison within an explicit tolerance. No hidden global
/// tolerance anywhere in this library: every comparison takes one.
bool approx_equal(const CMat& a, const CMat& b, double tol);

double max_abs(const CMat& m);

/// (M + M*)/2. Requires a square input.
CMat real_part(const CMat& m);

/// (M - M*)/(2i). Requires a square input.
CMat imag_part(const CMat& m);

struct HermitianEig {
  RVec values;   // ascending
  CMat vectors;  // unitary, columns match values
};

/// Spectral decomposition of a Hermitian matrix. The input is symmetrized as
/// (H+H*)/2 before decomposing; asymmetry beyond 1e-8 relative is rejected.
HermitianEig hermitian_eig(const CMat& h);

double lambda_min(const CMat& h);
double lambda_max(const CMat& h);

/// U diag(max(lambda,0)) U* for Hermitian input.
CMat positive_part(const CMat& h);

/// Largest singular value, computed as sqrt(lambda_max(M* M)).
double spectral_norm(const CMat& m);

/// Frobenius projection onto the cone of positive semidefinite matrices.
/// Numerically identical to positive_part; kept as a separate entry point
/// because its contract is the projection, not the functional calculus.
CMat project_psd(const CMat& h);

/// Frobenius projection onto { H Hermitian : ||H - center|| <= radius },
/// where ||.|| is the spectral norm.
CMat project_spectral_ball(const CMat& h, const CMat& center, double radius);

/// Block-diagonal assembly [A 0; 0 B].
CMat direct_sum(const CMat& a, const CMat& b);

/// X* A X with A n-by-n and X n-by-k.
CMat congruence(const CMat& x, const CMat& a);

CMat kron(const CMat& a, const CMat& b);

/// H^{-1/2} for Hermitian H with lambda_min > strict_tol; rejects anything
/// closer to singular than that.
CMat inv_sqrt_pd(const CMat& h, double strict_tol);

}  // namespace og
