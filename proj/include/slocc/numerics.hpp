#pragma once

#include <array>
#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace slocc {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Thresholds used throughout. All are relative to the largest singular
// value or to a unit-normalized object.
struct TolerancePolicy {
  double rank_rel = 1e-9;        // numerical rank cutoff
  double root_cluster = 1e-7;    // Sylvester rank cutoff when merging roots
  double covariant_rel = 1e-8;   // vanishing of normalized covariants / Hankel values
  double tol_unitary = 1e-11;
  double tol_recon = 1e-11;

  // Throws InvalidArgument unless every field lies in (0, 1).
  void validate() const;
};

struct SvdResult {
  CMatrix u;         // m x m unitary
  RVector singular;  // min(m, n), non-increasing
  CMatrix v;         // n x n unitary, a = u * diag(s) * v^H
};

void require_finite(const CMatrix& m, const char* what);

// Full SVD. The first entry of each left singular vector with modulus above
// 1e-12 is made real and positive; the matching right vector absorbs the
// same phase so the product is unchanged.
SvdResult svd(const CMatrix& m);

int numerical_rank(const RVector& singular, double rank_rel);
int numerical_rank(const CMatrix& m, double rank_rel);

double condition_number(const CMatrix& m);

// Throws NumericalError when the matrix is singular to within rank_rel.
CMatrix checked_inverse(const CMatrix& m, double rank_rel);

// Eigenvalues of a 3x3 matrix, sorted by real part then imaginary part.
std::array<Complex, 3> eigenvalues_3x3(const CMatrix& m);

// Chordal distance between two projective points of equal dimension.
double chordal_distance(const CVector& a, const CVector& b);

// Scale to unit norm and rotate so the first non-negligible entry is real
// positive.
CVector normalize_ray(const CVector& v);

}  // namespace slocc
