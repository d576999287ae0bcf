#include "slocc/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace slocc {

namespace {

constexpr double kPhaseFloor = 1e-12;

Complex unit_phase_of_first_entry(const CVector& col) {
  for (Eigen::Index i = 0; i < col.size(); ++i) {
    const double a = std::abs(col(i));
    if (a > kPhaseFloor) return col(i) / a;
  }
  return {1.0, 0.0};
}

}  // namespace

void TolerancePolicy::validate() const {
  auto check = [](double x, const char* name) {
    if (!(x > 0.0 && x < 1.0))
      throw InvalidArgument(std::string("tolerance ") + name + " must lie in (0, 1)");
  };
  check(rank_rel, "rank_rel");
  check(root_cluster, "root_cluster");
  check(covariant_rel, "covariant_rel");
  check(tol_unitary, "tol_unitary");
  check(tol_recon, "tol_recon");
}

void require_finite(const CMatrix& m, const char* what) {
  if (m.size() == 0) throw InvalidArgument(std::string(what) + ": empty matrix");
  if (!m.allFinite()) throw InvalidArgument(std::string(what) + ": non-finite entry");
}

SvdResult svd(const CMatrix& m) {
  require_finite(m, "svd");
  Eigen::JacobiSVD<CMatrix> solver(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  if (solver.info() != Eigen::Success)
    throw NumericalError("svd: decomposition did not converge");

  SvdResult out{solver.matrixU(), solver.singularValues(), solver.matrixV()};
  if (!out.u.allFinite() || !out.v.allFinite() || !out.singular.allFinite())
    throw NumericalError("svd: non-finite factors");

  const Eigen::Index k = out.singular.size();
  for (Eigen::Index j = 0; j < out.u.cols(); ++j) {
    const Complex ph = unit_phase_of_first_entry(out.u.col(j));
    out.u.col(j) *= std::conj(ph);
    if (j < k) out.v.col(j) *= std::conj(ph);
  }
  for (Eigen::Index j = k; j < out.v.cols(); ++j) {
    const Complex ph = unit_phase_of_first_entry(out.v.col(j));
    out.v.col(j) *= std::conj(ph);
  }
  return out;
}

int numerical_rank(const RVector& s, double rank_rel) {
  if (s.size() == 0 || !(s(0) > 0.0)) return 0;
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > rank_rel * s(0)) ++r;
  return r;
}

int numerical_rank(const CMatrix& m, double rank_rel) {
  require_finite(m, "numerical_rank");
  Eigen::JacobiSVD<CMatrix> solver(m);
  return numerical_rank(RVector(solver.singularValues()), rank_rel);
}

double condition_number(const CMatrix& m) {
  require_finite(m, "condition_number");
  Eigen::JacobiSVD<CMatrix> solver(m);
  const RVector& s = solver.singularValues();
  const double lo = s(s.size() - 1);
  if (lo <= 0.0) return std::numeric_limits<double>::infinity();
  return s(0) / lo;
}

CMatrix checked_inverse(const CMatrix& m, double rank_rel) {
  require_finite(m, "inverse");
  if (m.rows() != m.cols()) throw InvalidArgument("inverse: matrix is not square");
  if (numerical_rank(m, rank_rel) < m.rows())
    throw NumericalError("inverse: matrix is numerically singular");
  return m.inverse();
}

std::array<Complex, 3> eigenvalues_3x3(const CMatrix& m) {
  require_finite(m, "eigenvalues_3x3");
  if (m.rows() != 3 || m.cols() != 3) throw InvalidArgument("eigenvalues_3x3: need a 3x3 matrix");
  Eigen::ComplexEigenSolver<CMatrix> solver(m, false);
  if (solver.info() != Eigen::Success)
    throw NumericalError("eigenvalues_3x3: eigen solver did not converge");
  std::array<Complex, 3> ev{solver.eigenvalues()(0), solver.eigenvalues()(1),
                            solver.eigenvalues()(2)};
  std::sort(ev.begin(), ev.end(), [](const Complex& a, const Complex& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  return ev;
}

double chordal_distance(const CVector& a, const CVector& b) {
  const double na = a.norm(), nb = b.norm();
  if (na == 0.0 || nb == 0.0) throw InvalidArgument("chordal_distance: zero vector");
  const CVector ua = a / na, ub = b / nb;
  // Residual of ub after projecting onto ua; avoids the cancellation in sqrt(1 - c^2).
  return (ub - ua * ua.dot(ub)).norm();
}

CVector normalize_ray(const CVector& v) {
  const double n = v.norm();
  if (n == 0.0) throw InvalidArgument("normalize_ray: zero vector");
  CVector out = v / n;
  return out * std::conj(unit_phase_of_first_entry(out));
}

}  // namespace slocc
