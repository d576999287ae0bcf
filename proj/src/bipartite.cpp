#include "slocc/bipartite.hpp"

#include <cmath>

namespace slocc {

void IloPair::validate(double rank_rel) const {
  for (const CMatrix* f : {&f1, &f2}) {
    require_finite(*f, "IloPair");
    if (f->rows() != 3 || f->cols() != 3) throw InvalidArgument("IloPair: operators must be 3x3");
    if (numerical_rank(*f, rank_rel) < 3) throw InvalidArgument("IloPair: singular operator");
  }
}

std::string BipartiteClass::label() const {
  static const char* names[] = {"Ψ₀", "Ψ₁", "Ψ₂"};
  return names[schmidt_rank - 1];
}

int schmidt_rank(const CMatrix& coefficients, const TolerancePolicy& tol) {
  if (coefficients.rows() != coefficients.cols())
    throw InvalidArgument("schmidt_rank: coefficient matrix must be square");
  return numerical_rank(coefficients, tol.rank_rel);
}

CMatrix coefficient_matrix(const PureState& s) {
  if (s.parties() != 2) throw InvalidArgument("coefficient_matrix: state is not bipartite");
  return flatten(s, 1).matrix;
}

PureState bipartite_canonical(int rank) {
  if (rank < 1 || rank > 3) throw InvalidArgument("bipartite_canonical: rank must be 1..3");
  CVector a = CVector::Zero(9);
  for (int k = 0; k < rank; ++k) a(4 * k) = 1.0;
  return PureState(2, a).normalized();
}

BipartiteClass classify_bipartite(const PureState& s, const TolerancePolicy& tol) {
  const int r = schmidt_rank(coefficient_matrix(s), tol);
  return {r, bipartite_canonical(r)};
}

BipartiteCanonicalization canonicalize_bipartite(const PureState& s, const TolerancePolicy& tol) {
  const SvdResult d = svd(coefficient_matrix(s));
  const int r = numerical_rank(d.singular, tol.rank_rel);
  CMatrix scale = CMatrix::Identity(3, 3);
  for (int k = 0; k < r; ++k) scale(k, k) = 1.0 / d.singular(k);
  IloPair ilo{scale * d.u.adjoint(), d.v.transpose()};
  return {{r, bipartite_canonical(r)}, ilo};
}

PureState apply_ilo_bipartite(const PureState& s, const IloPair& ilo, const TolerancePolicy& tol) {
  ilo.validate(tol.rank_rel);
  const CMatrix c = ilo.f1 * coefficient_matrix(s) * ilo.f2.transpose();
  return unflatten({1, c}, 2);
}

PureState spin_state_one() { return PureState::from_kets(2, {"00", "11"}).normalized(); }

PureState spin_state_two() { return PureState::from_kets(2, {"00", "11", "22"}).normalized(); }

PureState spin_state_three() {
  return PureState::from_kets(2, {"00", "22", "01", "10", "12", "21"}).normalized();
}

CMatrix spin_three_to_two_operator() {
  CMatrix f(3, 3);
  f << 1, 1, -1,
       1, -1, 1,
       -1, 1, 1;
  return f / std::sqrt(2.0);
}

}  // namespace slocc
