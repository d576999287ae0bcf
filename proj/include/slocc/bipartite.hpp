#pragma once

#include <string>

#include "slocc/numerics.hpp"
#include "slocc/states.hpp"

namespace slocc {

// Operators act on kets: (f1 (x) f2)|psi> has coefficient matrix f1 * C * f2^T.
// With C = U S V^H the transformed matrix is (f1 U) S (conj(f2) V)^H, so left
// singular vectors move by f1 and right singular vectors by conj(f2).
struct IloPair {
  CMatrix f1, f2;
  void validate(double rank_rel) const;  // both 3x3 and numerically invertible
};

struct BipartiteClass {
  int schmidt_rank = 0;
  PureState canonical;  // |00>, |00>+|11>, |00>+|11>+|22>, normalized
  std::string label() const;  // "Ψ₀", "Ψ₁" or "Ψ₂"
};

struct BipartiteCanonicalization {
  BipartiteClass cls;
  IloPair ilo;
};

// Numerical rank of a square coefficient matrix of any size.
int schmidt_rank(const CMatrix& coefficients, const TolerancePolicy& tol);

CMatrix coefficient_matrix(const PureState& s);  // 2-party states only
PureState bipartite_canonical(int schmidt_rank);

BipartiteClass classify_bipartite(const PureState& s, const TolerancePolicy& tol);

// f1 sends left singular vector u_k to e_k / s_k, f2 sends conj(v_k) to e_k;
// the full SVD supplies the orthonormal completion when the rank is below 3.
BipartiteCanonicalization canonicalize_bipartite(const PureState& s, const TolerancePolicy& tol);

PureState apply_ilo_bipartite(const PureState& s, const IloPair& ilo,
                              const TolerancePolicy& tol = {});

// Biqutrit states written in the spin basis |1>,|0>,|-1>, mapped to |0>,|1>,|2>.
PureState spin_state_one();    // (|00> + |11>) / sqrt 2
PureState spin_state_two();    // (|00> + |11> + |22>) / sqrt 3
PureState spin_state_three();  // (|00>+|22>+|01>+|10>+|12>+|21>) / sqrt 6

// Second-party operator taking spin_state_three to spin_state_two (first party identity).
CMatrix spin_three_to_two_operator();

}  // namespace slocc
