#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "slocc/numerics.hpp"

namespace slocc {

// Exponent vector; entries past num_vars stay zero.
using Exponent = std::array<int, 3>;

// Homogeneous polynomial in 1..3 variables with complex coefficients,
// stored densely in descending lexicographic monomial order.
class HomogeneousForm {
 public:
  HomogeneousForm(int num_vars, int degree);

  // sum_i coeffs(i) * x_i
  static HomogeneousForm linear(const CVector& coeffs);

  static int monomial_count(int num_vars, int degree);
  static int monomial_index(const Exponent& e, int num_vars, int degree);
  static std::vector<Exponent> monomials(int num_vars, int degree);

  int num_vars() const { return num_vars_; }
  int degree() const { return degree_; }

  const CVector& coefficients() const { return coeffs_; }
  Complex coefficient(const Exponent& e) const;
  void add_term(const Exponent& e, Complex c);

  Complex evaluate(const CVector& x) const;
  HomogeneousForm derivative(int var) const;
  double norm() const { return coeffs_.norm(); }

  HomogeneousForm& operator+=(const HomogeneousForm& o);
  HomogeneousForm& operator-=(const HomogeneousForm& o);
  HomogeneousForm& operator*=(Complex s);
  friend HomogeneousForm operator+(HomogeneousForm a, const HomogeneousForm& b) { return a += b; }
  friend HomogeneousForm operator-(HomogeneousForm a, const HomogeneousForm& b) { return a -= b; }
  friend HomogeneousForm operator*(HomogeneousForm a, Complex s) { return a *= s; }
  friend HomogeneousForm operator*(const HomogeneousForm& a, const HomogeneousForm& b);

 private:
  int num_vars_;
  int degree_;
  CVector coeffs_;
};

// Determinant of the matrix of second partial derivatives (2 or 3 variables).
HomogeneousForm hessian_determinant(const HomogeneousForm& f);

struct ProjectiveRoot {
  CVector point;  // unit vector (x, y), first non-negligible entry real positive
  int multiplicity = 1;
};

struct BinaryCubicRoots {
  bool identically_zero = false;
  std::vector<ProjectiveRoot> roots;  // multiplicities sum to 3 unless identically zero
};

// Roots of a binary cubic on P^1. The number of distinct roots comes from the
// rank of the Sylvester matrix of the two partial derivatives (cutoff
// tol.root_cluster); the three companion roots are then grouped into exactly
// that many clusters. The form is identically zero when every coefficient is
// below tol.rank_rel * input_scale.
BinaryCubicRoots cubic_form_roots(const HomogeneousForm& f, const TolerancePolicy& tol,
                                  double input_scale = 1.0);

// Zero locus of a homogeneous ideal, read off from the Hilbert function
// (nullity of the Macaulay matrix) at consecutive degrees.
struct ZeroLocus {
  enum class Kind { Empty, Points, Curve, Everything };
  Kind kind = Kind::Empty;
  int length = 0;          // Points: length of the zero-dimensional scheme
  int distinct = 0;        // Points: number of distinct points
  int curve_degree = 0;    // Curve: Hilbert polynomial is curve_degree * D + curve_constant
  int curve_constant = 0;
  bool stabilized = true;  // false when the degree budget ran out first
  std::vector<int> hilbert;
  int first_degree = 0;
};

struct LocusOptions {
  double rank_rel = 1e-9;
  double distinct_rel = 1e-8;
  int start_degree = 5;
  int max_degree = 8;
  std::uint64_t seed = 0x51CC0ull;
  bool count_distinct = true;
};

// Generators with coefficient norm <= 1e-10 are treated as zero; the rest
// are normalized before the Macaulay matrix is built.
ZeroLocus zero_locus(const std::vector<HomogeneousForm>& ideal, int num_vars,
                     const LocusOptions& opts);

// Distinct points of a zero-dimensional locus, as unit vectors. Returns an
// empty list when the locus is empty or not zero-dimensional.
std::vector<CVector> locus_points(const std::vector<HomogeneousForm>& ideal, int num_vars,
                                  const LocusOptions& opts);

}  // namespace slocc
