#include <algorithm>
#include <random>

#include "doctest.h"
#include "slocc/polynomial.hpp"

using namespace slocc;

namespace {

CVector vec(std::initializer_list<Complex> xs) {
  CVector v(static_cast<int>(xs.size()));
  int i = 0;
  for (Complex x : xs) v(i++) = x;
  return v;
}

HomogeneousForm lin(std::initializer_list<Complex> xs) { return HomogeneousForm::linear(vec(xs)); }

// det(x I + y diag(d)) as a product of linear factors.
HomogeneousForm diagonal_pencil(double d0, double d1, double d2) {
  return lin({1.0, d0}) * lin({1.0, d1}) * lin({1.0, d2});
}

// Multiplicity of the root nearest to `target`, or 0 when none is close.
int multiplicity_at(const BinaryCubicRoots& r, const CVector& target) {
  for (const auto& root : r.roots)
    if (chordal_distance(root.point, target) < 1e-6) return root.multiplicity;
  return 0;
}

}  // namespace

TEST_CASE("monomial bookkeeping") {
  CHECK(HomogeneousForm::monomial_count(2, 3) == 4);
  CHECK(HomogeneousForm::monomial_count(3, 3) == 10);
  const auto ms = HomogeneousForm::monomials(3, 3);
  for (int i = 0; i < static_cast<int>(ms.size()); ++i)
    CHECK(HomogeneousForm::monomial_index(ms[i], 3, 3) == i);
  CHECK(ms.front() == Exponent{3, 0, 0});
  CHECK(ms.back() == Exponent{0, 0, 3});
}

TEST_CASE("products evaluate pointwise") {
  const HomogeneousForm f = lin({1.0, 2.0, Complex(0, 1)}) * lin({3.0, -1.0, 0.5}) * lin({0.0, 1.0, 1.0});
  const CVector x = vec({0.3, Complex(-1.2, 0.4), 2.0});
  const Complex expected = (0.3 + 2.0 * x(1) + Complex(0, 1) * 2.0) * (0.9 - x(1) + 1.0) * (x(1) + 2.0);
  CHECK(std::abs(f.evaluate(x) - expected) < 1e-12);
  CHECK(std::abs(f.derivative(2).evaluate(x) -
                 (Complex(0, 1) * (0.9 - x(1) + 1.0) * (x(1) + 2.0) +
                  (0.3 + 2.0 * x(1) + Complex(0, 2)) * 0.5 * (x(1) + 2.0) +
                  (0.3 + 2.0 * x(1) + Complex(0, 2)) * (0.9 - x(1) + 1.0))) < 1e-12);
}

TEST_CASE("hessian of x^3 + y^3 + z^3") {
  HomogeneousForm f(3, 3);
  f.add_term({3, 0, 0}, 1.0);
  f.add_term({0, 3, 0}, 1.0);
  f.add_term({0, 0, 3}, 1.0);
  const HomogeneousForm h = hessian_determinant(f);
  CHECK(std::abs(h.coefficient({1, 1, 1}) - 216.0) < 1e-12);
  CHECK(h.norm() == doctest::Approx(216.0));
}

TEST_CASE("cubic roots: three simple roots") {
  const auto r = cubic_form_roots(diagonal_pencil(1, 2, 3), TolerancePolicy{});
  REQUIRE_FALSE(r.identically_zero);
  REQUIRE(r.roots.size() == 3);
  CHECK(multiplicity_at(r, vec({-1.0, 1.0})) == 1);
  CHECK(multiplicity_at(r, vec({-2.0, 1.0})) == 1);
  CHECK(multiplicity_at(r, vec({-3.0, 1.0})) == 1);
}

TEST_CASE("cubic roots: a double root") {
  const auto r = cubic_form_roots(diagonal_pencil(1, 1, 2), TolerancePolicy{});
  REQUIRE(r.roots.size() == 2);
  CHECK(multiplicity_at(r, vec({-1.0, 1.0})) == 2);
  CHECK(multiplicity_at(r, vec({-2.0, 1.0})) == 1);
}

TEST_CASE("cubic roots: triple root and roots at infinity") {
  auto r = cubic_form_roots(diagonal_pencil(5, 5, 5), TolerancePolicy{});
  REQUIRE(r.roots.size() == 1);
  CHECK(multiplicity_at(r, vec({-5.0, 1.0})) == 3);

  // y^2 (x - y): double root at (1:0)
  r = cubic_form_roots(lin({0.0, 1.0}) * lin({0.0, 1.0}) * lin({1.0, -1.0}), TolerancePolicy{});
  REQUIRE(r.roots.size() == 2);
  CHECK(multiplicity_at(r, vec({1.0, 0.0})) == 2);
  CHECK(multiplicity_at(r, vec({1.0, 1.0})) == 1);

  // y^3
  r = cubic_form_roots(lin({0.0, 1.0}) * lin({0.0, 1.0}) * lin({0.0, 1.0}), TolerancePolicy{});
  REQUIRE(r.roots.size() == 1);
  CHECK(multiplicity_at(r, vec({1.0, 0.0})) == 3);
}

TEST_CASE("cubic roots: identically zero") {
  CHECK(cubic_form_roots(HomogeneousForm(2, 3), TolerancePolicy{}).identically_zero);
  HomogeneousForm tiny(2, 3);
  tiny.add_term({2, 1, 0}, 1e-14);
  CHECK(cubic_form_roots(tiny, TolerancePolicy{}).identically_zero);
  CHECK_FALSE(cubic_form_roots(tiny, TolerancePolicy{}, 1e-10).identically_zero);
}

TEST_CASE("cubic roots: residuals on random forms") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> n;
  for (int t = 0; t < 1000; ++t) {
    HomogeneousForm f(2, 3);
    for (const auto& e : HomogeneousForm::monomials(2, 3)) f.add_term(e, Complex(n(rng), n(rng)));
    const auto r = cubic_form_roots(f, TolerancePolicy{});
    int total = 0;
    for (const auto& root : r.roots) {
      total += root.multiplicity;
      CHECK(std::abs(f.evaluate(root.point)) <= 1e-8 * f.coefficients().cwiseAbs().maxCoeff());
    }
    CHECK(total == 3);
  }
}

TEST_CASE("zero loci of monomial ideals") {
  const auto x = lin({1.0, 0.0, 0.0}), y = lin({0.0, 1.0, 0.0}), z = lin({0.0, 0.0, 1.0});
  const LocusOptions opts;

  auto l = zero_locus({x, y, z}, 3, opts);
  CHECK(l.kind == ZeroLocus::Kind::Empty);

  l = zero_locus({x, y}, 3, opts);
  CHECK(l.kind == ZeroLocus::Kind::Points);
  CHECK(l.length == 1);
  CHECK(l.distinct == 1);

  l = zero_locus({x * x, y}, 3, opts);
  CHECK(l.kind == ZeroLocus::Kind::Points);
  CHECK(l.length == 2);
  CHECK(l.distinct == 1);

  l = zero_locus({x * y, y * z, x * z}, 3, opts);
  CHECK(l.kind == ZeroLocus::Kind::Points);
  CHECK(l.length == 3);
  CHECK(l.distinct == 3);

  l = zero_locus({x * y}, 3, opts);
  CHECK(l.kind == ZeroLocus::Kind::Curve);
  CHECK(l.curve_degree == 2);

  l = zero_locus({HomogeneousForm(3, 2)}, 3, opts);
  CHECK(l.kind == ZeroLocus::Kind::Everything);
}

TEST_CASE("locus points of the coordinate triangle") {
  const auto x = lin({1.0, 0.0, 0.0}), y = lin({0.0, 1.0, 0.0}), z = lin({0.0, 0.0, 1.0});
  const auto pts = locus_points({x * y, y * z, x * z}, 3, LocusOptions{});
  REQUIRE(pts.size() == 3);
  for (int axis = 0; axis < 3; ++axis) {
    const CVector e = CVector::Unit(3, axis);
    CHECK(std::count_if(pts.begin(), pts.end(), [&](const CVector& p) { return chordal_distance(p, e) < 1e-8; }) == 1);
  }
  CHECK(locus_points({x * y}, 3, LocusOptions{}).empty());
}
