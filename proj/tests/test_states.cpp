#include <map>
#include <random>

#include "doctest.h"
#include "slocc/states.hpp"

using namespace slocc;

namespace {

PureState random_state(std::mt19937_64& rng, int parties) {
  std::normal_distribution<double> n;
  CVector a(PureState::dimension(parties));
  for (int i = 0; i < a.size(); ++i) a(i) = Complex(n(rng), n(rng));
  return PureState(parties, a);
}

// Eigenvalues of the reduced density matrix C C^H, counted above a relative cutoff.
int reduced_density_rank(const CMatrix& c) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(c * c.adjoint());
  const RVector ev = es.eigenvalues();
  const double top = ev.maxCoeff();
  int r = 0;
  for (int i = 0; i < ev.size(); ++i) r += ev(i) > 1e-16 * top;
  return r;
}

}  // namespace

TEST_CASE("state construction validates its input") {
  CHECK_THROWS_AS(PureState(4, CVector::Ones(81)), InvalidArgument);
  CHECK_THROWS_AS(PureState(3, CVector::Ones(26)), InvalidArgument);
  CHECK_THROWS_AS(PureState(2, CVector::Zero(9)), InvalidArgument);
  CHECK_THROWS_AS(PureState::from_kets(3, {"003"}), InvalidArgument);
  const PureState s = PureState::from_kets(3, {"000", "121"});
  CHECK(s.amplitude(1, 2, 1) == Complex(1.0));
  CHECK(s.amplitudes()(9 + 6 + 1) == Complex(1.0));
  CHECK(s.norm() == doctest::Approx(std::sqrt(2.0)));
  CHECK(s.normalized().norm() == doctest::Approx(1.0));
}

TEST_CASE("flatten examples") {
  Flattening f = flatten(PureState::from_kets(3, {"000"}), 1);
  CHECK(f.matrix.rows() == 3);
  CHECK(f.matrix.cols() == 9);
  CHECK(f.matrix(0, 0) == Complex(1.0));
  CHECK(f.matrix.norm() == doctest::Approx(1.0));

  f = flatten(PureState::from_kets(3, {"000", "011", "022"}), 1);
  for (int c = 0; c < 9; ++c) CHECK(f.matrix(0, c) == Complex(c % 4 == 0 ? 1.0 : 0.0));
  CHECK(f.matrix.bottomRows(2).norm() == 0.0);

  CHECK_THROWS_AS(flatten(PureState::from_kets(2, {"00"}), 3), InvalidArgument);
  CHECK_THROWS_AS(flatten(PureState::from_kets(3, {"000"}), 0), InvalidArgument);
}

TEST_CASE("flattening index layout matches an explicit permutation") {
  std::mt19937_64 rng(1);
  const PureState s = random_state(rng, 3);
  const CMatrix f1 = flatten(s, 1).matrix, f2 = flatten(s, 2).matrix, f3 = flatten(s, 3).matrix;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) {
        const Complex c = s.amplitudes()(9 * i + 3 * j + k);
        CHECK(f1(i, 3 * j + k) == c);
        CHECK(f2(j, 3 * i + k) == c);
        CHECK(f3(k, 3 * i + j) == c);
      }

  const PureState ghz = PureState::from_kets(3, {"000", "111", "222"});
  const CMatrix g = flatten(ghz, 2).matrix;
  for (int j = 0; j < 3; ++j)
    for (int c = 0; c < 9; ++c) CHECK(g(j, c) == Complex(c == 4 * j ? 1.0 : 0.0));
}

TEST_CASE("flatten round-trips and preserves the norm") {
  std::mt19937_64 rng(2);
  for (int t = 0; t < 50; ++t) {
    const int parties = 2 + t % 2;
    const PureState s = random_state(rng, parties);
    for (int p = 1; p <= parties; ++p) {
      const Flattening f = flatten(s, p);
      CHECK(f.matrix.norm() == doctest::Approx(s.norm()).epsilon(1e-14));
      CHECK(unflatten(f, parties).amplitudes() == s.amplitudes());
    }
  }
}

TEST_CASE("flattening ranks agree with reduced density matrix ranks") {
  std::mt19937_64 rng(4);
  for (const auto& e : tripartite_catalog())
    for (int p = 1; p <= 3; ++p) {
      const CMatrix c = flatten(e.state, p).matrix;
      CHECK(numerical_rank(c, 1e-9) == reduced_density_rank(c));
    }
  for (int t = 0; t < 20; ++t) {
    const PureState s = random_state(rng, 3);
    for (int p = 1; p <= 3; ++p) CHECK(numerical_rank(flatten(s, p).matrix, 1e-9) == 3);
  }
}

TEST_CASE("catalog completeness") {
  CHECK(all_families().size() == 15);
  const auto cat = tripartite_catalog();
  CHECK(cat.size() == 43);
  std::map<int, int> by_dim;
  for (const auto& e : cat) ++by_dim[family_dimension(e.id.family)];
  CHECK(by_dim[1] == 3);
  CHECK(by_dim[2] == 3 + 4 + 4 + 1 + 3);
  CHECK(by_dim[3] == 6 + 1 + 3 + 3 + 6 + 3 + 3);
  CHECK(variant_count(Family::P1P1P1) == 6);
  for (const auto& e : cat) CHECK(e.state.norm() == doctest::Approx(1.0));
}

TEST_CASE("canonical states") {
  PureState s = canonical_state(CanonicalId::parse("P0P0:3"));
  CHECK(same_ray(s, PureState::from_kets(3, {"000", "111"}), 1e-14));
  CHECK(s.norm() == doctest::Approx(1.0));

  s = canonical_state(CanonicalId::parse("P1P1P1:1"));
  CHECK(same_ray(s, PureState::from_kets(3, {"000", "011", "101", "112", "202", "221"}), 1e-14));

  s = canonical_state(CanonicalId::parse("dim1-P0"));
  CHECK(same_ray(s, PureState::from_kets(3, {"000"}), 1e-14));

  s = canonical_state(CanonicalId::parse("P1P2:1"));
  CHECK(same_ray(s, PureState::from_kets(3, {"000", "011", "022", "101", "112"}), 1e-14));

  CHECK_THROWS_AS(canonical_state(CanonicalId::parse("P0P0P1")), InvalidArgument);
  CanonicalId with_params = CanonicalId::parse("P0P0");
  with_params.params = P0P0P1Parameters::defaults();
  CHECK_THROWS_AS(canonical_state(with_params), InvalidArgument);
  CHECK_THROWS_AS(CanonicalId::parse("bogus"), InvalidArgument);
  CHECK_THROWS_AS(CanonicalId::parse("P1P1:5"), InvalidArgument);
  CHECK_THROWS_AS(CanonicalId::parse("P1P1:x"), InvalidArgument);
}

TEST_CASE("P0P0P1 with explicit parameters") {
  CanonicalId id = CanonicalId::parse("P0P0P1");
  P0P0P1Parameters p = P0P0P1Parameters::defaults();
  id.params = p;
  const PureState s = canonical_state(id);
  // |000> + |011> + |1>(x)phi(x)varphi + |2>(x)chi(x)psi
  CVector expected = PureState::from_kets(3, {"000", "011"}).amplitudes();
  for (int j = 0; j < 3; ++j)
    for (int k = 0; k < 3; ++k) {
      expected(9 + 3 * j + k) += p.phi(j) * p.varphi(k);
      expected(18 + 3 * j + k) += p.chi(j) * p.psi(k);
    }
  CHECK(same_ray(s, PureState(3, expected), 1e-14));
  p.chi = CVector::Zero(3);
  id.params = p;
  CHECK_THROWS_AS(canonical_state(id), InvalidArgument);
}

TEST_CASE("family names round-trip") {
  for (Family f : all_families()) {
    CHECK(parse_family(family_name(f)) == f);
    for (int v = 1; v <= variant_count(f); ++v) {
      const CanonicalId id{f, v, std::nullopt};
      CHECK(CanonicalId::parse(id.to_string()).family == f);
      CHECK(CanonicalId::parse(id.to_string()).variant == v);
    }
  }
  CHECK_FALSE(parse_family("P3P3").has_value());
}

TEST_CASE("reading state files") {
  const PureState s = read_state(R"({"parties": 2, "amplitudes": [
      {"index": [0, 0], "re": 1, "im": 0}, {"index": [1, 1], "re": 1.0, "im": 0.0}]})");
  CHECK(s.parties() == 2);
  CHECK(s.amplitude(0, 0) == Complex(1.0));
  CHECK(s.amplitude(1, 1) == Complex(1.0));
  CHECK(s.norm() == doctest::Approx(std::sqrt(2.0)));

  std::string dense = R"({"parties": 3, "amplitudes": [)";
  for (int i = 0; i < 26; ++i) dense += std::string(i ? "," : "") + "[1, 0]";
  CHECK_THROWS_WITH_AS(read_state(dense + "]}"), doctest::Contains("wrong amplitude count"), StateFormatError);
  CHECK(read_state(dense + ",[0, 2]]}").amplitude(2, 2, 2) == Complex(0.0, 2.0));

  CHECK_THROWS_AS(read_state(""), StateFormatError);
  CHECK_THROWS_AS(read_state("{"), StateFormatError);
  CHECK_THROWS_AS(read_state(R"({"parties": 3})"), StateFormatError);
  CHECK_THROWS_AS(read_state(R"({"parties": 4, "amplitudes": []})"), StateFormatError);
  CHECK_THROWS_WITH_AS(read_state(R"({"parties": 2, "amplitudes": [
      {"index": [0, 0], "re": 1}, {"index": [0, 0], "re": 2}]})"),
                       doctest::Contains("duplicate"), StateFormatError);
  CHECK_THROWS_WITH_AS(read_state(R"({"parties": 2, "amplitudes": [{"index": [0, 0], "re": 0, "im": 0}]})"),
                       doctest::Contains("zero"), StateFormatError);
  CHECK_THROWS_AS(read_state(R"({"parties": 2, "amplitudes": [{"index": [0, 3], "re": 1}]})"),
                  StateFormatError);
  CHECK_THROWS_AS(read_state(R"({"parties": 2, "amplitudes": [{"index": [0], "re": 1}]})"),
                  StateFormatError);
  CHECK_THROWS_AS(read_state(R"({"parties": 2, "amplitudes": [{"index": [0, 0], "re": "1"}]})"),
                  StateFormatError);
}

TEST_CASE("write and read round-trip") {
  std::mt19937_64 rng(9);
  for (int t = 0; t < 20; ++t) {
    const PureState s = random_state(rng, 2 + t % 2);
    const std::string text = write_state(s);
    const PureState back = read_state(text);
    CHECK(back.parties() == s.parties());
    CHECK(back.amplitudes() == s.amplitudes());
    CHECK(write_state(back) == text);
  }
}
