#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "slocc/numerics.hpp"
#include "slocc/states.hpp"

namespace slocc {

struct IloTriple {
  CMatrix f1, f2, f3;
  std::uint64_t seed = 0;
  double condition_bound = 0.0;
};

// Each factor has i.i.d. complex standard normal entries ((N + iN)/sqrt 2)
// from std::mt19937_64(seed) and is redrawn until its condition number is at
// most condition_bound (1000 draws per factor, then NumericalError). A bound of
// exactly 1 returns the unitary polar factor of the first draw instead.
IloTriple random_ilo(std::uint64_t seed, double condition_bound = 50.0);

// (f1 (x) f2 (x) f3) applied to the amplitude vector.
PureState apply_ilo_tripartite(const PureState& s, const IloTriple& t, const TolerancePolicy& tol = {});

// Sampled rank statistics of a span of 3x3 matrices. Ranks use a 1e-8
// relative cutoff and grid_n must be at least 100. One generator: the single
// ray. Two: a grid_n x grid_n grid over (cos a, e^{ib} sin a). Three: grid_n^2
// Halton points over the analogous 4-angle chart. The lowest samples are then
// refined: Newton on the determinant along a line for rank-two drops,
// Nelder-Mead on (s2^2 + s3^2) / s1^2 for rank-one drops.
struct RankLocusSample {
  int min_rank = 3;
  int max_rank = 0;
  std::array<long, 4> histogram{};      // ranks seen on grid points
  std::vector<CVector> drop_locations;  // refined points with rank below max_rank (span coordinates)
};

RankLocusSample brute_force_rank_locus(const std::vector<CMatrix>& generators, int grid_n);

struct OrbitFixture {
  std::string canonical;  // CanonicalId text; P0P0P1 means default parameters
  std::uint64_t seed = 0;
  std::string expected_family;
};

std::vector<OrbitFixture> make_orbit_fixtures(int seeds_per_state);
std::string write_fixtures(const std::vector<OrbitFixture>& fixtures);
std::vector<OrbitFixture> read_fixtures_file(const std::string& path);

// Canonical state for a fixture id, filling default P0P0P1 parameters.
PureState fixture_state(const std::string& canonical);

}  // namespace slocc
