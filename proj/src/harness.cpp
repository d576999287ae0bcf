#include "slocc/harness.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>

#include <Eigen/SVD>

#include "json.hpp"

namespace slocc {

namespace {

constexpr double kOracleRank = 1e-8;

CMatrix gaussian_matrix(std::mt19937_64& rng) {
  std::normal_distribution<double> nd;
  CMatrix g(3, 3);
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) {
      const double re = nd(rng);
      const double im = nd(rng);
      g(r, c) = Complex(re, im) / std::sqrt(2.0);
    }
  return g;
}

CMatrix draw_factor(std::mt19937_64& rng, double bound) {
  if (bound <= 1.0) {
    const CMatrix g = gaussian_matrix(rng);
    Eigen::JacobiSVD<CMatrix> d(g, Eigen::ComputeFullU | Eigen::ComputeFullV);
    return d.matrixU() * d.matrixV().adjoint();
  }
  for (int attempt = 0; attempt < 1000; ++attempt) {
    CMatrix g = gaussian_matrix(rng);
    if (condition_number(g) <= bound) return g;
  }
  throw NumericalError("random_ilo: no factor met the condition bound in 1000 draws");
}

// --- oracle helpers (own rank and determinant code; only the SVD is shared) ---

CMatrix element(const std::vector<CMatrix>& gens, const CVector& c) {
  CMatrix m = CMatrix::Zero(3, 3);
  for (std::size_t i = 0; i < gens.size(); ++i) m += c(static_cast<Eigen::Index>(i)) * gens[i];
  return m;
}

Eigen::Vector3d sigmas(const CMatrix& m) {
  Eigen::JacobiSVD<CMatrix> d(m);
  return d.singularValues();
}

int oracle_rank(const Eigen::Vector3d& s) {
  if (!(s(0) > 0.0)) return 0;
  int r = 0;
  for (int i = 0; i < 3; ++i)
    if (s(i) > kOracleRank * s(0)) ++r;
  return r;
}

Complex cofactor_det(const CMatrix& m) {
  return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) - m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
         m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
}

CMatrix adjugate(const CMatrix& m) {
  CMatrix a(3, 3);
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) {
      const int r0 = (c + 1) % 3, r1 = (c + 2) % 3, c0 = (r + 1) % 3, c1 = (r + 2) % 3;
      a(r, c) = m(r0, c0) * m(r1, c1) - m(r0, c1) * m(r1, c0);
    }
  return a;
}

// Newton on t -> det(P + tQ) starting at t = 0.
CVector det_newton(const std::vector<CMatrix>& gens, const CVector& p, const CVector& q) {
  const CMatrix a = element(gens, p), b = element(gens, q);
  Complex t = 0.0;
  for (int it = 0; it < 60; ++it) {
    const CMatrix m = a + t * b;
    const Complex f = cofactor_det(m);
    const Complex df = (adjugate(m) * b).trace();
    if (std::abs(df) == 0.0) break;
    const Complex step = f / df;
    t -= step;
    if (std::abs(step) < 1e-16 * (1.0 + std::abs(t))) break;
  }
  const CVector out = p + t * q;
  return out / out.norm();
}

struct Chart {
  int fixed = 0;
  int n = 1;
  CVector point(const std::vector<double>& x) const {
    CVector p(n);
    int k = 0;
    for (int i = 0; i < n; ++i) {
      if (i == fixed) {
        p(i) = 1.0;
      } else {
        p(i) = Complex(x[2 * k], x[2 * k + 1]);
        ++k;
      }
    }
    return p;
  }
  std::vector<double> coords(const CVector& p) const {
    std::vector<double> x;
    for (int i = 0; i < n; ++i) {
      if (i == fixed) continue;
      const Complex c = p(i) / p(fixed);
      x.push_back(c.real());
      x.push_back(c.imag());
    }
    return x;
  }
};

double rank_one_defect(const std::vector<CMatrix>& gens, const CVector& p) {
  const Eigen::Vector3d s = sigmas(element(gens, p));
  if (!(s(0) > 0.0)) return 1.0;
  return (s(1) * s(1) + s(2) * s(2)) / (s(0) * s(0));
}

// Plain Nelder-Mead with restarts.
std::vector<double> nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                                std::vector<double> x0, double step) {
  const std::size_t d = x0.size();
  for (int restart = 0; restart < 4; ++restart) {
    std::vector<std::vector<double>> simplex{x0};
    for (std::size_t i = 0; i < d; ++i) {
      auto x = x0;
      x[i] += step;
      simplex.push_back(x);
    }
    std::vector<double> fv;
    for (const auto& x : simplex) fv.push_back(f(x));
    for (int it = 0; it < 4000; ++it) {
      std::vector<std::size_t> order(d + 1);
      for (std::size_t i = 0; i <= d; ++i) order[i] = i;
      std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
      std::vector<std::vector<double>> s2;
      std::vector<double> f2;
      for (auto i : order) {
        s2.push_back(simplex[i]);
        f2.push_back(fv[i]);
      }
      simplex = s2;
      fv = f2;
      if (fv[0] < 1e-30) break;
      double size = 0.0;
      for (std::size_t i = 1; i <= d; ++i)
        for (std::size_t k = 0; k < d; ++k) size = std::max(size, std::abs(simplex[i][k] - simplex[0][k]));
      if (size < 1e-15) break;
      std::vector<double> centroid(d, 0.0);
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t k = 0; k < d; ++k) centroid[k] += simplex[i][k] / static_cast<double>(d);
      auto along = [&](double a) {
        std::vector<double> x(d);
        for (std::size_t k = 0; k < d; ++k) x[k] = centroid[k] + a * (simplex[d][k] - centroid[k]);
        return x;
      };
      const auto xr = along(-1.0);
      const double fr = f(xr);
      if (fr < fv[0]) {
        const auto xe = along(-2.0);
        const double fe = f(xe);
        if (fe < fr) {
          simplex[d] = xe;
          fv[d] = fe;
        } else {
          simplex[d] = xr;
          fv[d] = fr;
        }
      } else if (fr < fv[d - 1]) {
        simplex[d] = xr;
        fv[d] = fr;
      } else {
        const auto xc = fr < fv[d] ? along(-0.5) : along(0.5);
        const double fc = f(xc);
        if (fc < std::min(fr, fv[d])) {
          simplex[d] = xc;
          fv[d] = fc;
        } else {
          for (std::size_t i = 1; i <= d; ++i) {
            for (std::size_t k = 0; k < d; ++k) simplex[i][k] = simplex[0][k] + 0.5 * (simplex[i][k] - simplex[0][k]);
            fv[i] = f(simplex[i]);
          }
        }
      }
    }
    const auto best = std::min_element(fv.begin(), fv.end()) - fv.begin();
    x0 = simplex[static_cast<std::size_t>(best)];
    step *= 1e-3;
  }
  return x0;
}

struct Sample {
  CVector p;
  double r3 = 0.0;  // s3 / s1
  double r2 = 0.0;  // s2 / s1
};

double halton(std::uint64_t i, std::uint64_t base) {
  double f = 1.0, r = 0.0;
  while (i > 0) {
    f /= static_cast<double>(base);
    r += f * static_cast<double>(i % base);
    i /= base;
  }
  return r;
}

}  // namespace

IloTriple random_ilo(std::uint64_t seed, double condition_bound) {
  if (!(condition_bound >= 1.0)) throw InvalidArgument("random_ilo: condition bound must be >= 1");
  std::mt19937_64 rng(seed);
  IloTriple t;
  t.seed = seed;
  t.condition_bound = condition_bound;
  t.f1 = draw_factor(rng, condition_bound);
  t.f2 = draw_factor(rng, condition_bound);
  t.f3 = draw_factor(rng, condition_bound);
  return t;
}

PureState apply_ilo_tripartite(const PureState& s, const IloTriple& t, const TolerancePolicy& tol) {
  if (s.parties() != 3) throw InvalidArgument("apply_ilo_tripartite: state is not tripartite");
  for (const CMatrix* f : {&t.f1, &t.f2, &t.f3}) {
    require_finite(*f, "IloTriple");
    if (f->rows() != 3 || f->cols() != 3) throw InvalidArgument("IloTriple: factors must be 3x3");
    if (numerical_rank(*f, tol.rank_rel) < 3) throw InvalidArgument("IloTriple: singular factor");
  }
  const CVector& a = s.amplitudes();
  CVector out = CVector::Zero(27);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) {
        Complex acc = 0.0;
        for (int x = 0; x < 3; ++x)
          for (int y = 0; y < 3; ++y)
            for (int z = 0; z < 3; ++z) acc += t.f1(i, x) * t.f2(j, y) * t.f3(k, z) * a(9 * x + 3 * y + z);
        out(9 * i + 3 * j + k) = acc;
      }
  return PureState(3, out);
}

RankLocusSample brute_force_rank_locus(const std::vector<CMatrix>& gens, int grid_n) {
  if (gens.empty() || gens.size() > 3) throw InvalidArgument("brute_force_rank_locus: need 1..3 generators");
  if (grid_n < 100) throw InvalidArgument("brute_force_rank_locus: grid_n must be at least 100");
  const int n = static_cast<int>(gens.size());
  RankLocusSample out;

  std::vector<Sample> samples;
  auto record = [&](const CVector& p) {
    const Eigen::Vector3d s = sigmas(element(gens, p));
    const int r = oracle_rank(s);
    out.histogram[r] += 1;
    out.min_rank = std::min(out.min_rank, r);
    out.max_rank = std::max(out.max_rank, r);
    samples.push_back({p, s(0) > 0 ? s(2) / s(0) : 0.0, s(0) > 0 ? s(1) / s(0) : 0.0});
  };
  if (n == 1) {
    record(CVector::Ones(1));
  } else if (n == 2) {
    for (int a = 0; a < grid_n; ++a)
      for (int b = 0; b < grid_n; ++b) {
        const double th = 0.5 * std::numbers::pi * a / (grid_n - 1);
        const double ph = 2.0 * std::numbers::pi * b / grid_n;
        CVector p(2);
        p << std::cos(th), std::polar(std::sin(th), ph);
        record(p);
      }
  } else {
    const std::uint64_t total = static_cast<std::uint64_t>(grid_n) * static_cast<std::uint64_t>(grid_n);
    for (std::uint64_t i = 1; i <= total; ++i) {
      const double a = 0.5 * std::numbers::pi * halton(i, 2), b = 0.5 * std::numbers::pi * halton(i, 3);
      const double p1 = 2.0 * std::numbers::pi * halton(i, 5), p2 = 2.0 * std::numbers::pi * halton(i, 7);
      CVector p(3);
      p << std::cos(a), std::polar(std::sin(a) * std::cos(b), p1), std::polar(std::sin(a) * std::sin(b), p2);
      record(p);
    }
  }
  if (n == 1) {
    return out;
  }

  const int generic = out.max_rank;
  auto refine_candidates = [&](auto key) {
    std::vector<std::size_t> idx(samples.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    const std::size_t k = std::min<std::size_t>(6, idx.size());
    std::partial_sort(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(k), idx.end(),
                      [&](std::size_t a, std::size_t b) { return key(samples[a]) < key(samples[b]); });
    idx.resize(k);
    return idx;
  };
  auto note = [&](const CVector& p) {
    const int r = oracle_rank(sigmas(element(gens, p)));
    out.min_rank = std::min(out.min_rank, r);
    if (r < generic) out.drop_locations.push_back(p / p.norm());
  };

  // Rank-two drops: Newton on the determinant along a line through each candidate.
  if (generic == 3) {
    for (std::size_t i : refine_candidates([](const Sample& s) { return s.r3; })) {
      const CVector& p = samples[i].p;
      CVector q = CVector::Zero(n);
      Eigen::Index big = 0;
      p.cwiseAbs().maxCoeff(&big);
      q((big + 1) % n) = 1.0;
      note(det_newton(gens, p, q));
    }
  }
  // Rank-one drops: Nelder-Mead on the squared relative distance to rank one.
  for (std::size_t i : refine_candidates([](const Sample& s) { return s.r2; })) {
    const CVector& p = samples[i].p;
    Chart chart;
    chart.n = n;
    Eigen::Index big = 0;
    p.cwiseAbs().maxCoeff(&big);
    chart.fixed = static_cast<int>(big);
    const auto f = [&](const std::vector<double>& x) { return rank_one_defect(gens, chart.point(x)); };
    note(chart.point(nelder_mead(f, chart.coords(p), 0.05)));
  }
  return out;
}

std::vector<OrbitFixture> make_orbit_fixtures(int seeds_per_state) {
  std::vector<OrbitFixture> out;
  std::uint64_t seed = 1;
  for (const auto& e : tripartite_catalog()) {
    for (int k = 0; k < seeds_per_state; ++k)
      out.push_back({e.id.to_string(), seed++, family_name(e.id.family)});
  }
  return out;
}

std::string write_fixtures(const std::vector<OrbitFixture>& fixtures) {
  nlohmann::json list = nlohmann::json::array();
  for (const auto& f : fixtures)
    list.push_back({{"canonical", f.canonical}, {"seed", f.seed}, {"expected_family", f.expected_family}});
  return list.dump(1) + "\n";
}

std::vector<OrbitFixture> read_fixtures_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open fixture file " + path);
  nlohmann::json list;
  try {
    list = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("fixture file: ") + e.what());
  }
  std::vector<OrbitFixture> out;
  try {
    for (const auto& e : list)
      out.push_back({e.at("canonical").get<std::string>(), e.at("seed").get<std::uint64_t>(),
                     e.at("expected_family").get<std::string>()});
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("fixture file: ") + e.what());
  }
  return out;
}

PureState fixture_state(const std::string& canonical) {
  CanonicalId id = CanonicalId::parse(canonical);
  if (id.family == Family::P0P0P1) id.params = P0P0P1Parameters::defaults();
  return canonical_state(id);
}

}  // namespace slocc
