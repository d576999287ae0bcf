#include "slocc/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace slocc {

namespace {

constexpr double kDropNorm = 1e-10;

int exponent_sum(const Exponent& e) { return e[0] + e[1] + e[2]; }

}  // namespace

HomogeneousForm::HomogeneousForm(int num_vars, int degree)
    : num_vars_(num_vars), degree_(degree) {
  if (num_vars < 1 || num_vars > 3) throw InvalidArgument("HomogeneousForm: 1..3 variables");
  if (degree < 0) throw InvalidArgument("HomogeneousForm: negative degree");
  coeffs_ = CVector::Zero(monomial_count(num_vars, degree));
}

HomogeneousForm HomogeneousForm::linear(const CVector& coeffs) {
  HomogeneousForm f(static_cast<int>(coeffs.size()), 1);
  for (int i = 0; i < coeffs.size(); ++i) {
    Exponent e{0, 0, 0};
    e[i] = 1;
    f.add_term(e, coeffs(i));
  }
  return f;
}

int HomogeneousForm::monomial_count(int n, int d) {
  switch (n) {
    case 1: return 1;
    case 2: return d + 1;
    default: return (d + 1) * (d + 2) / 2;
  }
}

int HomogeneousForm::monomial_index(const Exponent& e, int n, int d) {
  if (exponent_sum(e) != d) throw InvalidArgument("monomial_index: degree mismatch");
  for (int i = n; i < 3; ++i)
    if (e[i] != 0) throw InvalidArgument("monomial_index: exponent beyond num_vars");
  switch (n) {
    case 1: return 0;
    case 2: return d - e[0];
    default: return (d - e[0]) * (d - e[0] + 1) / 2 + (d - e[0] - e[1]);
  }
}

std::vector<Exponent> HomogeneousForm::monomials(int n, int d) {
  std::vector<Exponent> out;
  out.reserve(monomial_count(n, d));
  if (n == 1) {
    out.push_back({d, 0, 0});
  } else if (n == 2) {
    for (int a = d; a >= 0; --a) out.push_back({a, d - a, 0});
  } else {
    for (int a = d; a >= 0; --a)
      for (int b = d - a; b >= 0; --b) out.push_back({a, b, d - a - b});
  }
  return out;
}

Complex HomogeneousForm::coefficient(const Exponent& e) const {
  return coeffs_(monomial_index(e, num_vars_, degree_));
}

void HomogeneousForm::add_term(const Exponent& e, Complex c) {
  coeffs_(monomial_index(e, num_vars_, degree_)) += c;
}

Complex HomogeneousForm::evaluate(const CVector& x) const {
  if (x.size() != num_vars_) throw InvalidArgument("evaluate: wrong point dimension");
  Complex acc = 0.0;
  const auto mons = monomials(num_vars_, degree_);
  for (std::size_t k = 0; k < mons.size(); ++k) {
    if (coeffs_(k) == Complex(0.0)) continue;
    Complex term = coeffs_(k);
    for (int i = 0; i < num_vars_; ++i)
      for (int p = 0; p < mons[k][i]; ++p) term *= x(i);
    acc += term;
  }
  return acc;
}

HomogeneousForm HomogeneousForm::derivative(int var) const {
  if (var < 0 || var >= num_vars_) throw InvalidArgument("derivative: bad variable");
  HomogeneousForm out(num_vars_, std::max(0, degree_ - 1));
  if (degree_ == 0) return out;
  const auto mons = monomials(num_vars_, degree_);
  for (std::size_t k = 0; k < mons.size(); ++k) {
    if (mons[k][var] == 0) continue;
    Exponent e = mons[k];
    const double factor = e[var];
    e[var] -= 1;
    out.add_term(e, coeffs_(k) * factor);
  }
  return out;
}

HomogeneousForm& HomogeneousForm::operator+=(const HomogeneousForm& o) {
  if (o.num_vars_ != num_vars_ || o.degree_ != degree_)
    throw InvalidArgument("HomogeneousForm: adding forms of different shape");
  coeffs_ += o.coeffs_;
  return *this;
}

HomogeneousForm& HomogeneousForm::operator-=(const HomogeneousForm& o) {
  if (o.num_vars_ != num_vars_ || o.degree_ != degree_)
    throw InvalidArgument("HomogeneousForm: subtracting forms of different shape");
  coeffs_ -= o.coeffs_;
  return *this;
}

HomogeneousForm& HomogeneousForm::operator*=(Complex s) {
  coeffs_ *= s;
  return *this;
}

HomogeneousForm operator*(const HomogeneousForm& a, const HomogeneousForm& b) {
  if (a.num_vars() != b.num_vars()) throw InvalidArgument("HomogeneousForm: variable mismatch");
  const int n = a.num_vars();
  HomogeneousForm out(n, a.degree() + b.degree());
  const auto ma = HomogeneousForm::monomials(n, a.degree());
  const auto mb = HomogeneousForm::monomials(n, b.degree());
  for (std::size_t i = 0; i < ma.size(); ++i) {
    const Complex ca = a.coefficients()(i);
    if (ca == Complex(0.0)) continue;
    for (std::size_t j = 0; j < mb.size(); ++j) {
      const Complex cb = b.coefficients()(j);
      if (cb == Complex(0.0)) continue;
      out.add_term({ma[i][0] + mb[j][0], ma[i][1] + mb[j][1], ma[i][2] + mb[j][2]}, ca * cb);
    }
  }
  return out;
}

HomogeneousForm hessian_determinant(const HomogeneousForm& f) {
  const int n = f.num_vars();
  if (n < 2 || f.degree() < 2) throw InvalidArgument("hessian_determinant: need 2-3 vars, degree >= 2");
  std::vector<std::vector<HomogeneousForm>> h;
  for (int i = 0; i < n; ++i) {
    std::vector<HomogeneousForm> row;
    const HomogeneousForm fi = f.derivative(i);
    for (int j = 0; j < n; ++j) row.push_back(fi.derivative(j));
    h.push_back(std::move(row));
  }
  if (n == 2) return h[0][0] * h[1][1] - h[0][1] * h[1][0];
  return h[0][0] * (h[1][1] * h[2][2] - h[1][2] * h[2][1]) -
         h[0][1] * (h[1][0] * h[2][2] - h[1][2] * h[2][0]) +
         h[0][2] * (h[1][0] * h[2][1] - h[1][1] * h[2][0]);
}

// --- binary cubics ---------------------------------------------------------

BinaryCubicRoots cubic_form_roots(const HomogeneousForm& f, const TolerancePolicy& tol,
                                  double input_scale) {
  if (f.num_vars() != 2 || f.degree() != 3)
    throw InvalidArgument("cubic_form_roots: need a binary cubic");
  if (!f.coefficients().allFinite()) throw InvalidArgument("cubic_form_roots: non-finite coefficient");
  if (!(input_scale > 0.0)) throw InvalidArgument("cubic_form_roots: input scale must be positive");

  BinaryCubicRoots out;
  if (f.coefficients().cwiseAbs().maxCoeff() <= tol.rank_rel * input_scale) {
    out.identically_zero = true;
    return out;
  }
  const CVector c = f.coefficients() / f.norm();  // x^3, x^2 y, x y^2, y^3

  CMatrix syl = CMatrix::Zero(4, 4);
  const Complex fx[3] = {3.0 * c(0), 2.0 * c(1), c(2)};
  const Complex fy[3] = {c(1), 2.0 * c(2), 3.0 * c(3)};
  for (int k = 0; k < 3; ++k) {
    syl(0, k) = fx[k];
    syl(1, k + 1) = fx[k];
    syl(2, k) = fy[k];
    syl(3, k + 1) = fy[k];
  }
  const int distinct = std::clamp(numerical_rank(syl, tol.root_cluster) - 1, 1, 3);

  // Pick a rotated chart whose point at infinity is far from every root.
  const HomogeneousForm unit = f * (1.0 / f.norm());
  double best = -1.0, cs = 1.0, sn = 0.0;
  for (int k = 0; k < 7; ++k) {
    const double th = k * std::numbers::pi / 7.0;
    CVector u(2);
    u << std::cos(th), std::sin(th);
    const double lead = std::abs(unit.evaluate(u));
    if (lead > best) {
      best = lead;
      cs = std::cos(th);
      sn = std::sin(th);
    }
  }
  auto chart_point = [&](Complex t) {
    CVector p(2);
    p << cs * t - sn, sn * t + cs;
    return p;
  };
  // Coefficients of g(t) = f(chart_point(t)) from samples at the 4th roots of unity.
  const Complex w[4] = {1.0, Complex(0, 1), -1.0, Complex(0, -1)};
  Complex g[4];
  for (int k = 0; k < 4; ++k) g[k] = unit.evaluate(chart_point(w[k]));
  Complex coef[4];
  for (int j = 0; j < 4; ++j) {
    Complex acc = 0.0;
    for (int k = 0; k < 4; ++k) acc += g[k] * std::conj(w[(j * k) % 4]);
    coef[j] = acc / 4.0;
  }
  CMatrix comp = CMatrix::Zero(3, 3);
  comp(1, 0) = 1.0;
  comp(2, 1) = 1.0;
  for (int j = 0; j < 3; ++j) comp(j, 2) = -coef[j] / coef[3];
  Eigen::ComplexEigenSolver<CMatrix> es(comp, false);
  if (es.info() != Eigen::Success) throw NumericalError("cubic_form_roots: eigen solver failed");
  const Complex t[3] = {es.eigenvalues()(0), es.eigenvalues()(1), es.eigenvalues()(2)};

  std::vector<std::vector<int>> groups;
  if (distinct == 3) {
    groups = {{0}, {1}, {2}};
  } else if (distinct == 1) {
    groups = {{0, 1, 2}};
  } else {
    const std::array<std::array<int, 2>, 3> pairs{{{0, 1}, {0, 2}, {1, 2}}};
    int bestp = 0;
    double bestd = std::numeric_limits<double>::infinity();
    for (int k = 0; k < 3; ++k) {
      const double d = chordal_distance(chart_point(t[pairs[k][0]]), chart_point(t[pairs[k][1]]));
      if (d < bestd) {
        bestd = d;
        bestp = k;
      }
    }
    groups = {{pairs[bestp][0], pairs[bestp][1]}, {3 - pairs[bestp][0] - pairs[bestp][1]}};
  }
  for (const auto& grp : groups) {
    Complex mean = 0.0;
    for (int i : grp) mean += t[i];
    mean /= static_cast<double>(grp.size());
    out.roots.push_back({normalize_ray(chart_point(mean)), static_cast<int>(grp.size())});
  }
  std::sort(out.roots.begin(), out.roots.end(), [](const ProjectiveRoot& a, const ProjectiveRoot& b) {
    if (a.multiplicity != b.multiplicity) return a.multiplicity > b.multiplicity;
    if (a.point(0).real() != b.point(0).real()) return a.point(0).real() > b.point(0).real();
    if (a.point(1).real() != b.point(1).real()) return a.point(1).real() < b.point(1).real();
    return a.point(1).imag() < b.point(1).imag();
  });
  return out;
}

// --- Macaulay matrices -----------------------------------------------------

namespace {

std::vector<HomogeneousForm> prepared(const std::vector<HomogeneousForm>& ideal, int n) {
  std::vector<HomogeneousForm> out;
  for (const auto& p : ideal) {
    if (p.num_vars() != n) throw InvalidArgument("zero_locus: generator has wrong variable count");
    if (!p.coefficients().allFinite()) throw InvalidArgument("zero_locus: non-finite coefficient");
    const double nr = p.norm();
    if (nr > kDropNorm) out.push_back(p * (1.0 / nr));
  }
  return out;
}

CMatrix macaulay_matrix(const std::vector<HomogeneousForm>& polys, int n, int d) {
  const int cols = HomogeneousForm::monomial_count(n, d);
  int rows = 0;
  for (const auto& p : polys)
    if (p.degree() <= d) rows += HomogeneousForm::monomial_count(n, d - p.degree());
  CMatrix m = CMatrix::Zero(std::max(rows, 1), cols);
  int r = 0;
  for (const auto& p : polys) {
    if (p.degree() > d) continue;
    const auto pm = HomogeneousForm::monomials(n, p.degree());
    for (const auto& s : HomogeneousForm::monomials(n, d - p.degree())) {
      for (std::size_t k = 0; k < pm.size(); ++k) {
        const Complex c = p.coefficients()(k);
        if (c == Complex(0.0)) continue;
        m(r, HomogeneousForm::monomial_index({pm[k][0] + s[0], pm[k][1] + s[1], pm[k][2] + s[2]}, n, d)) += c;
      }
      ++r;
    }
  }
  return m;
}

struct NullSpace {
  int nullity = 0;
  CMatrix basis;  // columns span the kernel
};

NullSpace null_space(const std::vector<HomogeneousForm>& polys, int n, int d, double rank_rel,
                     bool want_basis) {
  const CMatrix m = macaulay_matrix(polys, n, d);
  NullSpace ns;
  if (!want_basis) {
    Eigen::JacobiSVD<CMatrix> solver(m);
    ns.nullity = static_cast<int>(m.cols()) - numerical_rank(RVector(solver.singularValues()), rank_rel);
    return ns;
  }
  Eigen::JacobiSVD<CMatrix> solver(m, Eigen::ComputeFullV);
  const int rank = numerical_rank(RVector(solver.singularValues()), rank_rel);
  ns.nullity = static_cast<int>(m.cols()) - rank;
  ns.basis = solver.matrixV().rightCols(ns.nullity);
  return ns;
}

// Rows indexed by degree d-1 monomials: (S Z)[m] = sum_i form_i Z[m * x_i].
CMatrix shift(const CMatrix& z, const CVector& form, int n, int d) {
  const auto lower = HomogeneousForm::monomials(n, d - 1);
  CMatrix out = CMatrix::Zero(static_cast<Eigen::Index>(lower.size()), z.cols());
  for (std::size_t r = 0; r < lower.size(); ++r) {
    for (int i = 0; i < n; ++i) {
      Exponent e = lower[r];
      e[i] += 1;
      out.row(r) += form(i) * z.row(HomogeneousForm::monomial_index(e, n, d));
    }
  }
  return out;
}

CVector random_form(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> nd;
  CVector v(n);
  for (int i = 0; i < n; ++i) {
    const double re = nd(rng);
    const double im = nd(rng);
    v(i) = Complex(re, im);
  }
  return v;
}

struct Analysis {
  ZeroLocus locus;
  std::vector<HomogeneousForm> polys;
  int final_degree = 0;
};

Analysis analyze(const std::vector<HomogeneousForm>& ideal, int n, const LocusOptions& opts) {
  if (n < 1 || n > 3) throw InvalidArgument("zero_locus: 1..3 variables");
  if (opts.start_degree < 1 || opts.max_degree < opts.start_degree)
    throw InvalidArgument("zero_locus: degree budget below the starting degree");
  Analysis a;
  a.polys = prepared(ideal, n);
  ZeroLocus& z = a.locus;
  z.first_degree = opts.start_degree;
  if (a.polys.empty()) {
    z.kind = ZeroLocus::Kind::Everything;
    return a;
  }
  if (n == 1) {
    z.kind = ZeroLocus::Kind::Empty;
    return a;
  }
  int d = opts.start_degree;
  for (; d <= opts.max_degree; ++d) {
    z.hilbert.push_back(null_space(a.polys, n, d, opts.rank_rel, false).nullity);
    const auto& h = z.hilbert;
    const std::size_t k = h.size();
    if (k >= 3 && h[k - 1] - h[k - 2] == h[k - 2] - h[k - 3]) break;
  }
  a.final_degree = std::min(d, opts.max_degree);
  const auto& h = z.hilbert;
  const std::size_t k = h.size();
  z.stabilized = k >= 3 && h[k - 1] - h[k - 2] == h[k - 2] - h[k - 3];
  const int last = h.back();
  const int slope = k >= 2 ? h[k - 1] - h[k - 2] : 0;
  if (slope > 0) {
    z.kind = ZeroLocus::Kind::Curve;
    z.curve_degree = slope;
    z.curve_constant = last - slope * a.final_degree;
  } else if (last == 0) {
    z.kind = ZeroLocus::Kind::Empty;
  } else {
    z.kind = ZeroLocus::Kind::Points;
    z.length = last;
  }
  return a;
}

// Rank of the Hankel matrix of power sums tr(K^k) of a multiplication
// operator K = B^+ (S_g Z) with B = S_h Z; equals the number of distinct points.
int hankel_distinct(const CMatrix& k_op, double distinct_rel) {
  const Eigen::Index l = k_op.rows();
  Eigen::ComplexEigenSolver<CMatrix> es(k_op, false);
  double scale = 1.0;
  for (Eigen::Index i = 0; i < l; ++i) scale = std::max(scale, std::abs(es.eigenvalues()(i)));
  const CMatrix k = k_op / scale;
  std::vector<Complex> power_sums(2 * l);
  CMatrix p = CMatrix::Identity(l, l);
  for (Eigen::Index i = 0; i < 2 * l; ++i) {
    power_sums[i] = p.trace();
    p = p * k;
  }
  CMatrix hankel(l, l);
  for (Eigen::Index i = 0; i < l; ++i)
    for (Eigen::Index j = 0; j < l; ++j) hankel(i, j) = power_sums[i + j];
  return numerical_rank(hankel, distinct_rel);
}

}  // namespace

ZeroLocus zero_locus(const std::vector<HomogeneousForm>& ideal, int n, const LocusOptions& opts) {
  Analysis a = analyze(ideal, n, opts);
  ZeroLocus& z = a.locus;
  if (z.kind != ZeroLocus::Kind::Points) return z;
  z.distinct = z.length;
  if (!opts.count_distinct || z.length == 1) return z;

  const int d = a.final_degree;
  const NullSpace ns = null_space(a.polys, n, d, opts.rank_rel, true);
  std::mt19937_64 rng(opts.seed);
  const CVector hf = random_form(rng, n), gf = random_form(rng, n);
  const CMatrix b = shift(ns.basis, hf, n, d);
  Eigen::JacobiSVD<CMatrix> bs(b, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const CMatrix k_op = bs.solve(shift(ns.basis, gf, n, d));
  z.distinct = hankel_distinct(k_op, opts.distinct_rel);
  return z;
}

std::vector<CVector> locus_points(const std::vector<HomogeneousForm>& ideal, int n,
                                  const LocusOptions& opts) {
  Analysis a = analyze(ideal, n, opts);
  if (a.locus.kind != ZeroLocus::Kind::Points) return {};
  const int d = a.final_degree;
  const NullSpace ns = null_space(a.polys, n, d, opts.rank_rel, true);
  std::mt19937_64 rng(opts.seed);
  const CVector hf = random_form(rng, n), gf = random_form(rng, n);
  const CMatrix b = shift(ns.basis, hf, n, d);
  Eigen::JacobiSVD<CMatrix> bs(b, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const int distinct = hankel_distinct(bs.solve(shift(ns.basis, gf, n, d)), opts.distinct_rel);

  std::vector<CMatrix> coord_ops;
  for (int i = 0; i < n; ++i) {
    CVector e = CVector::Zero(n);
    e(i) = 1.0;
    coord_ops.push_back(bs.solve(shift(ns.basis, e, n, d)));
  }
  const CVector mix = random_form(rng, n);
  CMatrix combined = CMatrix::Zero(ns.nullity, ns.nullity);
  for (int i = 0; i < n; ++i) combined += mix(i) * coord_ops[i];
  Eigen::ComplexEigenSolver<CMatrix> es(combined, true);
  if (es.info() != Eigen::Success) throw NumericalError("locus_points: eigen solver failed");

  // One coordinate vector per eigenvector; eigenvalues of the mixed operator
  // are merged until exactly `distinct` groups remain.
  const int l = ns.nullity;
  std::vector<CVector> coords;
  std::vector<std::vector<int>> groups;
  std::vector<Complex> centers;
  for (int j = 0; j < l; ++j) {
    const CVector x = es.eigenvectors().col(j);
    CVector p(n);
    for (int i = 0; i < n; ++i) p(i) = x.dot(coord_ops[i] * x) / x.squaredNorm();
    coords.push_back(p);
    groups.push_back({j});
    centers.push_back(es.eigenvalues()(j));
  }
  while (static_cast<int>(groups.size()) > std::max(distinct, 1)) {
    std::size_t bi = 0, bj = 1;
    double bd = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < groups.size(); ++i)
      for (std::size_t j = i + 1; j < groups.size(); ++j) {
        const double dist = std::abs(centers[i] - centers[j]);
        if (dist < bd) {
          bd = dist;
          bi = i;
          bj = j;
        }
      }
    const double wi = static_cast<double>(groups[bi].size()), wj = static_cast<double>(groups[bj].size());
    centers[bi] = (wi * centers[bi] + wj * centers[bj]) / (wi + wj);
    groups[bi].insert(groups[bi].end(), groups[bj].begin(), groups[bj].end());
    groups.erase(groups.begin() + static_cast<std::ptrdiff_t>(bj));
    centers.erase(centers.begin() + static_cast<std::ptrdiff_t>(bj));
  }
  std::vector<CVector> out;
  for (const auto& grp : groups) {
    CVector mean = CVector::Zero(n);
    for (int j : grp) mean += coords[j];
    mean /= static_cast<double>(grp.size());
    if (mean.norm() > 0.0) out.push_back(normalize_ray(mean));
  }
  return out;
}

}  // namespace slocc
