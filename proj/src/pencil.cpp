#include "slocc/pencil.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace slocc {

namespace {

using FormMatrix = std::vector<std::vector<HomogeneousForm>>;

CVector to_vec(const CMatrix& m) {
  CVector v(9);
  for (int j = 0; j < 3; ++j)
    for (int k = 0; k < 3; ++k) v(3 * j + k) = m(j, k);
  return v;
}

CMatrix to_mat(const CVector& v) {
  CMatrix m(3, 3);
  for (int j = 0; j < 3; ++j)
    for (int k = 0; k < 3; ++k) m(j, k) = v(3 * j + k);
  return m;
}

CMatrix combine(const std::vector<CMatrix>& gens, const CVector& c) {
  CMatrix m = CMatrix::Zero(3, 3);
  for (std::size_t i = 0; i < gens.size(); ++i) m += c(static_cast<Eigen::Index>(i)) * gens[i];
  return m;
}

void check_generators(const std::vector<CMatrix>& gens) {
  if (gens.empty() || gens.size() > 3) throw InvalidArgument("span: need 1..3 generators");
  for (const auto& g : gens) {
    require_finite(g, "span generator");
    if (g.rows() != 3 || g.cols() != 3) throw InvalidArgument("span: generators must be 3x3");
  }
}

// Orthonormal basis of the span; throws if the generators are dependent.
std::vector<CMatrix> orthonormalize(const std::vector<CMatrix>& gens, double rank_rel) {
  check_generators(gens);
  const int n = static_cast<int>(gens.size());
  CMatrix stack(9, n);
  for (int i = 0; i < n; ++i) stack.col(i) = to_vec(gens[i]);
  const SvdResult d = svd(stack);
  if (numerical_rank(d.singular, rank_rel) < n)
    throw InvalidArgument("span: generators are linearly dependent");
  std::vector<CMatrix> out;
  for (int i = 0; i < n; ++i) out.push_back(to_mat(d.u.col(i)));
  return out;
}

FormMatrix linear_matrix(const std::vector<CMatrix>& gens) {
  const int n = static_cast<int>(gens.size());
  FormMatrix l;
  for (int r = 0; r < 3; ++r) {
    std::vector<HomogeneousForm> row;
    for (int c = 0; c < 3; ++c) {
      CVector coeff(n);
      for (int i = 0; i < n; ++i) coeff(i) = gens[i](r, c);
      row.push_back(HomogeneousForm::linear(coeff));
    }
    l.push_back(std::move(row));
  }
  return l;
}

std::vector<HomogeneousForm> minors(const FormMatrix& l) {
  static constexpr int kPairs[3][2] = {{0, 1}, {0, 2}, {1, 2}};
  std::vector<HomogeneousForm> out;
  for (const auto& r : kPairs)
    for (const auto& c : kPairs)
      out.push_back(l[r[0]][c[0]] * l[r[1]][c[1]] - l[r[0]][c[1]] * l[r[1]][c[0]]);
  return out;
}

HomogeneousForm determinant(const FormMatrix& l) {
  return l[0][0] * (l[1][1] * l[2][2] - l[1][2] * l[2][1]) -
         l[0][1] * (l[1][0] * l[2][2] - l[1][2] * l[2][0]) +
         l[0][2] * (l[1][0] * l[2][1] - l[1][1] * l[2][0]);
}

CVector gaussian_vector(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> nd;
  CVector v(n);
  for (int i = 0; i < n; ++i) {
    const double re = nd(rng);
    const double im = nd(rng);
    v(i) = Complex(re, im);
  }
  return v;
}

LocusOptions locus_options(const SignatureOptions& opts, bool count_distinct) {
  LocusOptions lo;
  lo.rank_rel = opts.tol.rank_rel;
  lo.distinct_rel = opts.tol.covariant_rel;
  lo.start_degree = 5;
  lo.max_degree = opts.budget;
  lo.seed = opts.seed;
  lo.count_distinct = count_distinct;
  return lo;
}

void validate_options(const SignatureOptions& opts) {
  opts.tol.validate();
  if (opts.budget < 5) throw InvalidArgument("signature budget must be at least 5");
}

RayCount rays_of(const ZeroLocus& z) {
  switch (z.kind) {
    case ZeroLocus::Kind::Empty: return RayCount::finite(0);
    case ZeroLocus::Kind::Points: return RayCount::finite(z.distinct);
    default: return RayCount::many();
  }
}

std::string locus_text(const ZeroLocus& z) {
  switch (z.kind) {
    case ZeroLocus::Kind::Empty: return "empty";
    case ZeroLocus::Kind::Points:
      return "points(" + std::to_string(z.length) + "," + std::to_string(z.distinct) + ")";
    case ZeroLocus::Kind::Curve:
      return "curve(" + std::to_string(z.curve_degree) + "," + std::to_string(z.curve_constant) + ")";
    case ZeroLocus::Kind::Everything: return "all";
  }
  return "?";
}

nlohmann::json locus_json(const ZeroLocus& z) {
  nlohmann::json j;
  switch (z.kind) {
    case ZeroLocus::Kind::Empty: j["kind"] = "empty"; break;
    case ZeroLocus::Kind::Points:
      j["kind"] = "points";
      j["length"] = z.length;
      j["distinct"] = z.distinct;
      break;
    case ZeroLocus::Kind::Curve:
      j["kind"] = "curve";
      j["degree"] = z.curve_degree;
      j["constant"] = z.curve_constant;
      break;
    case ZeroLocus::Kind::Everything: j["kind"] = "all"; break;
  }
  return j;
}

bool negligible(const HomogeneousForm& f, double rel) { return f.norm() < rel; }

}  // namespace

SingularSubspace right_subspace(const PureState& s, const TolerancePolicy& tol) {
  if (s.parties() != 3) throw InvalidArgument("right_subspace: state is not tripartite");
  const SvdResult d = svd(flatten(s, 1).matrix);
  SingularSubspace out;
  out.dim = numerical_rank(d.singular, tol.rank_rel);
  out.singular = d.singular;
  for (int k = 0; k < out.dim; ++k) out.generators.push_back(to_mat(d.v.col(k)));
  return out;
}

std::string RayCount::to_string() const { return infinite ? "inf" : std::to_string(count); }

int SpanSignature::min_rank() const {
  if (rank1_rays.infinite || rank1_rays.count > 0) return 1;
  if (dim >= 2 && generic_rank == 3) return 2;
  return generic_rank;
}

std::string SpanSignature::key() const {
  std::ostringstream os;
  os << "dim=" << dim << " g=" << generic_rank << " kl=" << common_left_kernel
     << " kr=" << common_right_kernel;
  if (dim >= 2) os << " r1=" << locus_text(rank1_locus);
  os << " n1=" << rank1_rays.to_string() << " n2=" << rank2_rays.to_string();
  if (!det_roots.empty()) {
    os << " roots=";
    for (const auto& r : det_roots) os << r.multiplicity << "/" << r.rank << ";";
  }
  if (dim == 3 && generic_rank == 3) {
    os << " sing=" << locus_text(det_singular) << " hess=" << hessian_zero << hessian_proportional
       << hessian_of_hessian_zero;
  }
  return os.str();
}

nlohmann::json SpanSignature::to_json() const {
  nlohmann::json j;
  j["dim"] = dim;
  j["generic_rank"] = generic_rank;
  j["min_rank"] = min_rank();
  j["common_left_kernel"] = common_left_kernel;
  j["common_right_kernel"] = common_right_kernel;
  j["rank1_rays"] = rank1_rays.infinite ? nlohmann::json("infinite") : nlohmann::json(rank1_rays.count);
  j["rank2_rays"] = rank2_rays.infinite ? nlohmann::json("infinite") : nlohmann::json(rank2_rays.count);
  if (dim >= 2) j["rank1_locus"] = locus_json(rank1_locus);
  if (!det_roots.empty()) {
    nlohmann::json roots = nlohmann::json::array();
    for (const auto& r : det_roots) roots.push_back({{"multiplicity", r.multiplicity}, {"rank", r.rank}});
    j["det_roots"] = roots;
  }
  if (dim == 3 && generic_rank == 3) {
    j["det_singular_locus"] = locus_json(det_singular);
    j["hessian_zero"] = hessian_zero;
    j["hessian_proportional"] = hessian_proportional;
    j["hessian_of_hessian_zero"] = hessian_of_hessian_zero;
  }
  j["low_confidence"] = low_confidence;
  return j;
}

SpanSignature span_signature(const std::vector<CMatrix>& generators, const SignatureOptions& opts) {
  validate_options(opts);
  const TolerancePolicy& tol = opts.tol;
  const std::vector<CMatrix> gens = orthonormalize(generators, tol.rank_rel);
  const int n = static_cast<int>(gens.size());
  std::mt19937_64 rng(opts.seed);

  SpanSignature sig;
  sig.dim = n;
  for (int t = 0; t < 4; ++t)
    sig.generic_rank = std::max(sig.generic_rank, numerical_rank(combine(gens, gaussian_vector(rng, n)), tol.rank_rel));
  CMatrix vstack(3 * n, 3), hstack(3, 3 * n);
  for (int i = 0; i < n; ++i) {
    vstack.block(3 * i, 0, 3, 3) = gens[i];
    hstack.block(0, 3 * i, 3, 3) = gens[i];
  }
  sig.common_right_kernel = 3 - numerical_rank(vstack, tol.rank_rel);
  sig.common_left_kernel = 3 - numerical_rank(hstack, tol.rank_rel);

  if (n == 1) {
    sig.rank1_rays = RayCount::finite(sig.generic_rank == 1 ? 1 : 0);
    sig.rank2_rays = RayCount::finite(sig.generic_rank == 2 ? 1 : 0);
    return sig;
  }

  const FormMatrix l = linear_matrix(gens);
  sig.rank1_locus = zero_locus(minors(l), n, locus_options(opts, true));
  sig.rank1_rays = rays_of(sig.rank1_locus);
  bool stable = sig.rank1_locus.stabilized;

  if (sig.generic_rank < 3) {
    sig.low_rank_witness = gens[0];
    sig.rank2_rays = sig.generic_rank == 2 ? RayCount::many() : RayCount::finite(0);
    sig.low_confidence = !stable;
    return sig;
  }

  HomogeneousForm det = determinant(l);
  if (n == 2) {
    const BinaryCubicRoots roots = cubic_form_roots(det, tol);
    int rank_two = 0;
    for (const auto& r : roots.roots) {
      CMatrix m = combine(gens, r.point);
      m /= m.norm();
      const int rk = numerical_rank(m, tol.rank_rel);
      sig.det_roots.push_back({r.multiplicity, rk, m});
      if (rk == 2) ++rank_two;
    }
    std::sort(sig.det_roots.begin(), sig.det_roots.end(), [](const RootClass& a, const RootClass& b) {
      return a.multiplicity != b.multiplicity ? a.multiplicity > b.multiplicity : a.rank < b.rank;
    });
    int best = 4;
    for (const auto& r : sig.det_roots)
      if (r.rank < best) {
        best = r.rank;
        sig.low_rank_witness = r.element;
      }
    sig.rank2_rays = RayCount::finite(rank_two);
    sig.low_confidence = !stable;
    return sig;
  }

  det *= 1.0 / det.norm();
  sig.rank2_rays = RayCount::many();
  std::vector<HomogeneousForm> grad{det.derivative(0), det.derivative(1), det.derivative(2)};
  sig.det_singular = zero_locus(grad, 3, locus_options(opts, false));
  stable = stable && sig.det_singular.stabilized;

  const HomogeneousForm h = hessian_determinant(det);
  sig.hessian_zero = negligible(h, tol.covariant_rel);
  if (!sig.hessian_zero) {
    const HomogeneousForm hn = h * (1.0 / h.norm());
    CMatrix pair(det.coefficients().size(), 2);
    pair.col(0) = det.coefficients();
    pair.col(1) = hn.coefficients();
    Eigen::JacobiSVD<CMatrix> ps(pair);
    sig.hessian_proportional = ps.singularValues()(1) < tol.covariant_rel * ps.singularValues()(0);
    sig.hessian_of_hessian_zero = negligible(hessian_determinant(hn), tol.covariant_rel);
  }
  sig.low_confidence = !stable;
  return sig;
}

SpanSignature rank_profile_dim2(const CMatrix& m1, const CMatrix& m2, const SignatureOptions& opts) {
  return span_signature({m1, m2}, opts);
}

SpanSignature rank_profile_dim3(const CMatrix& m1, const CMatrix& m2, const CMatrix& m3,
                                const SignatureOptions& opts) {
  return span_signature({m1, m2, m3}, opts);
}

ProductVectorSet product_vectors_in_span(const std::vector<CMatrix>& generators,
                                         const SignatureOptions& opts) {
  validate_options(opts);
  const TolerancePolicy& tol = opts.tol;
  const std::vector<CMatrix> gens = orthonormalize(generators, tol.rank_rel);
  const int n = static_cast<int>(gens.size());

  ProductVectorSet out;
  std::vector<CVector> points;
  if (n == 1) {
    if (numerical_rank(gens[0], tol.rank_rel) == 1) points.push_back(CVector::Ones(1));
  } else {
    std::vector<HomogeneousForm> ideal = minors(linear_matrix(gens));
    const ZeroLocus z = zero_locus(ideal, n, locus_options(opts, true));
    if (z.kind == ZeroLocus::Kind::Curve || z.kind == ZeroLocus::Kind::Everything) {
      std::mt19937_64 rng(opts.seed ^ 0x9E3779B97F4A7C15ull);
      ideal.push_back(HomogeneousForm::linear(gaussian_vector(rng, n)));
      out.exhaustive = false;
    }
    points = locus_points(ideal, n, locus_options(opts, true));
  }

  CMatrix stack(9, static_cast<Eigen::Index>(generators.size()));
  for (std::size_t i = 0; i < generators.size(); ++i) stack.col(static_cast<Eigen::Index>(i)) = to_vec(generators[i]);
  Eigen::JacobiSVD<CMatrix> ls(stack, Eigen::ComputeThinU | Eigen::ComputeThinV);

  for (const auto& p : points) {
    const CMatrix m = combine(gens, p);
    const SvdResult d = svd(m);
    ProductVector pv;
    pv.phi = d.singular(0) * d.u.col(0);
    pv.psi = d.v.col(0).conjugate();
    pv.coefficients = ls.solve(to_vec(pv.matrix()));
    out.vectors.push_back(std::move(pv));
  }
  return out;
}

}  // namespace slocc
