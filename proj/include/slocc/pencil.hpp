#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "slocc/numerics.hpp"
#include "slocc/polynomial.hpp"
#include "slocc/states.hpp"

namespace slocc {

// Right singular subspace of the 1|23 flattening. Each right singular vector
// w (length 9, index 3j+k) is reshaped to the 3x3 matrix M(j, k) = w(3j+k).
// Under (f1 (x) f2 (x) f3) the span moves by M -> conj(f2) M conj(f3)^T.
struct SingularSubspace {
  int dim = 0;
  std::vector<CMatrix> generators;  // orthonormal in the Frobenius inner product
  RVector singular;                 // all three singular values of the flattening
};

SingularSubspace right_subspace(const PureState& s, const TolerancePolicy& tol);

struct RayCount {
  bool infinite = false;
  int count = 0;
  static RayCount finite(int n) { return {false, n}; }
  static RayCount many() { return {true, 0}; }
  std::string to_string() const;
  bool operator==(const RayCount&) const = default;
};

struct RootClass {
  int multiplicity = 1;
  int rank = 2;     // rank of the span element at the root
  CMatrix element;  // that element, unit Frobenius norm
};

struct SignatureOptions {
  TolerancePolicy tol;
  int budget = 8;  // highest Macaulay degree tried before giving up on stabilization
  std::uint64_t seed = 0x51CC0ull;
};

// Basis-independent description of a span of 3x3 matrices, built from ranks,
// the rank-one locus (zeros of the 2x2 minors) and the determinant form.
struct SpanSignature {
  int dim = 0;
  int generic_rank = 0;
  int common_left_kernel = 0;   // dim {u : u^T M = 0 for all M in the span}
  int common_right_kernel = 0;  // dim {v : M v = 0 for all M in the span}
  ZeroLocus rank1_locus;        // unused when dim == 1
  RayCount rank1_rays;
  RayCount rank2_rays;
  std::vector<RootClass> det_roots;  // dim 2 with generic rank 3
  ZeroLocus det_singular;            // dim 3 with generic rank 3: singular scheme of det = 0
  bool hessian_zero = false;         // dim 3 with generic rank 3: Hessian covariants of det
  bool hessian_proportional = false;
  bool hessian_of_hessian_zero = false;
  bool low_confidence = false;
  // An element of rank <= 2 when the span has one (dim >= 2 and either
  // generic rank <= 2 or dim 2); empty otherwise.
  CMatrix low_rank_witness;

  int min_rank() const;
  // Canonical text form of every invariant (confidence flag excluded).
  std::string key() const;
  nlohmann::json to_json() const;
  bool operator==(const SpanSignature& o) const { return key() == o.key(); }
};

// Generators may be any basis of the span; they are orthonormalized first.
SpanSignature span_signature(const std::vector<CMatrix>& generators, const SignatureOptions& opts);
SpanSignature rank_profile_dim2(const CMatrix& m1, const CMatrix& m2, const SignatureOptions& opts = {});
SpanSignature rank_profile_dim3(const CMatrix& m1, const CMatrix& m2, const CMatrix& m3,
                                const SignatureOptions& opts = {});

struct ProductVector {
  CVector coefficients;  // in the caller's generator basis
  CVector phi, psi;      // element equals phi psi^T
  CMatrix matrix() const { return phi * psi.transpose(); }
};

struct ProductVectorSet {
  // True when the rank-one locus is finite and every ray is listed. For
  // positive-dimensional loci the list holds the points on one hyperplane section.
  bool exhaustive = true;
  std::vector<ProductVector> vectors;
};

ProductVectorSet product_vectors_in_span(const std::vector<CMatrix>& generators,
                                         const SignatureOptions& opts = {});

}  // namespace slocc
