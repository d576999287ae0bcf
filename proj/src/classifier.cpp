#include "slocc/classifier.hpp"

#include <limits>

#include "slocc/bipartite.hpp"

namespace slocc {

std::string Separability::to_string() const {
  switch (kind) {
    case Kind::FullySeparable: return "fully-separable";
    case Kind::Biseparable: return "biseparable(party-" + std::to_string(cut) + ")";
    case Kind::Genuine: return "genuinely-tripartite";
  }
  return "?";
}

std::array<int, 3> rank_triple(const PureState& s, const TolerancePolicy& tol) {
  if (s.parties() != 3) throw InvalidArgument("rank_triple: state is not tripartite");
  std::array<int, 3> r{};
  for (int p = 1; p <= 3; ++p) r[p - 1] = numerical_rank(flatten(s, p).matrix, tol.rank_rel);
  return r;
}

Separability separability_of(const std::array<int, 3>& r) {
  if (r[0] == 1 && r[1] == 1 && r[2] == 1) return {Separability::Kind::FullySeparable, 0};
  for (int p = 0; p < 3; ++p)
    if (r[p] == 1) return {Separability::Kind::Biseparable, p + 1};
  return {Separability::Kind::Genuine, 0};
}

std::string fingerprint(const std::array<int, 3>& r, const SpanSignature& sig) {
  return "rt=" + std::to_string(r[0]) + std::to_string(r[1]) + std::to_string(r[2]) + " " + sig.key();
}

std::map<std::string, TableEntry> calibrate(const SignatureOptions& opts) {
  std::map<std::string, TableEntry> table;
  for (const auto& entry : tripartite_catalog()) {
    const SingularSubspace pi = right_subspace(entry.state, opts.tol);
    const SpanSignature sig = span_signature(pi.generators, opts);
    if (sig.low_confidence)
      throw CalibrationError("calibration: budget too small for " + entry.id.to_string());
    const std::string fp = fingerprint(rank_triple(entry.state, opts.tol), sig);
    auto it = table.find(fp);
    if (it == table.end()) {
      table.emplace(fp, TableEntry{entry.id.family, {entry.id.variant}});
    } else if (it->second.family != entry.id.family) {
      throw CalibrationError("calibration: " + family_name(it->second.family) + " and " +
                             entry.id.to_string() + " share fingerprint [" + fp + "]");
    } else {
      it->second.variants.insert(entry.id.variant);
    }
  }
  return table;
}

const std::map<std::string, TableEntry>& decision_table() {
  static const std::map<std::string, TableEntry> table = calibrate(SignatureOptions{});
  return table;
}

std::string SloccVerdict::label() const {
  if (!family) return "unclassified";
  if (variant && variant_count(*family) > 1) return family_name(*family) + ":" + std::to_string(*variant);
  return family_name(*family);
}

nlohmann::json SloccVerdict::to_json() const {
  nlohmann::json j;
  j["family"] = family ? nlohmann::json(family_name(*family)) : nlohmann::json(nullptr);
  j["variant"] = variant ? nlohmann::json(*variant) : nlohmann::json(nullptr);
  j["dim_pi"] = dim_pi;
  j["rank_triple"] = rank_triple;
  j["separability"] = separability.to_string();
  j["confidence"] = certified ? "certified" : "budget-limited";
  j["signature"] = signature.to_json();
  return j;
}

SloccVerdict classify_tripartite(const PureState& s, const SignatureOptions& opts) {
  if (s.parties() != 3) throw InvalidArgument("classify_tripartite: state is not tripartite");
  const auto& table = decision_table();
  SloccVerdict v;
  const SingularSubspace pi = right_subspace(s, opts.tol);
  v.dim_pi = pi.dim;
  v.rank_triple = rank_triple(s, opts.tol);
  v.separability = separability_of(v.rank_triple);
  v.signature = span_signature(pi.generators, opts);
  v.certified = !v.signature.low_confidence;
  const auto it = table.find(fingerprint(v.rank_triple, v.signature));
  if (it != table.end()) {
    v.family = it->second.family;
    if (it->second.variants.size() == 1) v.variant = *it->second.variants.begin();
  }
  return v;
}

ClassCount count_classes(int n) {
  if (n < 2) throw InvalidArgument("count_classes: n must be at least 2");
  if (n > 20) throw InvalidArgument("count_classes: n above 20 is not supported");
  auto binom = [](std::int64_t a, std::int64_t b) {
    std::int64_t r = 1;
    for (std::int64_t k = 1; k <= b; ++k) r = r * (a - b + k) / k;
    return r;
  };
  std::int64_t total = static_cast<std::int64_t>(n - 1) * (n - 1);
  for (std::int64_t i = 2; i <= n; ++i) {
    const std::int64_t t = i * (n - i);
    total += (1 + t) * binom(n, n - i) - t;
  }
  return {n, total};
}

std::string to_string(Equivalence e) {
  switch (e) {
    case Equivalence::SameClass: return "SameClass";
    case Equivalence::DifferentClass: return "DifferentClass";
    case Equivalence::Inconclusive: return "Inconclusive";
  }
  return "?";
}

PureState move_party_first(const PureState& s, int party) {
  if (s.parties() != 3) throw InvalidArgument("move_party_first: state is not tripartite");
  return unflatten({1, flatten(s, party).matrix}, 3);
}

Equivalence verify_equivalence(const PureState& s1, const PureState& s2, const SignatureOptions& opts) {
  if (s1.parties() != s2.parties()) throw InvalidArgument("verify_equivalence: party counts differ");
  if (same_ray(s1, s2, 1e-12)) return Equivalence::SameClass;
  if (s1.parties() == 2) {
    // Schmidt rank is a complete invariant for two parties.
    return classify_bipartite(s1, opts.tol).schmidt_rank == classify_bipartite(s2, opts.tol).schmidt_rank
               ? Equivalence::SameClass
               : Equivalence::DifferentClass;
  }
  if (rank_triple(s1, opts.tol) != rank_triple(s2, opts.tol)) return Equivalence::DifferentClass;

  // Signatures of the span seen from every party are invariants too.
  bool all_certain = true;
  for (int p = 1; p <= 3; ++p) {
    const PureState a = move_party_first(s1, p), b = move_party_first(s2, p);
    const SpanSignature sa = span_signature(right_subspace(a, opts.tol).generators, opts);
    const SpanSignature sb = span_signature(right_subspace(b, opts.tol).generators, opts);
    const bool certain = !sa.low_confidence && !sb.low_confidence;
    all_certain = all_certain && certain;
    if (certain && !(sa == sb)) return Equivalence::DifferentClass;
  }
  const SloccVerdict v1 = classify_tripartite(s1, opts), v2 = classify_tripartite(s2, opts);
  if (all_certain && v1.certified && v2.certified && v1.family && v1.family == v2.family && v1.variant &&
      v1.variant == v2.variant)
    return Equivalence::SameClass;
  return Equivalence::Inconclusive;
}

}  // namespace slocc
