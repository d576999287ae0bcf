#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>

#include "json.hpp"
#include "slocc/pencil.hpp"
#include "slocc/states.hpp"

namespace slocc {

class CalibrationError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct Separability {
  enum class Kind { FullySeparable, Biseparable, Genuine };
  Kind kind = Kind::Genuine;
  int cut = 0;  // Biseparable: the party that factors off
  std::string to_string() const;
};

struct SloccVerdict {
  std::optional<Family> family;  // empty when the signature is not in the table
  std::optional<int> variant;    // set when the fingerprint singles out one row
  int dim_pi = 0;
  std::array<int, 3> rank_triple{};
  Separability separability;
  bool certified = true;  // false when a Macaulay budget ran out
  SpanSignature signature;

  bool classified() const { return family.has_value(); }
  std::string label() const;  // "P0P0:3", "P0P2", "unclassified"
  nlohmann::json to_json() const;
};

std::array<int, 3> rank_triple(const PureState& s, const TolerancePolicy& tol);
Separability separability_of(const std::array<int, 3>& ranks);

// Fingerprint = rank triple plus span signature key.
std::string fingerprint(const std::array<int, 3>& ranks, const SpanSignature& sig);

struct TableEntry {
  Family family;
  std::set<int> variants;
};

// Built once from the catalog with default options. Throws CalibrationError
// when two families share a fingerprint.
const std::map<std::string, TableEntry>& decision_table();
std::map<std::string, TableEntry> calibrate(const SignatureOptions& opts);

SloccVerdict classify_tripartite(const PureState& s, const SignatureOptions& opts = {});

struct ClassCount {
  int n = 0;
  std::int64_t total = 0;
};

// Exact; n must lie in 2..20.
ClassCount count_classes(int n);

enum class Equivalence { SameClass, DifferentClass, Inconclusive };
std::string to_string(Equivalence e);

Equivalence verify_equivalence(const PureState& s1, const PureState& s2,
                               const SignatureOptions& opts = {});

// Reorders parties so that `party` (1-based) comes first, keeping the rest in order.
PureState move_party_first(const PureState& s, int party);

}  // namespace slocc
