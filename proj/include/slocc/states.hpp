#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "slocc/numerics.hpp"

namespace slocc {

class StateFormatError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

// Pure state of two or three qutrits. Amplitudes are kept as given (the
// norm is recorded, not forced to one); index order is i*9 + j*3 + k.
class PureState {
 public:
  PureState(int parties, CVector amplitudes);

  // Equal-weight superposition of basis kets written as digit strings.
  static PureState from_kets(int parties, const std::vector<std::string>& kets);

  int parties() const { return parties_; }
  const CVector& amplitudes() const { return amps_; }
  double norm() const { return amps_.norm(); }
  PureState normalized() const;

  Complex amplitude(int i, int j) const;
  Complex amplitude(int i, int j, int k) const;

  static int dimension(int parties) { return parties == 2 ? 9 : 27; }

 private:
  int parties_;
  CVector amps_;
};

struct Flattening {
  int pivot = 1;   // 1-based party whose index labels the rows
  CMatrix matrix;  // 3 x 3^(parties-1); columns run over the other parties in order
};

Flattening flatten(const PureState& s, int pivot);
PureState unflatten(const Flattening& f, int parties);

// |<a|b>| / (|a| |b|) >= 1 - eps
bool same_ray(const PureState& a, const PureState& b, double eps);

enum class Family {
  Dim1P0, Dim1P1, Dim1P2,
  P0P0, P1P1, P0P1, P0P2, P1P2,
  P0P0P0, P0P0P1, P0P0P2, P1P1P0, P1P1P1, P1P1P2, P2P1P0,
};

const std::array<Family, 15>& all_families();
std::string family_name(Family f);
std::optional<Family> parse_family(std::string_view text);
int family_dimension(Family f);  // dim of the right singular subspace
int variant_count(Family f);

// Vectors entering |1 phi varphi> + |2 chi psi>; taken as given, not normalized.
struct P0P0P1Parameters {
  CVector phi, varphi, chi, psi;
  // phi = varphi = |0>+|1>+|2>, chi = psi = |0>+|2>
  static P0P0P1Parameters defaults();
};

struct CanonicalId {
  Family family = Family::Dim1P0;
  int variant = 1;  // 1-based row of the family's table
  std::optional<P0P0P1Parameters> params;

  // "FAMILY" or "FAMILY:VARIANT", e.g. "P1P2:1"
  static CanonicalId parse(std::string_view text);
  std::string to_string() const;
};

// Normalized canonical vector. P0P0P1 needs parameters; other families must
// not carry them.
PureState canonical_state(const CanonicalId& id);

struct CatalogEntry {
  CanonicalId id;
  PureState state;
};

// Every tripartite table row (P0P0P1 with default parameters).
std::vector<CatalogEntry> tripartite_catalog();

// JSON I/O. Accepted layouts for "amplitudes": a sparse list of
// {"index": [...], "re": x, "im": y} objects (omitted indices are zero) or
// a dense list of exactly 3^parties [re, im] pairs.
PureState read_state(std::istream& in);
PureState read_state(const std::string& json_text);
PureState read_state_file(const std::string& path);
// Sparse layout, zero amplitudes omitted, entries in index order.
std::string write_state(const PureState& s);
void write_state_file(const PureState& s, const std::string& path);

}  // namespace slocc
