#include "slocc/states.hpp"

#include <cmath>
#include <charconv>
#include <map>

namespace slocc {

PureState::PureState(int parties, CVector amplitudes) : parties_(parties), amps_(std::move(amplitudes)) {
  if (parties != 2 && parties != 3) throw InvalidArgument("PureState: parties must be 2 or 3");
  if (amps_.size() != dimension(parties)) throw InvalidArgument("PureState: wrong amplitude count");
  if (!amps_.allFinite()) throw InvalidArgument("PureState: non-finite amplitude");
  if (amps_.norm() == 0.0) throw InvalidArgument("PureState: all amplitudes are zero");
}

PureState PureState::from_kets(int parties, const std::vector<std::string>& kets) {
  if (parties != 2 && parties != 3) throw InvalidArgument("from_kets: parties must be 2 or 3");
  CVector a = CVector::Zero(dimension(parties));
  for (const auto& k : kets) {
    if (static_cast<int>(k.size()) != parties) throw InvalidArgument("from_kets: bad ket " + k);
    int off = 0;
    for (char c : k) {
      if (c < '0' || c > '2') throw InvalidArgument("from_kets: bad ket " + k);
      off = off * 3 + (c - '0');
    }
    a(off) += 1.0;
  }
  return PureState(parties, a);
}

PureState PureState::normalized() const { return PureState(parties_, amps_ / amps_.norm()); }

Complex PureState::amplitude(int i, int j) const {
  if (parties_ != 2) throw InvalidArgument("amplitude: state is not bipartite");
  return amps_(3 * i + j);
}

Complex PureState::amplitude(int i, int j, int k) const {
  if (parties_ != 3) throw InvalidArgument("amplitude: state is not tripartite");
  return amps_(9 * i + 3 * j + k);
}

Flattening flatten(const PureState& s, int pivot) {
  const int p = s.parties();
  if (pivot < 1 || pivot > p) throw InvalidArgument("flatten: pivot out of range");
  const int cols = p == 2 ? 3 : 9;
  Flattening f{pivot, CMatrix(3, cols)};
  for (int off = 0; off < PureState::dimension(p); ++off) {
    int idx[3];
    for (int q = p - 1, r = off; q >= 0; --q, r /= 3) idx[q] = r % 3;
    int col = 0;
    for (int q = 0; q < p; ++q)
      if (q != pivot - 1) col = col * 3 + idx[q];
    f.matrix(idx[pivot - 1], col) = s.amplitudes()(off);
  }
  return f;
}

PureState unflatten(const Flattening& f, int parties) {
  if (parties != 2 && parties != 3) throw InvalidArgument("unflatten: parties must be 2 or 3");
  const int cols = parties == 2 ? 3 : 9;
  if (f.matrix.rows() != 3 || f.matrix.cols() != cols) throw InvalidArgument("unflatten: shape mismatch");
  if (f.pivot < 1 || f.pivot > parties) throw InvalidArgument("unflatten: pivot out of range");
  CVector a(PureState::dimension(parties));
  for (int off = 0; off < a.size(); ++off) {
    int idx[3];
    for (int q = parties - 1, r = off; q >= 0; --q, r /= 3) idx[q] = r % 3;
    int col = 0;
    for (int q = 0; q < parties; ++q)
      if (q != f.pivot - 1) col = col * 3 + idx[q];
    a(off) = f.matrix(idx[f.pivot - 1], col);
  }
  return PureState(parties, a);
}

bool same_ray(const PureState& a, const PureState& b, double eps) {
  if (a.parties() != b.parties()) return false;
  const double c = std::abs(a.amplitudes().dot(b.amplitudes())) / (a.norm() * b.norm());
  return c >= 1.0 - eps;
}

// --- families ---------------------------------------------------------------

namespace {

struct FamilyInfo {
  Family family;
  const char* name;
  int dim;
};

constexpr std::array<FamilyInfo, 15> kFamilies{{
    {Family::Dim1P0, "dim1-P0", 1},   {Family::Dim1P1, "dim1-P1", 1},
    {Family::Dim1P2, "dim1-P2", 1},   {Family::P0P0, "P0P0", 2},
    {Family::P1P1, "P1P1", 2},        {Family::P0P1, "P0P1", 2},
    {Family::P0P2, "P0P2", 2},        {Family::P1P2, "P1P2", 2},
    {Family::P0P0P0, "P0P0P0", 3},    {Family::P0P0P1, "P0P0P1", 3},
    {Family::P0P0P2, "P0P0P2", 3},    {Family::P1P1P0, "P1P1P0", 3},
    {Family::P1P1P1, "P1P1P1", 3},    {Family::P1P1P2, "P1P1P2", 3},
    {Family::P2P1P0, "P2P1P0", 3},
}};

const FamilyInfo& info(Family f) {
  for (const auto& i : kFamilies)
    if (i.family == f) return i;
  throw InvalidArgument("unknown family");
}

using Kets = std::vector<std::string>;

// Basis-ket rows; P0P0P1 and P1P1P0 rows get their product-vector terms added separately.
const std::map<Family, std::vector<Kets>>& ket_table() {
  static const std::map<Family, std::vector<Kets>> table{
      {Family::Dim1P0, {{"000"}}},
      {Family::Dim1P1, {{"000", "011"}}},
      {Family::Dim1P2, {{"000", "011", "022"}}},
      {Family::P0P0, {{"000", "101"}, {"000", "110"}, {"000", "111"}}},
      {Family::P1P1,
       {{"000", "011", "101", "112"},
        {"000", "011", "112", "120"},
        {"000", "011", "120", "101"},
        {"000", "011", "120", "102"}}},
      {Family::P0P1,
       {{"000", "011", "101"}, {"000", "011", "112"}, {"000", "011", "120"}, {"000", "011", "122"}}},
      {Family::P0P2, {{"000", "011", "022", "101"}}},
      {Family::P1P2,
       {{"000", "011", "022", "101", "112"},
        {"000", "011", "022", "112", "120"},
        {"000", "011", "022", "120", "101"}}},
      {Family::P0P0P0,
       {{"000", "101", "202"},
        {"000", "110", "220"},
        {"000", "111", "202"},
        {"000", "111", "220"},
        {"000", "111", "201"},
        {"000", "111", "222"}}},
      {Family::P0P0P1, {{"000", "011"}}},
      {Family::P0P0P2,
       {{"000", "011", "022", "101", "202"},
        {"000", "011", "022", "110", "220"},
        {"000", "011", "022", "101", "212"}}},
      {Family::P1P1P0,
       {{"000", "011", "101", "112"}, {"000", "011", "112", "120"}, {"000", "011", "120", "101"}}},
      {Family::P1P1P1,
       {{"000", "011", "101", "112", "202", "221"},
        {"000", "011", "101", "112", "210", "202"},
        {"000", "011", "101", "112", "221", "210"},
        {"000", "011", "112", "120", "202", "221"},
        {"000", "011", "112", "120", "221", "210"},
        {"000", "011", "120", "101", "221", "210"}}},
      {Family::P1P1P2,
       {{"000", "011", "022", "101", "112", "202", "221"},
        {"000", "011", "022", "101", "112", "210", "202"},
        {"000", "011", "022", "101", "112", "221", "210"}}},
      {Family::P2P1P0,
       {{"000", "011", "022", "101", "112", "202"},
        {"000", "011", "022", "101", "112", "220"},
        {"000", "011", "022", "101", "112", "221"}}},
  };
  return table;
}

CVector vec3(Complex a, Complex b, Complex c) {
  CVector v(3);
  v << a, b, c;
  return v;
}

// Adds |first> (x) a (x) b to a tripartite amplitude vector.
void add_product(CVector& amps, int first, const CVector& a, const CVector& b) {
  for (int j = 0; j < 3; ++j)
    for (int k = 0; k < 3; ++k) amps(9 * first + 3 * j + k) += a(j) * b(k);
}

void check_param(const CVector& v, const char* name) {
  if (v.size() != 3) throw InvalidArgument(std::string("P0P0P1 parameter ") + name + " must have 3 entries");
  if (!v.allFinite()) throw InvalidArgument(std::string("P0P0P1 parameter ") + name + " is not finite");
  if (v.norm() == 0.0) throw InvalidArgument(std::string("P0P0P1 parameter ") + name + " is zero");
}

}  // namespace

const std::array<Family, 15>& all_families() {
  static const std::array<Family, 15> fams = [] {
    std::array<Family, 15> a{};
    for (std::size_t i = 0; i < kFamilies.size(); ++i) a[i] = kFamilies[i].family;
    return a;
  }();
  return fams;
}

std::string family_name(Family f) { return info(f).name; }

std::optional<Family> parse_family(std::string_view text) {
  for (const auto& i : kFamilies)
    if (text == i.name) return i.family;
  return std::nullopt;
}

int family_dimension(Family f) { return info(f).dim; }

int variant_count(Family f) { return static_cast<int>(ket_table().at(f).size()); }

P0P0P1Parameters P0P0P1Parameters::defaults() {
  return {vec3(1, 1, 1), vec3(1, 1, 1), vec3(1, 0, 1), vec3(1, 0, 1)};
}

CanonicalId CanonicalId::parse(std::string_view text) {
  CanonicalId id;
  const auto colon = text.find(':');
  const auto fam = parse_family(text.substr(0, colon));
  if (!fam) throw InvalidArgument("unknown family '" + std::string(text.substr(0, colon)) + "'");
  id.family = *fam;
  if (colon != std::string_view::npos) {
    const auto rest = text.substr(colon + 1);
    int v = 0;
    const auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), v);
    if (ec != std::errc() || ptr != rest.data() + rest.size())
      throw InvalidArgument("bad variant '" + std::string(rest) + "'");
    id.variant = v;
  }
  if (id.variant < 1 || id.variant > variant_count(id.family))
    throw InvalidArgument("variant out of range for " + family_name(id.family));
  return id;
}

std::string CanonicalId::to_string() const {
  if (variant_count(family) == 1) return family_name(family);
  return family_name(family) + ":" + std::to_string(variant);
}

PureState canonical_state(const CanonicalId& id) {
  const auto& rows = ket_table().at(id.family);
  if (id.variant < 1 || id.variant > static_cast<int>(rows.size()))
    throw InvalidArgument("canonical_state: variant out of range for " + family_name(id.family));
  if (id.family == Family::P0P0P1 && !id.params)
    throw InvalidArgument("canonical_state: P0P0P1 needs parameters");
  if (id.family != Family::P0P0P1 && id.params)
    throw InvalidArgument("canonical_state: only P0P0P1 takes parameters");

  CVector amps = PureState::from_kets(3, rows[id.variant - 1]).amplitudes();
  if (id.family == Family::P0P0P1) {
    const auto& p = *id.params;
    check_param(p.phi, "phi");
    check_param(p.varphi, "varphi");
    check_param(p.chi, "chi");
    check_param(p.psi, "psi");
    add_product(amps, 1, p.phi, p.varphi);
    add_product(amps, 2, p.chi, p.psi);
  } else if (id.family == Family::P1P1P0) {
    add_product(amps, 2, vec3(1, 1, 1), vec3(1, -1, 1));
  }
  return PureState(3, amps).normalized();
}

std::vector<CatalogEntry> tripartite_catalog() {
  std::vector<CatalogEntry> out;
  for (Family f : all_families()) {
    for (int v = 1; v <= variant_count(f); ++v) {
      CanonicalId id{f, v, std::nullopt};
      if (f == Family::P0P0P1) id.params = P0P0P1Parameters::defaults();
      out.push_back({id, canonical_state(id)});
    }
  }
  return out;
}

}  // namespace slocc
