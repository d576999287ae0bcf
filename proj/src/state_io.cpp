#include <fstream>
#include <sstream>

#include "json.hpp"
#include "slocc/states.hpp"

namespace slocc {

using nlohmann::json;

namespace {

double number(const json& v, const char* what) {
  if (!v.is_number()) throw StateFormatError(std::string("state file: ") + what + " must be a number");
  return v.get<double>();
}

CVector parse_sparse(const json& list, int parties) {
  const int dim = PureState::dimension(parties);
  if (static_cast<int>(list.size()) > dim) throw StateFormatError("state file: wrong amplitude count");
  CVector a = CVector::Zero(dim);
  std::vector<bool> seen(dim, false);
  for (const auto& e : list) {
    if (!e.is_object()) throw StateFormatError("state file: mixed amplitude layouts");
    if (!e.contains("index") || !e["index"].is_array())
      throw StateFormatError("state file: amplitude entry without an index array");
    const auto& idx = e["index"];
    if (static_cast<int>(idx.size()) != parties)
      throw StateFormatError("state file: index length does not match parties");
    int off = 0;
    for (const auto& d : idx) {
      if (!d.is_number_integer()) throw StateFormatError("state file: index entries must be integers");
      const int x = d.get<int>();
      if (x < 0 || x > 2) throw StateFormatError("state file: index entry out of range 0..2");
      off = off * 3 + x;
    }
    if (seen[off]) throw StateFormatError("state file: duplicate index");
    seen[off] = true;
    if (!e.contains("re")) throw StateFormatError("state file: amplitude entry without re");
    const double re = number(e["re"], "re");
    const double im = e.contains("im") ? number(e["im"], "im") : 0.0;
    a(off) = Complex(re, im);
  }
  return a;
}

CVector parse_dense(const json& list, int parties) {
  const int dim = PureState::dimension(parties);
  if (static_cast<int>(list.size()) != dim) throw StateFormatError("state file: wrong amplitude count");
  CVector a(dim);
  for (int i = 0; i < dim; ++i) {
    const auto& e = list[i];
    if (!e.is_array() || e.size() != 2) throw StateFormatError("state file: mixed amplitude layouts");
    a(i) = Complex(number(e[0], "re"), number(e[1], "im"));
  }
  return a;
}

}  // namespace

PureState read_state(std::istream& in) {
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw StateFormatError(std::string("state file: malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw StateFormatError("state file: top level must be an object");
  if (!doc.contains("parties") || !doc["parties"].is_number_integer())
    throw StateFormatError("state file: missing integer 'parties'");
  const int parties = doc["parties"].get<int>();
  if (parties != 2 && parties != 3) throw StateFormatError("state file: parties must be 2 or 3");
  if (!doc.contains("amplitudes") || !doc["amplitudes"].is_array())
    throw StateFormatError("state file: missing 'amplitudes' array");
  const auto& list = doc["amplitudes"];
  const bool dense = !list.empty() && list.front().is_array();
  CVector a = dense ? parse_dense(list, parties) : parse_sparse(list, parties);
  if (!a.allFinite()) throw StateFormatError("state file: non-finite amplitude");
  if (a.norm() == 0.0) throw StateFormatError("state file: all amplitudes are zero");
  return PureState(parties, a);
}

PureState read_state(const std::string& json_text) {
  std::istringstream in(json_text);
  return read_state(in);
}

PureState read_state_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw StateFormatError("cannot open state file " + path);
  return read_state(in);
}

std::string write_state(const PureState& s) {
  json doc;
  doc["parties"] = s.parties();
  json list = json::array();
  const int p = s.parties();
  for (int off = 0; off < s.amplitudes().size(); ++off) {
    const Complex c = s.amplitudes()(off);
    if (c == Complex(0.0)) continue;
    json idx = json::array();
    for (int q = p - 1; q >= 0; --q) idx.push_back(0);
    for (int q = p - 1, r = off; q >= 0; --q, r /= 3) idx[q] = r % 3;
    list.push_back({{"index", idx}, {"re", c.real()}, {"im", c.imag()}});
  }
  doc["amplitudes"] = list;
  return doc.dump(2) + "\n";
}

void write_state_file(const PureState& s, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw StateFormatError("cannot write state file " + path);
  out << write_state(s);
}

}  // namespace slocc
