#include "qspace/io.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace qspace {
namespace io {

using nlohmann::json;

std::string format_double(double x) {
  if (x == 0.0) x = 0.0;  // collapse negative zero
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12e", x);
  return buf;
}

std::string format_complex_pair(Complex z) {
  return format_double(z.real()) + " " + format_double(z.imag());
}

namespace {

[[noreturn]] void fail(const std::string& origin, const std::string& what) {
  throw std::runtime_error(origin + ": " + what);
}

json parse_json(const std::string& text, const std::string& origin) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    fail(origin, "parse error at byte " + std::to_string(e.byte) + ": " + e.what());
  }
}

Statistics parse_statistics(const json& doc, const std::string& origin) {
  if (!doc.contains("statistics") || !doc["statistics"].is_string()) {
    fail(origin, "missing \"statistics\" string");
  }
  const std::string s = doc["statistics"].get<std::string>();
  if (s == "boson") return Statistics::Boson;
  if (s == "fermion") return Statistics::Fermion;
  fail(origin, "statistics must be \"boson\" or \"fermion\", got \"" + s + "\"");
}

Complex parse_re_im(const json& node, const std::string& origin) {
  if (!node.contains("re") || !node.contains("im") || !node["re"].is_number() ||
      !node["im"].is_number()) {
    fail(origin, "expected numeric \"re\" and \"im\" fields");
  }
  return Complex(node["re"].get<double>(), node["im"].get<double>());
}

std::size_t parse_modes(const json& doc, const std::string& origin) {
  if (!doc.contains("modes") || !doc["modes"].is_number_unsigned()) {
    fail(origin, "missing non-negative \"modes\" count");
  }
  return doc["modes"].get<std::size_t>();
}

ModeIndex parse_mode_index(const json& node, const char* key, std::size_t modes,
                           const std::string& origin) {
  if (!node.contains(key) || !node[key].is_number_unsigned()) {
    fail(origin, std::string("missing non-negative \"") + key + "\" index");
  }
  const std::size_t value = node[key].get<std::size_t>();
  if (value >= modes) {
    fail(origin, std::string("\"") + key + "\" index " + std::to_string(value) +
                     " out of range for " + std::to_string(modes) + " modes");
  }
  return static_cast<ModeIndex>(value);
}

}  // namespace

StateDocument parse_state(const std::string& text, const std::string& origin) {
  const json doc = parse_json(text, origin);
  const Statistics stats = parse_statistics(doc, origin);
  const std::size_t modes = parse_modes(doc, origin);
  FockVector vec(stats);
  if (!doc.contains("terms") || !doc["terms"].is_array()) {
    fail(origin, "missing \"terms\" array");
  }
  for (const auto& term : doc["terms"]) {
    if (!term.contains("occ") || !term["occ"].is_array() || term["occ"].size() != modes) {
      fail(origin, "each term needs an \"occ\" array of length modes");
    }
    std::vector<OccupationState::Entry> entries;
    for (std::size_t m = 0; m < modes; ++m) {
      const auto& cell = term["occ"][m];
      if (!cell.is_number_unsigned()) {
        fail(origin, "occupation counts must be non-negative integers");
      }
      const std::uint32_t count = cell.get<std::uint32_t>();
      if (count == 0) continue;
      if (stats == Statistics::Fermion && count > 1) {
        fail(origin, "fermion document with occupation above 1 at mode " + std::to_string(m));
      }
      entries.push_back({static_cast<ModeIndex>(m), count});
    }
    vec.add_term(OccupationState::from_counts(stats, std::move(entries)),
                 parse_re_im(term, origin));
  }
  return StateDocument{stats, modes, std::move(vec)};
}

OperatorDocument parse_operator(const std::string& text, const std::string& origin) {
  const json doc = parse_json(text, origin);
  const Statistics stats = parse_statistics(doc, origin);
  OperatorExpr expr;
  if (!doc.contains("terms") || !doc["terms"].is_array()) {
    fail(origin, "missing \"terms\" array");
  }
  for (const auto& term : doc["terms"]) {
    OperatorTerm out;
    out.coeff = parse_re_im(term, origin);
    if (!term.contains("ops") || !term["ops"].is_array()) {
      fail(origin, "each operator term needs an \"ops\" array");
    }
    for (const auto& op : term["ops"]) {
      if (!op.contains("act") || !op["act"].is_string()) {
        fail(origin, "ladder factor needs \"act\"");
      }
      const std::string act = op["act"].get<std::string>();
      if (!op.contains("mode") || !op["mode"].is_number_unsigned()) {
        fail(origin, "ladder factor needs a non-negative \"mode\"");
      }
      const ModeIndex mode = op["mode"].get<ModeIndex>();
      if (act == "create") {
        out.factors.push_back(LadderOp::create(mode));
      } else if (act == "annihilate") {
        out.factors.push_back(LadderOp::annihilate(mode));
      } else {
        fail(origin, "\"act\" must be \"create\" or \"annihilate\", got \"" + act + "\"");
      }
    }
    expr.terms.push_back(std::move(out));
  }
  return OperatorDocument{stats, std::move(expr)};
}

HamiltonianDocument parse_hamiltonian(const std::string& text, const std::string& origin) {
  const json doc = parse_json(text, origin);
  const Statistics stats = parse_statistics(doc, origin);
  const std::size_t modes = parse_modes(doc, origin);
  MatrixElements me;
  me.modes = modes;
  me.T = Eigen::MatrixXcd::Zero(modes, modes);
  if (!doc.contains("T") || !doc["T"].is_array() || doc["T"].size() != modes) {
    fail(origin, "\"T\" must be a modes x modes array of {re, im}");
  }
  for (std::size_t r = 0; r < modes; ++r) {
    const auto& row = doc["T"][r];
    if (!row.is_array() || row.size() != modes) {
      fail(origin, "\"T\" must be a modes x modes array of {re, im}");
    }
    for (std::size_t c = 0; c < modes; ++c) {
      me.T(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          parse_re_im(row[c], origin);
    }
  }
  if (doc.contains("V")) {
    if (!doc["V"].is_array()) {
      fail(origin, "\"V\" must be an array of {k, l, p, q, re, im}");
    }
    for (const auto& entry : doc["V"]) {
      const ModeIndex k = parse_mode_index(entry, "k", modes, origin);
      const ModeIndex l = parse_mode_index(entry, "l", modes, origin);
      const ModeIndex p = parse_mode_index(entry, "p", modes, origin);
      const ModeIndex q = parse_mode_index(entry, "q", modes, origin);
      me.set_v(k, l, p, q, parse_re_im(entry, origin));
    }
  }
  try {
    me.validate();
  } catch (const std::exception& e) {
    fail(origin, e.what());
  }
  return HamiltonianDocument{stats, std::move(me)};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error(path + ": cannot open file");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error(path + ": cannot open file for writing");
  }
  out << text;
}

StateDocument load_state(const std::string& path) {
  return parse_state(read_file(path), path);
}

OperatorDocument load_operator(const std::string& path) {
  return parse_operator(read_file(path), path);
}

HamiltonianDocument load_hamiltonian(const std::string& path) {
  return parse_hamiltonian(read_file(path), path);
}

std::string state_to_json(const FockVector& vec, std::size_t modes) {
  // hand-rolled writer: nlohmann's number printing is not pinned to %.12e
  std::ostringstream os;
  os << "{\"statistics\":\"" << to_string(vec.stats()) << "\",\"modes\":" << modes
     << ",\"terms\":[";
  bool first = true;
  for (const auto& [state, amp] : vec.terms()) {  // map order is dense-lex
    if (!first) os << ",";
    first = false;
    os << "{\"occ\":[";
    const auto dense = state.dense(modes);
    for (std::size_t m = 0; m < dense.size(); ++m) {
      if (m) os << ",";
      os << dense[m];
    }
    os << "],\"re\":" << format_double(amp.real()) << ",\"im\":" << format_double(amp.imag())
       << "}";
  }
  os << "]}";
  return os.str();
}

}  // namespace io
}  // namespace qspace
