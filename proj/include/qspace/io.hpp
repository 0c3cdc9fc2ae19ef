#pragma once

#include <cstddef>
#include <string>

#include "qspace/fock.hpp"
#include "qspace/ladder.hpp"
#include "qspace/second_quant.hpp"

namespace qspace {
namespace io {

/// Fixed scientific formatting ("%.12e") used for every floating value the
/// tools emit, so output is byte-deterministic for fixed inputs.
std::string format_double(double x);
std::string format_complex_pair(Complex z);  // "re im"

struct StateDocument {
  Statistics stats;
  std::size_t modes;
  FockVector vec;
};

struct OperatorDocument {
  Statistics stats;
  OperatorExpr expr;
};

struct HamiltonianDocument {
  Statistics stats;
  MatrixElements elements;
};

// Parsers take an origin label (usually the file path) used verbatim in
// error messages; malformed JSON reports the byte offset of the failure.
StateDocument parse_state(const std::string& text, const std::string& origin);
OperatorDocument parse_operator(const std::string& text, const std::string& origin);
HamiltonianDocument parse_hamiltonian(const std::string& text, const std::string& origin);

StateDocument load_state(const std::string& path);
OperatorDocument load_operator(const std::string& path);
HamiltonianDocument load_hamiltonian(const std::string& path);

/// Serializes with terms in dense-lexicographic state order and %.12e floats.
std::string state_to_json(const FockVector& vec, std::size_t modes);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

}  // namespace io
}  // namespace qspace
