#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "qspace/second_quant.hpp"

namespace qspace {
namespace selfcheck {

struct CriterionResult {
  std::string id;       // stable short tag, usable with --only
  std::string label;
  bool pass = false;
  double worst = 0.0;   // worst residual / deviation observed
  double tolerance = 0.0;
  double seconds = 0.0;
  std::string detail;
};

struct Options {
  std::uint64_t seed = 42;
  /// Replaces every criterion tolerance when set (forced-failure path).
  std::optional<double> tolerance_override;
  /// Substring filter on criterion ids; empty runs everything.
  std::string only;
};

std::vector<CriterionResult> run(const Options& options);

bool all_passed(const std::vector<CriterionResult>& results);

/// One line per criterion: PASS/FAIL, id, worst residual, tolerance, time.
std::string format_report(const std::vector<CriterionResult>& results);

/// Random Hermitian matrix elements: T = T† exactly, V with
/// V_klpq = conj(V_qplk) exactly; two-body entries sampled sparsely.
MatrixElements random_matrix_elements(std::mt19937_64& rng, std::size_t modes,
                                      bool with_two_body);

}  // namespace selfcheck
}  // namespace qspace
