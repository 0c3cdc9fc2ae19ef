// Acceptance gate: runs every criterion at its pinned tolerance and prints
// one PASS/FAIL line per criterion. Exit code 0 only if everything passed.

#include <cstdlib>
#include <iostream>

#include "qspace/selfcheck.hpp"

int main(int argc, char** argv) {
  qspace::selfcheck::Options options;
  if (argc > 1) {
    options.seed = std::strtoull(argv[1], nullptr, 10);
  }
  const auto results = qspace::selfcheck::run(options);
  std::cout << qspace::selfcheck::format_report(results);
  return qspace::selfcheck::all_passed(results) ? 0 : 1;
}
