#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <numbers>
#include <optional>
#include <random>
#include <string>

#include "qspace/inner_product.hpp"
#include "qspace/io.hpp"
#include "qspace/ladder.hpp"
#include "qspace/oracle.hpp"
#include "qspace/second_quant.hpp"
#include "qspace/selfcheck.hpp"

namespace {

using namespace qspace;

constexpr double kCcrTol = 1e-12;
constexpr double kOracleInnerTol = 1e-10;
constexpr double kOracleEigenTol = 1e-9;

Statistics parse_stats_flag(const std::string& s) {
  if (s == "boson") return Statistics::Boson;
  if (s == "fermion") return Statistics::Fermion;
  throw std::runtime_error("--stats must be boson or fermion");
}

int run_product(const std::string& kind_str, const std::string& left_path,
                const std::string& right_path) {
  const auto left = io::load_state(left_path);
  const auto right = io::load_state(right_path);
  const ProductKind kind =
      kind_str == "sym" ? ProductKind::Symmetric : ProductKind::Antisymmetric;
  if (left.stats != right.stats) {
    throw std::runtime_error("product requires two states with the same statistics");
  }
  if (statistics_for(kind) != left.stats) {
    throw std::runtime_error(std::string("--kind ") + kind_str + " does not match " +
                             to_string(left.stats) + " states");
  }
  std::cout << io::format_complex_pair(inner(kind, left.vec, right.vec)) << "\n";
  return 0;
}

int run_apply(const std::string& op_path, const std::string& state_path) {
  const auto op = io::load_operator(op_path);
  const auto state = io::load_state(state_path);
  if (op.stats != state.stats) {
    throw std::runtime_error("operator and state statistics differ");
  }
  for (const auto& term : op.expr.terms) {
    for (const auto& factor : term.factors) {
      if (factor.mode >= state.modes) {
        throw std::runtime_error("operator touches mode " + std::to_string(factor.mode) +
                                 " outside the state's " + std::to_string(state.modes) +
                                 " modes");
      }
    }
  }
  const FockVector result = apply_expr(op.expr, state.vec);
  std::cout << io::state_to_json(result, state.modes) << "\n";
  return 0;
}

int run_ccr_check(const std::string& stats_str, std::size_t modes, std::uint32_t nmax) {
  const FockSpace space{parse_stats_flag(stats_str), modes};
  const CommutatorReport report = commutator_check_all_pairs(space, nmax);
  std::cout << "max residual " << io::format_double(report.max_residual) << "\n";
  return report.max_residual <= kCcrTol ? 0 : 1;
}

TruncatedBasis basis_from_flags(const FockSpace& space, const std::optional<std::uint32_t>& sector,
                                const std::optional<std::uint32_t>& nmax) {
  if (sector.has_value() == nmax.has_value()) {
    throw std::runtime_error("exactly one of --sector and --nmax is required");
  }
  return sector ? TruncatedBasis::with_sector(space, *sector)
                : TruncatedBasis::with_max_total(space, *nmax);
}

int run_spectrum(const std::string& ham_path, const std::optional<std::uint32_t>& sector,
                 const std::optional<std::uint32_t>& nmax) {
  const auto ham = io::load_hamiltonian(ham_path);
  const FockSpace space{ham.stats, ham.elements.modes};
  const TruncatedBasis basis = basis_from_flags(space, sector, nmax);
  const auto built = matrix_in_basis(build_hamiltonian(ham.elements, ham.stats), basis);
  if (built.truncated_weight > 0.0) {
    std::cerr << "warning: operator weight " << io::format_double(built.truncated_weight)
              << " left the truncated basis\n";
  }
  const auto eigs = spectrum(built.matrix).eigenvalues;
  for (Eigen::Index i = 0; i < eigs.size(); ++i) {
    std::cout << io::format_double(eigs(i)) << "\n";
  }
  return 0;
}

int run_evolve(const std::string& ham_path, const std::string& state_path, double t_final,
               std::size_t steps) {
  const auto ham = io::load_hamiltonian(ham_path);
  const auto state = io::load_state(state_path);
  if (ham.stats != state.stats) {
    throw std::runtime_error("Hamiltonian and state statistics differ");
  }
  if (ham.elements.modes != state.modes) {
    throw std::runtime_error("Hamiltonian and state mode counts differ");
  }
  if (state.vec.is_zero()) {
    throw std::runtime_error("initial state is the zero vector");
  }
  std::uint32_t top = 0;
  for (const auto& [s, amp] : state.vec.terms()) {
    top = std::max(top, s.total_n());
  }
  const FockSpace space{ham.stats, ham.elements.modes};
  const TruncatedBasis basis = TruncatedBasis::with_max_total(space, top);
  const auto built = matrix_in_basis(build_hamiltonian(ham.elements, ham.stats), basis);
  if (built.truncated_weight > 0.0) {
    std::cerr << "warning: operator weight " << io::format_double(built.truncated_weight)
              << " left the truncated basis\n";
  }
  const Eigen::VectorXcd psi0 = to_coefficients(basis, state.vec);

  std::cout << "step,time,norm,total_n";
  for (std::size_t m = 0; m < space.num_modes; ++m) {
    std::cout << ",occ_" << m;
  }
  std::cout << "\n";
  const auto samples = evolve_sampled(built.matrix, psi0, t_final, steps);
  for (std::size_t s = 0; s < samples.size(); ++s) {
    const auto& sample = samples[s];
    std::cout << s << "," << io::format_double(sample.time) << ","
              << io::format_double(sample.psi.norm()) << ","
              << io::format_double(total_number_expectation(basis, sample.psi));
    for (double occ : occupancy_expectations(basis, sample.psi)) {
      std::cout << "," << io::format_double(occ);
    }
    std::cout << "\n";
  }
  return 0;
}

int run_oracle_compare(const std::string& stats_str, std::size_t modes, std::uint32_t particles,
                       const std::string& ham_path, std::uint64_t seed) {
  const Statistics stats = parse_stats_flag(stats_str);
  const FockSpace space{stats, modes};

  // inner products of all normalized basis pairs vs the labeled-tensor side
  double inner_disc = 0.0;
  const auto states = enumerate_sector(space, particles);
  double nfact = 1.0;
  for (std::uint32_t k = 2; k <= particles; ++k) nfact *= k;
  std::vector<oracle::LabeledTensor> units;
  units.reserve(states.size());
  for (const auto& s : states) {
    const auto tuple = s.mode_sequence();
    auto u = oracle::symmetrize(oracle::LabeledTensor::basis_tuple(modes, tuple), stats);
    u *= Complex(std::sqrt(nfact / occupation_factorial(s)), 0.0);
    units.push_back(std::move(u));
  }
  const ProductKind kind = product_kind_for(stats);
  for (std::size_t i = 0; i < states.size(); ++i) {
    for (std::size_t j = 0; j < states.size(); ++j) {
      const FockVector fi = FockVector::unit(states[i]);
      const FockVector fj = FockVector::unit(states[j]);
      const double ni = std::sqrt(inner(kind, fi, fi).real());
      const double nj = std::sqrt(inner(kind, fj, fj).real());
      const Complex q_side = inner(kind, fi, fj) / (ni * nj);
      inner_disc = std::max(inner_disc,
                            std::abs(q_side - oracle::tensor_dot(units[i], units[j])));
    }
  }

  // sector spectrum vs the restricted first-quantized spectrum
  MatrixElements me;
  if (!ham_path.empty()) {
    const auto ham = io::load_hamiltonian(ham_path);
    if (ham.stats != stats) {
      throw std::runtime_error("--stats does not match the Hamiltonian document");
    }
    if (ham.elements.modes != modes) {
      throw std::runtime_error("--modes does not match the Hamiltonian document");
    }
    me = ham.elements;
  } else {
    std::mt19937_64 rng(seed);
    me = selfcheck::random_matrix_elements(rng, modes, true);
  }
  double eig_disc = 0.0;
  const TruncatedBasis basis = TruncatedBasis::with_sector(space, particles);
  if (basis.size() > 0) {
    const auto h = matrix_in_basis(build_hamiltonian(me, stats), basis);
    const Eigen::VectorXd q_eigs = spectrum(h.matrix).eigenvalues;
    const Eigen::VectorXd o_eigs = oracle::restricted_eigenvalues(me, particles, stats);
    if (q_eigs.size() != o_eigs.size()) {
      eig_disc = 1.0;
    } else {
      for (Eigen::Index i = 0; i < q_eigs.size(); ++i) {
        eig_disc = std::max(eig_disc, std::abs(q_eigs(i) - o_eigs(i)));
      }
    }
  }

  std::cout << "max inner discrepancy " << io::format_double(inner_disc) << "\n";
  std::cout << "max eigenvalue discrepancy " << io::format_double(eig_disc) << "\n";
  return (inner_disc <= kOracleInnerTol && eig_disc <= kOracleEigenTol) ? 0 : 1;
}

int run_selfcheck(std::uint64_t seed, const std::string& only,
                  const std::optional<double>& tol) {
  selfcheck::Options options;
  options.seed = seed;
  options.only = only;
  options.tolerance_override = tol;
  const auto results = selfcheck::run(options);
  if (results.empty()) {
    throw std::runtime_error("--only '" + only + "' matches no criterion");
  }
  std::cout << selfcheck::format_report(results);
  return selfcheck::all_passed(results) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  if (const char* tol_env = std::getenv("QSPACE_TOL")) {
    char* end = nullptr;
    const double tol = std::strtod(tol_env, &end);
    if (end == tol_env || *end != '\0' || !(tol >= 1e-14)) {
      std::cerr << "error: QSPACE_TOL must be a number >= 1e-14\n";
      return 2;
    }
    set_epsilon(tol);
  }

  CLI::App app{"qspace: occupation-number states, ladder operators, and exact diagonalization"};
  app.require_subcommand(1);

  std::string kind, left_path, right_path;
  auto* product = app.add_subcommand("product", "permutation-sum product of two states");
  product->add_option("--kind", kind, "sym|asym")
      ->required()
      ->check(CLI::IsMember({"sym", "asym"}));
  product->add_option("--left", left_path, "left state JSON")->required();
  product->add_option("--right", right_path, "right state JSON")->required();

  std::string op_path, apply_state_path;
  auto* apply = app.add_subcommand("apply", "apply an operator document to a state");
  apply->add_option("--op", op_path, "operator JSON")->required();
  apply->add_option("--state", apply_state_path, "state JSON")->required();

  std::string ccr_stats;
  std::size_t ccr_modes = 0;
  std::uint32_t ccr_nmax = 4;
  auto* ccr = app.add_subcommand("ccr-check", "verify the (anti)commutation relations");
  ccr->add_option("--stats", ccr_stats, "boson|fermion")
      ->required()
      ->check(CLI::IsMember({"boson", "fermion"}));
  ccr->add_option("--modes", ccr_modes, "number of modes")
      ->required()
      ->check(CLI::PositiveNumber);
  ccr->add_option("--nmax", ccr_nmax, "particle-number truncation (default 4)");

  std::string spec_ham;
  std::optional<std::uint32_t> spec_sector, spec_nmax;
  auto* spec = app.add_subcommand("spectrum", "eigenvalues of a Hamiltonian document");
  spec->add_option("--hamiltonian", spec_ham, "Hamiltonian JSON")->required();
  spec->add_option("--sector", spec_sector, "fixed particle-number sector");
  spec->add_option("--nmax", spec_nmax, "particle-number truncation");

  std::string evo_ham, evo_state;
  double evo_t = 0.0;
  std::size_t evo_steps = 100;
  auto* evo = app.add_subcommand("evolve", "unitary evolution, CSV per sampled step");
  evo->add_option("--hamiltonian", evo_ham, "Hamiltonian JSON")->required();
  evo->add_option("--state", evo_state, "initial state JSON (unit norm)")->required();
  evo->add_option("--t", evo_t, "final time")->required();
  evo->add_option("--steps", evo_steps, "number of samples (default 100)");

  std::string oc_stats, oc_ham;
  std::size_t oc_modes = 0;
  std::uint32_t oc_particles = 0;
  std::uint64_t oc_seed = 42;
  auto* oc = app.add_subcommand("oracle-compare",
                                "compare against the labeled-tensor-product oracle");
  oc->add_option("--stats", oc_stats, "boson|fermion")
      ->required()
      ->check(CLI::IsMember({"boson", "fermion"}));
  oc->add_option("--modes", oc_modes, "number of modes (<= 4)")
      ->required()
      ->check(CLI::PositiveNumber);
  oc->add_option("--particles", oc_particles, "particle count (<= 4)")->required();
  oc->add_option("--hamiltonian", oc_ham, "Hamiltonian JSON (default: seeded random draw)");
  oc->add_option("--seed", oc_seed, "seed for the random draw (default 42)");

  std::string sc_only;
  std::uint64_t sc_seed = 42;
  std::optional<double> sc_tol;
  auto* sc = app.add_subcommand("selfcheck", "run the full acceptance suite");
  sc->add_option("--seed", sc_seed, "random seed (default 42)");
  sc->add_option("--only", sc_only, "run only criteria whose id contains this substring");
  sc->add_option("--tol", sc_tol, "override every criterion tolerance");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (product->parsed()) return run_product(kind, left_path, right_path);
    if (apply->parsed()) return run_apply(op_path, apply_state_path);
    if (ccr->parsed()) return run_ccr_check(ccr_stats, ccr_modes, ccr_nmax);
    if (spec->parsed()) return run_spectrum(spec_ham, spec_sector, spec_nmax);
    if (evo->parsed()) return run_evolve(evo_ham, evo_state, evo_t, evo_steps);
    if (oc->parsed()) return run_oracle_compare(oc_stats, oc_modes, oc_particles, oc_ham, oc_seed);
    if (sc->parsed()) return run_selfcheck(sc_seed, sc_only, sc_tol);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
