#include "qspace/selfcheck.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include "qspace/inner_product.hpp"
#include "qspace/io.hpp"
#include "qspace/ladder.hpp"
#include "qspace/oracle.hpp"

namespace qspace {
namespace selfcheck {

namespace {

using Clock = std::chrono::steady_clock;

Complex random_complex(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const double re = u(rng);
  const double im = u(rng);
  return Complex(re, im);
}

Eigen::VectorXcd random_unit_vector(std::mt19937_64& rng, std::size_t dim) {
  Eigen::VectorXcd v(static_cast<Eigen::Index>(dim));
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = random_complex(rng);
  const double n = v.norm();
  return n == 0.0 ? Eigen::VectorXcd::Unit(static_cast<Eigen::Index>(dim), 0) : (v / n).eval();
}

int parity_of(const std::vector<std::size_t>& perm) {
  std::size_t inv = 0;
  for (std::size_t i = 0; i < perm.size(); ++i) {
    for (std::size_t j = i + 1; j < perm.size(); ++j) {
      if (perm[i] > perm[j]) ++inv;
    }
  }
  return inv % 2 == 0 ? 1 : -1;
}

double int_factorial(std::uint32_t n) {
  double r = 1.0;
  for (std::uint32_t k = 2; k <= n; ++k) r *= static_cast<double>(k);
  return r;
}

std::uint64_t stable_tag(const std::string& id) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : id) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

struct Runner {
  const Options& options;
  std::vector<CriterionResult> results;

  bool selected(const std::string& id) const {
    return options.only.empty() || id.find(options.only) != std::string::npos;
  }

  template <typename Fn>
  void criterion(const std::string& id, const std::string& label, double tolerance,
                 double time_limit, Fn&& body) {
    if (!selected(id)) return;
    CriterionResult r;
    r.id = id;
    r.label = label;
    r.tolerance = options.tolerance_override.value_or(tolerance);
    std::mt19937_64 rng(options.seed + stable_tag(id));
    const auto start = Clock::now();
    std::string detail;
    r.worst = body(rng, detail);
    r.seconds = std::chrono::duration<double>(Clock::now() - start).count();
    r.detail = detail;
    r.pass = r.worst <= r.tolerance;
    if (time_limit > 0.0 && r.seconds > time_limit) {
      r.pass = false;
      r.detail += (r.detail.empty() ? "" : "; ") + std::string("exceeded time limit");
    }
    results.push_back(std::move(r));
  }
};

double commutation_sweep(Statistics stats) {
  double worst = 0.0;
  for (std::size_t m = 1; m <= 4; ++m) {
    for (std::uint32_t n_max = 1; n_max <= 4; ++n_max) {
      const FockSpace space{stats, m};
      worst = std::max(worst, commutator_check_all_pairs(space, n_max).max_residual);
    }
  }
  return worst;
}

double pauli_exclusion(std::mt19937_64& rng, std::string& detail) {
  std::size_t violations = 0;
  const std::size_t trials = 10000;
  for (std::size_t t = 0; t < trials; ++t) {
    const std::size_t m = 1 + rng() % 4;
    const FockSpace space{Statistics::Fermion, m};
    const std::size_t len = rng() % 7;
    std::vector<ModeIndex> modes(len);
    for (auto& mode : modes) mode = static_cast<ModeIndex>(rng() % m);
    std::vector<ModeIndex> sorted = modes;
    std::sort(sorted.begin(), sorted.end());
    const bool duplicated =
        std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end();

    const auto made = make_state(space, modes);
    if (made.has_value() == duplicated) ++violations;

    FockVector v = FockVector::vacuum(Statistics::Fermion);
    for (ModeIndex mode : modes) {
      v = apply_fermion(LadderOp::create(mode), v);
    }
    if (v.is_zero() != duplicated) ++violations;
  }
  detail = std::to_string(trials) + " build sequences";
  return static_cast<double>(violations);
}

double permutation_invariance(std::mt19937_64& rng, std::string& detail) {
  double worst = 0.0;
  const std::size_t trials = 10000;
  for (std::size_t t = 0; t < trials; ++t) {
    const std::size_t m = 1 + rng() % 4;

    // bosons: arbitrary lists, bitwise state equality, sign always +1
    {
      const FockSpace space{Statistics::Boson, m};
      const std::size_t len = rng() % 7;
      std::vector<ModeIndex> modes(len);
      for (auto& mode : modes) mode = static_cast<ModeIndex>(rng() % m);
      std::vector<ModeIndex> shuffled = modes;
      std::shuffle(shuffled.begin(), shuffled.end(), rng);
      const auto a = make_state(space, modes);
      const auto b = make_state(space, shuffled);
      if (!(a && b && a->state == b->state && a->sign == 1 && b->sign == 1)) {
        worst = std::max(worst, 1.0);
      }
    }

    // fermions: distinct lists; state identical, sign flips by the parity,
    // |inner|^2 invariant
    {
      const FockSpace space{Statistics::Fermion, m};
      std::vector<ModeIndex> pool(m);
      std::iota(pool.begin(), pool.end(), 0);
      std::shuffle(pool.begin(), pool.end(), rng);
      const std::size_t len = rng() % (m + 1);
      std::vector<ModeIndex> modes(pool.begin(), pool.begin() + len);
      std::vector<std::size_t> perm(len);
      std::iota(perm.begin(), perm.end(), 0);
      std::shuffle(perm.begin(), perm.end(), rng);
      std::vector<ModeIndex> shuffled(len);
      for (std::size_t i = 0; i < len; ++i) shuffled[i] = modes[perm[i]];

      const auto a = make_state(space, modes);
      const auto b = make_state(space, shuffled);
      if (!a || !b || !(a->state == b->state) ||
          b->sign != parity_of(perm) * a->sign) {
        worst = std::max(worst, 1.0);
        continue;
      }
      const FockVector va = basis_vector(space, modes);
      const FockVector vb = basis_vector(space, shuffled);
      const double na = std::norm(inner(ProductKind::Antisymmetric, va, va));
      const double nb = std::norm(inner(ProductKind::Antisymmetric, vb, vb));
      worst = std::max(worst, std::abs(na - nb));
    }
  }
  detail = std::to_string(trials) + " mode lists per statistics";
  return worst;
}

double oracle_inner_equivalence(std::string& detail) {
  double worst = 0.0;
  std::size_t pairs = 0;
  for (Statistics stats : {Statistics::Boson, Statistics::Fermion}) {
    for (std::size_t m = 1; m <= 3; ++m) {
      for (std::uint32_t n = 0; n <= 3; ++n) {
        const FockSpace space{stats, m};
        const auto states = enumerate_sector(space, n);
        if (states.empty()) continue;
        const double nfact = int_factorial(n);
        std::vector<oracle::LabeledTensor> units;
        units.reserve(states.size());
        for (const auto& s : states) {
          const auto tuple = s.mode_sequence();
          auto u = oracle::symmetrize(oracle::LabeledTensor::basis_tuple(m, tuple), stats);
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
            const Complex oracle_side = oracle::tensor_dot(units[i], units[j]);
            worst = std::max(worst, std::abs(q_side - oracle_side));
            ++pairs;
          }
        }
      }
    }
  }
  detail = std::to_string(pairs) + " basis pairs";
  return worst;
}

double oracle_spectral_equivalence(std::mt19937_64& rng, std::string& detail) {
  double worst = 0.0;
  std::size_t solves = 0;
  for (Statistics stats : {Statistics::Boson, Statistics::Fermion}) {
    for (std::size_t m = 1; m <= 3; ++m) {
      for (std::uint32_t n = 0; n <= 3; ++n) {
        const FockSpace space{stats, m};
        const TruncatedBasis basis = TruncatedBasis::with_sector(space, n);
        if (basis.size() == 0) continue;
        for (int draw = 0; draw < 20; ++draw) {
          const MatrixElements me = random_matrix_elements(rng, m, true);
          const auto h = matrix_in_basis(build_hamiltonian(me, stats), basis);
          const Eigen::VectorXd q_eigs = spectrum(h.matrix).eigenvalues;
          const Eigen::VectorXd oracle_eigs = oracle::restricted_eigenvalues(me, n, stats);
          if (q_eigs.size() != oracle_eigs.size()) {
            worst = std::max(worst, 1.0);
            continue;
          }
          for (Eigen::Index i = 0; i < q_eigs.size(); ++i) {
            worst = std::max(worst, std::abs(q_eigs(i) - oracle_eigs(i)));
          }
          ++solves;
        }
      }
    }
  }
  detail = std::to_string(solves) + " random Hermitian draws";
  return worst;
}

MatrixElements two_site_hopping() {
  Eigen::MatrixXcd hop(2, 2);
  hop << 0.0, -1.0, -1.0, 0.0;
  return MatrixElements::one_body(hop);
}

double golden_spectra(std::string& detail) {
  double worst = 0.0;
  const MatrixElements me = two_site_hopping();

  // boson hopping, two-particle sector: {-2, 0, 2}
  {
    const FockSpace space{Statistics::Boson, 2};
    const TruncatedBasis basis = TruncatedBasis::with_sector(space, 2);
    const auto h = matrix_in_basis(build_hamiltonian(me, space.stats), basis);
    const Eigen::VectorXd eigs = spectrum(h.matrix).eigenvalues;
    if (eigs.size() != 3) {
      worst = std::max(worst, 1.0);
    } else {
      worst = std::max({worst, std::abs(eigs(0) + 2.0), std::abs(eigs(1)),
                        std::abs(eigs(2) - 2.0)});
    }
  }

  // fermion hopping, filled band: exactly one state with eigenvalue 0
  {
    const FockSpace space{Statistics::Fermion, 2};
    const TruncatedBasis basis = TruncatedBasis::with_sector(space, 2);
    const auto h = matrix_in_basis(build_hamiltonian(me, space.stats), basis);
    const Eigen::VectorXd eigs = spectrum(h.matrix).eigenvalues;
    if (eigs.size() != 1) {
      worst = std::max(worst, 1.0);
    } else {
      worst = std::max(worst, std::abs(eigs(0)));
    }
  }

  detail = "boson n=2 {-2,0,2}; fermion n=2 {0}";
  return worst;
}

double golden_rabi(std::string& detail) {
  const MatrixElements me = two_site_hopping();
  const FockSpace space{Statistics::Boson, 2};
  const TruncatedBasis basis = TruncatedBasis::with_sector(space, 1);
  const auto h = matrix_in_basis(build_hamiltonian(me, space.stats), basis);
  const std::vector<ModeIndex> start_modes{0};
  const auto start = make_state(space, start_modes);
  const Eigen::VectorXcd psi0 = to_coefficients(basis, FockVector::unit(start->state));
  const Eigen::VectorXcd psi = evolve(h.matrix, psi0, std::numbers::pi / 2.0, 1);
  const auto occ = occupancy_expectations(basis, psi);
  detail = "opposite-site occupancy " + io::format_double(occ[1]);
  return 1.0 - occ[1];
}

double dynamics_conservation(std::mt19937_64& rng, std::string& detail) {
  double worst = 0.0;
  for (Statistics stats : {Statistics::Boson, Statistics::Fermion}) {
    const FockSpace space{stats, 3};
    const TruncatedBasis basis = TruncatedBasis::with_max_total(space, 3);
    const MatrixElements me = random_matrix_elements(rng, 3, true);
    const auto h = matrix_in_basis(build_hamiltonian(me, stats), basis);
    const Eigen::VectorXcd psi0 = random_unit_vector(rng, basis.size());
    const double n0 = total_number_expectation(basis, psi0);
    for (const auto& sample : evolve_sampled(h.matrix, psi0, 8.5, 100)) {
      worst = std::max(worst, std::abs(sample.psi.norm() - 1.0));
      worst = std::max(worst, std::abs(total_number_expectation(basis, sample.psi) - n0));
    }
  }
  detail = "100 sampled times per statistics";
  return worst;
}

double motivation_identities(std::mt19937_64& rng, std::string& detail) {
  double worst = 0.0;
  const std::size_t trials = 1000;
  const std::size_t m = 3;
  for (std::size_t t = 0; t < trials; ++t) {
    std::vector<Complex> psi(m), phi(m);
    for (auto& z : psi) z = random_complex(rng);
    for (auto& z : phi) z = random_complex(rng);

    double psi2 = 0.0, phi2 = 0.0;
    Complex overlap(0.0, 0.0);
    for (std::size_t k = 0; k < m; ++k) {
      psi2 += std::norm(psi[k]);
      phi2 += std::norm(phi[k]);
      overlap += std::conj(psi[k]) * phi[k];
    }

    for (Statistics stats : {Statistics::Boson, Statistics::Fermion}) {
      const FockSpace space{stats, m};
      FockVector v(stats);
      for (ModeIndex a = 0; a < m; ++a) {
        for (ModeIndex b = 0; b < m; ++b) {
          const std::vector<ModeIndex> modes{a, b};
          v += psi[a] * phi[b] * basis_vector(space, modes);
        }
      }
      const double value = inner(product_kind_for(stats), v, v).real();
      const double expected = stats == Statistics::Boson
                                  ? psi2 * phi2 + std::norm(overlap)
                                  : psi2 * phi2 - std::norm(overlap);
      worst = std::max(worst, std::abs(std::abs(value) - std::abs(expected)));
    }
  }
  detail = std::to_string(trials) + " random vector pairs";
  return worst;
}

}  // namespace

MatrixElements random_matrix_elements(std::mt19937_64& rng, std::size_t modes,
                                      bool with_two_body) {
  MatrixElements me;
  me.modes = modes;
  Eigen::MatrixXcd a(modes, modes);
  for (Eigen::Index r = 0; r < a.rows(); ++r) {
    for (Eigen::Index c = 0; c < a.cols(); ++c) {
      a(r, c) = random_complex(rng);
    }
  }
  me.T = 0.5 * (a + a.adjoint());
  if (with_two_body) {
    std::map<std::array<ModeIndex, 4>, Complex> raw;
    const std::size_t draws = std::max<std::size_t>(4, modes * modes);
    for (std::size_t d = 0; d < draws; ++d) {
      std::array<ModeIndex, 4> key;
      for (auto& idx : key) idx = static_cast<ModeIndex>(rng() % modes);
      raw[key] = random_complex(rng);
    }
    auto raw_at = [&](const std::array<ModeIndex, 4>& key) {
      auto it = raw.find(key);
      return it == raw.end() ? Complex(0.0, 0.0) : it->second;
    };
    for (const auto& [key, value] : raw) {
      const auto& [k, l, p, q] = key;
      const std::array<ModeIndex, 4> mirror{q, p, l, k};
      me.V[key] = 0.5 * (value + std::conj(raw_at(mirror)));
      me.V[mirror] = 0.5 * (raw_at(mirror) + std::conj(value));
    }
  }
  me.validate();
  return me;
}

std::vector<CriterionResult> run(const Options& options) {
  Runner runner{options, {}};

  runner.criterion("ccr-boson", "bosonic commutation algebra on truncated bases", 1e-12,
                   10.0, [](std::mt19937_64&, std::string& detail) {
                     detail = "M 1..4, N_max 1..4, all mode pairs";
                     return commutation_sweep(Statistics::Boson);
                   });
  runner.criterion("ccr-fermion", "fermionic anticommutation algebra on truncated bases",
                   1e-12, 10.0, [](std::mt19937_64&, std::string& detail) {
                     detail = "M 1..4, N_max 1..4, all mode pairs";
                     return commutation_sweep(Statistics::Fermion);
                   });
  runner.criterion("pauli", "double occupancy always collapses to the zero vector", 0.0,
                   0.0, [](std::mt19937_64& rng, std::string& detail) {
                     return pauli_exclusion(rng, detail);
                   });
  runner.criterion("permutation", "permutation invariance of mode lists", 1e-12, 0.0,
                   [](std::mt19937_64& rng, std::string& detail) {
                     return permutation_invariance(rng, detail);
                   });
  runner.criterion("oracle-inner", "inner products match the labeled-tensor oracle", 1e-10,
                   30.0, [](std::mt19937_64&, std::string& detail) {
                     return oracle_inner_equivalence(detail);
                   });
  runner.criterion("oracle-spectrum", "sector spectra match the labeled-tensor oracle",
                   1e-9, 0.0, [](std::mt19937_64& rng, std::string& detail) {
                     return oracle_spectral_equivalence(rng, detail);
                   });
  runner.criterion("golden-spectra", "two-site hopping golden spectra", 1e-9, 0.0,
                   [](std::mt19937_64&, std::string& detail) {
                     return golden_spectra(detail);
                   });
  runner.criterion("golden-rabi", "two-site Rabi transfer at t = pi/2", 1e-8, 0.0,
                   [](std::mt19937_64&, std::string& detail) {
                     return golden_rabi(detail);
                   });
  runner.criterion("dynamics", "norm and particle number conserved under evolution", 1e-9,
                   0.0, [](std::mt19937_64& rng, std::string& detail) {
                     return dynamics_conservation(rng, detail);
                   });
  runner.criterion("motivation", "two-particle product-state identities", 1e-10, 0.0,
                   [](std::mt19937_64& rng, std::string& detail) {
                     return motivation_identities(rng, detail);
                   });

  return runner.results;
}

bool all_passed(const std::vector<CriterionResult>& results) {
  return std::all_of(results.begin(), results.end(),
                     [](const CriterionResult& r) { return r.pass; });
}

std::string format_report(const std::vector<CriterionResult>& results) {
  std::ostringstream os;
  for (const auto& r : results) {
    os << (r.pass ? "PASS" : "FAIL") << ' ' << r.id << " worst " << io::format_double(r.worst)
       << " tol " << io::format_double(r.tolerance) << " (" << r.label;
    if (!r.detail.empty()) os << "; " << r.detail;
    os << ")\n";
  }
  std::size_t passed = 0;
  for (const auto& r : results) passed += r.pass ? 1 : 0;
  os << passed << "/" << results.size() << " criteria passed\n";
  return os.str();
}

}  // namespace selfcheck
}  // namespace qspace
