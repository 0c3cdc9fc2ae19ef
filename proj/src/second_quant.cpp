#include "qspace/second_quant.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qspace {

namespace {
constexpr double kHermitianTol = 1e-12;
constexpr double kSpectrumHermitianTol = 1e-10;
constexpr double kEigenResidualTol = 1e-9;
constexpr double kUnitNormTol = 1e-10;
constexpr double kEvolveNormTol = 1e-9;
}  // namespace

MatrixElements MatrixElements::one_body(const Eigen::MatrixXcd& t) {
  MatrixElements me;
  me.modes = static_cast<std::size_t>(t.rows());
  me.T = t;
  return me;
}

Complex MatrixElements::v_at(ModeIndex k, ModeIndex l, ModeIndex p, ModeIndex q) const {
  auto it = V.find({k, l, p, q});
  return it == V.end() ? Complex(0.0, 0.0) : it->second;
}

void MatrixElements::set_v(ModeIndex k, ModeIndex l, ModeIndex p, ModeIndex q, Complex value) {
  V[{k, l, p, q}] = value;
}

void MatrixElements::validate() const {
  if (T.rows() != static_cast<Eigen::Index>(modes) ||
      T.cols() != static_cast<Eigen::Index>(modes)) {
    throw std::invalid_argument("one-body matrix shape does not match mode count");
  }
  const double t_dev = (T - T.adjoint()).cwiseAbs().maxCoeff();
  if (modes > 0 && t_dev > kHermitianTol) {
    throw std::invalid_argument("one-body matrix is not Hermitian");
  }
  for (const auto& [key, value] : V) {
    for (ModeIndex idx : key) {
      if (idx >= modes) {
        throw std::invalid_argument("two-body index out of range");
      }
    }
    const auto& [k, l, p, q] = key;
    const Complex mirror = v_at(q, p, l, k);
    if (std::abs(value - std::conj(mirror)) > kHermitianTol) {
      throw std::invalid_argument("two-body table violates V_klpq = conj(V_qplk)");
    }
  }
}

TruncatedBasis::TruncatedBasis(FockSpace space, std::vector<OccupationState> states,
                               std::optional<std::uint32_t> sector, std::uint32_t n_max)
    : space_(space), states_(std::move(states)), sector_(sector), n_max_(n_max) {
  for (std::size_t i = 0; i < states_.size(); ++i) {
    index_.emplace(states_[i], i);
  }
}

TruncatedBasis TruncatedBasis::with_max_total(const FockSpace& space, std::uint32_t n_max) {
  return TruncatedBasis(space, enumerate_states_up_to(space, n_max), std::nullopt, n_max);
}

TruncatedBasis TruncatedBasis::with_sector(const FockSpace& space, std::uint32_t n) {
  return TruncatedBasis(space, enumerate_sector(space, n), n, n);
}

std::optional<std::size_t> TruncatedBasis::index_of(const OccupationState& s) const {
  auto it = index_.find(s);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

OperatorExpr build_hamiltonian(const MatrixElements& elements, Statistics stats) {
  elements.validate();
  OperatorExpr expr;
  for (ModeIndex k = 0; k < elements.modes; ++k) {
    for (ModeIndex l = 0; l < elements.modes; ++l) {
      const Complex t = elements.T(k, l);
      if (std::abs(t) < epsilon()) continue;
      expr.terms.push_back(
          OperatorTerm{t, {LadderOp::create(k), LadderOp::annihilate(l)}});
    }
  }
  for (const auto& [key, value] : elements.V) {
    if (std::abs(value) < epsilon()) continue;
    const auto& [k, l, p, q] = key;
    if (stats == Statistics::Fermion && (k == l || p == q)) continue;  // vanishes identically
    expr.terms.push_back(OperatorTerm{0.5 * value,
                                      {LadderOp::create(k), LadderOp::create(l),
                                       LadderOp::annihilate(p), LadderOp::annihilate(q)}});
  }
  return expr;
}

BasisMatrix matrix_in_basis(const OperatorExpr& expr, const TruncatedBasis& basis) {
  const std::size_t d = basis.size();
  BasisMatrix out;
  out.matrix = Eigen::MatrixXcd::Zero(d, d);
  for (std::size_t j = 0; j < d; ++j) {
    const FockVector column = apply_expr(expr, FockVector::unit(basis.state(j)));
    for (const auto& [state, amp] : column.terms()) {
      if (auto i = basis.index_of(state)) {
        out.matrix(static_cast<Eigen::Index>(*i), static_cast<Eigen::Index>(j)) = amp;
      } else {
        out.truncated_weight += std::norm(amp);
        ++out.truncation_events;
      }
    }
  }
  return out;
}

SpectrumResult spectrum(const Eigen::MatrixXcd& h) {
  if (h.rows() != h.cols()) {
    throw std::invalid_argument("spectrum requires a square matrix");
  }
  if (h.rows() == 0) {
    return SpectrumResult{Eigen::VectorXd(0), Eigen::MatrixXcd(0, 0)};
  }
  const double dev = (h - h.adjoint()).cwiseAbs().maxCoeff();
  if (dev > kSpectrumHermitianTol) {
    throw std::invalid_argument("spectrum requires a Hermitian matrix");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("eigensolver failed to converge");
  }
  SpectrumResult result{solver.eigenvalues(), solver.eigenvectors()};
  for (Eigen::Index i = 0; i < result.eigenvalues.size(); ++i) {
    const double residual =
        (h * result.eigenvectors.col(i) - result.eigenvalues(i) * result.eigenvectors.col(i))
            .norm();
    if (residual > kEigenResidualTol) {
      throw std::runtime_error("eigenpair residual above contract");
    }
  }
  return result;
}

Eigen::VectorXcd evolve(const Eigen::MatrixXcd& h, const Eigen::VectorXcd& psi0, double t,
                        std::size_t steps) {
  auto samples = evolve_sampled(h, psi0, t, std::max<std::size_t>(steps, 1));
  return samples.back().psi;
}

std::vector<EvolutionSample> evolve_sampled(const Eigen::MatrixXcd& h,
                                            const Eigen::VectorXcd& psi0, double t,
                                            std::size_t steps) {
  if (steps == 0) {
    throw std::invalid_argument("evolution needs at least one step");
  }
  if (psi0.size() != h.rows()) {
    throw std::invalid_argument("state dimension does not match the Hamiltonian");
  }
  if (std::abs(psi0.norm() - 1.0) > kUnitNormTol) {
    throw std::invalid_argument("initial state must be normalized to 1");
  }
  const SpectrumResult eig = spectrum(h);
  const Eigen::VectorXcd projected = eig.eigenvectors.adjoint() * psi0;
  std::vector<EvolutionSample> samples;
  samples.reserve(steps + 1);
  for (std::size_t s = 0; s <= steps; ++s) {
    const double ts = t * static_cast<double>(s) / static_cast<double>(steps);
    Eigen::VectorXcd phased(projected.size());
    for (Eigen::Index i = 0; i < projected.size(); ++i) {
      phased(i) = std::exp(Complex(0.0, -eig.eigenvalues(i) * ts)) * projected(i);
    }
    EvolutionSample sample{ts, eig.eigenvectors * phased};
    if (std::abs(sample.psi.norm() - 1.0) > kEvolveNormTol) {
      throw std::runtime_error("evolution norm drifted beyond tolerance");
    }
    samples.push_back(std::move(sample));
  }
  return samples;
}

Eigen::VectorXcd to_coefficients(const TruncatedBasis& basis, const FockVector& v,
                                 double* truncated_weight) {
  Eigen::VectorXcd c = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(basis.size()));
  for (const auto& [state, amp] : v.terms()) {
    if (auto i = basis.index_of(state)) {
      c(static_cast<Eigen::Index>(*i)) = amp;
    } else if (truncated_weight) {
      *truncated_weight += std::norm(amp);
    }
  }
  return c;
}

FockVector from_coefficients(const TruncatedBasis& basis, const Eigen::VectorXcd& c) {
  if (c.size() != static_cast<Eigen::Index>(basis.size())) {
    throw std::invalid_argument("coefficient dimension does not match the basis");
  }
  FockVector v(basis.space().stats);
  for (Eigen::Index i = 0; i < c.size(); ++i) {
    v.add_term(basis.state(static_cast<std::size_t>(i)), c(i));
  }
  return v;
}

double total_number_expectation(const TruncatedBasis& basis, const Eigen::VectorXcd& c) {
  double acc = 0.0;
  for (Eigen::Index i = 0; i < c.size(); ++i) {
    acc += static_cast<double>(basis.state(static_cast<std::size_t>(i)).total_n()) *
           std::norm(c(i));
  }
  return acc;
}

std::vector<double> occupancy_expectations(const TruncatedBasis& basis,
                                           const Eigen::VectorXcd& c) {
  std::vector<double> occ(basis.space().num_modes, 0.0);
  for (Eigen::Index i = 0; i < c.size(); ++i) {
    const double w = std::norm(c(i));
    if (w == 0.0) continue;
    for (const auto& [mode, count] : basis.state(static_cast<std::size_t>(i)).entries()) {
      occ[mode] += static_cast<double>(count) * w;
    }
  }
  return occ;
}

}  // namespace qspace
