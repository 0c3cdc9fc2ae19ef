#pragma once

#include <Eigen/Dense>

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "qspace/fock.hpp"
#include "qspace/ladder.hpp"

namespace qspace {

/// One- and two-body matrix elements defining
///   H = sum_kl T_kl a†_k a_l + (1/2) sum_klpq V_klpq a†_k a†_l a_p a_q.
/// T must be Hermitian and V must satisfy V_klpq = conj(V_qplk); both are
/// checked by validate().
struct MatrixElements {
  std::size_t modes = 0;
  Eigen::MatrixXcd T;                                // modes x modes
  std::map<std::array<ModeIndex, 4>, Complex> V;     // sparse (k,l,p,q)

  static MatrixElements one_body(const Eigen::MatrixXcd& t);

  Complex v_at(ModeIndex k, ModeIndex l, ModeIndex p, ModeIndex q) const;
  void set_v(ModeIndex k, ModeIndex l, ModeIndex p, ModeIndex q, Complex value);

  /// Throws std::invalid_argument on shape mismatch, out-of-range indices,
  /// non-Hermitian T (1e-12) or a V table violating V_klpq = conj(V_qplk).
  void validate() const;
};

/// Finite slice of the occupation basis: either every state with
/// total_n <= n_max or the fixed sector total_n == n. States are ordered
/// lexicographically on the dense occupation vector.
class TruncatedBasis {
 public:
  static TruncatedBasis with_max_total(const FockSpace& space, std::uint32_t n_max);
  static TruncatedBasis with_sector(const FockSpace& space, std::uint32_t n);

  const FockSpace& space() const { return space_; }
  const std::vector<OccupationState>& states() const { return states_; }
  std::size_t size() const { return states_.size(); }
  const OccupationState& state(std::size_t i) const { return states_[i]; }
  std::optional<std::size_t> index_of(const OccupationState& s) const;

  bool is_sector() const { return sector_.has_value(); }
  std::uint32_t particle_bound() const { return sector_ ? *sector_ : n_max_; }

 private:
  TruncatedBasis(FockSpace space, std::vector<OccupationState> states,
                 std::optional<std::uint32_t> sector, std::uint32_t n_max);

  FockSpace space_;
  std::vector<OccupationState> states_;
  std::map<OccupationState, std::size_t> index_;
  std::optional<std::uint32_t> sector_;
  std::uint32_t n_max_;
};

/// sum_kl T_kl a†_k a_l + (1/2) sum_klpq V_klpq a†_k a†_l a_p a_q with
/// zero-coefficient terms dropped (for fermions also k==l / p==q two-body
/// terms, which vanish identically).
OperatorExpr build_hamiltonian(const MatrixElements& elements, Statistics stats);

struct BasisMatrix {
  Eigen::MatrixXcd matrix;
  /// squared ket-norm of apply_expr output falling outside the basis,
  /// summed over columns; nonzero means the truncation clipped the operator
  double truncated_weight = 0.0;
  std::size_t truncation_events = 0;
};

/// M_ij = <b_i| expr |b_j> on normalized occupation kets. Exactly Hermitian
/// for Hermitian inputs and exactly sector-block-diagonal for number-
/// conserving expressions.
BasisMatrix matrix_in_basis(const OperatorExpr& expr, const TruncatedBasis& basis);

struct SpectrumResult {
  Eigen::VectorXd eigenvalues;   // ascending
  Eigen::MatrixXcd eigenvectors; // columns, orthonormal
};

/// Eigendecomposition of a Hermitian matrix (Hermiticity checked to 1e-10,
/// else std::invalid_argument). Every pair satisfies |Hv - lambda v| <= 1e-9,
/// enforced after the solve.
SpectrumResult spectrum(const Eigen::MatrixXcd& h);

/// psi(t) = exp(-i H t) psi0 via the spectral decomposition (hbar = 1).
/// Requires |psi0| = 1 to 1e-10; the result norm is checked to 1e-9.
Eigen::VectorXcd evolve(const Eigen::MatrixXcd& h, const Eigen::VectorXcd& psi0,
                        double t, std::size_t steps = 1);

struct EvolutionSample {
  double time;
  Eigen::VectorXcd psi;
};

/// steps+1 snapshots at times k*t/steps, k = 0..steps (exact spectral
/// evolution at each sample; steps only controls observable sampling).
std::vector<EvolutionSample> evolve_sampled(const Eigen::MatrixXcd& h,
                                            const Eigen::VectorXcd& psi0, double t,
                                            std::size_t steps);

/// Ket-picture coefficients of v in the basis. Weight outside the basis is
/// accumulated into *truncated_weight when given.
Eigen::VectorXcd to_coefficients(const TruncatedBasis& basis, const FockVector& v,
                                 double* truncated_weight = nullptr);
FockVector from_coefficients(const TruncatedBasis& basis, const Eigen::VectorXcd& c);

/// <sum_k n_k> and per-mode <n_k> of a coefficient vector over the basis.
double total_number_expectation(const TruncatedBasis& basis, const Eigen::VectorXcd& c);
std::vector<double> occupancy_expectations(const TruncatedBasis& basis,
                                           const Eigen::VectorXcd& c);

}  // namespace qspace
