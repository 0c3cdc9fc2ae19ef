#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <span>
#include <vector>

#include "qspace/fock.hpp"
#include "qspace/second_quant.hpp"

namespace qspace {
namespace oracle {

/// Dense n-fold labeled tensor product state: amplitudes indexed by the
/// label tuple (i_1,...,i_n), i_k in 0..dim-1, with i_1 the most significant
/// digit. Deliberately brute force; construction enforces n <= 4, dim <= 4.
class LabeledTensor {
 public:
  LabeledTensor(std::size_t particles, std::size_t dim);

  /// e_{l_1} (x) ... (x) e_{l_n}
  static LabeledTensor basis_tuple(std::size_t dim, std::span<const ModeIndex> labels);

  std::size_t particles() const { return particles_; }
  std::size_t dim() const { return dim_; }
  std::size_t size() const { return amplitudes_.size(); }

  Complex& operator[](std::size_t flat) { return amplitudes_[flat]; }
  Complex operator[](std::size_t flat) const { return amplitudes_[flat]; }

  std::size_t rank(std::span<const std::size_t> labels) const;
  std::vector<std::size_t> unrank(std::size_t flat) const;

  LabeledTensor& operator+=(const LabeledTensor& other);
  LabeledTensor& operator-=(const LabeledTensor& other);
  LabeledTensor& operator*=(Complex scale);

  friend LabeledTensor operator+(LabeledTensor a, const LabeledTensor& b) { return a += b; }
  friend LabeledTensor operator-(LabeledTensor a, const LabeledTensor& b) { return a -= b; }
  friend LabeledTensor operator*(Complex scale, LabeledTensor v) { return v *= scale; }

 private:
  std::size_t particles_;
  std::size_t dim_;
  std::vector<Complex> amplitudes_;
};

Complex tensor_dot(const LabeledTensor& a, const LabeledTensor& b);
double tensor_norm(const LabeledTensor& v);

/// Slot permutation: out(i_1..i_n) = in(i_{perm[1]}..i_{perm[n]}).
LabeledTensor permute_slots(const LabeledTensor& v, std::span<const std::size_t> perm);

/// The projections sigma^n (Boson) and tau^n (Fermion):
/// (1/n!) sum over all slot permutations, parity-weighted for fermions.
LabeledTensor symmetrize(const LabeledTensor& v, Statistics stats);

/// Isometry onto occupation states: for a tensor in the (anti)symmetric
/// subspace (projection residual <= 1e-10, else std::invalid_argument),
/// returns the ket-picture FockVector with identical inner products. The
/// bookkeeping uses |sigma^n(e_tuple)|^2 = prod n_k!/n!, so each canonical
/// tuple contributes through the unit vector sqrt(n!/prod n_k!) sigma^n(e_tuple).
FockVector to_occupation(const LabeledTensor& v, Statistics stats);

/// First-quantized Hamiltonian on the full labeled space:
///   sum_i T^(i) + sum_{i<j} W^(i,j),
/// where the pair kernel W is read off the two-body table as
///   W[(a,b),(c,d)] = (V_abdc + V_bacd) / 2,
/// the symmetrized slot assignment matching
///   (1/2) sum V_klpq a†_k a†_l a_p a_q.
Eigen::MatrixXcd first_quantized_h(const MatrixElements& elements, std::size_t particles);

/// Permutation operator exchanging slots i and j, as a dense matrix.
Eigen::MatrixXcd pair_swap_matrix(std::size_t dim, std::size_t particles, std::size_t i,
                                  std::size_t j);

/// Orthonormal basis (columns) of the range of sigma^n / tau^n, assembled by
/// Gram-Schmidt over the projected canonical tensors with threshold 1e-8.
Eigen::MatrixXcd subspace_basis(std::size_t dim, std::size_t particles, Statistics stats);

/// Eigenvalues of the first-quantized Hamiltonian restricted to the
/// (anti)symmetric subspace, ascending.
Eigen::VectorXd restricted_eigenvalues(const MatrixElements& elements, std::size_t particles,
                                       Statistics stats);

}  // namespace oracle
}  // namespace qspace
