#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "qspace/fock.hpp"

namespace qspace {

struct LadderOp {
  enum class Action { Create, Annihilate };

  Action action;
  ModeIndex mode;

  static LadderOp create(ModeIndex m) { return {Action::Create, m}; }
  static LadderOp annihilate(ModeIndex m) { return {Action::Annihilate, m}; }

  bool operator==(const LadderOp&) const = default;
};

/// One term of a formal operator sum: coeff times a product of ladder
/// operators. factors[0] is the leftmost operator, i.e. the one applied last.
struct OperatorTerm {
  Complex coeff;
  std::vector<LadderOp> factors;
};

/// Finite formal sum of ladder-operator products. Terms with an empty factor
/// list are scalars. Expressions are applied, never simplified symbolically.
struct OperatorExpr {
  std::vector<OperatorTerm> terms;

  static OperatorExpr identity();
  static OperatorExpr single(LadderOp op);
  /// a†_m a_m
  static OperatorExpr number_operator(ModeIndex m);
  /// sum_m a†_m a_m over all modes of the space
  static OperatorExpr total_number(std::size_t num_modes);

  OperatorExpr& operator+=(const OperatorExpr& other);
};

/// Result of a ladder string on one basis state. The amplitude factor is
/// sign * sqrt(radicand); keeping the radicand as an exact integer until a
/// single final sqrt makes number-operator eigenvalues and the commutation
/// residuals exact rather than accurate to rounding.
struct LadderedState {
  OccupationState state;
  int sign;
  std::uint64_t radicand;

  double amplitude() const;
};

/// Applies factors right-to-left to a canonical basis state. nullopt when
/// the string annihilates the state (empty mode, or a fermionic double
/// occupancy, whose class is the Pauli null-norm vector).
std::optional<LadderedState> apply_ladder_string(Statistics stats,
                                                 std::span<const LadderOp> factors,
                                                 const OccupationState& state);

/// Bosonic ladder action on normalized occupation kets:
/// annihilate: n -> n-1 with factor sqrt(n) (vanishes at n = 0);
/// create:     n -> n+1 with factor sqrt(n+1).
FockVector apply_boson(LadderOp op, const FockVector& v);

/// Fermionic ladder action on canonical states. Create on an occupied mode
/// gives the zero vector (Pauli); otherwise the mode is prepended and
/// canonicalized, i.e. sign (-1)^(occupied modes below it). Annihilate on an
/// empty mode gives the zero vector; otherwise the mode is removed with the
/// same sign rule.
FockVector apply_fermion(LadderOp op, const FockVector& v);

/// Statistics dispatch of the two actions above.
FockVector apply_ladder(LadderOp op, const FockVector& v);

/// Linear extension: sum of coeff * (factors applied right-to-left).
FockVector apply_expr(const OperatorExpr& expr, const FockVector& v);

// ---- normalized-ket picture ------------------------------------------------
//
// Raw basis states carry squared norm prod n_k! under the symmetric product;
// ladder operators act on unit-normalized kets. The two pictures differ only
// by per-state sqrt(prod n_k!) scaling (none at all for fermions).

/// Plain l2 product of ket-picture coefficient maps (kets are orthonormal).
Complex ket_dot(const FockVector& a, const FockVector& b);
double ket_norm(const FockVector& v);

/// raw amplitudes -> normalized-ket amplitudes (multiply by sqrt(prod n_k!))
FockVector to_normalized_kets(const FockVector& raw);
/// normalized-ket amplitudes -> raw amplitudes
FockVector to_raw_amplitudes(const FockVector& kets);

// ---- commutation-relation verification --------------------------------------

struct CommutatorReport {
  double max_residual = 0.0;        // worst over the three families
  double number_residual = 0.0;     // [a,a†]-delta (or {C,C†}-delta)
  double annihilate_residual = 0.0; // [a,a] (or {C,C})
  double create_residual = 0.0;     // [a†,a†] (or {C†,C†})
  std::size_t states_checked = 0;

  bool pass(double tol) const { return max_residual <= tol; }
};

/// Evaluates, on every basis state with total_n <= n_max,
///   ([a_alpha, a†_beta] - delta)|psi>, [a_alpha, a_beta]|psi>, [a†_alpha, a†_beta]|psi>
/// for bosons, and the anticommutator versions for fermions, reporting the
/// maximum ket-norm residual. The bosonic create-create family restricts to
/// total_n <= n_max - 2 so both orderings stay inside the truncation.
CommutatorReport commutator_check(const FockSpace& space, ModeIndex alpha,
                                  ModeIndex beta, std::uint32_t n_max);

/// Worst residual over all mode pairs of the space.
CommutatorReport commutator_check_all_pairs(const FockSpace& space, std::uint32_t n_max);

}  // namespace qspace
