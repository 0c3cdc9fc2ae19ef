#include "qspace/ladder.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qspace {

OperatorExpr OperatorExpr::identity() {
  return OperatorExpr{{OperatorTerm{Complex(1.0, 0.0), {}}}};
}

OperatorExpr OperatorExpr::single(LadderOp op) {
  return OperatorExpr{{OperatorTerm{Complex(1.0, 0.0), {op}}}};
}

OperatorExpr OperatorExpr::number_operator(ModeIndex m) {
  return OperatorExpr{
      {OperatorTerm{Complex(1.0, 0.0), {LadderOp::create(m), LadderOp::annihilate(m)}}}};
}

OperatorExpr OperatorExpr::total_number(std::size_t num_modes) {
  OperatorExpr expr;
  for (std::size_t m = 0; m < num_modes; ++m) {
    expr.terms.push_back(
        OperatorTerm{Complex(1.0, 0.0),
                     {LadderOp::create(static_cast<ModeIndex>(m)),
                      LadderOp::annihilate(static_cast<ModeIndex>(m))}});
  }
  return expr;
}

OperatorExpr& OperatorExpr::operator+=(const OperatorExpr& other) {
  terms.insert(terms.end(), other.terms.begin(), other.terms.end());
  return *this;
}

double LadderedState::amplitude() const {
  return static_cast<double>(sign) * std::sqrt(static_cast<double>(radicand));
}

std::optional<LadderedState> apply_ladder_string(Statistics stats,
                                                 std::span<const LadderOp> factors,
                                                 const OccupationState& state) {
  LadderedState cur{state, 1, 1};
  for (auto it = factors.rbegin(); it != factors.rend(); ++it) {
    const LadderOp& op = *it;
    const std::uint32_t n = cur.state.occupation(op.mode);
    if (stats == Statistics::Boson) {
      if (op.action == LadderOp::Action::Annihilate) {
        if (n == 0) return std::nullopt;
        cur.radicand *= n;
        cur.state = cur.state.with_decrement(op.mode);
      } else {
        cur.radicand *= n + 1;
        cur.state = cur.state.with_increment(op.mode);
      }
    } else {
      if (op.action == LadderOp::Action::Annihilate) {
        if (n == 0) return std::nullopt;
        if (cur.state.particles_below(op.mode) % 2 == 1) cur.sign = -cur.sign;
        cur.state = cur.state.with_decrement(op.mode);
      } else {
        if (n != 0) return std::nullopt;  // Pauli null-norm class
        if (cur.state.particles_below(op.mode) % 2 == 1) cur.sign = -cur.sign;
        cur.state = cur.state.with_increment(op.mode);
      }
    }
  }
  return cur;
}

namespace {

FockVector apply_string_linear(const OperatorExpr& expr, const FockVector& v) {
  FockVector out(v.stats());
  for (const auto& [state, amp] : v.terms()) {
    for (const auto& term : expr.terms) {
      auto res = apply_ladder_string(v.stats(), term.factors, state);
      if (res) {
        out.add_term(res->state, amp * term.coeff * res->amplitude());
      }
    }
  }
  return out;
}

FockVector apply_one(Statistics required, LadderOp op, const FockVector& v) {
  if (v.stats() != required) {
    throw std::invalid_argument("ladder action applied to the wrong statistics");
  }
  return apply_string_linear(OperatorExpr::single(op), v);
}

}  // namespace

FockVector apply_boson(LadderOp op, const FockVector& v) {
  return apply_one(Statistics::Boson, op, v);
}

FockVector apply_fermion(LadderOp op, const FockVector& v) {
  return apply_one(Statistics::Fermion, op, v);
}

FockVector apply_ladder(LadderOp op, const FockVector& v) {
  return apply_string_linear(OperatorExpr::single(op), v);
}

FockVector apply_expr(const OperatorExpr& expr, const FockVector& v) {
  return apply_string_linear(expr, v);
}

Complex ket_dot(const FockVector& a, const FockVector& b) {
  if (a.stats() != b.stats()) {
    throw std::invalid_argument("ket_dot across mixed statistics");
  }
  Complex sum(0.0, 0.0);
  auto ia = a.terms().begin();
  auto ib = b.terms().begin();
  while (ia != a.terms().end() && ib != b.terms().end()) {
    if (ia->first < ib->first) {
      ++ia;
    } else if (ib->first < ia->first) {
      ++ib;
    } else {
      sum += std::conj(ia->second) * ib->second;
      ++ia;
      ++ib;
    }
  }
  return sum;
}

double ket_norm(const FockVector& v) {
  double n2 = 0.0;
  for (const auto& [state, amp] : v.terms()) {
    n2 += std::norm(amp);
  }
  return std::sqrt(n2);
}

FockVector to_normalized_kets(const FockVector& raw) {
  FockVector out(raw.stats());
  for (const auto& [state, amp] : raw.terms()) {
    out.add_term(state, amp * std::sqrt(occupation_factorial(state)));
  }
  return out;
}

FockVector to_raw_amplitudes(const FockVector& kets) {
  FockVector out(kets.stats());
  for (const auto& [state, amp] : kets.terms()) {
    out.add_term(state, amp / std::sqrt(occupation_factorial(state)));
  }
  return out;
}

namespace {

// bracket_residual = A B |psi> -+ B A |psi> - delta_term |psi>
double bracket_residual(Statistics stats, LadderOp first, LadderOp second,
                        double delta_term, const OccupationState& psi) {
  const double eta = stats == Statistics::Boson ? -1.0 : 1.0;  // commutator vs anticommutator
  OperatorExpr expr;
  expr.terms.push_back(OperatorTerm{Complex(1.0, 0.0), {first, second}});
  expr.terms.push_back(OperatorTerm{Complex(eta, 0.0), {second, first}});
  if (delta_term != 0.0) {
    expr.terms.push_back(OperatorTerm{Complex(-delta_term, 0.0), {}});
  }
  return ket_norm(apply_expr(expr, FockVector::unit(psi)));
}

}  // namespace

CommutatorReport commutator_check(const FockSpace& space, ModeIndex alpha,
                                  ModeIndex beta, std::uint32_t n_max) {
  space.require_mode(alpha);
  space.require_mode(beta);
  CommutatorReport report;
  const double delta = alpha == beta ? 1.0 : 0.0;
  for (const auto& psi : enumerate_states_up_to(space, n_max)) {
    report.number_residual =
        std::max(report.number_residual,
                 bracket_residual(space.stats, LadderOp::annihilate(alpha),
                                  LadderOp::create(beta), delta, psi));
    report.annihilate_residual =
        std::max(report.annihilate_residual,
                 bracket_residual(space.stats, LadderOp::annihilate(alpha),
                                  LadderOp::annihilate(beta), 0.0, psi));
    if (space.stats == Statistics::Fermion || psi.total_n() + 2 <= n_max) {
      report.create_residual =
          std::max(report.create_residual,
                   bracket_residual(space.stats, LadderOp::create(alpha),
                                    LadderOp::create(beta), 0.0, psi));
    }
    ++report.states_checked;
  }
  report.max_residual = std::max({report.number_residual, report.annihilate_residual,
                                  report.create_residual});
  return report;
}

CommutatorReport commutator_check_all_pairs(const FockSpace& space, std::uint32_t n_max) {
  CommutatorReport worst;
  for (ModeIndex a = 0; a < space.num_modes; ++a) {
    for (ModeIndex b = 0; b < space.num_modes; ++b) {
      CommutatorReport r = commutator_check(space, a, b, n_max);
      worst.number_residual = std::max(worst.number_residual, r.number_residual);
      worst.annihilate_residual = std::max(worst.annihilate_residual, r.annihilate_residual);
      worst.create_residual = std::max(worst.create_residual, r.create_residual);
      worst.max_residual = std::max(worst.max_residual, r.max_residual);
      worst.states_checked += r.states_checked;
    }
  }
  return worst;
}

}  // namespace qspace
