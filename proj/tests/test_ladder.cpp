#include <doctest.h>

#include <random>

#include "oracle_helpers.hpp"
#include "qspace/fock.hpp"
#include "qspace/inner_product.hpp"
#include "qspace/ladder.hpp"

using namespace qspace;
using qspace_test::random_vector;

namespace {
const FockSpace kBoson2{Statistics::Boson, 2};
const FockSpace kFermion3{Statistics::Fermion, 3};

OccupationState state_of(const FockSpace& space, std::initializer_list<ModeIndex> modes) {
  auto made = make_state(space, std::span<const ModeIndex>(modes.begin(), modes.size()));
  REQUIRE(made.has_value());
  return made->state;
}
}  // namespace

TEST_CASE("boson annihilation carries sqrt(n)") {
  const FockVector two = FockVector::unit(state_of(kBoson2, {0, 0}));  // |n_0 = 2>
  const FockVector lowered = apply_boson(LadderOp::annihilate(0), two);
  CHECK(lowered.term_count() == 1);
  CHECK(lowered.amplitude(state_of(kBoson2, {0})) == Complex(std::sqrt(2.0), 0.0));

  CHECK(apply_boson(LadderOp::annihilate(0), FockVector::vacuum(Statistics::Boson)).is_zero());
}

TEST_CASE("number operator is exact on basis kets") {
  const FockSpace space{Statistics::Boson, 2};
  const FockVector v = FockVector::unit(state_of(space, {0, 0, 0, 1}));  // n_0=3, n_1=1
  const FockVector n0 = apply_expr(OperatorExpr::number_operator(0), v);
  CHECK(n0.amplitude(state_of(space, {0, 0, 0, 1})) == Complex(3.0, 0.0));  // bit-exact

  const FockVector total = apply_expr(OperatorExpr::total_number(2), v);
  CHECK(total.amplitude(state_of(space, {0, 0, 0, 1})) == Complex(4.0, 0.0));
}

TEST_CASE("fermion creation respects Pauli and the canonical sign") {
  const FockVector e1 = basis_vector(kFermion3, {1});
  CHECK(apply_fermion(LadderOp::create(1), e1).is_zero());

  // C_1 |e1) = |0)
  const FockVector annihilated = apply_fermion(LadderOp::annihilate(1), e1);
  CHECK(annihilated.amplitude(OccupationState(Statistics::Fermion)) == Complex(1.0, 0.0));

  // C_2 on canonical |e1 e2) anticommutes past mode 1: -|e1)
  const FockVector e12 = basis_vector(kFermion3, {1, 2});
  const FockVector dropped = apply_fermion(LadderOp::annihilate(2), e12);
  CHECK(dropped.amplitude(state_of(kFermion3, {1})) == Complex(-1.0, 0.0));

  // annihilating an empty mode gives the zero vector
  CHECK(apply_fermion(LadderOp::annihilate(0), e1).is_zero());
}

TEST_CASE("fermion creation prepends then canonicalizes") {
  // C†_2 C†_1 |0> builds the list [2,1], one transposition from canonical
  FockVector v = FockVector::vacuum(Statistics::Fermion);
  v = apply_fermion(LadderOp::create(1), v);
  v = apply_fermion(LadderOp::create(2), v);
  const std::vector<ModeIndex> modes{2, 1};
  const FockVector direct = basis_vector(kFermion3, modes);
  CHECK(ket_norm(v - direct) == 0.0);
  CHECK(v.amplitude(state_of(kFermion3, {1, 2})) == Complex(-1.0, 0.0));
}

TEST_CASE("apply_expr composes factors right-to-left") {
  const FockVector v = FockVector::unit(state_of(kBoson2, {0, 0}));
  CHECK(ket_norm(apply_expr(OperatorExpr::identity(), v) - v) == 0.0);

  // hopping a†_0 a_1 + a†_1 a_0 moves the particle across
  OperatorExpr hop;
  hop.terms.push_back({Complex(1.0, 0.0), {LadderOp::create(0), LadderOp::annihilate(1)}});
  hop.terms.push_back({Complex(1.0, 0.0), {LadderOp::create(1), LadderOp::annihilate(0)}});
  const FockVector one = FockVector::unit(state_of(kBoson2, {1}));
  const FockVector hopped = apply_expr(hop, one);
  CHECK(hopped.term_count() == 1);
  CHECK(hopped.amplitude(state_of(kBoson2, {0})) == Complex(1.0, 0.0));
}

TEST_CASE("apply_expr matches repeated single-operator application") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 100; ++trial) {
    const FockSpace& space = trial % 2 == 0 ? kBoson2 : kFermion3;
    FockVector v = random_vector(rng, space, 3, 3);
    std::vector<LadderOp> factors;
    for (int k = 0; k < 3; ++k) {
      const ModeIndex m = static_cast<ModeIndex>(rng() % space.num_modes);
      factors.push_back(rng() % 2 == 0 ? LadderOp::create(m) : LadderOp::annihilate(m));
    }
    OperatorExpr expr;
    expr.terms.push_back({Complex(1.0, 0.0), factors});
    FockVector folded = v;
    for (auto it = factors.rbegin(); it != factors.rend(); ++it) {
      folded = apply_ladder(*it, folded);
    }
    CHECK(ket_norm(apply_expr(expr, v) - folded) < 1e-12);
  }
}

TEST_CASE("statistics mismatch throws") {
  const FockVector f = basis_vector(kFermion3, {0});
  CHECK_THROWS_AS((void)apply_boson(LadderOp::create(0), f), std::invalid_argument);
  const FockVector b = basis_vector(kBoson2, {0});
  CHECK_THROWS_AS((void)apply_fermion(LadderOp::create(0), b), std::invalid_argument);
}

TEST_CASE("adjointness of create and annihilate") {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 200; ++trial) {
    const FockSpace& space = trial % 2 == 0 ? kBoson2 : kFermion3;
    const FockVector u = random_vector(rng, space, 3, 3);
    const FockVector v = random_vector(rng, space, 3, 3);
    const ModeIndex m = static_cast<ModeIndex>(rng() % space.num_modes);
    const Complex lhs = ket_dot(apply_ladder(LadderOp::create(m), u), v);
    const Complex rhs = ket_dot(u, apply_ladder(LadderOp::annihilate(m), v));
    CHECK(std::abs(lhs - rhs) < 1e-12);
  }
}

TEST_CASE("fermion nilpotency of creation") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 200; ++trial) {
    const FockVector v = random_vector(rng, kFermion3, 3, 3);
    const ModeIndex m = static_cast<ModeIndex>(rng() % 3);
    const FockVector twice =
        apply_fermion(LadderOp::create(m), apply_fermion(LadderOp::create(m), v));
    CHECK(twice.is_zero());
  }
}

TEST_CASE("picture conversion and the raw product") {
  std::mt19937_64 rng(24);
  for (int trial = 0; trial < 100; ++trial) {
    const FockSpace& space = trial % 2 == 0 ? kBoson2 : kFermion3;
    const ProductKind kind = product_kind_for(space.stats);
    const FockVector a = random_vector(rng, space, 3, 4);
    const FockVector b = random_vector(rng, space, 3, 4);
    // raw product equals the plain l2 product of ket-picture coefficients
    CHECK(std::abs(inner(kind, a, b) -
                   ket_dot(to_normalized_kets(a), to_normalized_kets(b))) < 1e-12);
    CHECK(ket_norm(to_raw_amplitudes(to_normalized_kets(a)) - a) < 1e-12);
  }
}

TEST_CASE("commutator check frozen cases") {
  // boson, alpha = beta, truncated basis
  const auto boson = commutator_check(FockSpace{Statistics::Boson, 2}, 0, 0, 3);
  CHECK(boson.max_residual == 0.0);

  // fermion, alpha != beta, full three-mode basis
  const auto fermion = commutator_check(FockSpace{Statistics::Fermion, 3}, 0, 1, 3);
  CHECK(fermion.max_residual == 0.0);

  // off-diagonal boson pair: [a_0, a†_1] vanishes identically
  const auto cross = commutator_check(FockSpace{Statistics::Boson, 2}, 0, 1, 3);
  CHECK(cross.number_residual == 0.0);
}

TEST_CASE("all six relation families vanish on truncated bases") {
  for (std::size_t m = 1; m <= 3; ++m) {
    const auto boson = commutator_check_all_pairs(FockSpace{Statistics::Boson, m}, 3);
    CHECK(boson.max_residual <= 1e-12);
    const auto fermion = commutator_check_all_pairs(FockSpace{Statistics::Fermion, m}, 3);
    CHECK(fermion.max_residual <= 1e-12);
  }
}
