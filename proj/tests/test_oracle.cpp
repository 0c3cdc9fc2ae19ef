#include <doctest.h>

#include <random>

#include "oracle_helpers.hpp"
#include "qspace/inner_product.hpp"
#include "qspace/ladder.hpp"
#include "qspace/oracle.hpp"
#include "qspace/selfcheck.hpp"

using namespace qspace;
using oracle::LabeledTensor;

namespace {

LabeledTensor random_tensor(std::mt19937_64& rng, std::size_t n, std::size_t dim) {
  LabeledTensor v(n, dim);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = qspace_test::random_complex(rng);
  return v;
}

// Test-side annihilation on normalized (anti)symmetrized tensors:
// (c_m v)(i_1..i_{n-1}) = sqrt(n) v(m, i_1..i_{n-1}).
LabeledTensor tensor_annihilate(const LabeledTensor& v, ModeIndex mode) {
  LabeledTensor out(v.particles() - 1, v.dim());
  const double scale = std::sqrt(static_cast<double>(v.particles()));
  for (std::size_t flat = 0; flat < out.size(); ++flat) {
    out[flat] = scale * v[static_cast<std::size_t>(mode) * out.size() + flat];
  }
  return out;
}

}  // namespace

TEST_CASE("symmetrizer frozen cases") {
  // sigma^2(e0 x e1) = (e0x e1 + e1 x e0)/2
  const std::vector<ModeIndex> tuple01{0, 1};
  const auto sym = oracle::symmetrize(LabeledTensor::basis_tuple(2, tuple01),
                                      Statistics::Boson);
  CHECK(sym[1] == Complex(0.5, 0.0));  // (0,1)
  CHECK(sym[2] == Complex(0.5, 0.0));  // (1,0)
  CHECK(sym[0] == Complex(0.0, 0.0));
  CHECK(sym[3] == Complex(0.0, 0.0));

  // tau^2(e0 x e0) = 0, and its occupation image is null-norm
  const std::vector<ModeIndex> tuple00{0, 0};
  const auto anti = oracle::symmetrize(LabeledTensor::basis_tuple(2, tuple00),
                                       Statistics::Fermion);
  CHECK(oracle::tensor_norm(anti) == 0.0);
  CHECK(is_null_norm(oracle::to_occupation(anti, Statistics::Fermion)));

  // sigma^1 is the identity
  std::mt19937_64 rng(41);
  const auto v = random_tensor(rng, 1, 3);
  CHECK(oracle::tensor_norm(oracle::symmetrize(v, Statistics::Boson) - v) < 1e-15);
}

TEST_CASE("projections are idempotent and self-adjoint") {
  std::mt19937_64 rng(42);
  for (Statistics stats : {Statistics::Boson, Statistics::Fermion}) {
    for (std::size_t n = 0; n <= 3; ++n) {
      const auto v = random_tensor(rng, n, 3);
      const auto w = random_tensor(rng, n, 3);
      const auto pv = oracle::symmetrize(v, stats);
      CHECK(oracle::tensor_norm(oracle::symmetrize(pv, stats) - pv) <= 1e-12);
      const Complex lhs = oracle::tensor_dot(oracle::symmetrize(v, stats), w);
      const Complex rhs = oracle::tensor_dot(v, oracle::symmetrize(w, stats));
      CHECK(std::abs(lhs - rhs) <= 1e-12);
    }
  }
}

TEST_CASE("size caps are enforced") {
  CHECK_THROWS_AS(LabeledTensor(5, 2), std::invalid_argument);
  CHECK_THROWS_AS(LabeledTensor(2, 5), std::invalid_argument);
}

TEST_CASE("to_occupation frozen cases") {
  // sigma^2(e0 x e0) is e0 x e0 itself (amplitudes 1,0,0,0) and maps to the
  // unit-amplitude |n_0 = 2> ket
  const std::vector<ModeIndex> tuple00{0, 0};
  const auto t00 = oracle::symmetrize(LabeledTensor::basis_tuple(2, tuple00),
                                      Statistics::Boson);
  CHECK(t00[0] == Complex(1.0, 0.0));
  CHECK(t00[1] == Complex(0.0, 0.0));
  CHECK(t00[2] == Complex(0.0, 0.0));
  CHECK(t00[3] == Complex(0.0, 0.0));
  const FockVector b = oracle::to_occupation(t00, Statistics::Boson);
  const auto n2 = make_state(FockSpace{Statistics::Boson, 2}, tuple00);
  CHECK(b.term_count() == 1);
  CHECK(std::abs(b.amplitude(n2->state) - Complex(1.0, 0.0)) < 1e-14);

  // tau^2(e0 x e1) has norm 1/sqrt(2); the isometry sends it to
  // (1/sqrt(2)) |e0 e1) with positive sign
  const std::vector<ModeIndex> tuple01{0, 1};
  const auto t01 = oracle::symmetrize(LabeledTensor::basis_tuple(2, tuple01),
                                      Statistics::Fermion);
  const FockVector f = oracle::to_occupation(t01, Statistics::Fermion);
  const auto s01 = make_state(FockSpace{Statistics::Fermion, 2}, tuple01);
  CHECK(f.term_count() == 1);
  CHECK(std::abs(f.amplitude(s01->state) - Complex(1.0 / std::sqrt(2.0), 0.0)) < 1e-14);

  // the vacuum scalar maps to |0)
  LabeledTensor vac(0, 2);
  vac[0] = Complex(1.0, 0.0);
  const FockVector v0 = oracle::to_occupation(vac, Statistics::Boson);
  CHECK(v0.amplitude(OccupationState(Statistics::Boson)) == Complex(1.0, 0.0));
}

TEST_CASE("to_occupation rejects unsymmetrized input") {
  const std::vector<ModeIndex> tuple01{0, 1};
  const auto raw = LabeledTensor::basis_tuple(2, tuple01);  // not projected
  CHECK_THROWS_AS((void)oracle::to_occupation(raw, Statistics::Boson),
                  std::invalid_argument);
}

TEST_CASE("to_occupation is an isometry on the projected subspace") {
  std::mt19937_64 rng(43);
  for (Statistics stats : {Statistics::Boson, Statistics::Fermion}) {
    for (std::size_t n = 1; n <= 3; ++n) {
      for (int trial = 0; trial < 20; ++trial) {
        const auto v = oracle::symmetrize(random_tensor(rng, n, 3), stats);
        const auto w = oracle::symmetrize(random_tensor(rng, n, 3), stats);
        const FockVector fv = oracle::to_occupation(v, stats);
        const FockVector fw = oracle::to_occupation(w, stats);
        CHECK(std::abs(ket_dot(fv, fw) - oracle::tensor_dot(v, w)) < 1e-10);
        // the raw-product route agrees after the picture conversion
        const ProductKind kind = product_kind_for(stats);
        CHECK(std::abs(inner(kind, to_raw_amplitudes(fv), to_raw_amplitudes(fw)) -
                       oracle::tensor_dot(v, w)) < 1e-10);
      }
    }
  }
}

TEST_CASE("fermionic annihilation agrees with the tensor route") {
  // C_1 |e0 e1) = -|e0) once normalized tensors are compared through the map
  const std::vector<ModeIndex> tuple01{0, 1};
  auto t01 = oracle::symmetrize(LabeledTensor::basis_tuple(2, tuple01), Statistics::Fermion);
  t01 *= Complex(std::sqrt(2.0), 0.0);  // unit-norm antisymmetric tensor
  const FockVector from_tensor =
      oracle::to_occupation(tensor_annihilate(t01, 1), Statistics::Fermion);
  const FockVector from_ladder =
      apply_fermion(LadderOp::annihilate(1), basis_vector(FockSpace{Statistics::Fermion, 2},
                                                          tuple01));
  CHECK(ket_norm(from_tensor - from_ladder) < 1e-12);
  const auto e0 = make_state(FockSpace{Statistics::Fermion, 2}, std::vector<ModeIndex>{0});
  CHECK(std::abs(from_tensor.amplitude(e0->state) - Complex(-1.0, 0.0)) < 1e-12);
}

TEST_CASE("first-quantized Hamiltonian frozen cases") {
  Eigen::MatrixXcd t(2, 2);
  t << 0.25, Complex(0.5, -0.75), Complex(0.5, 0.75), -1.0;
  const MatrixElements me = MatrixElements::one_body(t);

  // one particle: exactly T
  CHECK((oracle::first_quantized_h(me, 1) - t).cwiseAbs().maxCoeff() == 0.0);

  // two particles, no interaction: T x I + I x T
  const auto h2 = oracle::first_quantized_h(me, 2);
  Eigen::MatrixXcd expected = Eigen::MatrixXcd::Zero(4, 4);
  const Eigen::MatrixXcd eye = Eigen::MatrixXcd::Identity(2, 2);
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      for (int c = 0; c < 2; ++c) {
        for (int d = 0; d < 2; ++d) {
          expected(2 * a + b, 2 * c + d) = t(a, c) * eye(b, d) + eye(a, c) * t(b, d);
        }
      }
    }
  }
  CHECK((h2 - expected).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("restricted hopping spectrum") {
  Eigen::MatrixXcd hop(2, 2);
  hop << 0.0, -1.0, -1.0, 0.0;
  const auto eigs =
      oracle::restricted_eigenvalues(MatrixElements::one_body(hop), 2, Statistics::Boson);
  REQUIRE(eigs.size() == 3);
  CHECK(eigs(0) == doctest::Approx(-2.0).epsilon(1e-12));
  CHECK(eigs(1) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(eigs(2) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("labeled Hamiltonians commute with every pair swap") {
  std::mt19937_64 rng(44);
  for (std::size_t n = 2; n <= 3; ++n) {
    const MatrixElements me = selfcheck::random_matrix_elements(rng, 3, true);
    const auto h = oracle::first_quantized_h(me, n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        const auto p = oracle::pair_swap_matrix(3, n, i, j);
        CHECK((p * h - h * p).cwiseAbs().maxCoeff() <= 1e-12);
      }
    }
  }
}

TEST_CASE("subspace dimensions match the sector counts") {
  // sigma: C(M+n-1, n); tau: C(M, n)
  CHECK(oracle::subspace_basis(3, 2, Statistics::Boson).cols() == 6);
  CHECK(oracle::subspace_basis(3, 3, Statistics::Boson).cols() == 10);
  CHECK(oracle::subspace_basis(3, 2, Statistics::Fermion).cols() == 3);
  CHECK(oracle::subspace_basis(3, 3, Statistics::Fermion).cols() == 1);
  CHECK(oracle::subspace_basis(2, 3, Statistics::Fermion).cols() == 0);
}

TEST_CASE("oracle inner products match the q-space products") {
  for (Statistics stats : {Statistics::Boson, Statistics::Fermion}) {
    for (std::size_t m = 1; m <= 3; ++m) {
      for (std::uint32_t n = 0; n <= 3; ++n) {
        const FockSpace space{stats, m};
        const auto states = enumerate_sector(space, n);
        if (states.empty()) continue;
        double nfact = 1.0;
        for (std::uint32_t k = 2; k <= n; ++k) nfact *= k;
        const ProductKind kind = product_kind_for(stats);
        for (const auto& si : states) {
          for (const auto& sj : states) {
            const auto ti = si.mode_sequence();
            const auto tj = sj.mode_sequence();
            auto ui = oracle::symmetrize(LabeledTensor::basis_tuple(m, ti), stats);
            auto uj = oracle::symmetrize(LabeledTensor::basis_tuple(m, tj), stats);
            ui *= Complex(std::sqrt(nfact / occupation_factorial(si)), 0.0);
            uj *= Complex(std::sqrt(nfact / occupation_factorial(sj)), 0.0);
            const FockVector fi = FockVector::unit(si);
            const FockVector fj = FockVector::unit(sj);
            const double ni = std::sqrt(inner(kind, fi, fi).real());
            const double nj = std::sqrt(inner(kind, fj, fj).real());
            CHECK(std::abs(inner(kind, fi, fj) / (ni * nj) -
                           oracle::tensor_dot(ui, uj)) < 1e-10);
          }
        }
      }
    }
  }
}
