#include "qspace/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace qspace {
namespace oracle {

namespace {

constexpr std::size_t kMaxParticles = 4;
constexpr std::size_t kMaxDim = 4;
constexpr double kProjectionResidualTol = 1e-10;
constexpr double kOrthogonalizationThreshold = 1e-8;

void require_caps(std::size_t particles, std::size_t dim) {
  if (particles > kMaxParticles || dim > kMaxDim) {
    throw std::invalid_argument("oracle size cap exceeded (n <= 4, dim <= 4)");
  }
}

std::size_t pow_size(std::size_t base, std::size_t exp) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) r *= base;
  return r;
}

int parity_of(std::span<const std::size_t> perm) {
  std::size_t inversions = 0;
  for (std::size_t i = 0; i < perm.size(); ++i) {
    for (std::size_t j = i + 1; j < perm.size(); ++j) {
      if (perm[i] > perm[j]) ++inversions;
    }
  }
  return inversions % 2 == 0 ? 1 : -1;
}

// all permutations of 0..n-1 together with their parities
std::vector<std::pair<std::vector<std::size_t>, int>> all_permutations(std::size_t n) {
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::pair<std::vector<std::size_t>, int>> out;
  do {
    out.emplace_back(perm, parity_of(perm));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

double factorial(std::size_t n) {
  double r = 1.0;
  for (std::size_t k = 2; k <= n; ++k) r *= static_cast<double>(k);
  return r;
}

}  // namespace

LabeledTensor::LabeledTensor(std::size_t particles, std::size_t dim)
    : particles_(particles), dim_(dim) {
  require_caps(particles, dim);
  if (dim == 0) {
    throw std::invalid_argument("labeled tensor needs at least one mode");
  }
  amplitudes_.assign(pow_size(dim, particles), Complex(0.0, 0.0));
}

LabeledTensor LabeledTensor::basis_tuple(std::size_t dim, std::span<const ModeIndex> labels) {
  LabeledTensor v(labels.size(), dim);
  std::size_t flat = 0;
  for (ModeIndex l : labels) {
    if (l >= dim) {
      throw std::invalid_argument("tensor label out of range");
    }
    flat = flat * dim + l;
  }
  v.amplitudes_[flat] = Complex(1.0, 0.0);
  return v;
}

std::size_t LabeledTensor::rank(std::span<const std::size_t> labels) const {
  std::size_t flat = 0;
  for (std::size_t l : labels) flat = flat * dim_ + l;
  return flat;
}

std::vector<std::size_t> LabeledTensor::unrank(std::size_t flat) const {
  std::vector<std::size_t> labels(particles_, 0);
  for (std::size_t k = particles_; k-- > 0;) {
    labels[k] = flat % dim_;
    flat /= dim_;
  }
  return labels;
}

LabeledTensor& LabeledTensor::operator+=(const LabeledTensor& other) {
  if (other.particles_ != particles_ || other.dim_ != dim_) {
    throw std::invalid_argument("tensor shape mismatch");
  }
  for (std::size_t i = 0; i < amplitudes_.size(); ++i) amplitudes_[i] += other.amplitudes_[i];
  return *this;
}

LabeledTensor& LabeledTensor::operator-=(const LabeledTensor& other) {
  if (other.particles_ != particles_ || other.dim_ != dim_) {
    throw std::invalid_argument("tensor shape mismatch");
  }
  for (std::size_t i = 0; i < amplitudes_.size(); ++i) amplitudes_[i] -= other.amplitudes_[i];
  return *this;
}

LabeledTensor& LabeledTensor::operator*=(Complex scale) {
  for (auto& a : amplitudes_) a *= scale;
  return *this;
}

Complex tensor_dot(const LabeledTensor& a, const LabeledTensor& b) {
  if (a.particles() != b.particles() || a.dim() != b.dim()) {
    throw std::invalid_argument("tensor shape mismatch");
  }
  Complex sum(0.0, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) sum += std::conj(a[i]) * b[i];
  return sum;
}

double tensor_norm(const LabeledTensor& v) {
  double n2 = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) n2 += std::norm(v[i]);
  return std::sqrt(n2);
}

LabeledTensor permute_slots(const LabeledTensor& v, std::span<const std::size_t> perm) {
  if (perm.size() != v.particles()) {
    throw std::invalid_argument("permutation length mismatch");
  }
  LabeledTensor out(v.particles(), v.dim());
  std::vector<std::size_t> permuted(v.particles());
  for (std::size_t flat = 0; flat < v.size(); ++flat) {
    const auto labels = v.unrank(flat);
    for (std::size_t k = 0; k < labels.size(); ++k) permuted[k] = labels[perm[k]];
    out[flat] = v[v.rank(permuted)];
  }
  return out;
}

LabeledTensor symmetrize(const LabeledTensor& v, Statistics stats) {
  LabeledTensor acc(v.particles(), v.dim());
  const auto perms = all_permutations(v.particles());
  for (const auto& [perm, parity] : perms) {
    LabeledTensor p = permute_slots(v, perm);
    if (stats == Statistics::Fermion && parity < 0) {
      p *= Complex(-1.0, 0.0);
    }
    acc += p;
  }
  acc *= Complex(1.0 / static_cast<double>(perms.size()), 0.0);
  return acc;
}

FockVector to_occupation(const LabeledTensor& v, Statistics stats) {
  const LabeledTensor projected = symmetrize(v, stats);
  if (tensor_norm(projected - v) > kProjectionResidualTol) {
    throw std::invalid_argument("to_occupation requires a (anti)symmetrized tensor");
  }
  const FockSpace space{stats, v.dim()};
  const std::size_t n = v.particles();
  FockVector out(stats);
  for (const auto& state : enumerate_sector(space, static_cast<std::uint32_t>(n))) {
    const auto tuple = state.mode_sequence();
    LabeledTensor unit =
        symmetrize(LabeledTensor::basis_tuple(v.dim(), tuple), stats);
    const double scale = std::sqrt(factorial(n) / occupation_factorial(state));
    unit *= Complex(scale, 0.0);
    out.add_term(state, tensor_dot(unit, v));
  }
  return out;
}

Eigen::MatrixXcd first_quantized_h(const MatrixElements& elements, std::size_t particles) {
  elements.validate();
  require_caps(particles, elements.modes);
  const std::size_t d = pow_size(elements.modes, particles);
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(d, d);
  if (particles == 0) {
    return h;  // vacuum block: the scalar 0
  }
  LabeledTensor shape(particles, elements.modes);  // rank/unrank helper
  auto pair_kernel = [&](std::size_t a, std::size_t b, std::size_t c, std::size_t dd) {
    return 0.5 * (elements.v_at(static_cast<ModeIndex>(a), static_cast<ModeIndex>(b),
                                static_cast<ModeIndex>(dd), static_cast<ModeIndex>(c)) +
                  elements.v_at(static_cast<ModeIndex>(b), static_cast<ModeIndex>(a),
                                static_cast<ModeIndex>(c), static_cast<ModeIndex>(dd)));
  };
  for (std::size_t col = 0; col < d; ++col) {
    const auto labels = shape.unrank(col);
    for (std::size_t i = 0; i < particles; ++i) {
      auto row_labels = labels;
      for (std::size_t a = 0; a < elements.modes; ++a) {
        row_labels[i] = a;
        h(static_cast<Eigen::Index>(shape.rank(row_labels)),
          static_cast<Eigen::Index>(col)) += elements.T(a, labels[i]);
      }
    }
    if (elements.V.empty()) continue;
    for (std::size_t i = 0; i < particles; ++i) {
      for (std::size_t j = i + 1; j < particles; ++j) {
        auto row_labels = labels;
        for (std::size_t a = 0; a < elements.modes; ++a) {
          for (std::size_t b = 0; b < elements.modes; ++b) {
            row_labels[i] = a;
            row_labels[j] = b;
            const Complex w = pair_kernel(a, b, labels[i], labels[j]);
            if (w != Complex(0.0, 0.0)) {
              h(static_cast<Eigen::Index>(shape.rank(row_labels)),
                static_cast<Eigen::Index>(col)) += w;
            }
          }
        }
      }
    }
  }
  return h;
}

Eigen::MatrixXcd pair_swap_matrix(std::size_t dim, std::size_t particles, std::size_t i,
                                  std::size_t j) {
  require_caps(particles, dim);
  if (i >= particles || j >= particles) {
    throw std::invalid_argument("slot index out of range");
  }
  const std::size_t d = pow_size(dim, particles);
  Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(d, d);
  LabeledTensor shape(particles, dim);
  for (std::size_t col = 0; col < d; ++col) {
    auto labels = shape.unrank(col);
    std::swap(labels[i], labels[j]);
    p(static_cast<Eigen::Index>(shape.rank(labels)), static_cast<Eigen::Index>(col)) = 1.0;
  }
  return p;
}

Eigen::MatrixXcd subspace_basis(std::size_t dim, std::size_t particles, Statistics stats) {
  require_caps(particles, dim);
  const std::size_t d = pow_size(dim, particles);
  std::vector<Eigen::VectorXcd> accepted;
  LabeledTensor shape(particles, dim);
  for (std::size_t flat = 0; flat < d; ++flat) {
    const auto labels = shape.unrank(flat);
    std::vector<ModeIndex> tuple(labels.begin(), labels.end());
    LabeledTensor projected = symmetrize(LabeledTensor::basis_tuple(dim, tuple), stats);
    Eigen::VectorXcd v(d);
    for (std::size_t k = 0; k < d; ++k) v(static_cast<Eigen::Index>(k)) = projected[k];
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& u : accepted) {
        v -= u.dot(v) * u;
      }
    }
    const double norm = v.norm();
    if (norm > kOrthogonalizationThreshold) {
      accepted.push_back(v / norm);
    }
  }
  Eigen::MatrixXcd basis(d, accepted.size());
  for (std::size_t c = 0; c < accepted.size(); ++c) {
    basis.col(static_cast<Eigen::Index>(c)) = accepted[c];
  }
  return basis;
}

Eigen::VectorXd restricted_eigenvalues(const MatrixElements& elements, std::size_t particles,
                                       Statistics stats) {
  const Eigen::MatrixXcd h = first_quantized_h(elements, particles);
  const Eigen::MatrixXcd basis = subspace_basis(elements.modes, particles, stats);
  const Eigen::MatrixXcd restricted = basis.adjoint() * h * basis;
  return spectrum(restricted).eigenvalues;
}

}  // namespace oracle
}  // namespace qspace
