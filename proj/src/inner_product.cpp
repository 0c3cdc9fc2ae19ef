#include "qspace/inner_product.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace qspace {

ProductKind product_kind_for(Statistics stats) {
  return stats == Statistics::Boson ? ProductKind::Symmetric : ProductKind::Antisymmetric;
}

Statistics statistics_for(ProductKind kind) {
  return kind == ProductKind::Symmetric ? Statistics::Boson : Statistics::Fermion;
}

namespace {

std::int64_t delta_permanent(std::span<const ModeIndex> f, std::span<const ModeIndex> g) {
  std::vector<ModeIndex> fs(f.begin(), f.end());
  std::vector<ModeIndex> gs(g.begin(), g.end());
  std::sort(fs.begin(), fs.end());
  std::sort(gs.begin(), gs.end());
  if (fs != gs) return 0;
  // matched blocks of identical modes contribute block_size! each
  std::int64_t prod = 1;
  std::size_t i = 0;
  while (i < fs.size()) {
    std::size_t j = i;
    while (j < fs.size() && fs[j] == fs[i]) ++j;
    for (std::size_t k = 2; k <= j - i; ++k) {
      prod *= static_cast<std::int64_t>(k);
    }
    i = j;
  }
  return prod;
}

std::int64_t delta_determinant(std::span<const ModeIndex> f, std::span<const ModeIndex> g) {
  const std::size_t n = f.size();
  // a repeated mode duplicates a row or column
  auto has_repeat = [](std::span<const ModeIndex> s) {
    std::vector<ModeIndex> v(s.begin(), s.end());
    std::sort(v.begin(), v.end());
    return std::adjacent_find(v.begin(), v.end()) != v.end();
  };
  if (has_repeat(f) || has_repeat(g)) return 0;
  // unique matching p with f_a = g_{p(a)}; determinant is its parity
  std::vector<std::size_t> p(n);
  for (std::size_t a = 0; a < n; ++a) {
    auto it = std::find(g.begin(), g.end(), f[a]);
    if (it == g.end()) return 0;
    p[a] = static_cast<std::size_t>(it - g.begin());
  }
  std::size_t inversions = 0;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      if (p[a] > p[b]) ++inversions;
    }
  }
  return inversions % 2 == 0 ? 1 : -1;
}

}  // namespace

std::int64_t basis_product(ProductKind kind, std::span<const ModeIndex> f,
                           std::span<const ModeIndex> g) {
  if (f.size() != g.size()) return 0;  // the delta_nm prefactor
  if (kind == ProductKind::Symmetric) {
    return delta_permanent(f, g);
  }
  return delta_determinant(f, g);
}

Complex inner(ProductKind kind, const FockVector& a, const FockVector& b) {
  if (a.stats() != b.stats()) {
    throw std::invalid_argument("inner product across mixed statistics");
  }
  if (statistics_for(kind) != a.stats()) {
    throw std::invalid_argument("product kind does not match vector statistics");
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
      const double self = kind == ProductKind::Symmetric
                              ? occupation_factorial(ia->first)
                              : 1.0;
      sum += std::conj(ia->second) * ib->second * self;
      ++ia;
      ++ib;
    }
  }
  return sum;
}

bool is_null_norm(const FockVector& a) {
  const Complex n2 = inner(product_kind_for(a.stats()), a, a);
  return n2.real() <= epsilon();
}

bool similar(const FockVector& a, const FockVector& b) {
  if (a.stats() != b.stats()) {
    throw std::invalid_argument("similarity across mixed statistics");
  }
  return is_null_norm(a - b);
}

}  // namespace qspace
