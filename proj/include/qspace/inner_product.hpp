#pragma once

#include <cstdint>
#include <span>

#include "qspace/fock.hpp"

namespace qspace {

/// Selects the permutation-sum product: Symmetric sums plain delta products
/// over all permutations (permanent of the delta matrix), Antisymmetric
/// weights each permutation by its parity (determinant of the same matrix).
enum class ProductKind { Symmetric, Antisymmetric };

ProductKind product_kind_for(Statistics stats);
Statistics statistics_for(ProductKind kind);

/// Product of two basis mode sequences of lengths n and m:
///   0 if n != m, else sum over permutations p of
///   (parity(p) if Antisymmetric else 1) * prod_k delta(f_k, g_{p(k)}).
/// Evaluated by multiset matching rather than n! enumeration: the permanent
/// of a delta matrix is the product of factorials of the matched block
/// sizes, and the determinant is the parity of the unique matching (or 0 on
/// any repeat).
std::int64_t basis_product(ProductKind kind, std::span<const ModeIndex> f,
                           std::span<const ModeIndex> g);

/// Extension of the basis product to linear combinations:
///   sum_{k,j} conj(a_k) b_j (f_k * g_j).
/// Distinct canonical states are orthogonal under both products, so this
/// reduces to a merge over shared states weighted by the self-product
/// (prod of count factorials for Symmetric, 1 for Antisymmetric).
/// Requires matching statistics and the kind that fits them.
Complex inner(ProductKind kind, const FockVector& a, const FockVector& b);

/// True iff inner(a, a) <= epsilon(). In the canonical (quotiented)
/// representation this coincides with being the zero vector; the operation
/// exists so unquotiented oracle-side vectors can be tested the same way.
bool is_null_norm(const FockVector& a);

/// True iff a - b is null-norm: equality up to a null-norm linear
/// combination, which the canonical representation collapses to equality
/// within tolerance.
bool similar(const FockVector& a, const FockVector& b);

}  // namespace qspace
