#pragma once

#include <cstddef>

#include "permbound/matrix.hpp"

namespace permbound {

struct PermanentValue {
  Complex value;
  std::size_t n = 0;
};

/// Value of one of the sub-permanent functionals over K vectors in C^N.
struct SubpermFunctionalValue {
  double value = 0.0;
  std::size_t k = 0;
  std::size_t n = 0;
  double p = 2.0;
};

inline constexpr std::size_t kNaivePermanentMaxOrder = 9;
inline constexpr std::size_t kDefaultPermanentMaxOrder = 30;

/// Direct expansion over all N! permutations. Ground-truth oracle; N <= 9.
PermanentValue perm_naive(const ColumnMatrix& m);

/// Ryser inclusion-exclusion with Gray-code subset order, O(2^N N).
///
/// Round-off in the alternating sum grows roughly like 2^N machine epsilon
/// times the largest partial product, so agreement with perm_naive is only
/// pinned for N <= 9. Throws when N exceeds `max_order`.
PermanentValue perm_fast(const ColumnMatrix& m,
                         std::size_t max_order = kDefaultPermanentMaxOrder);

/// G[j][k] = perm of m with row j and column k removed, i.e. d perm / d m[j][k].
/// For N = 1 the single minor is the empty matrix, whose permanent is 1.
ColumnMatrix perm_minor_gradient(const ColumnMatrix& m);

/// sqrt of the sum, over all K-row subsets of the N x K matrix of columns
/// f_1..f_K, of the squared permanent of the selected K x K block.
///
/// Entries are replaced by their moduli before evaluation, so complex input
/// is measured through |f_{j,k}|. For K = N this is |perm|.
SubpermFunctionalValue subperm_quadratic(const ColumnMatrix& columns);

/// Same sum with p-th powers and a 1/p root. p = 2 is subperm_quadratic.
SubpermFunctionalValue subperm_p(const ColumnMatrix& columns, PExponent p);

}  // namespace permbound
