#pragma once

#include <bit>
#include <cstdint>
#include <span>
#include <vector>

#include "periodlab/jet.hpp"

namespace periodlab {

/// Largest ambient dimension handled by the multi-index tables.
inline constexpr int kMaxIndexDim = 12;

using IndexMask = std::uint32_t;

/// All k-element subsets of {0..m-1} as bitmasks, in increasing numeric order.
const std::vector<IndexMask>& k_subsets(int m, int k);
/// Position of `mask` within k_subsets(m, popcount(mask)).
int subset_position(int m, IndexMask mask);

/// Sign of the permutation sorting the concatenation (I, J) of two disjoint
/// increasing index lists.
inline int shuffle_sign(IndexMask I, IndexMask J) {
  int inversions = 0;
  for (IndexMask rest = I; rest != 0; rest &= rest - 1) {
    const int i = std::countr_zero(rest);
    const IndexMask below = (IndexMask{1} << i) - 1;
    inversions += std::popcount(J & below);
  }
  return (inversions & 1) ? -1 : 1;
}

/// Determinant of a k x k complex matrix stored row-major (k <= kMaxIndexDim).
cplx determinant(std::span<const cplx> a, int k);
double determinant(std::span<const double> a, int k);

}  // namespace periodlab
