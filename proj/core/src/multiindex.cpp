#include "periodlab/multiindex.hpp"

#include <array>
#include <stdexcept>

namespace periodlab {

namespace {

struct SubsetTables {
  // subsets[m][k]
  std::array<std::array<std::vector<IndexMask>, kMaxIndexDim + 1>, kMaxIndexDim + 1> subsets;
  // position[m][mask]
  std::array<std::vector<int>, kMaxIndexDim + 1> position;

  SubsetTables() {
    for (int m = 0; m <= kMaxIndexDim; ++m) {
      const IndexMask count = IndexMask{1} << m;
      position[static_cast<std::size_t>(m)].assign(count, -1);
      for (IndexMask mask = 0; mask < count; ++mask) {
        auto& list = subsets[static_cast<std::size_t>(m)][static_cast<std::size_t>(std::popcount(mask))];
        position[static_cast<std::size_t>(m)][mask] = static_cast<int>(list.size());
        list.push_back(mask);
      }
    }
  }
};

const SubsetTables& tables() {
  static const SubsetTables t;
  return t;
}

template <class T>
T lu_determinant(std::span<const T> a, int k) {
  if (k < 0 || k > kMaxIndexDim || static_cast<int>(a.size()) < k * k) throw std::invalid_argument("determinant: bad shape");
  if (k == 0) return T(1.0);
  if (k == 1) return a[0];
  if (k == 2) return a[0] * a[3] - a[1] * a[2];
  std::array<T, kMaxIndexDim * kMaxIndexDim> m{};
  for (int i = 0; i < k * k; ++i) m[static_cast<std::size_t>(i)] = a[static_cast<std::size_t>(i)];
  T det = 1.0;
  for (int c = 0; c < k; ++c) {
    int piv = c;
    double best = std::abs(m[static_cast<std::size_t>(c * k + c)]);
    for (int r = c + 1; r < k; ++r) {
      const double v = std::abs(m[static_cast<std::size_t>(r * k + c)]);
      if (v > best) {
        best = v;
        piv = r;
      }
    }
    if (best == 0.0) return T(0.0);
    if (piv != c) {
      for (int j = 0; j < k; ++j) std::swap(m[static_cast<std::size_t>(c * k + j)], m[static_cast<std::size_t>(piv * k + j)]);
      det = -det;
    }
    const T d = m[static_cast<std::size_t>(c * k + c)];
    det *= d;
    for (int r = c + 1; r < k; ++r) {
      const T f = m[static_cast<std::size_t>(r * k + c)] / d;
      if (f == T(0.0)) continue;
      for (int j = c + 1; j < k; ++j) m[static_cast<std::size_t>(r * k + j)] -= f * m[static_cast<std::size_t>(c * k + j)];
    }
  }
  return det;
}

}  // namespace

const std::vector<IndexMask>& k_subsets(int m, int k) {
  if (m < 0 || m > kMaxIndexDim || k < 0 || k > m) throw std::out_of_range("k_subsets: bad arguments");
  return tables().subsets[static_cast<std::size_t>(m)][static_cast<std::size_t>(k)];
}

int subset_position(int m, IndexMask mask) {
  if (m < 0 || m > kMaxIndexDim || mask >= (IndexMask{1} << m)) throw std::out_of_range("subset_position: bad arguments");
  return tables().position[static_cast<std::size_t>(m)][mask];
}

cplx determinant(std::span<const cplx> a, int k) { return lu_determinant<cplx>(a, k); }
double determinant(std::span<const double> a, int k) { return lu_determinant<double>(a, k); }

}  // namespace periodlab
