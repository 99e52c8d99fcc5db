#pragma once

#include <span>
#include <stdexcept>
#include <vector>

#include "periodlab/jet.hpp"

namespace periodlab {

/// Tolerance for membership of the closed sets S_j and R_{n,j}.
inline constexpr double kMembershipTol = 1e-10;
/// Tolerance for point equality and simplex-sum checks.
inline constexpr double kPointTol = 1e-12;

/// A point [z_0 : ... : z_n] of complex projective space.
class ProjectivePoint {
 public:
  explicit ProjectivePoint(std::vector<cplx> coords);

  int dim() const { return static_cast<int>(coords_.size()) - 1; }
  const std::vector<cplx>& coords() const { return coords_; }
  cplx operator[](int i) const { return coords_[static_cast<std::size_t>(i)]; }

  /// Representative with the largest-modulus coordinate equal to 1
  /// (ties broken by lowest index).
  std::vector<cplx> canonical() const;
  int pivot() const;

  bool approx_equal(const ProjectivePoint& other, double tol = kPointTol) const;

 private:
  std::vector<cplx> coords_;
};

/// A point of the algebraic simplex: coordinates summing to 1.
class SimplexPoint {
 public:
  explicit SimplexPoint(std::vector<cplx> coords);

  int dim() const { return static_cast<int>(coords_.size()) - 1; }
  const std::vector<cplx>& coords() const { return coords_; }
  cplx operator[](int i) const { return coords_[static_cast<std::size_t>(i)]; }
  ProjectivePoint projective() const { return ProjectivePoint(coords_); }

 private:
  std::vector<cplx> coords_;
};

/// z_0 + ... + z_j. j = -1 gives 0.
template <class T>
T epsilon(int j, std::span<const T> z) {
  if (j < -1 || j >= static_cast<int>(z.size())) throw std::out_of_range("epsilon: index out of range");
  if (j == -1) {
    if constexpr (std::is_same_v<T, Jet>) {
      return Jet(cplx(0.0), z.empty() ? 0 : z[0].params());
    } else {
      return T(0.0);
    }
  }
  T sum = z[0];
  for (int i = 1; i <= j; ++i) sum += z[static_cast<std::size_t>(i)];
  return sum;
}

cplx epsilon(int j, const std::vector<cplx>& z);

/// [u_0 : ... : u_{j-1} : s_0 lambda - eps(u) : s_1 lambda : ... : s_{n-j} lambda]
/// where u has j entries and s has n-j+1 entries.
template <class T>
std::vector<T> phi_nj(int n, int j, std::span<const T> u, const T& lambda, std::span<const T> s) {
  if (j < 0 || j > n) throw std::out_of_range("phi_nj: j out of range");
  if (static_cast<int>(u.size()) != j || static_cast<int>(s.size()) != n - j + 1)
    throw std::invalid_argument("phi_nj: shape mismatch");
  std::vector<T> z(u.begin(), u.end());
  z.reserve(static_cast<std::size_t>(n + 1));
  T head = s[0] * lambda;
  if (j > 0) head -= epsilon<T>(j - 1, u);
  z.push_back(head);
  for (std::size_t k = 1; k < s.size(); ++k) z.push_back(s[k] * lambda);
  return z;
}

ProjectivePoint phi_nj(int n, int j, const std::vector<cplx>& u, cplx lambda, const std::vector<double>& s);

struct PsiResult {
  std::vector<cplx> u;        ///< j affine coordinates (lambda = 1)
  std::vector<cplx> s;        ///< n-j+1 coordinates summing to 1
};

/// Inverse of phi_nj on the affine part: ([z_0 : ... : z_{j-1} : 1], (1 - z_{j+1} - ... - z_n, z_{j+1}, ..., z_n)).
PsiResult psi_nj(int n, int j, const SimplexPoint& z);

/// z_j = t eps_j(z) for some t in [0,1].
bool in_S(int j, const ProjectivePoint& z);
/// z in S_{j+1} and ... and S_n.
bool in_R(int n, int j, const ProjectivePoint& z);

/// Inserts a zero at position r.
template <class T>
std::vector<T> face(int r, std::span<const T> z) {
  if (r < 0 || r > static_cast<int>(z.size())) throw std::out_of_range("face: index out of range");
  std::vector<T> out;
  out.reserve(z.size() + 1);
  out.insert(out.end(), z.begin(), z.begin() + r);
  if constexpr (std::is_same_v<T, Jet>) {
    out.push_back(Jet(cplx(0.0), z.empty() ? 0 : z[0].params()));
  } else {
    out.push_back(T(0.0));
  }
  out.insert(out.end(), z.begin() + r, z.end());
  return out;
}

ProjectivePoint face(int r, const ProjectivePoint& z);

}  // namespace periodlab
