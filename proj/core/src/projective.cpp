#include "periodlab/projective.hpp"

#include <cmath>

namespace periodlab {

ProjectivePoint::ProjectivePoint(std::vector<cplx> coords) : coords_(std::move(coords)) {
  if (coords_.empty()) throw std::invalid_argument("ProjectivePoint: no coordinates");
  bool nonzero = false;
  for (const auto& c : coords_) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) throw std::invalid_argument("ProjectivePoint: non-finite coordinate");
    nonzero = nonzero || c != cplx(0.0);
  }
  if (!nonzero) throw std::invalid_argument("ProjectivePoint: all coordinates zero");
}

int ProjectivePoint::pivot() const {
  int best = 0;
  double best_abs = std::abs(coords_[0]);
  for (int i = 1; i <= dim(); ++i) {
    const double a = std::abs(coords_[static_cast<std::size_t>(i)]);
    if (a > best_abs) {
      best = i;
      best_abs = a;
    }
  }
  return best;
}

std::vector<cplx> ProjectivePoint::canonical() const {
  const cplx p = coords_[static_cast<std::size_t>(pivot())];
  std::vector<cplx> out(coords_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = coords_[i] / p;
  out[static_cast<std::size_t>(pivot())] = 1.0;
  return out;
}

bool ProjectivePoint::approx_equal(const ProjectivePoint& other, double tol) const {
  if (dim() != other.dim()) return false;
  // Compare through the pivot of this point so near-ties in modulus do not
  // pick different normalizations on the two sides.
  const int k = pivot();
  const cplx a = coords_[static_cast<std::size_t>(k)];
  const cplx b = other.coords_[static_cast<std::size_t>(k)];
  if (std::abs(b) == 0.0) return false;
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (std::abs(coords_[i] / a - other.coords_[i] / b) > tol) return false;
  }
  return true;
}

SimplexPoint::SimplexPoint(std::vector<cplx> coords) : coords_(std::move(coords)) {
  if (coords_.empty()) throw std::invalid_argument("SimplexPoint: no coordinates");
  cplx sum = 0.0;
  double scale = 1.0;
  for (const auto& c : coords_) {
    sum += c;
    scale = std::max(scale, std::abs(c));
  }
  if (std::abs(sum - 1.0) > kPointTol * scale) throw std::invalid_argument("SimplexPoint: coordinates do not sum to 1");
}

cplx epsilon(int j, const std::vector<cplx>& z) { return epsilon<cplx>(j, std::span<const cplx>(z)); }

ProjectivePoint phi_nj(int n, int j, const std::vector<cplx>& u, cplx lambda, const std::vector<double>& s) {
  double total = 0.0;
  for (double x : s) {
    if (x < 0.0) throw std::invalid_argument("phi_nj: negative simplex coordinate");
    total += x;
  }
  if (std::abs(total - 1.0) > kPointTol * static_cast<double>(s.size())) throw std::invalid_argument("phi_nj: simplex coordinates do not sum to 1");
  std::vector<cplx> sc(s.begin(), s.end());
  return ProjectivePoint(phi_nj<cplx>(n, j, u, lambda, sc));
}

PsiResult psi_nj(int n, int j, const SimplexPoint& z) {
  if (z.dim() != n) throw std::invalid_argument("psi_nj: dimension mismatch");
  if (j < 0 || j > n) throw std::out_of_range("psi_nj: j out of range");
  PsiResult out;
  out.u.assign(z.coords().begin(), z.coords().begin() + j);
  cplx head = 1.0;
  for (int k = j + 1; k <= n; ++k) head -= z[k];
  out.s.push_back(head);
  for (int k = j + 1; k <= n; ++k) out.s.push_back(z[k]);
  return out;
}

bool in_S(int j, const ProjectivePoint& z) {
  if (j < 1 || j > z.dim()) throw std::out_of_range("in_S: j out of range");
  const auto c = z.canonical();
  const cplx e = epsilon(j, c);
  const cplx zj = c[static_cast<std::size_t>(j)];
  if (std::abs(e) <= kPointTol) return std::abs(zj) <= kPointTol;
  const cplx ratio = zj / e;
  return std::abs(ratio.imag()) <= kMembershipTol * (1.0 + std::abs(ratio)) && ratio.real() >= -kMembershipTol &&
         ratio.real() <= 1.0 + kMembershipTol;
}

bool in_R(int n, int j, const ProjectivePoint& z) {
  if (z.dim() != n) throw std::invalid_argument("in_R: dimension mismatch");
  if (j < 0 || j > n) throw std::out_of_range("in_R: j out of range");
  for (int k = j + 1; k <= n; ++k)
    if (!in_S(k, z)) return false;
  return true;
}

ProjectivePoint face(int r, const ProjectivePoint& z) {
  return ProjectivePoint(face<cplx>(r, std::span<const cplx>(z.coords())));
}

}  // namespace periodlab
