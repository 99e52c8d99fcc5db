#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "periodlab/jet.hpp"

namespace periodlab {

/// Coordinate chart in which a test form lives.
///  - Projective: P^n with z_index = 1; chart coordinates w_i = z_i / z_index (i != index).
///  - Affine: C^n with its own coordinates.
/// Real chart coordinates are (Re w_0, Im w_0, Re w_1, ...).
struct Chart {
  enum class Kind { Projective, Affine };
  Kind kind = Kind::Projective;
  int n = 1;      ///< complex dimension
  int index = 0;  ///< dehomogenized coordinate (projective only)

  int ambient_size() const { return kind == Kind::Projective ? n + 1 : n; }
  int real_dim() const { return 2 * n; }

  /// Real chart coordinates of an ambient point; nullopt outside the chart.
  bool coordinates(std::span<const cplx> ambient, std::span<double> x) const;
  bool coordinates(std::span<const Jet> ambient, std::span<Jet> x) const;
};

/// Smooth compactly supported k-form in a chart: a radial bump
/// exp(1/(rho^2 - 1)) times an affine-plus-cosine pattern in each coefficient.
/// Supports the exterior derivative and pullback along coordinate faces in
/// closed form.
class TestForm {
 public:
  struct Coefficient {
    double constant = 0.0;
    std::vector<double> linear;     ///< gradient of the affine part
    double amplitude = 0.0;
    std::vector<double> frequency;  ///< wave vector of the cosine
    double phase = 0.0;
  };

  TestForm(Chart chart, int degree, std::vector<double> center, double radius, std::vector<Coefficient> coefficients);

  /// Random coefficient pattern from a deterministic stream.
  static TestForm random(Chart chart, int degree, std::vector<double> center, double radius, std::uint64_t seed);

  const Chart& chart() const { return chart_; }
  int degree() const;
  int real_dim() const { return chart_.real_dim(); }
  bool is_zero() const { return zero_; }

  /// Exterior derivative (one application only).
  TestForm d() const;
  /// Pullback along the face map P^{n-1} -> P^n inserting z_r = 0.
  TestForm face_pullback(int r) const;

  bool in_support(std::span<const double> x) const;
  /// Distance from x to the support center, measured in the base chart.
  double center_distance(std::span<const double> x) const;
  /// Coefficients on dx_J for J in k_subsets(real_dim, degree).
  void coefficients(std::span<const double> x, std::span<cplx> out) const;

  const std::vector<double>& center() const { return base_->center; }
  double radius() const { return base_->radius; }

 private:
  struct Base {
    Chart chart;
    int degree;
    std::vector<double> center;
    double radius;
    std::vector<Coefficient> coefficients;
  };

  TestForm() = default;
  void to_base(std::span<const double> x, std::span<double> base) const;

  std::shared_ptr<const Base> base_;
  Chart chart_;
  bool derivative_ = false;
  bool zero_ = false;
  /// Complex-coordinate insertion positions, applied last-to-first to reach the base chart.
  std::vector<int> insertions_;
};

/// Suite of test forms for checks on P^n; centers kept at distance >= margin
/// from the coordinate hyperplanes and the sets S_j, some supports meeting
/// the real simplex.
std::vector<TestForm> make_projective_suite(int n, int degree, int count, std::uint64_t seed, double margin = 0.05);

/// Deterministic uniform in [0,1) from a counter.
double unit_from_counter(std::uint64_t seed, std::uint64_t counter);

}  // namespace periodlab
