#pragma once

#include <array>
#include <cstdint>
#include <span>

namespace periodlab {

/// Sobol low-discrepancy sequence (Joe-Kuo direction numbers) in Gray-code
/// order, with optional hash-based Owen scrambling.
class SobolSequence {
 public:
  static constexpr int kMaxDim = 32;
  static constexpr int kBits = 32;

  explicit SobolSequence(int dim);

  int dim() const { return dim_; }

  /// Unscrambled integer coordinates of point `index`.
  void point_bits(std::uint64_t index, std::span<std::uint32_t> out) const;
  /// Advances integer coordinates from point `index` to point `index + 1`.
  void next_bits(std::uint64_t index, std::span<std::uint32_t> bits) const;
  std::uint32_t direction(int d, int bit) const { return v_[static_cast<std::size_t>(d)][static_cast<std::size_t>(bit)]; }

 private:
  int dim_;
  std::array<std::array<std::uint32_t, kBits>, kMaxDim> v_{};
};

/// Nested uniform scramble of a 32-bit fixed-point coordinate (Burley 2020).
std::uint32_t owen_scramble(std::uint32_t x, std::uint32_t seed);

/// Maps a 32-bit coordinate to the open interval (0, 1).
inline double to_unit(std::uint32_t x) { return (static_cast<double>(x) + 0.5) * 0x1p-32; }

/// SplitMix64 finalizer; used to derive independent counter-based streams.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t hash_combine(std::uint64_t a, std::uint64_t b) { return splitmix64(a ^ splitmix64(b)); }

}  // namespace periodlab
