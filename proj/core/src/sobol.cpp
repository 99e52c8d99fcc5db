#include "periodlab/sobol.hpp"

#include <bit>
#include <stdexcept>

namespace periodlab {

namespace {

// Primitive polynomials (leading and trailing bits included) and initial
// direction integers for the first 32 dimensions of the Joe-Kuo table.
constexpr std::array<std::uint32_t, SobolSequence::kMaxDim> kPoly = {
    1,   3,   7,   11,  13,  19,  25,  37,  41,  47,  55,  59,  61,  67,  91,  97,
    103, 109, 115, 131, 137, 143, 145, 157, 167, 171, 185, 191, 193, 203, 211, 213};

constexpr std::uint32_t kInit[SobolSequence::kMaxDim][7] = {
    {1},  {1},  {1, 3},  {1, 3, 1},  {1, 1, 1},  {1, 1, 3, 3},  {1, 3, 5, 13},  {1, 1, 5, 5, 17},
    {1, 1, 5, 5, 5},  {1, 1, 7, 11, 19},  {1, 1, 5, 1, 1},  {1, 1, 1, 3, 11},  {1, 3, 5, 5, 31},
    {1, 3, 3, 9, 7, 49},  {1, 1, 1, 15, 21, 21},  {1, 3, 1, 13, 27, 49},  {1, 1, 1, 15, 7, 5},
    {1, 3, 1, 15, 13, 25},  {1, 1, 5, 5, 19, 61},  {1, 3, 7, 11, 23, 15, 103},  {1, 3, 7, 13, 13, 15, 69},
    {1, 1, 3, 13, 7, 35, 63},  {1, 3, 5, 9, 1, 25, 53},  {1, 3, 1, 13, 9, 35, 107},  {1, 3, 1, 5, 27, 61, 31},
    {1, 1, 5, 11, 19, 41, 61},  {1, 3, 5, 3, 3, 13, 69},  {1, 1, 7, 13, 1, 19, 1},  {1, 3, 7, 5, 13, 19, 59},
    {1, 1, 3, 9, 25, 29, 41},  {1, 3, 5, 13, 23, 1, 55},  {1, 3, 7, 3, 13, 59, 17}};

std::uint32_t reverse_bits(std::uint32_t x) {
  x = ((x >> 1) & 0x55555555U) | ((x & 0x55555555U) << 1);
  x = ((x >> 2) & 0x33333333U) | ((x & 0x33333333U) << 2);
  x = ((x >> 4) & 0x0F0F0F0FU) | ((x & 0x0F0F0F0FU) << 4);
  x = ((x >> 8) & 0x00FF00FFU) | ((x & 0x00FF00FFU) << 8);
  return (x >> 16) | (x << 16);
}

}  // namespace

SobolSequence::SobolSequence(int dim) : dim_(dim) {
  if (dim < 1 || dim > kMaxDim) throw std::invalid_argument("SobolSequence: dimension out of range");
  for (int i = 0; i < kBits; ++i) v_[0][static_cast<std::size_t>(i)] = 1U << (kBits - 1 - i);
  for (int d = 1; d < dim; ++d) {
    const std::uint32_t poly = kPoly[static_cast<std::size_t>(d)];
    const int s = std::bit_width(poly) - 1;
    auto& v = v_[static_cast<std::size_t>(d)];
    for (int i = 0; i < s; ++i) v[static_cast<std::size_t>(i)] = kInit[d][i] << (kBits - 1 - i);
    for (int i = s; i < kBits; ++i) {
      std::uint32_t x = v[static_cast<std::size_t>(i - s)];
      x ^= x >> s;
      for (int k = 1; k < s; ++k)
        if ((poly >> (s - k)) & 1U) x ^= v[static_cast<std::size_t>(i - k)];
      v[static_cast<std::size_t>(i)] = x;
    }
  }
}

void SobolSequence::point_bits(std::uint64_t index, std::span<std::uint32_t> out) const {
  const std::uint64_t gray = index ^ (index >> 1);
  for (int d = 0; d < dim_; ++d) {
    std::uint32_t x = 0;
    for (std::uint64_t g = gray; g != 0; g &= g - 1) {
      const int b = std::countr_zero(g);
      if (b >= kBits) break;
      x ^= v_[static_cast<std::size_t>(d)][static_cast<std::size_t>(b)];
    }
    out[static_cast<std::size_t>(d)] = x;
  }
}

void SobolSequence::next_bits(std::uint64_t index, std::span<std::uint32_t> bits) const {
  const int b = std::countr_zero(index + 1);
  if (b >= kBits) throw std::out_of_range("SobolSequence: sequence exhausted");
  for (int d = 0; d < dim_; ++d) bits[static_cast<std::size_t>(d)] ^= v_[static_cast<std::size_t>(d)][static_cast<std::size_t>(b)];
}

std::uint32_t owen_scramble(std::uint32_t x, std::uint32_t seed) {
  x = reverse_bits(x);
  x += seed;
  x ^= x * 0x6c50b47cU;
  x ^= x * 0xb82f1e52U;
  x ^= x * 0xc7afe638U;
  x ^= x * 0x8d22f6e6U;
  return reverse_bits(x);
}

}  // namespace periodlab
