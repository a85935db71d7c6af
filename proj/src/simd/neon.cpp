#include "natspec/simd.hpp"

#include <arm_neon.h>

#include <bit>

namespace natspec::simd::neon {
namespace {

inline std::uint64_t count_u64x2(uint64x2_t v) {
  return vaddvq_u8(vcntq_u8(vreinterpretq_u8_u64(v)));
}

}  // namespace

std::uint64_t popcount(const std::uint64_t* w, std::size_t count) noexcept {
  std::uint64_t total = 0;
  std::size_t i = 0;
  for (; i + 2 <= count; i += 2) total += count_u64x2(vld1q_u64(w + i));
  for (; i < count; ++i) total += std::popcount(w[i]);
  return total;
}

std::uint64_t and_popcount(const std::uint64_t* a, const std::uint64_t* b,
                           std::size_t count) noexcept {
  std::uint64_t total = 0;
  std::size_t i = 0;
  for (; i + 2 <= count; i += 2) {
    total += count_u64x2(vandq_u64(vld1q_u64(a + i), vld1q_u64(b + i)));
  }
  for (; i < count; ++i) total += std::popcount(a[i] & b[i]);
  return total;
}

std::uint64_t andnot_popcount(const std::uint64_t* a, const std::uint64_t* b,
                              std::size_t count) noexcept {
  std::uint64_t total = 0;
  std::size_t i = 0;
  for (; i + 2 <= count; i += 2) {
    total += count_u64x2(vbicq_u64(vld1q_u64(a + i), vld1q_u64(b + i)));
  }
  for (; i < count; ++i) total += std::popcount(a[i] & ~b[i]);
  return total;
}

void bit_matmul(const std::uint64_t* a_rows, const std::uint64_t* bt_rows,
                std::size_t n, std::size_t words, std::int64_t* out) noexcept {
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint64_t* ar = a_rows + i * words;
    for (std::size_t j = 0; j < n; ++j) {
      out[i * n + j] =
          static_cast<std::int64_t>(and_popcount(ar, bt_rows + j * words, words));
    }
  }
}

}  // namespace natspec::simd::neon
