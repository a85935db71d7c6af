#include "natspec/simd.hpp"

#include <bit>

namespace natspec::simd::scalar {

std::uint64_t popcount(const std::uint64_t* w, std::size_t count) noexcept {
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < count; ++i) total += std::popcount(w[i]);
  return total;
}

std::uint64_t and_popcount(const std::uint64_t* a, const std::uint64_t* b,
                           std::size_t count) noexcept {
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < count; ++i) total += std::popcount(a[i] & b[i]);
  return total;
}

std::uint64_t andnot_popcount(const std::uint64_t* a, const std::uint64_t* b,
                              std::size_t count) noexcept {
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < count; ++i) total += std::popcount(a[i] & ~b[i]);
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

}  // namespace natspec::simd::scalar
