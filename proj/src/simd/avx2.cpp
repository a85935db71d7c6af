// Compiled with -mavx2. Only reached after a runtime CPU check.
#include "natspec/simd.hpp"

#include <immintrin.h>

#include <bit>

namespace natspec::simd::avx2 {
namespace {

// Nibble lookup popcount (Mula et al.): per-byte counts via pshufb, then
// horizontal byte sums into four 64-bit lanes with psadbw.
inline __m256i popcount_epi64(__m256i v) {
  const __m256i lut = _mm256_setr_epi8(0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4,
                                       0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4);
  const __m256i low_mask = _mm256_set1_epi8(0x0f);
  const __m256i lo = _mm256_and_si256(v, low_mask);
  const __m256i hi = _mm256_and_si256(_mm256_srli_epi16(v, 4), low_mask);
  const __m256i cnt =
      _mm256_add_epi8(_mm256_shuffle_epi8(lut, lo), _mm256_shuffle_epi8(lut, hi));
  return _mm256_sad_epu8(cnt, _mm256_setzero_si256());
}

inline std::uint64_t hsum_epi64(__m256i v) {
  alignas(32) std::uint64_t lanes[4];
  _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), v);
  return lanes[0] + lanes[1] + lanes[2] + lanes[3];
}

template <class Combine>
inline std::uint64_t reduce(const std::uint64_t* a, const std::uint64_t* b,
                            std::size_t count, Combine combine) {
  __m256i acc = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + 4 <= count; i += 4) {
    const __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    const __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
    acc = _mm256_add_epi64(acc, popcount_epi64(combine(va, vb)));
  }
  std::uint64_t total = hsum_epi64(acc);
  for (; i < count; ++i) {
    total += std::popcount(combine(a[i], b[i]));
  }
  return total;
}

struct AndOp {
  __m256i operator()(__m256i x, __m256i y) const { return _mm256_and_si256(x, y); }
  std::uint64_t operator()(std::uint64_t x, std::uint64_t y) const { return x & y; }
};

struct AndNotOp {
  // _mm256_andnot_si256(y, x) computes ~y & x
  __m256i operator()(__m256i x, __m256i y) const { return _mm256_andnot_si256(y, x); }
  std::uint64_t operator()(std::uint64_t x, std::uint64_t y) const { return x & ~y; }
};

}  // namespace

std::uint64_t popcount(const std::uint64_t* w, std::size_t count) noexcept {
  __m256i acc = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + 4 <= count; i += 4) {
    acc = _mm256_add_epi64(
        acc, popcount_epi64(_mm256_loadu_si256(reinterpret_cast<const __m256i*>(w + i))));
  }
  std::uint64_t total = hsum_epi64(acc);
  for (; i < count; ++i) total += std::popcount(w[i]);
  return total;
}

std::uint64_t and_popcount(const std::uint64_t* a, const std::uint64_t* b,
                           std::size_t count) noexcept {
  return reduce(a, b, count, AndOp{});
}

std::uint64_t andnot_popcount(const std::uint64_t* a, const std::uint64_t* b,
                              std::size_t count) noexcept {
  return reduce(a, b, count, AndNotOp{});
}

void bit_matmul(const std::uint64_t* a_rows, const std::uint64_t* bt_rows,
                std::size_t n, std::size_t words, std::int64_t* out) noexcept {
  if (words == 1) {
    // Single-word rows: broadcast row i of A against four columns of B at once.
    for (std::size_t i = 0; i < n; ++i) {
      const __m256i ar = _mm256_set1_epi64x(static_cast<long long>(a_rows[i]));
      std::size_t j = 0;
      for (; j + 4 <= n; j += 4) {
        const __m256i bc = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(bt_rows + j));
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + i * n + j),
                            popcount_epi64(_mm256_and_si256(ar, bc)));
      }
      for (; j < n; ++j) {
        out[i * n + j] = std::popcount(a_rows[i] & bt_rows[j]);
      }
    }
    return;
  }
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint64_t* ar = a_rows + i * words;
    for (std::size_t j = 0; j < n; ++j) {
      out[i * n + j] =
          static_cast<std::int64_t>(and_popcount(ar, bt_rows + j * words, words));
    }
  }
}

}  // namespace natspec::simd::avx2
