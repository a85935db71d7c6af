#pragma once

// Bit-level kernels with a scalar reference implementation and SIMD variants
// selected at runtime. Every variant must agree bit-for-bit with the scalar
// path; tests/test_simd.cpp checks this on random inputs.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace natspec::simd {

enum class Isa { scalar, avx2, neon };

std::string_view isa_name(Isa isa) noexcept;

// Best variant supported by the running CPU (ignores NATSPEC_ISA).
Isa detected_isa() noexcept;

// Variant currently used by the dispatching entry points. Initialised from
// detected_isa(), overridable with NATSPEC_ISA=scalar|avx2|neon.
Isa active_isa() noexcept;

// Throws std::invalid_argument if the CPU cannot run `isa`.
void set_isa(Isa isa);

bool isa_supported(Isa isa) noexcept;

std::uint64_t popcount(std::span<const std::uint64_t> words) noexcept;

// popcount(a & b); spans must have equal length.
std::uint64_t and_popcount(std::span<const std::uint64_t> a,
                           std::span<const std::uint64_t> b) noexcept;

// popcount(a & ~b); spans must have equal length.
std::uint64_t andnot_popcount(std::span<const std::uint64_t> a,
                              std::span<const std::uint64_t> b) noexcept;

// Counts product of two 0/1 matrices held as packed rows.
//   a_rows : n rows of `words` 64-bit words (row i of A)
//   bt_rows: n rows of `words` words (row j of B transposed, i.e. column j of B)
//   out    : n*n counts, out[i*n + j] = |row_i(A) & col_j(B)|
void bit_matmul(const std::uint64_t* a_rows, const std::uint64_t* bt_rows,
                std::size_t n, std::size_t words, std::int64_t* out) noexcept;

// Per-ISA entry points, exposed for equivalence testing.
namespace scalar {
std::uint64_t popcount(const std::uint64_t* w, std::size_t count) noexcept;
std::uint64_t and_popcount(const std::uint64_t* a, const std::uint64_t* b,
                           std::size_t count) noexcept;
std::uint64_t andnot_popcount(const std::uint64_t* a, const std::uint64_t* b,
                              std::size_t count) noexcept;
void bit_matmul(const std::uint64_t* a_rows, const std::uint64_t* bt_rows,
                std::size_t n, std::size_t words, std::int64_t* out) noexcept;
}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
namespace avx2 {
std::uint64_t popcount(const std::uint64_t* w, std::size_t count) noexcept;
std::uint64_t and_popcount(const std::uint64_t* a, const std::uint64_t* b,
                           std::size_t count) noexcept;
std::uint64_t andnot_popcount(const std::uint64_t* a, const std::uint64_t* b,
                              std::size_t count) noexcept;
void bit_matmul(const std::uint64_t* a_rows, const std::uint64_t* bt_rows,
                std::size_t n, std::size_t words, std::int64_t* out) noexcept;
}  // namespace avx2
#endif

#if defined(__aarch64__)
namespace neon {
std::uint64_t popcount(const std::uint64_t* w, std::size_t count) noexcept;
std::uint64_t and_popcount(const std::uint64_t* a, const std::uint64_t* b,
                           std::size_t count) noexcept;
std::uint64_t andnot_popcount(const std::uint64_t* a, const std::uint64_t* b,
                              std::size_t count) noexcept;
void bit_matmul(const std::uint64_t* a_rows, const std::uint64_t* bt_rows,
                std::size_t n, std::size_t words, std::int64_t* out) noexcept;
}  // namespace neon
#endif

}  // namespace natspec::simd
