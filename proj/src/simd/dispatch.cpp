#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "natspec/simd.hpp"

namespace natspec::simd {
namespace {

struct KernelTable {
  std::uint64_t (*popcount)(const std::uint64_t*, std::size_t) noexcept;
  std::uint64_t (*and_popcount)(const std::uint64_t*, const std::uint64_t*,
                                std::size_t) noexcept;
  std::uint64_t (*andnot_popcount)(const std::uint64_t*, const std::uint64_t*,
                                   std::size_t) noexcept;
  void (*bit_matmul)(const std::uint64_t*, const std::uint64_t*, std::size_t,
                     std::size_t, std::int64_t*) noexcept;
  Isa isa;
};

constexpr KernelTable kScalarTable{&scalar::popcount, &scalar::and_popcount,
                                   &scalar::andnot_popcount, &scalar::bit_matmul,
                                   Isa::scalar};
#if defined(__x86_64__) || defined(_M_X64)
constexpr KernelTable kAvx2Table{&avx2::popcount, &avx2::and_popcount,
                                 &avx2::andnot_popcount, &avx2::bit_matmul, Isa::avx2};
#endif
#if defined(__aarch64__)
constexpr KernelTable kNeonTable{&neon::popcount, &neon::and_popcount,
                                 &neon::andnot_popcount, &neon::bit_matmul, Isa::neon};
#endif

const KernelTable* table_for(Isa isa) noexcept {
  switch (isa) {
#if defined(__x86_64__) || defined(_M_X64)
    case Isa::avx2:
      return &kAvx2Table;
#endif
#if defined(__aarch64__)
    case Isa::neon:
      return &kNeonTable;
#endif
    default:
      return &kScalarTable;
  }
}

const KernelTable* initial_table() noexcept {
  Isa isa = detected_isa();
  if (const char* env = std::getenv("NATSPEC_ISA")) {
    const std::string want(env);
    for (Isa candidate : {Isa::scalar, Isa::avx2, Isa::neon}) {
      if (want == isa_name(candidate) && isa_supported(candidate)) isa = candidate;
    }
  }
  return table_for(isa);
}

std::atomic<const KernelTable*>& active_table() noexcept {
  static std::atomic<const KernelTable*> table{initial_table()};
  return table;
}

inline const KernelTable& kernels() noexcept {
  return *active_table().load(std::memory_order_relaxed);
}

}  // namespace

std::string_view isa_name(Isa isa) noexcept {
  switch (isa) {
    case Isa::avx2:
      return "avx2";
    case Isa::neon:
      return "neon";
    case Isa::scalar:
      break;
  }
  return "scalar";
}

bool isa_supported(Isa isa) noexcept {
  switch (isa) {
    case Isa::scalar:
      return true;
    case Isa::avx2:
#if defined(__x86_64__) || defined(_M_X64)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
    case Isa::neon:
#if defined(__aarch64__)
      return true;
#else
      return false;
#endif
  }
  return false;
}

Isa detected_isa() noexcept {
  if (isa_supported(Isa::avx2)) return Isa::avx2;
  if (isa_supported(Isa::neon)) return Isa::neon;
  return Isa::scalar;
}

Isa active_isa() noexcept { return kernels().isa; }

void set_isa(Isa isa) {
  if (!isa_supported(isa)) {
    throw std::invalid_argument("instruction set not supported on this CPU: " +
                                std::string(isa_name(isa)));
  }
  active_table().store(table_for(isa), std::memory_order_relaxed);
}

std::uint64_t popcount(std::span<const std::uint64_t> words) noexcept {
  return kernels().popcount(words.data(), words.size());
}

std::uint64_t and_popcount(std::span<const std::uint64_t> a,
                           std::span<const std::uint64_t> b) noexcept {
  return kernels().and_popcount(a.data(), b.data(), a.size());
}

std::uint64_t andnot_popcount(std::span<const std::uint64_t> a,
                              std::span<const std::uint64_t> b) noexcept {
  return kernels().andnot_popcount(a.data(), b.data(), a.size());
}

void bit_matmul(const std::uint64_t* a_rows, const std::uint64_t* bt_rows,
                std::size_t n, std::size_t words, std::int64_t* out) noexcept {
  kernels().bit_matmul(a_rows, bt_rows, n, words, out);
}

}  // namespace natspec::simd
