#pragma once

#include <cstdint>
#include <cstddef>
#include <numeric>
#include <random>
#include <utility>
#include <vector>

namespace natspec {

inline std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// Seed for sample `counter` of a run seeded with `seed`; independent of the
// order in which samples are drawn.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t counter) noexcept {
  return splitmix64(splitmix64(seed) ^ splitmix64(counter + 0x632be59bd9b4e019ull));
}

inline std::mt19937_64 make_engine(std::uint64_t seed, std::uint64_t counter) {
  return std::mt19937_64(derive_seed(seed, counter));
}

// Fisher-Yates with plain modular draws, so the result does not depend on
// the standard library's distribution implementations.
inline std::vector<std::size_t> random_permutation(std::size_t n, std::mt19937_64& rng) {
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), std::size_t{0});
  for (std::size_t i = n; i > 1; --i) std::swap(p[i - 1], p[rng() % i]);
  return p;
}

}  // namespace natspec
