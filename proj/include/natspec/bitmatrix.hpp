#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "natspec/matrix.hpp"

namespace natspec {

// Square 0/1 matrix with packed rows. The workhorse representation for
// adjacency matrices and circ-idempotents.
class BitMatrix {
 public:
  BitMatrix() = default;
  explicit BitMatrix(std::size_t n)
      : n_(n), words_((n + 63) / 64), bits_(n * ((n + 63) / 64), 0) {}

  std::size_t size() const noexcept { return n_; }
  std::size_t words_per_row() const noexcept { return words_; }

  bool get(std::size_t i, std::size_t j) const noexcept {
    return (bits_[i * words_ + j / 64] >> (j % 64)) & 1u;
  }
  void set(std::size_t i, std::size_t j, bool value = true) noexcept {
    std::uint64_t& w = bits_[i * words_ + j / 64];
    const std::uint64_t mask = std::uint64_t{1} << (j % 64);
    w = value ? (w | mask) : (w & ~mask);
  }

  std::span<const std::uint64_t> row(std::size_t i) const noexcept {
    return {bits_.data() + i * words_, words_};
  }
  std::span<std::uint64_t> row(std::size_t i) noexcept {
    return {bits_.data() + i * words_, words_};
  }
  const std::uint64_t* data() const noexcept { return bits_.data(); }

  std::size_t row_count(std::size_t i) const noexcept;
  std::size_t count() const noexcept;
  bool any() const noexcept;

  BitMatrix transposed() const;

  friend bool operator==(const BitMatrix&, const BitMatrix&) = default;
  friend auto operator<=>(const BitMatrix&, const BitMatrix&) = default;

  static BitMatrix identity(std::size_t n);
  static BitMatrix ones(std::size_t n);

  // Entry-wise AND (the Hadamard product of 0/1 matrices).
  friend BitMatrix operator&(const BitMatrix& a, const BitMatrix& b);

  Matrix to_matrix() const;
  IntMatrix to_int() const;
  // Throws DomainError unless every entry of m is 0 or 1.
  static BitMatrix from_matrix(const Matrix& m);

 private:
  std::size_t n_ = 0;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> bits_;
};

// Integer product of 0/1 matrices via the dispatched bit kernel.
IntMatrix bit_product(const BitMatrix& a, const BitMatrix& b);

}  // namespace natspec
