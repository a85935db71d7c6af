#include "natspec/bitmatrix.hpp"

#include "natspec/simd.hpp"

namespace natspec {

std::size_t BitMatrix::row_count(std::size_t i) const noexcept {
  return static_cast<std::size_t>(simd::popcount(row(i)));
}

std::size_t BitMatrix::count() const noexcept {
  return static_cast<std::size_t>(simd::popcount(bits_));
}

bool BitMatrix::any() const noexcept {
  for (auto w : bits_) {
    if (w) return true;
  }
  return false;
}

BitMatrix BitMatrix::transposed() const {
  BitMatrix t(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) {
      if (get(i, j)) t.set(j, i);
    }
  }
  return t;
}

BitMatrix BitMatrix::identity(std::size_t n) {
  BitMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i);
  return m;
}

BitMatrix BitMatrix::ones(std::size_t n) {
  BitMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m.set(i, j);
  }
  return m;
}

BitMatrix operator&(const BitMatrix& a, const BitMatrix& b) {
  if (a.n_ != b.n_) throw DimensionError("bit matrix dimension mismatch");
  BitMatrix c(a.n_);
  for (std::size_t k = 0; k < c.bits_.size(); ++k) c.bits_[k] = a.bits_[k] & b.bits_[k];
  return c;
}

Matrix BitMatrix::to_matrix() const {
  Matrix m(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) {
      if (get(i, j)) m(i, j) = 1;
    }
  }
  return m;
}

IntMatrix BitMatrix::to_int() const {
  IntMatrix m(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) m(i, j) = get(i, j) ? 1 : 0;
  }
  return m;
}

BitMatrix BitMatrix::from_matrix(const Matrix& m) {
  BitMatrix b(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < m.size(); ++j) {
      const Rational& e = m(i, j);
      if (e == 1) {
        b.set(i, j);
      } else if (e != 0) {
        throw DomainError("matrix is not a 0/1 matrix");
      }
    }
  }
  return b;
}

IntMatrix bit_product(const BitMatrix& a, const BitMatrix& b) {
  if (a.size() != b.size()) throw DimensionError("bit matrix dimension mismatch");
  const std::size_t n = a.size();
  const BitMatrix bt = b.transposed();
  IntMatrix out(n);
  simd::bit_matmul(a.data(), bt.data(), n, a.words_per_row(), out.entries().data());
  return out;
}

Matrix to_rational(const IntMatrix& m) {
  Matrix out(m.size());
  auto src = m.entries();
  auto dst = out.entries();
  for (std::size_t k = 0; k < src.size(); ++k) dst[k] = static_cast<long>(src[k]);
  return out;
}

}  // namespace natspec
