#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "natspec/error.hpp"
#include "natspec/modp.hpp"
#include "natspec/rational.hpp"

namespace natspec {

template <class T>
struct field_traits;

template <>
struct field_traits<Rational> {
  static constexpr std::uint64_t characteristic = 0;
};

template <std::uint64_t P>
struct field_traits<ModP<P>> {
  static constexpr std::uint64_t characteristic = P;
};

// Dense square matrix, row-major. Dimension is fixed at construction.
template <class T>
class BasicMatrix {
 public:
  using value_type = T;

  BasicMatrix() = default;
  explicit BasicMatrix(std::size_t n) : n_(n), data_(n * n, T(0)) {}
  BasicMatrix(std::size_t n, std::vector<T> entries) : n_(n), data_(std::move(entries)) {
    if (data_.size() != n * n) throw DimensionError("entry count does not match n*n");
  }
  BasicMatrix(std::initializer_list<std::initializer_list<T>> rows) : n_(rows.size()) {
    data_.reserve(n_ * n_);
    for (const auto& row : rows) {
      if (row.size() != n_) throw DimensionError("matrix literal is not square");
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  static BasicMatrix zero(std::size_t n) { return BasicMatrix(n); }
  static BasicMatrix identity(std::size_t n) {
    BasicMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }
  static BasicMatrix ones(std::size_t n) {
    BasicMatrix m(n);
    for (auto& e : m.data_) e = T(1);
    return m;
  }

  std::size_t size() const noexcept { return n_; }
  T& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
  std::span<const T> entries() const noexcept { return data_; }
  std::span<T> entries() noexcept { return data_; }

  bool is_zero() const {
    for (const auto& e : data_) {
      if (!(e == T(0))) return false;
    }
    return true;
  }

  BasicMatrix& operator+=(const BasicMatrix& o) {
    require_same(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
  }
  BasicMatrix& operator-=(const BasicMatrix& o) {
    require_same(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
  }
  BasicMatrix& operator*=(const T& c) {
    for (auto& e : data_) e *= c;
    return *this;
  }

  friend BasicMatrix operator+(BasicMatrix a, const BasicMatrix& b) { return a += b; }
  friend BasicMatrix operator-(BasicMatrix a, const BasicMatrix& b) { return a -= b; }
  friend BasicMatrix operator*(const T& c, BasicMatrix a) { return a *= c; }
  friend BasicMatrix operator-(BasicMatrix a) {
    for (auto& e : a.data_) e = -e;
    return a;
  }
  friend bool operator==(const BasicMatrix& a, const BasicMatrix& b) {
    return a.n_ == b.n_ && a.data_ == b.data_;
  }

  void require_same(const BasicMatrix& o) const {
    if (o.n_ != n_) {
      throw DimensionError("dimension mismatch: " + std::to_string(n_) + " vs " +
                           std::to_string(o.n_));
    }
  }

 private:
  std::size_t n_ = 0;
  std::vector<T> data_;
};

using Matrix = BasicMatrix<Rational>;
using IntMatrix = BasicMatrix<std::int64_t>;

template <class T>
BasicMatrix<T> mat_mul(const BasicMatrix<T>& a, const BasicMatrix<T>& b) {
  a.require_same(b);
  const std::size_t n = a.size();
  BasicMatrix<T> c(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const T& aik = a(i, k);
      if (aik == T(0)) continue;
      for (std::size_t j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
    }
  }
  return c;
}

template <class T>
BasicMatrix<T> hadamard(const BasicMatrix<T>& a, const BasicMatrix<T>& b) {
  a.require_same(b);
  BasicMatrix<T> c(a.size());
  auto out = c.entries();
  auto x = a.entries();
  auto y = b.entries();
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = x[k] * y[k];
  return c;
}

template <class T>
BasicMatrix<T> transpose(const BasicMatrix<T>& a) {
  const std::size_t n = a.size();
  BasicMatrix<T> t(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) t(j, i) = a(i, j);
  }
  return t;
}

template <class T>
bool is_symmetric(const BasicMatrix<T>& a) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = i + 1; j < a.size(); ++j) {
      if (!(a(i, j) == a(j, i))) return false;
    }
  }
  return true;
}

template <class T>
T trace(const BasicMatrix<T>& a) {
  T t(0);
  for (std::size_t i = 0; i < a.size(); ++i) t += a(i, i);
  return t;
}

// Coefficients of det(tI - A), ascending: result[k] is the coefficient of t^k,
// result[n] == 1. Berkowitz's algorithm: division free, so it is exact over
// any commutative ring and needs no pivoting.
template <class T>
std::vector<T> char_poly_coeffs(const BasicMatrix<T>& a) {
  const std::size_t n = a.size();
  // Descending coefficients of the characteristic polynomial of the leading
  // r x r principal submatrix.
  std::vector<T> poly{T(1)};
  for (std::size_t r = 0; r < n; ++r) {
    // Toeplitz column: 1, -a_rr, -R S, -R A_r S, ..., -R A_r^{r-1} S
    std::vector<T> col(r + 2, T(0));
    col[0] = T(1);
    col[1] = -a(r, r);
    std::vector<T> s(r);
    for (std::size_t i = 0; i < r; ++i) s[i] = a(i, r);
    for (std::size_t k = 0; k < r; ++k) {
      T dot(0);
      for (std::size_t i = 0; i < r; ++i) dot += a(r, i) * s[i];
      col[k + 2] = -dot;
      if (k + 1 < r) {
        std::vector<T> next(r, T(0));
        for (std::size_t i = 0; i < r; ++i) {
          for (std::size_t j = 0; j < r; ++j) next[i] += a(i, j) * s[j];
        }
        s = std::move(next);
      }
    }
    std::vector<T> next(r + 2, T(0));
    for (std::size_t i = 0; i < r + 2; ++i) {
      for (std::size_t j = 0; j <= r && j <= i; ++j) next[i] += col[i - j] * poly[j];
    }
    poly = std::move(next);
  }
  return {poly.rbegin(), poly.rend()};
}

// (tr A, tr A^2, ..., tr A^kmax)
template <class T>
std::vector<T> trace_powers(const BasicMatrix<T>& a, std::size_t kmax) {
  if (kmax < 1) throw DomainError("trace_powers requires kmax >= 1");
  std::vector<T> out;
  out.reserve(kmax);
  BasicMatrix<T> power = a;
  out.push_back(trace(power));
  for (std::size_t k = 2; k <= kmax; ++k) {
    power = mat_mul(power, a);
    out.push_back(trace(power));
  }
  return out;
}

template <class T>
BasicMatrix<T> permute(const BasicMatrix<T>& a, std::span<const std::size_t> perm) {
  // result(perm[i], perm[j]) = a(i, j), i.e. P A P^T for the permutation matrix
  // sending basis vector i to perm[i].
  const std::size_t n = a.size();
  if (perm.size() != n) throw DimensionError("permutation length mismatch");
  BasicMatrix<T> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) out(perm[i], perm[j]) = a(i, j);
  }
  return out;
}

Matrix to_rational(const IntMatrix& m);

}  // namespace natspec
