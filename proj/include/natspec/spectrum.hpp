#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "natspec/error.hpp"
#include "natspec/matrix.hpp"

namespace natspec {

// Eigenvalue multiset over the algebraic closure, encoded by the monic
// characteristic polynomial. coeffs[k] is the coefficient of t^k and
// coeffs[n] == 1.
struct Spectrum {
  std::vector<Rational> coeffs;

  std::size_t n() const noexcept { return coeffs.empty() ? 0 : coeffs.size() - 1; }
  friend bool operator==(const Spectrum&, const Spectrum&) = default;

  // e.g. "t^2 - 1"
  std::string to_polynomial_string() const;
};

Spectrum char_poly(const Matrix& a);

namespace detail {

template <class T>
void require_newton_characteristic(std::size_t n) {
  constexpr auto p = field_traits<T>::characteristic;
  if (p != 0 && p <= n) {
    throw DomainError("Newton identities need characteristic 0 or greater than " +
                      std::to_string(n));
  }
}

}  // namespace detail

// Power sums p_1..p_n of the roots from ascending monic coefficients.
template <class T>
std::vector<T> power_sums_from_coeffs(const std::vector<T>& coeffs) {
  if (coeffs.empty() || !(coeffs.back() == T(1))) {
    throw DomainError("characteristic polynomial must be monic");
  }
  const std::size_t n = coeffs.size() - 1;
  // e_k = (-1)^k c_{n-k}
  std::vector<T> e(n + 1);
  for (std::size_t k = 0; k <= n; ++k) e[k] = (k % 2 ? -coeffs[n - k] : coeffs[n - k]);
  std::vector<T> p(n + 1, T(0));
  for (std::size_t k = 1; k <= n; ++k) {
    // p_k = sum_{i=1}^{k-1} (-1)^{i-1} e_i p_{k-i} + (-1)^{k-1} k e_k
    T acc(0);
    for (std::size_t i = 1; i < k; ++i) {
      if (i % 2) acc += e[i] * p[k - i];
      else acc -= e[i] * p[k - i];
    }
    T ke = T(static_cast<long>(k)) * e[k];
    if (k % 2) acc += ke;
    else acc -= ke;
    p[k] = acc;
  }
  return {p.begin() + 1, p.end()};
}

// Inverse of power_sums_from_coeffs; needs characteristic 0 or > n.
template <class T>
std::vector<T> coeffs_from_power_sums(const std::vector<T>& p) {
  const std::size_t n = p.size();
  detail::require_newton_characteristic<T>(n);
  std::vector<T> e(n + 1, T(0));
  e[0] = T(1);
  for (std::size_t k = 1; k <= n; ++k) {
    // k e_k = sum_{i=1}^{k} (-1)^{i-1} e_{k-i} p_i
    T acc(0);
    for (std::size_t i = 1; i <= k; ++i) {
      if (i % 2) acc += e[k - i] * p[i - 1];
      else acc -= e[k - i] * p[i - 1];
    }
    e[k] = acc / T(static_cast<long>(k));
  }
  std::vector<T> coeffs(n + 1);
  for (std::size_t k = 0; k <= n; ++k) coeffs[n - k] = (k % 2 ? -e[k] : e[k]);
  return coeffs;
}

// (tr A, ..., tr A^n) for any A with spectrum s.
std::vector<Rational> traces_from_charpoly(const Spectrum& s);

// Throws DimensionError if t.size() != n.
Spectrum charpoly_from_traces(const std::vector<Rational>& t, std::size_t n);

}  // namespace natspec
