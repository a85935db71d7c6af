#pragma once

#include <cstdint>
#include <ostream>

namespace natspec {

// Element of the prime field F_P. Only used where P exceeds the matrix
// dimension (and the largest trace power) so Newton identities stay valid.
template <std::uint64_t P>
class ModP {
  static_assert(P > 2 && P < (std::uint64_t{1} << 62), "modulus out of range");

 public:
  static constexpr std::uint64_t modulus = P;

  constexpr ModP() = default;
  constexpr ModP(long long v)  // NOLINT(google-explicit-constructor)
      : v_(static_cast<std::uint64_t>(((v % static_cast<long long>(P)) +
                                       static_cast<long long>(P)) %
                                      static_cast<long long>(P))) {}

  constexpr std::uint64_t value() const { return v_; }

  constexpr ModP& operator+=(ModP o) {
    v_ += o.v_;
    if (v_ >= P) v_ -= P;
    return *this;
  }
  constexpr ModP& operator-=(ModP o) {
    v_ = v_ >= o.v_ ? v_ - o.v_ : v_ + P - o.v_;
    return *this;
  }
  constexpr ModP& operator*=(ModP o) {
    v_ = static_cast<std::uint64_t>((static_cast<unsigned __int128>(v_) * o.v_) % P);
    return *this;
  }
  constexpr ModP& operator/=(ModP o) { return *this *= o.inverse(); }

  constexpr ModP inverse() const {
    // Fermat; callers never invert zero.
    ModP base = *this, result = 1;
    for (std::uint64_t e = P - 2; e; e >>= 1) {
      if (e & 1) result *= base;
      base *= base;
    }
    return result;
  }

  friend constexpr ModP operator+(ModP a, ModP b) { return a += b; }
  friend constexpr ModP operator-(ModP a, ModP b) { return a -= b; }
  friend constexpr ModP operator*(ModP a, ModP b) { return a *= b; }
  friend constexpr ModP operator/(ModP a, ModP b) { return a /= b; }
  friend constexpr ModP operator-(ModP a) { return ModP() - a; }
  friend constexpr bool operator==(ModP a, ModP b) { return a.v_ == b.v_; }
  friend std::ostream& operator<<(std::ostream& os, ModP a) { return os << a.v_; }

 private:
  std::uint64_t v_ = 0;
};

}  // namespace natspec
