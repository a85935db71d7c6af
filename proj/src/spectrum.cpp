#include "natspec/spectrum.hpp"

namespace natspec {

Spectrum char_poly(const Matrix& a) { return Spectrum{char_poly_coeffs(a)}; }

std::vector<Rational> traces_from_charpoly(const Spectrum& s) {
  return power_sums_from_coeffs(s.coeffs);
}

Spectrum charpoly_from_traces(const std::vector<Rational>& t, std::size_t n) {
  if (t.size() != n) {
    throw DimensionError("expected " + std::to_string(n) + " traces, got " +
                         std::to_string(t.size()));
  }
  return Spectrum{coeffs_from_power_sums(t)};
}

std::string Spectrum::to_polynomial_string() const {
  std::string out;
  for (std::size_t k = coeffs.size(); k-- > 0;) {
    const Rational& c = coeffs[k];
    if (c == 0) continue;
    Rational mag = abs(c);
    if (out.empty()) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    const bool unit = mag == 1;
    if (!unit || k == 0) {
      out += mag.get_den() == 1 ? mag.get_num().get_str() : mag.get_str();
    }
    if (k >= 1) out += "t";
    if (k >= 2) out += "^" + std::to_string(k);
  }
  return out.empty() ? "0" : out;
}

}  // namespace natspec
