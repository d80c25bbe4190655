#include "bcast/epsilon.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace bcast {

Epsilon Epsilon::from_double(double value) {
  if (!(value > 0 && value < 1)) {
    throw std::invalid_argument("eps must lie in (0, 1)");
  }
  for (std::int64_t den = 1; den <= 10000; ++den) {
    double num = std::round(value * den);
    if (num >= 1 && std::abs(num / den - value) < 1e-9) {
      std::int64_t n = static_cast<std::int64_t>(num);
      std::int64_t g = std::gcd(n, den);
      return {n / g, den / g};
    }
  }
  throw std::invalid_argument("eps is not a simple fraction");
}

std::int64_t Epsilon::inverse() const {
  if (num != 1) {
    throw std::invalid_argument("1/eps must be an integer, got eps = " +
                                str());
  }
  return den;
}

std::int64_t Epsilon::times(std::int64_t x, const char* what) const {
  if (!divides(x)) {
    throw std::invalid_argument(std::string(what) + " is not an integer");
  }
  return x * num / den;
}

std::string Epsilon::str() const {
  return std::to_string(num) + "/" + std::to_string(den);
}

}  // namespace bcast
