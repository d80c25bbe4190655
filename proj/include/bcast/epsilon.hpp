#ifndef BCAST_EPSILON_HPP_
#define BCAST_EPSILON_HPP_

#include <cstdint>
#include <string>

namespace bcast {

// Accuracy parameter kept as an exact fraction num/den.
struct Epsilon {
  std::int64_t num = 1;
  std::int64_t den = 2;

  // Best fraction with denominator <= 10000; throws outside (0, 1).
  static Epsilon from_double(double value);
  static Epsilon unit(std::int64_t inverse) { return {1, inverse}; }

  double value() const { return static_cast<double>(num) / den; }
  bool is_unit() const { return num == 1; }
  // 1/eps; throws std::invalid_argument unless eps = 1/k.
  std::int64_t inverse() const;
  // eps * x when integral; throws std::invalid_argument otherwise.
  std::int64_t times(std::int64_t x, const char* what) const;
  bool divides(std::int64_t x) const { return (x * num) % den == 0; }
  std::string str() const;
};

}  // namespace bcast

#endif  // BCAST_EPSILON_HPP_
