#ifndef BCAST_FRACTIONAL_HPP_
#define BCAST_FRACTIONAL_HPP_

#include <iosfwd>
#include <map>
#include <vector>

#include "bcast/instance.hpp"

namespace bcast {

// Sparse x_{p,t}; entries below kTol are not stored.
class FractionalSchedule {
 public:
  void set(Page p, Time t, double value);
  void add(Page p, Time t, double value);
  double get(Page p, Time t) const;

  const std::map<Page, std::map<Time, double>>& by_page() const {
    return values_;
  }
  const std::map<Time, double>& row(Page p) const;
  // Sum over pages at each time.
  std::map<Time, double> column_sums() const;
  std::vector<Time> times() const;

  Time L = 0;

 private:
  std::map<Page, std::map<Time, double>> values_;
};

// One `frac <page> <time> <value>` line per entry.
void write_fractional(const FractionalSchedule& x, std::ostream& out);
FractionalSchedule parse_fractional(std::istream& in);

}  // namespace bcast

#endif  // BCAST_FRACTIONAL_HPP_
