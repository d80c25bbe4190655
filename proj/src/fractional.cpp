#include "bcast/fractional.hpp"

#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <string>

#include "bcast/instance_io.hpp"

namespace bcast {

void FractionalSchedule::set(Page p, Time t, double value) {
  if (value <= kTol) {
    auto it = values_.find(p);
    if (it != values_.end()) {
      it->second.erase(t);
      if (it->second.empty()) values_.erase(it);
    }
    return;
  }
  values_[p][t] = value;
}

void FractionalSchedule::add(Page p, Time t, double value) {
  set(p, t, get(p, t) + value);
}

double FractionalSchedule::get(Page p, Time t) const {
  auto it = values_.find(p);
  if (it == values_.end()) return 0.0;
  auto jt = it->second.find(t);
  return jt == it->second.end() ? 0.0 : jt->second;
}

const std::map<Time, double>& FractionalSchedule::row(Page p) const {
  static const std::map<Time, double> kEmpty;
  auto it = values_.find(p);
  return it == values_.end() ? kEmpty : it->second;
}

std::map<Time, double> FractionalSchedule::column_sums() const {
  std::map<Time, double> out;
  for (const auto& [p, row] : values_) {
    for (const auto& [t, v] : row) out[t] += v;
  }
  return out;
}

std::vector<Time> FractionalSchedule::times() const {
  std::set<Time> all;
  for (const auto& [p, row] : values_) {
    for (const auto& [t, v] : row) all.insert(t);
  }
  return {all.begin(), all.end()};
}

void write_fractional(const FractionalSchedule& x, std::ostream& out) {
  for (const auto& [p, row] : x.by_page()) {
    for (const auto& [t, v] : row) {
      out << "frac " << p << " " << t << " " << format_double(v) << "\n";
    }
  }
}

FractionalSchedule parse_fractional(std::istream& in) {
  FractionalSchedule x;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
    std::istringstream fields(raw);
    std::string key;
    if (!(fields >> key)) continue;
    Page p;
    Time t;
    double v;
    std::string extra;
    if (key != "frac" || !(fields >> p >> t >> v) || (fields >> extra)) {
      throw ParseError(line, "expected 'frac <page> <time> <value>'");
    }
    x.set(p, t, v);
  }
  return x;
}

}  // namespace bcast
