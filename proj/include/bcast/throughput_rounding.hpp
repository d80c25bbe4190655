#ifndef BCAST_THROUGHPUT_ROUNDING_HPP_
#define BCAST_THROUGHPUT_ROUNDING_HPP_

#include <algorithm>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "bcast/instance.hpp"
#include "bcast/metrics.hpp"
#include "bcast/throughput_lp.hpp"

namespace bcast {

using Rng = std::mt19937_64;
using Rational = boost::multiprecision::cpp_rational;

// [start, end) with the slots [freed_start, end) emptied.
struct Block {
  Time start = 0;
  Time end = 0;
  Time freed_start = 0;
};

struct BlockStructure {
  Time h = 0;
  Time freed = 0;   // eps^2 H
  Time length = 0;  // eps H
  std::vector<Block> blocks;

  int block_of(Time t) const;
  bool is_freed(Time t) const;
};

// B_0 = [0, h), then blocks of eps*H until [0, horizon] is covered.
BlockStructure make_blocks(Time horizon, Time h, const BlockParams& params);

enum class Direction { kLeft, kRight };

std::string to_string(Direction d);

struct BlockReport {
  int block = 0;
  Time overflow = 0;         // pages in A_t minus the first-round page
  bool condition = true;     // counting condition held at every t
  bool placed = true;        // all overflow relocated
  bool claim_failed = false; // condition held but greedy placement did not
};

struct Relocation {
  Schedule schedule;
  std::vector<BlockReport> blocks;
};

// Frees the block tails, keeps first-round pages and moves the rest of
// every A_t in the chosen direction. A block either places all of its
// overflow or none of it.
Relocation relocate(const TentativeSchedule& tentative,
                    const std::map<Time, Page>& first_round,
                    const BlockStructure& blocks, Direction direction);

// Per-page alpha-point rounding with one independent alpha per page.
TentativeSchedule alpha_point_tentative(const FractionalSchedule& x, Rng& rng);
TentativeSchedule alpha_point_tentative(const FractionalSchedule& x,
                                        const std::map<Page, double>& alphas);

class DegenerateInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Selection probabilities over `contenders` given the column x_{.,t}.
// A single contender gets probability one.
template <typename Num>
std::vector<Num> contention_distribution(
    const std::vector<Page>& contenders,
    const std::map<Page, Num>& column) {
  const std::size_t k = contenders.size();
  if (k == 0) return {};
  if (k == 1) return {Num(1)};
  Num total(0), inside(0);
  for (const auto& [q, v] : column) total += v;
  if (!(total > Num(0))) {
    throw DegenerateInput("contention with zero fractional mass");
  }
  for (Page p : contenders) {
    auto it = column.find(p);
    if (it != column.end()) inside += it->second;
  }
  const Num outside = total - inside;
  std::vector<Num> probs;
  probs.reserve(k);
  for (Page p : contenders) {
    auto it = column.find(p);
    const Num own = it == column.end() ? Num(0) : it->second;
    Num v = (inside - own) / Num(static_cast<long>(k - 1)) +
            outside / Num(static_cast<long>(k));
    probs.push_back(v / total);
  }
  return probs;
}

// nullopt when `contenders` is empty.
std::optional<Page> contention_resolve(const std::vector<Page>& contenders,
                                       const std::map<Page, double>& column,
                                       Rng& rng);

struct RoundingOutcome {
  std::string scheme;  // independent | alpha
  Schedule schedule;
  ProfitReport report;
  double profit = 0;

  // alpha scheme only
  std::map<Time, int> contention;  // |A_t|
  std::map<Time, Page> first_round;
  std::vector<BlockReport> blocks;
  Direction direction = Direction::kRight;
  Time h = 0;
};

RoundingOutcome independent_round(const Instance& instance,
                                  const ConfigLpSolution& solution, Rng& rng);

RoundingOutcome alpha_scheme(const Instance& instance,
                             const ConfigLpSolution& solution, Epsilon eps,
                             Time H, Rng& rng);

struct BetterOfTwo {
  RoundingOutcome best;
  std::vector<double> independent_profits;
  std::vector<double> alpha_profits;
  double independent_mean = 0;
  double alpha_mean = 0;

  double best_mean() const { return std::max(independent_mean, alpha_mean); }
};

// Trial i of a scheme draws from trial_seed(seed, scheme, i).
BetterOfTwo better_of_two(const Instance& instance,
                          const ConfigLpSolution& solution, Epsilon eps,
                          Time H, int trials, std::uint64_t seed);

std::uint64_t trial_seed(std::uint64_t seed, int scheme, int trial);

// `trial <scheme> <seed> <profit>` lines.
void write_trials(const BetterOfTwo& result, std::uint64_t seed,
                  std::ostream& out);

class EnumerationTooLarge : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ExactSatisfaction {
  Rational probability;
  Rational coverage;  // min(1, hit mass), the z of the request
};

// Exact value of the double as a rational.
Rational exact_rational(double v);

// Pr[request satisfied] under independent_round, by enumerating every
// combination of column choices over the intervals meeting its window.
// Column weights are read exactly; an interval whose weights sum past
// one is normalized.
ExactSatisfaction exact_satisfaction_probability(
    const Instance& instance, const ConfigLpSolution& solution, int request,
    std::int64_t limit = 1000000);

}  // namespace bcast

#endif  // BCAST_THROUGHPUT_ROUNDING_HPP_
