#ifndef BCAST_ORACLES_HPP_
#define BCAST_ORACLES_HPP_

#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <stdexcept>

#include "bcast/instance.hpp"

namespace bcast {

class OracleTooLarge : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct OracleResult {
  double optimum = 0;  // min max flow, or max profit
  Schedule witness;
  std::int64_t explored = 0;
};

// Branch and bound over one live page per slot. Throws OracleTooLarge
// once more than `limit` nodes are visited.
OracleResult brute_maxflow(const Instance& instance,
                           std::int64_t limit = 10000000);
OracleResult brute_throughput(const Instance& instance,
                              std::int64_t limit = 10000000);

struct MonteCarloResult {
  double mean = 0;
  double stderr_ = 0;  // sample std / sqrt(trials)
  std::map<double, std::int64_t> histogram;
  int trials = 0;
};

// Trial i gets its own generator seeded from (seed, i).
MonteCarloResult monte_carlo(const std::function<double(std::mt19937_64&)>& run,
                             int trials, std::uint64_t seed);

}  // namespace bcast

#endif  // BCAST_ORACLES_HPP_
