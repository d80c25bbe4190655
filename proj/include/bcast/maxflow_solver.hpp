#ifndef BCAST_MAXFLOW_SOLVER_HPP_
#define BCAST_MAXFLOW_SOLVER_HPP_

#include <cstdint>
#include <optional>
#include <string>

#include "bcast/epsilon.hpp"
#include "bcast/instance.hpp"
#include "bcast/maxflow_derand.hpp"

namespace bcast {

struct LpRoundOutcome {
  Schedule schedule;          // physical pages
  Time L = 0;
  Time overflow = 0;
  Time tentative_flow = 0;
  Time max_flow = 0;
  int attempts = 0;           // random draws tried
  bool derandomized = false;
  std::optional<DerandResult> derand;
};

// ceil(6 eps L)
Time overflow_budget(Epsilon eps, Time L);

// Split, restrict, solve the relaxation at L, group, round with random
// alphas until the overflow is within budget, flatten. After `retries`
// failed draws the alphas come from derandomize(). nullopt when the
// relaxation is infeasible at L.
std::optional<LpRoundOutcome> maxflow_lp_round(const Instance& instance,
                                               Time L, Epsilon eps,
                                               std::uint64_t seed,
                                               int retries = 20);

// Same pipeline with the alphas taken straight from derandomize().
std::optional<LpRoundOutcome> maxflow_lp_derandomized(
    const Instance& instance, Time L, Epsilon eps);

// maxflow_lp_round at the smallest L with a feasible relaxation.
LpRoundOutcome randomized_maxflow_round(const Instance& instance,
                                        Epsilon eps, std::uint64_t seed);

struct SolveOptions {
  bool force = false;
  std::uint64_t seed = 1;
  // Overrides (1/eps^3) ln m as the hand-off point to the LP path.
  std::optional<double> lp_threshold;
};

struct MaxflowSolution {
  Schedule schedule;
  Time L = 0;
  Time max_flow = 0;
  std::string path;  // empty | exact | simplified | lp-randomized | lp-derandomized
};

// Tries L = 1, 2, ...: dp_constant up to 1/eps^2, the simplified DP up to
// the LP threshold, the rounding pipeline beyond. Requires 1/eps integral.
MaxflowSolution solve_maxflow(const Instance& instance, Epsilon eps,
                              const SolveOptions& options = {});

}  // namespace bcast

#endif  // BCAST_MAXFLOW_SOLVER_HPP_
