#ifndef BCAST_MAXFLOW_DERAND_HPP_
#define BCAST_MAXFLOW_DERAND_HPP_

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <vector>

#include "bcast/epsilon.hpp"
#include "bcast/maxflow_lp.hpp"

namespace bcast {

class RegimeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct EstimatorState {
  double lambda = 1;
  double eps = 0;
  Time L = 0;
  std::vector<Time> steps;                         // sorted, unique
  std::vector<std::pair<int, int>> intervals;      // step index pairs a <= b
  std::vector<bool> big;                           // per interval
  std::vector<std::vector<double>> mu;             // [interval][group]
  std::vector<std::vector<long>> floor_v;          // [interval][group]
  std::vector<double> mu_total;                    // per interval
  std::vector<std::vector<std::pair<Time, double>>> cumulative;  // per group
  std::vector<double> fixed;                       // chosen alphas, prefix

  int group_count() const { return static_cast<int>(cumulative.size()); }
  double small_threshold() const { return 6 * eps * static_cast<double>(L); }
};

// Rejects eps > 1/3.
EstimatorState make_estimator_state(const FractionalSchedule& x,
                                    const GroupPartition& groups, Epsilon eps,
                                    Time L,
                                    const std::vector<Time>& timesteps);

// X_{g,I}(alpha) in {0, 1} for every interval, by recounting crossings.
std::vector<int> realized_indicators(const EstimatorState& state, int g,
                                     double alpha);

// log E_{h,I}: groups 0..h-1 fixed at state.fixed.
double log_estimator(const EstimatorState& state, int interval, int h);
double estimator(const EstimatorState& state, int interval, int h);
double estimator_sum(const EstimatorState& state, int h);

// One representative alpha inside each gap between consecutive distinct
// fractional parts of the group's cumulative sums.
std::vector<double> candidate_alphas(const FractionalSchedule& x,
                                     const GroupPartition& groups, int g);

struct DerandStep {
  int group = 0;
  double alpha = 0;
  double estimator_sum = 0;
};

struct DerandResult {
  AlphaVector alphas;
  double initial_sum = 0;
  std::vector<DerandStep> trace;
};

// Fixes each group's alpha in turn to the candidate minimizing the
// estimator sum. Throws RegimeError when the initial sum exceeds
// 1/request_count.
DerandResult derandomize(const FractionalSchedule& x,
                         const GroupPartition& groups, Epsilon eps, Time L,
                         const std::vector<Time>& timesteps,
                         int request_count);

// `derand <g> <alpha> <sum>` per step.
void write_trace(const DerandResult& result, std::ostream& out);

}  // namespace bcast

#endif  // BCAST_MAXFLOW_DERAND_HPP_
