#ifndef BCAST_METRICS_HPP_
#define BCAST_METRICS_HPP_

#include <limits>
#include <vector>

#include "bcast/instance.hpp"

namespace bcast {

inline constexpr Time kInfiniteFlow = std::numeric_limits<Time>::max();

struct FlowReport {
  // Indexed like instance.requests(); kInfiniteFlow when never served.
  std::vector<Time> flow;
  std::vector<Time> completion;
  Time max_flow = 0;

  bool all_satisfied() const { return max_flow != kInfiniteFlow; }
};

struct ProfitReport {
  std::vector<bool> satisfied;
  std::vector<Time> satisfied_at;  // 0 when unsatisfied
  double profit = 0;
};

FlowReport evaluate_max_flow(const Instance& instance,
                             const Schedule& schedule);

// Throws InvalidInstance when some request lacks a deadline or weight.
ProfitReport evaluate_throughput(const Instance& instance,
                                 const Schedule& schedule);

// Drops transmissions that complete no request.
Schedule prune_useless(const Instance& instance, const Schedule& schedule);

}  // namespace bcast

#endif  // BCAST_METRICS_HPP_
