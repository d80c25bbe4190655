#ifndef BCAST_MAXFLOW_LP_HPP_
#define BCAST_MAXFLOW_LP_HPP_

#include <optional>
#include <stdexcept>
#include <vector>

#include "bcast/fractional.hpp"
#include "bcast/instance.hpp"

namespace bcast {

class LpSolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class PartitionViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct SplitInstance {
  Instance instance;
  std::vector<Page> physical;  // page of the split instance -> real page
};

// Clones a page whenever two release-adjacent requests for it are >= L
// apart; later requests move to the clone.
SplitInstance split_far_pages(const Instance& instance, Time L);

Schedule to_physical(const Schedule& schedule,
                     const std::vector<Page>& physical);

// At most m time steps that some optimal schedule confines itself to.
std::vector<Time> restrict_timesteps(const Instance& instance);

// Minimizes sum x subject to coverage within L, one page per step and
// the usable window of each page, over the given time steps.
std::optional<FractionalSchedule> solve_lp_maxflow(
    const Instance& instance, Time L, const std::vector<Time>& timesteps);

// Smallest L in [1, n] with a feasible relaxation on the split instance.
Time min_lp_feasible_L(const Instance& instance);

struct Window {
  Time start = 0;
  Time end = -1;
  bool overlaps(const Window& o) const {
    return start <= o.end && o.start <= end;
  }
};

struct GroupPartition {
  std::vector<int> group_of;     // per page, -1 if never requested
  std::vector<Window> windows;   // per page
  std::vector<std::vector<Page>> members;
  int group_count() const { return static_cast<int>(members.size()); }
};

// Greedy coloring of the windows [min T_p + 1, max T_p + L].
GroupPartition build_groups(const Instance& instance, Time L);

using AlphaVector = std::vector<double>;  // one value in [0,1) per group

// Per-group cumulative mass at each time carrying mass, snapped to
// integers within kTol.
std::vector<std::pair<Time, double>> group_cumulative(
    const FractionalSchedule& x, const std::vector<Page>& members);

// Times t with y_{t-1} < k + alpha <= y_t for some integer k >= 0.
std::vector<Time> crossing_times(
    const std::vector<std::pair<Time, double>>& cumulative, double alpha);

TentativeSchedule group_alpha_round(const FractionalSchedule& x,
                                    const GroupPartition& groups,
                                    const AlphaVector& alphas);

// Largest flow time of the instance when every page in A_t counts as sent.
Time tentative_max_flow(const Instance& instance,
                        const TentativeSchedule& tentative);

// Queues (page, arrival) jobs and sends one per step.
Schedule fifo_flatten(const TentativeSchedule& tentative);

// max over [a, b] with a, b in timesteps of max(Q(I) - |I|, 0).
Time max_overflow(const TentativeSchedule& tentative,
                  const std::vector<Time>& timesteps);
// Endpoints restricted to times carrying transmissions.
Time max_overflow(const TentativeSchedule& tentative);

}  // namespace bcast

#endif  // BCAST_MAXFLOW_LP_HPP_
