#ifndef BCAST_MAXFLOW_EXACT_HPP_
#define BCAST_MAXFLOW_EXACT_HPP_

#include <optional>
#include <stdexcept>
#include <vector>

#include "bcast/epsilon.hpp"
#include "bcast/instance.hpp"

namespace bcast {

class MemoryGuardError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Configuration DP over the last L transmitted pages. Returns a schedule
// with max flow <= L, or nullopt when none exists. Refuses instances with
// L * log2(n) > 40 unless `force` is set.
std::optional<Schedule> dp_constant(const Instance& instance, Time L,
                                    bool force = false);

struct SimplifiedInstance {
  Instance base;             // releases ceil(r / slot_capacity)
  Time slot_capacity = 1;    // eps * L
  Time ell = 0;              // 2 + 1/eps
  Time L = 0;
};

// Requires eps = 1/k with eps * L integral.
SimplifiedInstance simplify_instance(const Instance& instance, Time L,
                                     Epsilon eps);

// Sets of at most slot_capacity pages per shrunk step; every request served
// within ell steps. nullopt when infeasible.
std::optional<TentativeSchedule> dp_simplified(
    const SimplifiedInstance& simplified);

// Spreads shrunk step k over original times c*k .. c*k + c - 1.
Schedule convert_schedule(const TentativeSchedule& shrunk,
                          Time slot_capacity);

// Splits at request-free gaps of length >= L.
std::vector<Instance> decompose_silent(const Instance& instance, Time L);

// Union of schedules; throws std::logic_error on a slot conflict.
Schedule merge_schedules(const std::vector<Schedule>& parts);

}  // namespace bcast

#endif  // BCAST_MAXFLOW_EXACT_HPP_
