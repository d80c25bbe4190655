#ifndef BCAST_BASELINES_HPP_
#define BCAST_BASELINES_HPP_

#include "bcast/instance.hpp"

namespace bcast {

// Serves the earliest-released outstanding request; ties by page id.
Schedule fifo_schedule(const Instance& instance);

// Per slot, the page with the largest live unsatisfied weight.
Schedule greedy_throughput(const Instance& instance);

}  // namespace bcast

#endif  // BCAST_BASELINES_HPP_
