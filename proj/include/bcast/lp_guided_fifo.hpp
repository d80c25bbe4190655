#ifndef BCAST_LP_GUIDED_FIFO_HPP_
#define BCAST_LP_GUIDED_FIFO_HPP_

#include <limits>

#include "bcast/fractional.hpp"
#include "bcast/instance.hpp"

namespace bcast {

// At each slot with an outstanding request, sends the page holding the most
// fractional mass since its own last transmission. Ties go to the earliest
// outstanding request, then the smaller page.
Schedule lp_guided_fifo(const Instance& instance, const FractionalSchedule& x);

// Largest, over requests, of the wait until x has delivered one unit of the
// page after the release. Infinite when some request never gets a unit.
Time fractional_max_flow(const Instance& instance, const FractionalSchedule& x);

// Even n: two requests (pages 2t-1, 2t in 1-based numbering) at every
// t in [1, n/2], repeated at t + n/2.
Instance half_mass_instance(int n);
// Each page gets 1/2 at ceil(p/2)+1, +n/2 and +n (1-based page p).
FractionalSchedule half_mass_fractional(int n);

}  // namespace bcast

#endif  // BCAST_LP_GUIDED_FIFO_HPP_
