#ifndef BCAST_GENERATOR_HPP_
#define BCAST_GENERATOR_HPP_

#include <cstdint>
#include <string>

#include "bcast/instance.hpp"

namespace bcast {

enum class Arrival { kUniform, kBursty };

struct Profile {
  int pages = 3;
  int requests = 6;
  Time release_span = 8;  // releases drawn from [0, release_span)
  Arrival arrival = Arrival::kUniform;
  int bursts = 2;
  Time burst_width = 2;

  bool throughput = false;
  Time window_min = 1;
  Time window_max = 4;
  int weight_min = 1;
  int weight_max = 10;
};

// Throws std::invalid_argument on an inconsistent profile.
Instance generate_instance(std::uint64_t seed, const Profile& profile);

// Comma-separated key=value list, e.g. "n=4,m=8,span=8,arrival=bursty,
// throughput=1,wmin=2,wmax=9,pmin=1,pmax=5". Unknown keys throw.
Profile parse_profile(const std::string& text);

}  // namespace bcast

#endif  // BCAST_GENERATOR_HPP_
