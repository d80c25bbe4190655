#include "bcast/generator.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace bcast {

Instance generate_instance(std::uint64_t seed, const Profile& profile) {
  if (profile.pages < 1 && profile.requests > 0) {
    throw std::invalid_argument("profile needs at least one page");
  }
  if (profile.requests < 0) throw std::invalid_argument("m < 0");
  if (profile.release_span < 1) throw std::invalid_argument("span < 1");
  if (profile.arrival == Arrival::kBursty &&
      (profile.bursts < 1 || profile.burst_width < 1)) {
    throw std::invalid_argument("bursty profile needs bursts and width");
  }
  if (profile.throughput &&
      (profile.window_min < 1 || profile.window_max < profile.window_min ||
       profile.weight_min < 0 || profile.weight_max < profile.weight_min)) {
    throw std::invalid_argument("bad window or weight range");
  }

  std::mt19937_64 rng(seed);
  auto uniform = [&rng](Time lo, Time hi) {
    return std::uniform_int_distribution<Time>(lo, hi)(rng);
  };

  std::vector<Time> centers;
  if (profile.arrival == Arrival::kBursty) {
    for (int b = 0; b < profile.bursts; ++b) {
      centers.push_back(uniform(0, profile.release_span - 1));
    }
  }

  std::vector<Request> requests;
  for (int i = 0; i < profile.requests; ++i) {
    Request r;
    r.id = i;
    if (centers.empty()) {
      r.release = uniform(0, profile.release_span - 1);
    } else {
      Time c = centers[uniform(0, profile.bursts - 1)];
      r.release = std::clamp<Time>(c + uniform(0, profile.burst_width - 1),
                                   0, profile.release_span - 1);
    }
    r.page = static_cast<Page>(uniform(0, profile.pages - 1));
    if (profile.throughput) {
      r.deadline = r.release + uniform(profile.window_min, profile.window_max);
      r.weight =
          static_cast<double>(uniform(profile.weight_min, profile.weight_max));
    }
    requests.push_back(r);
  }
  return Instance(profile.pages, std::move(requests));
}

Profile parse_profile(const std::string& text) {
  Profile profile;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    auto eq = item.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("profile entry without '=': " + item);
    }
    std::string key = item.substr(0, eq);
    std::string value = item.substr(eq + 1);
    auto as_int = [&]() -> long long {
      std::size_t used = 0;
      long long v = std::stoll(value, &used);
      if (used != value.size()) {
        throw std::invalid_argument("bad number in profile: " + item);
      }
      return v;
    };
    if (key == "n") profile.pages = static_cast<int>(as_int());
    else if (key == "m") profile.requests = static_cast<int>(as_int());
    else if (key == "span") profile.release_span = as_int();
    else if (key == "bursts") profile.bursts = static_cast<int>(as_int());
    else if (key == "width") profile.burst_width = as_int();
    else if (key == "throughput") profile.throughput = as_int() != 0;
    else if (key == "wmin") profile.window_min = as_int();
    else if (key == "wmax") profile.window_max = as_int();
    else if (key == "pmin") profile.weight_min = static_cast<int>(as_int());
    else if (key == "pmax") profile.weight_max = static_cast<int>(as_int());
    else if (key == "arrival") {
      if (value == "uniform") profile.arrival = Arrival::kUniform;
      else if (value == "bursty") profile.arrival = Arrival::kBursty;
      else throw std::invalid_argument("unknown arrival model: " + value);
    } else {
      throw std::invalid_argument("unknown profile key: " + key);
    }
  }
  return profile;
}

}  // namespace bcast
