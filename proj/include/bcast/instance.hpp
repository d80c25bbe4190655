#ifndef BCAST_INSTANCE_HPP_
#define BCAST_INSTANCE_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace bcast {

using Time = std::int64_t;
using Page = std::int32_t;

// Tolerance for every comparison against LP output.
inline constexpr double kTol = 1e-9;

// Reserved page id meaning "no transmission" inside configurations.
inline constexpr Page kIdle = -1;

class InvalidInstance : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Request {
  int id = 0;
  Time release = 0;
  Page page = 0;
  std::optional<Time> deadline;
  std::optional<double> weight;

  bool has_window() const { return deadline.has_value(); }
  // Window [release + 1, deadline].
  Time window_start() const { return release + 1; }
  Time window_end() const { return *deadline; }
  Time window_length() const { return *deadline - release; }
};

// Pages are the integers 0..page_count-1.
class Instance {
 public:
  Instance() = default;
  Instance(int page_count, std::vector<Request> requests,
           std::optional<Time> horizon = std::nullopt);

  int page_count() const { return page_count_; }
  int request_count() const { return static_cast<int>(requests_.size()); }
  const std::vector<Request>& requests() const { return requests_; }
  const Request& request(int i) const { return requests_[i]; }
  Time horizon() const { return horizon_; }
  bool empty() const { return requests_.empty(); }

  Time max_release() const;
  Time max_deadline() const;
  bool is_throughput() const;
  double total_weight() const;

  // max release + min(m, n); 0 for the empty instance.
  Time derived_horizon() const;

  // Sorted release times of requests for page p.
  std::vector<Time> release_times(Page p) const;

 private:
  void validate() const;

  int page_count_ = 0;
  std::vector<Request> requests_;
  Time horizon_ = 0;
};

Instance reduce_horizon(const Instance& instance);

// Sorts requests by id.
Instance canonicalize(const Instance& instance);

class Schedule {
 public:
  Schedule() = default;

  // Throws std::logic_error if the slot already holds a different page.
  void assign(Time t, Page p);
  void clear(Time t) { slots_.erase(t); }
  std::optional<Page> at(Time t) const;
  bool occupied(Time t) const { return slots_.count(t) != 0; }

  const std::map<Time, Page>& slots() const { return slots_; }
  std::size_t size() const { return slots_.size(); }
  bool operator==(const Schedule& other) const = default;

 private:
  std::map<Time, Page> slots_;
};

class TentativeSchedule {
 public:
  TentativeSchedule() = default;

  // Adding a page already present at t is a no-op.
  void add(Time t, Page p);
  const std::vector<Page>& at(Time t) const;
  const std::map<Time, std::vector<Page>>& slots() const { return slots_; }
  std::size_t transmission_count() const;
  bool operator==(const TentativeSchedule& other) const = default;

 private:
  std::map<Time, std::vector<Page>> slots_;
};

}  // namespace bcast

#endif  // BCAST_INSTANCE_HPP_
