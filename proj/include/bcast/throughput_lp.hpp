#ifndef BCAST_THROUGHPUT_LP_HPP_
#define BCAST_THROUGHPUT_LP_HPP_

#include <iosfwd>
#include <map>
#include <optional>
#include <vector>

#include "bcast/epsilon.hpp"
#include "bcast/fractional.hpp"
#include "bcast/instance.hpp"

namespace bcast {

struct Interval {
  Time start = 0;
  Time end = -1;  // inclusive
  Time length() const { return end - start + 1; }
  bool contains(Time t) const { return start <= t && t <= end; }
};

// Integer block quantities 2H/eps, eps*H, eps^2*H.
struct BlockParams {
  Time block = 0;
  Time eps_h = 0;
  Time eps2_h = 0;
};

// Throws std::invalid_argument unless all three are positive integers.
BlockParams block_params(Time H, Epsilon eps);

struct IntervalPartition {
  Time first_length = 0;
  Time block = 0;
  std::vector<Interval> intervals;

  int index_of(Time t) const;  // -1 outside [0, T]
  Time horizon() const { return intervals.empty() ? 0 : intervals.back().end; }
};

// Tiles [0, horizon] with a first interval of `first_length` and then
// blocks of 2H/eps; the last one is truncated at the horizon.
IntervalPartition build_partition(Time horizon, Time H, Epsilon eps,
                                  Time first_length);
IntervalPartition build_partition(const Instance& instance, Time H,
                                  Epsilon eps, Time first_length);

struct LargeWindows {
  Interval left;
  std::optional<Interval> middle;
  std::optional<Interval> right;
  int left_interval = 0;
  int right_interval = 0;
};

// Requests are referred to by their index in instance.requests().
struct RequestClassification {
  std::vector<int> small;
  std::vector<int> small_discarded;
  std::vector<int> large;
  std::vector<int> large_discarded;
  std::map<int, int> small_interval;
  std::map<int, LargeWindows> windows;  // every large request
  double discarded_weight = 0;
};

RequestClassification classify_requests(const Instance& instance,
                                        const IntervalPartition& partition,
                                        Time H, Epsilon eps);

// A page with a profit collected once if sent anywhere in [start, end].
struct Item {
  Page page = 0;
  Time start = 0;
  Time end = -1;
  double profit = 0;
};

// Slot i of a configuration is time interval.start + i; kIdle means silent.
using Configuration = std::vector<Page>;

double configuration_value(const Interval& interval,
                           const std::vector<Item>& items,
                           const Configuration& config);

struct OracleAnswer {
  Configuration config;
  double value = 0;
};

// Exact maximizer of configuration_value. Per slot only the |I| pages with
// the largest single-slot profit are considered; the search is a DP over
// the set of still-open items already collected.
OracleAnswer best_configuration(const Interval& interval,
                                const std::vector<Item>& items);

// delta/xi follow classification.large.
struct DualSolution {
  std::vector<double> gamma;
  std::vector<double> delta;
  std::vector<double> xi;
  double objective = 0;
};

// Items priced for one interval: retained small requests at their weight,
// retained large requests at delta.
std::vector<Item> interval_items(const Instance& instance,
                                 const IntervalPartition& partition,
                                 const RequestClassification& cls,
                                 int interval,
                                 const std::vector<double>& delta);

// Most violated configuration for the interval, or nullopt when none
// exceeds gamma_I by more than kTol.
std::optional<OracleAnswer> separation_oracle(
    const Instance& instance, const IntervalPartition& partition,
    const RequestClassification& cls, int interval, const DualSolution& dual);

struct Column {
  int interval = 0;
  Configuration config;
  double weight = 0;       // y_{I,Q}
  double small_value = 0;  // w_{I,Q}
};

struct ConfigLpSolution {
  IntervalPartition partition;
  RequestClassification classification;
  std::vector<Column> columns;    // only y > kTol
  std::map<int, double> z;        // retained large requests
  FractionalSchedule x;
  DualSolution dual;
  double objective = 0;
  int iterations = 0;
  int generated = 0;

  // Whether the column transmits the request's page inside its window.
  bool hits(const Instance& instance, const Column& c, int request) const;
  // Sum of y over columns of `interval` that hit the request.
  double hit_mass(const Instance& instance, int request, int interval) const;
};

// Cutting planes on the dual for one partition, then the restricted
// primal over the generated columns.
ConfigLpSolution solve_config_lp_for(const Instance& instance, Time H,
                                     Epsilon eps, Time first_length);

// Best objective over all first-interval lengths.
ConfigLpSolution solve_config_lp(const Instance& instance, Time H,
                                 Epsilon eps);

struct ZSplit {
  double eta1 = 0, eta2 = 0, eta3 = 0;
  double zm = 0, zb = 0;
};

ZSplit zsplit_from(double eta1, double eta2, double eta3);
std::map<int, ZSplit> zsplit(const Instance& instance,
                             const ConfigLpSolution& solution);

// `col <interval> <weight> <pages...>` then `z <request id> <value>`.
void write_solution(const Instance& instance,
                    const ConfigLpSolution& solution, std::ostream& out);

}  // namespace bcast

#endif  // BCAST_THROUGHPUT_LP_HPP_
