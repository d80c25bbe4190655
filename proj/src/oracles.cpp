#include "bcast/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bcast/baselines.hpp"
#include "bcast/metrics.hpp"

namespace bcast {
namespace {

class Search {
 public:
  Search(const Instance& instance, std::int64_t limit)
      : reqs_(instance.requests()), done_(reqs_.size(), false), limit_(limit) {}

 protected:
  void visit() {
    if (++explored_ > limit_) {
      throw OracleTooLarge("oracle explored more than " +
                           std::to_string(limit_) + " nodes");
    }
  }

  const std::vector<Request>& reqs_;
  std::vector<bool> done_;
  std::vector<std::pair<Time, Page>> path_;
  std::int64_t limit_;
  std::int64_t explored_ = 0;
  Schedule witness_;
};

class MaxflowSearch : public Search {
 public:
  using Search::Search;

  OracleResult run(const Instance& instance) {
    witness_ = fifo_schedule(instance);
    best_ = evaluate_max_flow(instance, witness_).max_flow;
    dfs(1, 0, static_cast<int>(reqs_.size()));
    return {static_cast<double>(best_), witness_, explored_};
  }

 private:
  void dfs(Time t, Time current, int remaining) {
    visit();
    if (remaining == 0) {
      if (current < best_) {
        best_ = current;
        witness_ = Schedule();
        for (const auto& [s, p] : path_) witness_.assign(s, p);
      }
      return;
    }
    std::map<Page, Time> earliest;
    Time next_release = std::numeric_limits<Time>::max();
    for (std::size_t i = 0; i < reqs_.size(); ++i) {
      if (done_[i]) continue;
      const Request& r = reqs_[i];
      if (r.release < t) {
        auto [it, fresh] = earliest.try_emplace(r.page, r.release);
        if (!fresh) it->second = std::min(it->second, r.release);
      } else {
        next_release = std::min(next_release, r.release);
      }
    }
    if (earliest.empty()) {
      dfs(next_release + 1, current, remaining);
      return;
    }
    std::vector<std::pair<Time, Page>> order;
    for (const auto& [p, e] : earliest) order.emplace_back(e, p);
    std::sort(order.begin(), order.end());
    Time bound = current;
    for (std::size_t k = 0; k < order.size(); ++k) {
      bound = std::max(bound, t + static_cast<Time>(k) - order[k].first);
    }
    if (bound >= best_) return;

    for (const auto& [e, p] : order) {
      std::vector<std::size_t> hit;
      for (std::size_t i = 0; i < reqs_.size(); ++i) {
        if (!done_[i] && reqs_[i].page == p && reqs_[i].release < t) {
          done_[i] = true;
          hit.push_back(i);
        }
      }
      path_.emplace_back(t, p);
      dfs(t + 1, std::max(current, t - e),
          remaining - static_cast<int>(hit.size()));
      path_.pop_back();
      for (std::size_t i : hit) done_[i] = false;
    }
  }

  Time best_ = 0;
};

class ThroughputSearch : public Search {
 public:
  using Search::Search;

  OracleResult run(const Instance& instance) {
    for (const Request& r : reqs_) {
      if (!r.has_window()) throw InvalidInstance("throughput needs deadlines");
    }
    witness_ = greedy_throughput(instance);
    best_ = evaluate_throughput(instance, witness_).profit;
    horizon_ = instance.max_deadline();
    dfs(1, 0.0);
    return {best_, witness_, explored_};
  }

 private:
  void dfs(Time t, double profit) {
    visit();
    if (profit > best_ + 1e-12) {
      best_ = profit;
      witness_ = Schedule();
      for (const auto& [s, p] : path_) witness_.assign(s, p);
    }
    if (t > horizon_) return;
    std::map<Page, double> live;
    double possible = 0;
    Time next_start = std::numeric_limits<Time>::max();
    for (std::size_t i = 0; i < reqs_.size(); ++i) {
      if (done_[i]) continue;
      const Request& r = reqs_[i];
      if (r.window_end() < t) continue;
      possible += *r.weight;
      if (r.window_start() <= t) {
        live[r.page] += *r.weight;
      } else {
        next_start = std::min(next_start, r.window_start());
      }
    }
    if (profit + possible <= best_ + 1e-12) return;
    if (live.empty()) {
      if (next_start <= horizon_) dfs(next_start, profit);
      return;
    }
    std::vector<std::pair<double, Page>> order;
    for (const auto& [p, w] : live) order.emplace_back(-w, p);
    std::sort(order.begin(), order.end());
    for (const auto& [negw, p] : order) {
      std::vector<std::size_t> hit;
      for (std::size_t i = 0; i < reqs_.size(); ++i) {
        const Request& r = reqs_[i];
        if (!done_[i] && r.page == p && r.window_start() <= t &&
            t <= r.window_end()) {
          done_[i] = true;
          hit.push_back(i);
        }
      }
      path_.emplace_back(t, p);
      dfs(t + 1, profit - negw);
      path_.pop_back();
      for (std::size_t i : hit) done_[i] = false;
    }
  }

  double best_ = 0;
  Time horizon_ = 0;
};

}  // namespace

OracleResult brute_maxflow(const Instance& instance, std::int64_t limit) {
  if (instance.empty()) return {};
  return MaxflowSearch(instance, limit).run(instance);
}

OracleResult brute_throughput(const Instance& instance, std::int64_t limit) {
  if (instance.empty()) return {};
  return ThroughputSearch(instance, limit).run(instance);
}

MonteCarloResult monte_carlo(
    const std::function<double(std::mt19937_64&)>& run, int trials,
    std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("trials must be positive");
  MonteCarloResult out;
  out.trials = trials;
  std::vector<double> values;
  values.reserve(trials);
  for (int i = 0; i < trials; ++i) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed),
                      static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(i)};
    std::mt19937_64 rng(seq);
    values.push_back(run(rng));
    ++out.histogram[values.back()];
  }
  double sum = 0;
  for (double v : values) sum += v;
  out.mean = sum / trials;
  if (trials > 1) {
    double sq = 0;
    for (double v : values) sq += (v - out.mean) * (v - out.mean);
    out.stderr_ = std::sqrt(sq / (trials - 1)) / std::sqrt(trials);
  }
  return out;
}

}  // namespace bcast
