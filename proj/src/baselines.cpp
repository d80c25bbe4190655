#include "bcast/baselines.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <tuple>

namespace bcast {

Schedule fifo_schedule(const Instance& instance) {
  const auto& reqs = instance.requests();
  std::vector<int> order(reqs.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return std::tie(reqs[a].release, reqs[a].page, reqs[a].id) <
           std::tie(reqs[b].release, reqs[b].page, reqs[b].id);
  });

  std::set<std::tuple<Time, Page, int>> pending;
  std::vector<std::vector<int>> pending_by_page(instance.page_count());
  Schedule schedule;
  std::size_t next = 0;
  Time t = 1;
  while (next < order.size() || !pending.empty()) {
    if (pending.empty()) t = std::max(t, reqs[order[next]].release + 1);
    while (next < order.size() && reqs[order[next]].release < t) {
      const Request& r = reqs[order[next]];
      pending.emplace(r.release, r.page, order[next]);
      pending_by_page[r.page].push_back(order[next]);
      ++next;
    }
    Page p = std::get<1>(*pending.begin());
    schedule.assign(t, p);
    for (int i : pending_by_page[p]) {
      pending.erase({reqs[i].release, reqs[i].page, i});
    }
    pending_by_page[p].clear();
    ++t;
  }
  return schedule;
}

Schedule greedy_throughput(const Instance& instance) {
  const auto& reqs = instance.requests();
  std::vector<bool> done(reqs.size(), false);
  std::vector<double> gain(instance.page_count());
  Schedule schedule;
  const Time horizon = instance.max_deadline();
  for (Time t = 1; t <= horizon; ++t) {
    std::fill(gain.begin(), gain.end(), 0.0);
    for (std::size_t i = 0; i < reqs.size(); ++i) {
      const Request& r = reqs[i];
      if (!done[i] && r.window_start() <= t && t <= r.window_end()) {
        gain[r.page] += *r.weight;
      }
    }
    Page best = kIdle;
    for (Page p = 0; p < instance.page_count(); ++p) {
      if (gain[p] > 0 && (best == kIdle || gain[p] > gain[best])) best = p;
    }
    if (best == kIdle) continue;
    schedule.assign(t, best);
    for (std::size_t i = 0; i < reqs.size(); ++i) {
      const Request& r = reqs[i];
      if (r.page == best && r.window_start() <= t && t <= r.window_end()) {
        done[i] = true;
      }
    }
  }
  return schedule;
}

}  // namespace bcast
