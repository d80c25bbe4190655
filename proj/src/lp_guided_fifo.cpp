#include "bcast/lp_guided_fifo.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <tuple>

#include "bcast/metrics.hpp"

namespace bcast {

Schedule lp_guided_fifo(const Instance& instance, const FractionalSchedule& x) {
  Schedule out;
  const auto& reqs = instance.requests();
  std::vector<int> order(reqs.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return reqs[a].release < reqs[b].release;
  });
  std::vector<bool> done(reqs.size(), false);
  std::vector<Time> last(instance.page_count(), 0);
  std::size_t remaining = reqs.size();
  std::size_t next = 0;  // first request in `order` not yet released
  for (Time t = 1; remaining > 0; ++t) {
    while (next < order.size() && reqs[order[next]].release < t) ++next;
    std::vector<Time> earliest(instance.page_count(),
                               std::numeric_limits<Time>::max());
    bool any = false;
    for (std::size_t k = 0; k < next; ++k) {
      const int i = order[k];
      if (done[i]) continue;
      earliest[reqs[i].page] = std::min(earliest[reqs[i].page], reqs[i].release);
      any = true;
    }
    if (!any) {
      t = reqs[order[next]].release;
      continue;
    }
    std::tuple<double, Time, Page> best{1.0, 0, 0};
    bool have = false;
    for (Page p = 0; p < instance.page_count(); ++p) {
      double y = 0;
      const auto& row = x.row(p);
      for (auto it = row.upper_bound(last[p]); it != row.end() && it->first <= t;
           ++it) {
        y += it->second;
      }
      std::tuple<double, Time, Page> key{-y, earliest[p], p};
      if (!have || key < best) best = key;
      have = true;
    }
    const Page p = std::get<2>(best);
    out.assign(t, p);
    last[p] = t;
    for (std::size_t k = 0; k < next; ++k) {
      const int i = order[k];
      if (!done[i] && reqs[i].page == p) {
        done[i] = true;
        --remaining;
      }
    }
  }
  return out;
}

Time fractional_max_flow(const Instance& instance,
                         const FractionalSchedule& x) {
  Time worst = 0;
  for (const Request& r : instance.requests()) {
    double mass = 0;
    Time reached = kInfiniteFlow;
    const auto& row = x.row(r.page);
    for (auto it = row.upper_bound(r.release); it != row.end(); ++it) {
      mass += it->second;
      if (mass >= 1 - kTol) {
        reached = it->first - r.release;
        break;
      }
    }
    worst = std::max(worst, reached);
  }
  return worst;
}

Instance half_mass_instance(int n) {
  if (n < 2 || n % 2 != 0) throw std::invalid_argument("n must be even and >= 2");
  std::vector<Request> reqs;
  for (int round = 0; round < 2; ++round) {
    for (Time t = 1; t <= n / 2; ++t) {
      for (Page p : {static_cast<Page>(2 * t - 2), static_cast<Page>(2 * t - 1)}) {
        Request r;
        r.id = static_cast<int>(reqs.size());
        r.release = t + round * (n / 2);
        r.page = p;
        reqs.push_back(r);
      }
    }
  }
  return Instance(n, std::move(reqs));
}

FractionalSchedule half_mass_fractional(int n) {
  if (n < 2 || n % 2 != 0) throw std::invalid_argument("n must be even and >= 2");
  FractionalSchedule x;
  for (Page p = 0; p < n; ++p) {
    const Time base = (p + 2) / 2 + 1;  // ceil((p+1)/2) + 1
    for (Time offset : {Time{0}, Time{n / 2}, Time{n}}) x.set(p, base + offset, 0.5);
  }
  return x;
}

}  // namespace bcast
