#include "bcast/maxflow_lp.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <map>
#include <set>

#include "bcast/simplex.hpp"

namespace bcast {
namespace {

double snap(double y) {
  double r = std::round(y);
  return std::abs(y - r) < kTol ? r : y;
}

}  // namespace

SplitInstance split_far_pages(const Instance& instance, Time L) {
  std::vector<std::vector<int>> by_page(instance.page_count());
  const auto& reqs = instance.requests();
  for (int i = 0; i < instance.request_count(); ++i) {
    by_page[reqs[i].page].push_back(i);
  }
  SplitInstance out;
  std::vector<Request> moved = reqs;
  for (Page p = 0; p < instance.page_count(); ++p) out.physical.push_back(p);
  Page next_id = instance.page_count();
  for (Page p = 0; p < instance.page_count(); ++p) {
    auto& idx = by_page[p];
    std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
      return reqs[a].release < reqs[b].release;
    });
    Page current = p;
    for (std::size_t k = 1; k < idx.size(); ++k) {
      if (reqs[idx[k]].release - reqs[idx[k - 1]].release >= L) {
        current = next_id++;
        out.physical.push_back(p);
      }
      moved[idx[k]].page = current;
    }
  }
  out.instance = Instance(next_id, std::move(moved));
  return out;
}

Schedule to_physical(const Schedule& schedule,
                     const std::vector<Page>& physical) {
  Schedule out;
  for (const auto& [t, p] : schedule.slots()) out.assign(t, physical.at(p));
  return out;
}

std::vector<Time> restrict_timesteps(const Instance& instance) {
  std::vector<Time> rel;
  for (const Request& r : instance.requests()) rel.push_back(r.release);
  std::sort(rel.begin(), rel.end());
  std::vector<Time> out;
  std::size_t idx = 0;
  while (idx < rel.size()) {
    const Time s = rel[idx];
    Time t = s;
    std::size_t j = idx;
    for (;;) {
      while (j < rel.size() && rel[j] <= t) ++j;
      const Time count = static_cast<Time>(j - idx);
      if (count <= t - s + 1) break;
      t = s + count - 1;
    }
    for (Time u = s + 1; u <= t + 1; ++u) out.push_back(u);
    idx = j;
  }
  return out;
}

std::optional<FractionalSchedule> solve_lp_maxflow(
    const Instance& instance, Time L, const std::vector<Time>& timesteps) {
  if (L < 1) throw std::invalid_argument("L must be at least 1");
  FractionalSchedule result;
  result.L = L;
  if (instance.empty()) return result;

  std::vector<Time> steps = timesteps;
  std::sort(steps.begin(), steps.end());
  steps.erase(std::unique(steps.begin(), steps.end()), steps.end());

  lp::Problem problem(false);
  std::map<std::pair<Page, Time>, int> var;
  std::map<Time, std::vector<int>> per_time;
  for (Page p = 0; p < instance.page_count(); ++p) {
    const auto rel = instance.release_times(p);
    if (rel.empty()) continue;
    const Time lo = rel.front() + 1, hi = rel.back() + L;
    for (auto it = std::lower_bound(steps.begin(), steps.end(), lo);
         it != steps.end() && *it <= hi; ++it) {
      int j = problem.add_variable(1.0);
      var[{p, *it}] = j;
      per_time[*it].push_back(j);
    }
  }

  std::set<std::pair<Page, Time>> demands;
  for (const Request& r : instance.requests()) {
    demands.insert({r.page, r.release});
  }
  for (const auto& [p, r] : demands) {
    std::vector<std::pair<int, double>> terms;
    for (auto it = var.lower_bound({p, r + 1});
         it != var.end() && it->first.first == p && it->first.second <= r + L;
         ++it) {
      terms.emplace_back(it->second, 1.0);
    }
    if (terms.empty()) return std::nullopt;
    problem.add_constraint(std::move(terms), lp::Relation::kGreaterEqual, 1.0);
  }
  for (const auto& [t, js] : per_time) {
    std::vector<std::pair<int, double>> terms;
    for (int j : js) terms.emplace_back(j, 1.0);
    problem.add_constraint(std::move(terms), lp::Relation::kLessEqual, 1.0);
  }

  const lp::Result sol = problem.solve();
  if (sol.status == lp::Status::kInfeasible) return std::nullopt;
  if (sol.status != lp::Status::kOptimal) {
    throw LpSolverError("max-flow relaxation reported unbounded");
  }
  for (const auto& [key, j] : var) {
    result.set(key.first, key.second, std::min(1.0, snap(sol.x[j])));
  }
  return result;
}

Time min_lp_feasible_L(const Instance& instance) {
  if (instance.empty()) return 0;
  const Time upper = std::max<Time>(1, instance.page_count());
  for (Time L = 1; L < upper; ++L) {
    SplitInstance split = split_far_pages(instance, L);
    if (solve_lp_maxflow(split.instance, L,
                         restrict_timesteps(split.instance))) {
      return L;
    }
  }
  return upper;
}

GroupPartition build_groups(const Instance& instance, Time L) {
  GroupPartition out;
  const int n = instance.page_count();
  out.group_of.assign(n, -1);
  out.windows.assign(n, Window{});
  std::vector<Page> active;
  for (Page p = 0; p < n; ++p) {
    const auto rel = instance.release_times(p);
    if (rel.empty()) continue;
    out.windows[p] = {rel.front() + 1, rel.back() + L};
    active.push_back(p);
  }
  std::sort(active.begin(), active.end(), [&](Page a, Page b) {
    return std::make_pair(out.windows[a].start, a) <
           std::make_pair(out.windows[b].start, b);
  });
  std::set<std::pair<Time, int>> busy;
  std::set<int> free_colors;
  for (Page p : active) {
    const Window w = out.windows[p];
    while (!busy.empty() && busy.begin()->first < w.start) {
      free_colors.insert(busy.begin()->second);
      busy.erase(busy.begin());
    }
    int color;
    if (free_colors.empty()) {
      color = static_cast<int>(out.members.size());
      out.members.emplace_back();
    } else {
      color = *free_colors.begin();
      free_colors.erase(free_colors.begin());
    }
    out.group_of[p] = color;
    out.members[color].push_back(p);
    busy.insert({w.end, color});
  }
  return out;
}

std::vector<std::pair<Time, double>> group_cumulative(
    const FractionalSchedule& x, const std::vector<Page>& members) {
  std::map<Time, double> mass;
  for (Page p : members) {
    for (const auto& [t, v] : x.row(p)) mass[t] += v;
  }
  std::vector<std::pair<Time, double>> out;
  double y = 0;
  for (const auto& [t, v] : mass) {
    y = snap(y + v);
    out.emplace_back(t, y);
  }
  return out;
}

std::vector<Time> crossing_times(
    const std::vector<std::pair<Time, double>>& cumulative, double alpha) {
  std::vector<Time> out;
  double k = 0;
  while (k + alpha <= 0) k += 1;
  for (const auto& [t, y] : cumulative) {
    if (k + alpha <= y) {
      out.push_back(t);
      while (k + alpha <= y) k += 1;
    }
  }
  return out;
}

TentativeSchedule group_alpha_round(const FractionalSchedule& x,
                                    const GroupPartition& groups,
                                    const AlphaVector& alphas) {
  if (static_cast<int>(alphas.size()) < groups.group_count()) {
    throw std::invalid_argument("alpha vector does not cover every group");
  }
  TentativeSchedule out;
  for (int g = 0; g < groups.group_count(); ++g) {
    const auto& members = groups.members[g];
    for (Time t : crossing_times(group_cumulative(x, members), alphas[g])) {
      Page chosen = kIdle, largest = kIdle;
      double largest_value = -1;
      for (Page p : members) {
        const double v = x.get(p, t);
        if (v > kTol) {
          if (chosen != kIdle) {
            throw PartitionViolation("two pages of group " +
                                     std::to_string(g) +
                                     " are fractional at time " +
                                     std::to_string(t));
          }
          chosen = p;
        }
        if (v > largest_value) {
          largest_value = v;
          largest = p;
        }
      }
      out.add(t, chosen != kIdle ? chosen : largest);
    }
  }
  return out;
}

Time tentative_max_flow(const Instance& instance,
                        const TentativeSchedule& tentative) {
  std::map<Page, std::vector<Time>> sent;
  for (const auto& [t, pages] : tentative.slots()) {
    for (Page p : pages) sent[p].push_back(t);
  }
  Time worst = 0;
  for (const Request& r : instance.requests()) {
    auto it = sent.find(r.page);
    if (it == sent.end()) return std::numeric_limits<Time>::max();
    auto pos = std::upper_bound(it->second.begin(), it->second.end(),
                                r.release);
    if (pos == it->second.end()) return std::numeric_limits<Time>::max();
    worst = std::max(worst, *pos - r.release);
  }
  return worst;
}

Schedule fifo_flatten(const TentativeSchedule& tentative) {
  Schedule out;
  std::deque<Page> queue;
  auto it = tentative.slots().begin();
  const auto end = tentative.slots().end();
  Time t = it == end ? 0 : it->first;
  while (it != end || !queue.empty()) {
    if (queue.empty() && it->first > t) t = it->first;
    while (it != end && it->first <= t) {
      for (Page p : it->second) queue.push_back(p);
      ++it;
    }
    out.assign(t, queue.front());
    queue.pop_front();
    ++t;
  }
  return out;
}

Time max_overflow(const TentativeSchedule& tentative,
                  const std::vector<Time>& timesteps) {
  std::vector<Time> steps = timesteps;
  std::sort(steps.begin(), steps.end());
  steps.erase(std::unique(steps.begin(), steps.end()), steps.end());
  std::vector<Time> times;
  std::vector<Time> prefix{0};
  for (const auto& [t, pages] : tentative.slots()) {
    times.push_back(t);
    prefix.push_back(prefix.back() + static_cast<Time>(pages.size()));
  }
  auto count_upto = [&](Time t) {  // transmissions at times <= t
    auto k = std::upper_bound(times.begin(), times.end(), t) - times.begin();
    return prefix[k];
  };
  Time best = 0;
  Time min_b = std::numeric_limits<Time>::max();
  for (Time s : steps) {
    // Q([a, b]) - |I| = (count(<=b) - b) - (count(<a) - a + 1).
    min_b = std::min(min_b, count_upto(s - 1) - s + 1);
    best = std::max(best, count_upto(s) - s - min_b);
  }
  return best;
}

Time max_overflow(const TentativeSchedule& tentative) {
  std::vector<Time> steps;
  for (const auto& [t, pages] : tentative.slots()) steps.push_back(t);
  return max_overflow(tentative, steps);
}

}  // namespace bcast
