#include "bcast/metrics.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>

namespace bcast {
namespace {

std::unordered_map<Page, std::vector<Time>> transmissions_by_page(
    const Schedule& schedule) {
  std::unordered_map<Page, std::vector<Time>> out;
  for (const auto& [t, p] : schedule.slots()) out[p].push_back(t);
  return out;
}

// First transmission of p strictly after `after`, or 0.
Time first_after(const std::unordered_map<Page, std::vector<Time>>& by_page,
                 Page p, Time after) {
  auto it = by_page.find(p);
  if (it == by_page.end()) return 0;
  auto pos = std::upper_bound(it->second.begin(), it->second.end(), after);
  return pos == it->second.end() ? 0 : *pos;
}

}  // namespace

FlowReport evaluate_max_flow(const Instance& instance,
                             const Schedule& schedule) {
  FlowReport report;
  const auto by_page = transmissions_by_page(schedule);
  for (const Request& r : instance.requests()) {
    Time c = first_after(by_page, r.page, r.release);
    if (c == 0) {
      report.completion.push_back(0);
      report.flow.push_back(kInfiniteFlow);
      report.max_flow = kInfiniteFlow;
    } else {
      report.completion.push_back(c);
      report.flow.push_back(c - r.release);
      if (report.max_flow != kInfiniteFlow) {
        report.max_flow = std::max(report.max_flow, c - r.release);
      }
    }
  }
  return report;
}

ProfitReport evaluate_throughput(const Instance& instance,
                                 const Schedule& schedule) {
  ProfitReport report;
  const auto by_page = transmissions_by_page(schedule);
  for (const Request& r : instance.requests()) {
    if (!r.has_window()) {
      throw InvalidInstance("request " + std::to_string(r.id) +
                            " has no deadline/weight");
    }
    Time c = first_after(by_page, r.page, r.release);
    bool hit = c != 0 && c <= r.window_end();
    report.satisfied.push_back(hit);
    report.satisfied_at.push_back(hit ? c : 0);
    if (hit) report.profit += *r.weight;
  }
  return report;
}

Schedule prune_useless(const Instance& instance, const Schedule& schedule) {
  const auto by_page = transmissions_by_page(schedule);
  std::set<Time> used;
  for (const Request& r : instance.requests()) {
    Time c = first_after(by_page, r.page, r.release);
    if (c != 0 && (!r.deadline || c <= *r.deadline)) used.insert(c);
  }
  Schedule out;
  for (Time t : used) out.assign(t, *schedule.at(t));
  return out;
}

}  // namespace bcast
