#ifndef BCAST_TESTS_HELPERS_HPP_
#define BCAST_TESTS_HELPERS_HPP_

#include <initializer_list>
#include <tuple>
#include <vector>

#include "bcast/instance.hpp"

namespace bcast::testing {

constexpr Page A = 0, B = 1, C = 2, D = 3;

inline Instance flow_instance(int pages,
                              std::initializer_list<std::pair<Time, Page>> reqs) {
  std::vector<Request> out;
  for (const auto& [r, p] : reqs) {
    Request q;
    q.id = static_cast<int>(out.size());
    q.release = r;
    q.page = p;
    out.push_back(q);
  }
  return Instance(pages, std::move(out));
}

// (release, page, deadline, weight)
inline Instance window_instance(
    int pages, std::initializer_list<std::tuple<Time, Page, Time, double>> reqs) {
  std::vector<Request> out;
  for (const auto& [r, p, d, w] : reqs) {
    Request q;
    q.id = static_cast<int>(out.size());
    q.release = r;
    q.page = p;
    q.deadline = d;
    q.weight = w;
    out.push_back(q);
  }
  return Instance(pages, std::move(out));
}

inline Schedule schedule_of(std::initializer_list<std::pair<Time, Page>> slots) {
  Schedule s;
  for (const auto& [t, p] : slots) s.assign(t, p);
  return s;
}

}  // namespace bcast::testing

#endif  // BCAST_TESTS_HELPERS_HPP_
