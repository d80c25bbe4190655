#include <algorithm>
#include <functional>
#include <random>
#include <sstream>

#include "bcast/generator.hpp"
#include "bcast/oracles.hpp"
#include "bcast/throughput_lp.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace bcast;
using namespace bcast::testing;

namespace {

const Epsilon kHalf = Epsilon::unit(2);

// Every configuration over pages 0..n-1 plus idle.
double exhaustive_best(const Interval& iv, const std::vector<Item>& items,
                       int pages) {
  const Time len = iv.length();
  Configuration q(len, kIdle);
  double best = 0;
  std::function<void(Time)> rec = [&](Time i) {
    if (i == len) {
      best = std::max(best, configuration_value(iv, items, q));
      return;
    }
    for (Page p = kIdle; p < pages; ++p) {
      q[i] = p;
      rec(i + 1);
    }
  };
  rec(0);
  return best;
}

Profile tiny_throughput(Time span) {
  Profile p;
  p.pages = 3;
  p.requests = 5;
  p.release_span = span;
  p.throughput = true;
  p.window_min = 1;
  p.window_max = 6;
  p.weight_min = 1;
  p.weight_max = 9;
  return p;
}

}  // namespace

TEST_CASE("block parameters") {
  const BlockParams p = block_params(16, Epsilon::unit(4));
  CHECK(p.block == 128);
  CHECK(p.eps_h == 4);
  CHECK(p.eps2_h == 1);
  CHECK_THROWS_AS(block_params(2, Epsilon::unit(4)), std::invalid_argument);
}

TEST_CASE("partition tiling") {
  const IntervalPartition p = build_partition(10, 1, kHalf, 2);
  REQUIRE(p.intervals.size() == 4);
  CHECK(p.intervals[0].start == 0);
  CHECK(p.intervals[0].end == 1);
  CHECK(p.intervals[1].start == 2);
  CHECK(p.intervals[1].end == 5);
  CHECK(p.intervals[2].end == 9);
  CHECK(p.intervals[3].start == 10);
  CHECK(p.intervals[3].end == 10);
  CHECK(p.index_of(0) == 0);
  CHECK(p.index_of(6) == 2);
  CHECK(p.index_of(11) == -1);

  const IntervalPartition full = build_partition(11, 1, kHalf, 4);
  for (const Interval& iv : full.intervals) CHECK(iv.length() == 4);

  CHECK_THROWS_AS(build_partition(10, 1, kHalf, 0), std::invalid_argument);
  CHECK_THROWS_AS(build_partition(10, 1, kHalf, 5), std::invalid_argument);
}

TEST_CASE("partition covers [0, T]") {
  for (Time T = 0; T <= 30; ++T) {
    for (Time first = 1; first <= 6; ++first) {
      const IntervalPartition p = build_partition(T, 3, kHalf, first);
      Time next = 0;
      for (std::size_t i = 0; i < p.intervals.size(); ++i) {
        CHECK(p.intervals[i].start == next);
        if (i > 0 && i + 1 < p.intervals.size()) CHECK(p.intervals[i].length() == 12);
        next = p.intervals[i].end + 1;
        for (Time t = p.intervals[i].start; t <= p.intervals[i].end; ++t) {
          CHECK(p.index_of(t) == static_cast<int>(i));
        }
      }
      CHECK(next == T + 1);
    }
  }
}

TEST_CASE("request classification") {
  // eps = 1/2, H = 2: intervals of 8, large at |W| >= 4, sides need >= 2
  const Instance inst = window_instance(
      2, {{2, A, 3, 1}, {6, A, 9, 1}, {5, B, 18, 2}, {6, B, 18, 3}, {0, A, 23, 1}});
  const IntervalPartition part = build_partition(inst, 2, kHalf, 8);
  const RequestClassification c = classify_requests(inst, part, 2, kHalf);
  CHECK(c.small == std::vector<int>{0});
  CHECK(c.small_interval.at(0) == 0);
  CHECK(c.small_discarded == std::vector<int>{1});
  CHECK(c.large == std::vector<int>{2, 4});
  CHECK(c.large_discarded == std::vector<int>{3});
  CHECK(c.discarded_weight == 4);

  const LargeWindows& w = c.windows.at(2);
  CHECK(w.left.start == 6);
  CHECK(w.left.end == 7);
  REQUIRE(w.middle);
  CHECK(w.middle->start == 8);
  CHECK(w.middle->end == 15);
  REQUIRE(w.right);
  CHECK(w.right->start == 16);
  CHECK(w.right->end == 18);
  CHECK(w.left_interval == 0);
  CHECK(w.right_interval == 2);
}

TEST_CASE("separation oracle small cases") {
  const Instance empty_touch = window_instance(1, {{0, A, 2, 5}});
  const IntervalPartition part = build_partition(10, 2, kHalf, 4);
  const RequestClassification c = classify_requests(empty_touch, part, 2, kHalf);
  DualSolution dual;
  dual.gamma.assign(part.intervals.size(), 3.0);
  CHECK_FALSE(separation_oracle(empty_touch, part, c, 1, dual));
  auto ans = separation_oracle(empty_touch, part, c, 0, dual);
  REQUIRE(ans);
  CHECK(ans->value == 5);
  CHECK(std::count(ans->config.begin(), ans->config.end(), A) >= 1);
}

TEST_CASE("oracle equals exhaustive search on short intervals") {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> page(0, 2), start(0, 3), len(0, 3);
  std::uniform_real_distribution<double> profit(0.1, 5.0);
  for (int trial = 0; trial < 300; ++trial) {
    const Interval iv{0, static_cast<Time>(len(rng))};
    std::vector<Item> items;
    const int k = 1 + trial % 6;
    for (int i = 0; i < k; ++i) {
      const Time s = start(rng);
      items.push_back({page(rng), s, s + len(rng), profit(rng)});
    }
    const OracleAnswer ans = best_configuration(iv, items);
    CHECK(ans.value == doctest::Approx(exhaustive_best(iv, items, 3)));
    CHECK(configuration_value(iv, items, ans.config) == doctest::Approx(ans.value));
  }
}

TEST_CASE("single request LP") {
  const Instance inst = window_instance(1, {{0, A, 2, 5}});
  const ConfigLpSolution s = solve_config_lp(inst, 4, kHalf);
  CHECK(s.objective == doctest::Approx(5));
  CHECK(s.columns.size() == 1);
  CHECK(s.columns[0].weight == doctest::Approx(1));
  std::ostringstream out;
  write_solution(inst, s, out);
  CHECK(out.str().rfind("col ", 0) == 0);
  const Configuration& q = s.columns[0].config;
  CHECK(std::find(q.begin(), q.end(), A) != q.end());
}

TEST_CASE("LP bounds the integral optimum and keeps its invariants") {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    // H = 4 makes the blocks 16 long, so one interval can hold [0, T]
    Profile prof = tiny_throughput(5);
    prof.window_max = 10;
    const Instance inst = generate_instance(seed, prof);
    const ConfigLpSolution s = solve_config_lp(inst, 4, kHalf);
    CHECK(s.objective >= brute_throughput(inst).optimum - 1e-6);

    std::map<int, double> per_interval;
    for (const Column& c : s.columns) per_interval[c.interval] += c.weight;
    for (const auto& [i, total] : per_interval) CHECK(total <= 1 + 1e-9);
    for (const auto& [t, total] : s.x.column_sums()) CHECK(total <= 1 + 1e-9);
    for (const auto& [i, z] : s.z) CHECK(z <= 1 + 1e-12);
    for (const auto& [i, split] : zsplit(inst, s)) {
      CHECK(split.zm + split.zb == doctest::Approx(s.z.at(i)));
    }

    // no violated column remains against the final duals
    for (int i = 0; i < static_cast<int>(s.partition.intervals.size()); ++i) {
      const Interval& iv = s.partition.intervals[i];
      if (iv.length() > 4) continue;
      const auto items =
          interval_items(inst, s.partition, s.classification, i, s.dual.delta);
      CHECK(exhaustive_best(iv, items, inst.page_count()) <=
            s.dual.gamma[i] + 1e-6);
    }
  }
}

TEST_CASE("z split formula") {
  const ZSplit middle = zsplit_from(0, 0.7, 0);
  CHECK(middle.zb == 0);
  CHECK(middle.zm == doctest::Approx(0.7));
  const ZSplit sides = zsplit_from(0.3, 0, 0.3);
  CHECK(sides.zb == doctest::Approx(0.6));
  CHECK(sides.zm == 0);
  const ZSplit capped = zsplit_from(0.5, 0.8, 0.5);
  CHECK(capped.zm == doctest::Approx(0.8));
  CHECK(capped.zb == doctest::Approx(0.2));
}
