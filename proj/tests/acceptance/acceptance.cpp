// Runs the twelve acceptance criteria and prints one PASS/FAIL line each.
// Exit status is the number of failed criteria.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "bcast/baselines.hpp"
#include "bcast/generator.hpp"
#include "bcast/instance_io.hpp"
#include "bcast/lp_guided_fifo.hpp"
#include "bcast/maxflow_derand.hpp"
#include "bcast/maxflow_exact.hpp"
#include "bcast/maxflow_lp.hpp"
#include "bcast/maxflow_solver.hpp"
#include "bcast/metrics.hpp"
#include "bcast/oracles.hpp"
#include "bcast/throughput_lp.hpp"
#include "bcast/throughput_rounding.hpp"
#include "cli.hpp"

using namespace bcast;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Rational upper bound on 1 - 1/e = 0.63212055882855767...
const Rational kOneMinusInvE(632120558828558LL, 1000000000000000LL);

Profile flow_profile(int pages, int requests, Time span) {
  Profile p;
  p.pages = pages;
  p.requests = requests;
  p.release_span = span;
  return p;
}

// n <= 4, m <= 8, releases in [0, 8)
Instance small_flow(std::uint64_t seed) {
  return generate_instance(
      seed, flow_profile(1 + static_cast<int>(seed % 4),
                         1 + static_cast<int>(seed / 4 % 8),
                         1 + static_cast<Time>(seed / 32 % 8)));
}

Time dp_min_L(const Instance& inst) {
  for (Time L = 1;; ++L) {
    if (dp_constant(inst, L)) return L;
  }
}

Outcome c1_dp_exactness() {
  Outcome o;
  int bad = 0;
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    const Instance inst = small_flow(seed);
    if (inst.empty()) continue;
    if (dp_min_L(inst) != static_cast<Time>(brute_maxflow(inst).optimum)) ++bad;
  }
  o.pass = bad == 0;
  o.detail = "200 instances, mismatches=" + std::to_string(bad);
  return o;
}

Outcome c2_fifo_bound() {
  Outcome o;
  int bad = 0;
  double worst = 0;
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    const Instance inst = small_flow(seed);
    if (inst.empty()) continue;
    const double opt = brute_maxflow(inst).optimum;
    const double fifo =
        static_cast<double>(evaluate_max_flow(inst, fifo_schedule(inst)).max_flow);
    worst = std::max(worst, fifo / opt);
    if (fifo > 2 * opt) ++bad;
  }
  o.pass = bad == 0;
  o.detail = "worst fifo/opt=" + format_double(worst) +
             ", violations=" + std::to_string(bad);
  return o;
}

Outcome c3_simplified_pipeline() {
  Outcome o;
  const Epsilon eps = Epsilon::unit(2);
  int used = 0, bad = 0;
  double worst = 0;
  for (std::uint64_t seed = 1; used < 100 && seed < 5000; ++seed) {
    const Instance inst = generate_instance(
        seed, flow_profile(2 + static_cast<int>(seed % 3),
                           4 + static_cast<int>(seed % 5), 8));
    const auto opt = static_cast<Time>(brute_maxflow(inst).optimum);
    if (opt % 2 != 0) continue;
    ++used;
    const SimplifiedInstance s = simplify_instance(inst, opt, eps);
    auto shrunk = dp_simplified(s);
    if (!shrunk) {
      ++bad;
      continue;
    }
    const Time flow =
        evaluate_max_flow(inst, convert_schedule(*shrunk, s.slot_capacity)).max_flow;
    worst = std::max(worst, static_cast<double>(flow) / opt);
    if (flow > 4 * opt) ++bad;
  }
  o.pass = used == 100 && bad == 0;
  o.detail = std::to_string(used) + " instances, worst flow/L*=" +
             format_double(worst) + " (bound 4), violations=" + std::to_string(bad);
  return o;
}

Outcome c4_groups() {
  Outcome o;
  std::mt19937_64 rng(4);
  int bad = 0;
  for (std::uint64_t seed = 1; seed <= 500; ++seed) {
    const Instance inst = generate_instance(
        seed, flow_profile(2 + static_cast<int>(seed % 7),
                           4 + static_cast<int>(seed % 13), 30));
    // the bound holds whenever the relaxation is feasible at L
    const Time L = min_lp_feasible_L(inst) + static_cast<Time>(rng() % 4);
    const SplitInstance split = split_far_pages(inst, L);
    const GroupPartition g = build_groups(split.instance, L);
    bool ok = g.group_count() <= 2 * L;
    for (const auto& members : g.members) {
      for (std::size_t i = 0; i < members.size(); ++i) {
        for (std::size_t j = i + 1; j < members.size(); ++j) {
          ok = ok && !g.windows[members[i]].overlaps(g.windows[members[j]]);
        }
      }
    }
    bad += !ok;
  }
  o.pass = bad == 0;
  o.detail = "500 instances, violations=" + std::to_string(bad);
  return o;
}

Outcome c5_tentative_completeness() {
  Outcome o;
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> unit(0, 1);
  int bad = 0, rounds = 0;
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const Instance inst = generate_instance(seed, flow_profile(4, 10, 12));
    const Time L = min_lp_feasible_L(inst);
    const SplitInstance split = split_far_pages(inst, L);
    auto x = solve_lp_maxflow(split.instance, L, restrict_timesteps(split.instance));
    if (!x) {
      ++bad;
      continue;
    }
    const GroupPartition groups = build_groups(split.instance, L);
    for (int k = 0; k < 200; ++k, ++rounds) {
      AlphaVector alphas(groups.group_count());
      for (double& a : alphas) a = unit(rng);
      const TentativeSchedule t = group_alpha_round(*x, groups, alphas);
      if (tentative_max_flow(split.instance, t) > L) ++bad;
    }
  }
  o.pass = bad == 0 && rounds == 10000;
  o.detail = std::to_string(rounds) + " alpha vectors, violations=" +
             std::to_string(bad);
  return o;
}

Outcome c6_derandomization() {
  Outcome o;
  const Epsilon eps = Epsilon::unit(3);
  int runs = 0, filtered = 0, bad = 0, steps_total = 0;
  Profile p = flow_profile(3, 8, 30);
  for (std::uint64_t seed = 1; runs < 50 && seed < 2000; ++seed) {
    const Instance inst = generate_instance(seed, p);
    bool done = false;
    for (Time L : {12, 18, 24}) {
      const SplitInstance split = split_far_pages(inst, L);
      const auto steps = restrict_timesteps(split.instance);
      auto x = solve_lp_maxflow(split.instance, L, steps);
      if (!x) continue;
      const GroupPartition groups = build_groups(split.instance, L);
      DerandResult d;
      try {
        d = derandomize(*x, groups, eps, L, steps, inst.request_count());
      } catch (const RegimeError&) {
        continue;
      }
      double prev = d.initial_sum;
      steps_total += static_cast<int>(d.trace.size());
      bool ok = true;
      for (const DerandStep& step : d.trace) {
        ok = ok && step.estimator_sum <= prev * (1 + 1e-9);
        prev = step.estimator_sum;
      }
      const TentativeSchedule t = group_alpha_round(*x, groups, d.alphas);
      ok = ok && max_overflow(t, steps) <= overflow_budget(eps, L);
      bad += !ok;
      done = true;
      break;
    }
    runs += done;
    filtered += !done;
  }
  o.pass = runs == 50 && bad == 0;
  o.detail = std::to_string(runs) + " regime instances (eps=1/3, L>=12), " +
             std::to_string(filtered) + " filtered out, " +
             std::to_string(steps_total) + " sweep steps, violations=" +
             std::to_string(bad);
  return o;
}

// Every x on the grid k/6 over five pages with sum <= 1.
void grid_columns(const std::function<void(const std::vector<Rational>&)>& f) {
  std::vector<int> k(5, 0);
  std::function<void(int, int)> rec = [&](int i, int left) {
    if (i == 5) {
      std::vector<Rational> x;
      for (int v : k) x.emplace_back(v, 6);
      f(x);
      return;
    }
    for (int v = 0; v <= left; ++v) {
      k[i] = v;
      rec(i + 1, left - v);
    }
  };
  rec(0, 6);
}

Outcome c7_contention() {
  Outcome o;
  int columns = 0, bad_sum = 0, bad_bound = 0, bad_fair = 0;
  grid_columns([&](const std::vector<Rational>& x) {
    Rational total = 0;
    std::map<Page, Rational> column;
    for (Page p = 0; p < 5; ++p) {
      column[p] = x[p];
      total += x[p];
    }
    if (total == 0) return;
    ++columns;
    std::vector<Rational> chosen(5, 0);
    for (unsigned mask = 1; mask < 32; ++mask) {
      std::vector<Page> a;
      Rational pr = 1;  // Pr[A_t = a] with independent membership x_q
      for (Page p = 0; p < 5; ++p) {
        const bool in = mask >> p & 1;
        if (in) a.push_back(p);
        pr *= in ? x[p] : 1 - x[p];
      }
      const std::vector<Rational> probs = contention_distribution(a, column);
      Rational sum = 0;
      for (std::size_t i = 0; i < a.size(); ++i) {
        sum += probs[i];
        chosen[a[i]] += pr * probs[i];
      }
      bad_sum += sum != 1;
    }
    Rational none = 1;
    for (const Rational& v : x) none *= 1 - v;
    for (Page p = 0; p < 5; ++p) {
      bad_bound += chosen[p] < kOneMinusInvE * x[p];
      bad_fair += chosen[p] < (1 - none) / total * x[p];
    }
  });
  o.pass = bad_sum == 0 && bad_bound == 0 && bad_fair == 0;
  o.detail = std::to_string(columns) + " columns x 31 subsets, sum!=1: " +
             std::to_string(bad_sum) + ", below (1-1/e)x: " +
             std::to_string(bad_bound) + ", below fair bound: " +
             std::to_string(bad_fair);
  return o;
}

Profile tiny_windows(std::uint64_t seed) {
  Profile p;
  p.pages = 2 + static_cast<int>(seed % 2);
  p.requests = 3 + static_cast<int>(seed % 3);
  p.release_span = 5;
  p.throughput = true;
  p.window_min = 1;
  p.window_max = 10;
  p.weight_min = 1;
  p.weight_max = 9;
  return p;
}

const Epsilon kHalf = Epsilon::unit(2);
constexpr Time kTinyH = 4;

// Random columns on each interval with weights k/8 summing to at most one.
ConfigLpSolution random_columns(const Instance& inst, const IntervalPartition& part,
                                std::mt19937_64& rng) {
  ConfigLpSolution s;
  s.partition = part;
  for (int i = 0; i < static_cast<int>(part.intervals.size()); ++i) {
    int left = 8;
    const int cols = 1 + static_cast<int>(rng() % 3);
    for (int c = 0; c < cols && left > 0; ++c) {
      const int w = 1 + static_cast<int>(rng() % left);
      left -= w;
      Configuration q(part.intervals[i].length());
      for (Page& p : q) {
        p = static_cast<Page>(rng() % (inst.page_count() + 1)) - 1;
      }
      s.columns.push_back({i, q, w / 8.0, 0});
    }
  }
  return s;
}

Outcome c8_independent_bound() {
  Outcome o;
  std::mt19937_64 rng(8);
  int requests = 0, fractional = 0, bad = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const Instance inst = generate_instance(seed, tiny_windows(seed));
    std::vector<ConfigLpSolution> sols = {solve_config_lp(inst, kTinyH, kHalf)};
    for (Time first : {2, 3}) {
      sols.push_back(
          random_columns(inst, build_partition(inst, kTinyH, kHalf, first), rng));
    }
    for (const ConfigLpSolution& s : sols) {
      for (int i = 0; i < inst.request_count(); ++i, ++requests) {
        const ExactSatisfaction e = exact_satisfaction_probability(inst, s, i);
        fractional += e.coverage > 0 && e.coverage < 1;
        bad += e.probability < kOneMinusInvE * e.coverage;
      }
    }
  }
  o.pass = bad == 0;
  o.detail = "100 instances, LP plus two random column sets, " +
             std::to_string(requests) + " request checks (" +
             std::to_string(fractional) + " with fractional z), violations=" +
             std::to_string(bad);
  return o;
}

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

Outcome c9_config_lp() {
  Outcome o;
  int below = 0, oracle_bad = 0, checked = 0;
  double worst_gap = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const Instance inst = generate_instance(seed, tiny_windows(seed));
    const ConfigLpSolution s = solve_config_lp(inst, kTinyH, kHalf);
    const double opt = brute_throughput(inst).optimum;
    worst_gap = std::min(worst_gap, s.objective - opt);
    below += s.objective < opt - 1e-6;

    for (Time first = 1; first <= 4; ++first) {
      const ConfigLpSolution f = solve_config_lp_for(inst, kTinyH, kHalf, first);
      for (int i = 0; i < static_cast<int>(f.partition.intervals.size()); ++i) {
        const Interval& iv = f.partition.intervals[i];
        if (iv.length() > 4) continue;
        const auto items =
            interval_items(inst, f.partition, f.classification, i, f.dual.delta);
        const double got = best_configuration(iv, items).value;
        ++checked;
        oracle_bad += std::abs(got - exhaustive_best(iv, items, inst.page_count())) > 1e-9;
      }
    }
  }
  o.pass = below == 0 && oracle_bad == 0;
  o.detail = "100 instances, LP below optimum: " + std::to_string(below) +
             " (min LP-opt " + format_double(worst_gap) + "), oracle mismatches " +
             std::to_string(oracle_bad) + "/" + std::to_string(checked);
  return o;
}

using Need = std::vector<Time>;

bool hall_holds(const Need& need, const std::vector<Time>& slots, bool right) {
  std::vector<int> owner(slots.size(), -1);
  std::function<bool(int, std::vector<bool>&)> augment =
      [&](int i, std::vector<bool>& seen) {
        for (std::size_t s = 0; s < slots.size(); ++s) {
          const bool edge = right ? slots[s] > need[i] : slots[s] < need[i];
          if (seen[s] || !edge) continue;
          seen[s] = true;
          if (owner[s] < 0 || augment(owner[s], seen)) {
            owner[s] = i;
            return true;
          }
        }
        return false;
      };
  for (int i = 0; i < static_cast<int>(need.size()); ++i) {
    std::vector<bool> seen(slots.size(), false);
    if (!augment(i, seen)) return false;
  }
  return true;
}

Outcome c10_relocation() {
  Outcome o;
  std::mt19937_64 rng(10);
  int infeasible = 0, partial = 0, claim = 0, mismatch = 0;
  for (int trial = 0; trial < 10000; ++trial) {
    const Time eps2 = 1 + static_cast<Time>(rng() % 3);
    const Time len = eps2 * (2 + static_cast<Time>(rng() % 3));
    const BlockParams params{2 * len, len, eps2};
    const BlockStructure s =
        make_blocks(3 * len, 1 + static_cast<Time>(rng() % len), params);
    const bool right = rng() % 2;
    const double density = 0.2 + 0.6 * std::uniform_real_distribution<double>(0, 1)(rng);
    TentativeSchedule tent;
    std::map<Time, Page> first;
    for (Time t = 1; t < s.blocks.back().end; ++t) {
      while (std::uniform_real_distribution<double>(0, 1)(rng) < density &&
             tent.at(t).size() < 4) {
        tent.add(t, static_cast<Page>(rng() % 6));
      }
      if (!tent.at(t).empty()) first[t] = tent.at(t)[rng() % tent.at(t).size()];
    }
    Relocation out;
    try {
      out = relocate(tent, first, s, right ? Direction::kRight : Direction::kLeft);
    } catch (const std::exception&) {
      ++infeasible;
      continue;
    }
    for (const BlockReport& r : out.blocks) {
      const Block& blk = s.blocks[r.block];
      Need need;
      std::vector<Time> slots;
      for (Time t = blk.start; t < blk.freed_start; ++t) {
        for (Page p : tent.at(t)) {
          if (p != first.at(t)) need.push_back(t);
        }
        if (tent.at(t).empty()) slots.push_back(t);
      }
      if (need.empty()) continue;
      if (right) {
        for (Time t = blk.freed_start; t < blk.end; ++t) slots.push_back(t);
      } else if (r.block > 0) {
        const Block& prev = s.blocks[r.block - 1];
        for (Time t = std::max({Time{1}, prev.freed_start, blk.start - s.freed});
             t < blk.start; ++t) {
          slots.push_back(t);
        }
      }
      Time filled = 0;
      for (Time t : slots) filled += out.schedule.occupied(t);
      if (filled != 0 && filled != static_cast<Time>(need.size())) ++partial;
      if (r.condition && !r.placed) ++claim;
      const bool hall = !(right == false && r.block == 0) && hall_holds(need, slots, right);
      if (hall != r.condition) ++mismatch;
    }
    for (const auto& slot : out.schedule.slots()) {
      if (s.block_of(slot.first) < 0) ++infeasible;
    }
  }
  o.pass = infeasible == 0 && partial == 0 && claim == 0 && mismatch == 0;
  o.detail = "10000 trials, infeasible=" + std::to_string(infeasible) +
             ", partial blocks=" + std::to_string(partial) +
             ", condition without placement=" + std::to_string(claim) +
             ", condition vs matching mismatches=" + std::to_string(mismatch);
  return o;
}

std::string cell(const std::string& tsv, int line, int col) {
  std::istringstream in(tsv);
  std::string row;
  for (int i = 0; i <= line; ++i) std::getline(in, row);
  std::istringstream cells(row);
  std::string c;
  for (int i = 0; i <= col; ++i) std::getline(cells, c, '\t');
  return c;
}

Outcome c11_lp_fifo() {
  Outcome o;
  std::ostringstream out, err;
  const int code = cli::run({"demo-lp-fifo", "--n", "12"}, out, err);
  const std::string flow = cell(out.str(), 1, 1), bound = cell(out.str(), 1, 2);
  o.pass = code == 0 && flow == "12" && bound == "7";
  std::string ratios;
  for (int n : {12, 16, 20, 24}) {
    const Instance inst = half_mass_instance(n);
    const FractionalSchedule x = half_mass_fractional(n);
    const double f =
        static_cast<double>(evaluate_max_flow(inst, lp_guided_fifo(inst, x)).max_flow);
    const double b = static_cast<double>(fractional_max_flow(inst, x));
    o.pass = o.pass && f / b >= 1.7;
    ratios += " n=" + std::to_string(n) + ":" + format_double(std::round(f / b * 1000) / 1000);
  }
  o.detail = "n=12 max flow " + flow + ", fractional " + bound + ", ratios" + ratios;
  return o;
}

Outcome c12_end_to_end() {
  Outcome o;
  const Epsilon eps = Epsilon::unit(4);
  const Time H = 16;
  double sum_best = 0, sum_lp = 0;
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    Profile p;
    // several 128-slot intervals, small and large windows mixed
    p.pages = 5;
    p.requests = 40;
    p.release_span = 300;
    p.throughput = true;
    p.window_min = 2;
    p.window_max = 80;
    p.weight_min = 1;
    p.weight_max = 10;
    const Instance inst = generate_instance(seed, p);
    const ConfigLpSolution s = solve_config_lp(inst, H, eps);
    const BetterOfTwo b = better_of_two(inst, s, eps, H, 200, seed);
    sum_best += b.best_mean();
    sum_lp += s.objective;
  }
  const double ratio = sum_lp > 0 ? sum_best / sum_lp : 1;
  o.pass = ratio >= 0.75;
  o.detail = "aggregate best-of-two/LP=" + format_double(std::round(ratio * 1e4) / 1e4) +
             " over 50 instances x 200 trials (target 0.75" +
             (ratio < 0.70 ? ", FLAG: below 0.70)" : ")");
  return o;
}

struct Criterion {
  int id;
  const char* name;
  double budget_s;
  Outcome (*run)();
};

}  // namespace

int main() {
  const std::vector<Criterion> all = {
      {1, "dp exactness", 60, c1_dp_exactness},
      {2, "fifo 2-approximation", 5, c2_fifo_bound},
      {3, "simplified dp pipeline", 120, c3_simplified_pipeline},
      {4, "group structure", 10, c4_groups},
      {5, "tentative completeness", 60, c5_tentative_completeness},
      {6, "derandomization", 300, c6_derandomization},
      {7, "contention resolution", 10, c7_contention},
      {8, "independent rounding bound", 60, c8_independent_bound},
      {9, "configuration lp", 300, c9_config_lp},
      {10, "relocation soundness", 60, c10_relocation},
      {11, "lp-guided fifo demo", 1, c11_lp_fifo},
      {12, "end-to-end throughput ratio", 600, c12_end_to_end},
  };
  int failed = 0;
  for (const Criterion& c : all) {
    const auto start = Clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(Clock::now() - start).count();
    const bool in_time = secs <= c.budget_s;
    const bool pass = o.pass && in_time;
    failed += !pass;
    char timing[64];
    std::snprintf(timing, sizeof timing, "%.2fs of %.0fs", secs, c.budget_s);
    std::cout << (pass ? "PASS" : "FAIL") << " C" << c.id << " " << c.name << ": "
              << o.detail << " [" << timing << (in_time ? "" : ", over budget")
              << "]" << std::endl;
  }
  return failed;
}
