#include "bcast/maxflow_solver.hpp"

#include <cmath>
#include <random>

#include "bcast/maxflow_exact.hpp"
#include "bcast/maxflow_lp.hpp"
#include "bcast/metrics.hpp"

namespace bcast {
namespace {

struct Prepared {
  SplitInstance split;
  std::vector<Time> steps;
  FractionalSchedule x;
  GroupPartition groups;
};

std::optional<Prepared> prepare(const Instance& instance, Time L) {
  Prepared p;
  p.split = split_far_pages(instance, L);
  p.steps = restrict_timesteps(p.split.instance);
  auto x = solve_lp_maxflow(p.split.instance, L, p.steps);
  if (!x) return std::nullopt;
  p.x = std::move(*x);
  p.groups = build_groups(p.split.instance, L);
  return p;
}

LpRoundOutcome finish(const Instance& instance, const Prepared& p, Time L,
                      const TentativeSchedule& tentative, Time overflow) {
  LpRoundOutcome out;
  out.L = L;
  out.overflow = overflow;
  out.tentative_flow = tentative_max_flow(p.split.instance, tentative);
  if (out.tentative_flow > L) {
    throw std::logic_error("tentative schedule leaves a request beyond L");
  }
  const Schedule flat = fifo_flatten(tentative);
  const Time split_flow = evaluate_max_flow(p.split.instance, flat).max_flow;
  if (split_flow > out.tentative_flow + overflow) {
    throw std::logic_error("flattening delayed a job beyond the overflow");
  }
  out.schedule = to_physical(flat, p.split.physical);
  out.max_flow = evaluate_max_flow(instance, out.schedule).max_flow;
  return out;
}

LpRoundOutcome derandomized_outcome(const Instance& instance,
                                    const Prepared& p, Time L, Epsilon eps) {
  if (eps.num * 3 > eps.den) {
    throw RegimeError("derandomization needs eps <= 1/3, got " + eps.str());
  }
  DerandResult d = derandomize(p.x, p.groups, eps, L, p.steps,
                               instance.request_count());
  const TentativeSchedule tentative = group_alpha_round(p.x, p.groups, d.alphas);
  const Time of = max_overflow(tentative, p.steps);
  if (of > overflow_budget(eps, L)) {
    throw std::logic_error("derandomized alphas exceed the overflow budget");
  }
  LpRoundOutcome out = finish(instance, p, L, tentative, of);
  out.derandomized = true;
  out.derand = std::move(d);
  return out;
}

}  // namespace

Time overflow_budget(Epsilon eps, Time L) {
  return (6 * eps.num * L + eps.den - 1) / eps.den;
}

std::optional<LpRoundOutcome> maxflow_lp_round(const Instance& instance,
                                               Time L, Epsilon eps,
                                               std::uint64_t seed,
                                               int retries) {
  auto p = prepare(instance, L);
  if (!p) return std::nullopt;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const Time budget = overflow_budget(eps, L);
  for (int attempt = 1; attempt <= retries; ++attempt) {
    AlphaVector alphas(p->groups.group_count());
    for (double& a : alphas) a = unit(rng);
    const TentativeSchedule tentative = group_alpha_round(p->x, p->groups, alphas);
    const Time of = max_overflow(tentative, p->steps);
    if (of <= budget) {
      LpRoundOutcome out = finish(instance, *p, L, tentative, of);
      out.attempts = attempt;
      return out;
    }
  }
  LpRoundOutcome out = derandomized_outcome(instance, *p, L, eps);
  out.attempts = retries;
  return out;
}

std::optional<LpRoundOutcome> maxflow_lp_derandomized(
    const Instance& instance, Time L, Epsilon eps) {
  auto p = prepare(instance, L);
  if (!p) return std::nullopt;
  return derandomized_outcome(instance, *p, L, eps);
}

LpRoundOutcome randomized_maxflow_round(const Instance& instance,
                                        Epsilon eps, std::uint64_t seed) {
  if (instance.empty()) return {};
  const Time L = min_lp_feasible_L(instance);
  auto out = maxflow_lp_round(instance, L, eps, seed);
  if (!out) throw LpSolverError("relaxation infeasible at its own minimum L");
  return *out;
}

MaxflowSolution solve_maxflow(const Instance& instance, Epsilon eps,
                              const SolveOptions& options) {
  MaxflowSolution sol;
  if (instance.empty()) return sol;
  const Time k = eps.inverse();
  const Time exact_limit = k * k;
  const double lp_limit =
      options.lp_threshold.value_or(static_cast<double>(k * k * k) *
                                    std::log(instance.request_count()));
  auto finish_with = [&](Schedule s, Time L, const char* path) {
    sol.schedule = std::move(s);
    sol.L = L;
    sol.max_flow = evaluate_max_flow(instance, sol.schedule).max_flow;
    sol.path = path;
    return sol;
  };

  Time last_rounded = 0;
  // Without an explicit threshold the exact DP keeps L <= 1/eps^2 even when
  // ln m is tiny.
  const bool exact_first = !options.lp_threshold;
  for (Time L = 1;; ++L) {
    if (static_cast<double>(L) > lp_limit && !(exact_first && L <= exact_limit)) {
      auto out = maxflow_lp_round(instance, L, eps, options.seed);
      if (!out) continue;
      return finish_with(std::move(out->schedule), L,
                         out->derandomized ? "lp-derandomized"
                                           : "lp-randomized");
    }
    if (L <= exact_limit) {
      std::vector<Schedule> parts;
      bool ok = true;
      for (const Instance& piece : decompose_silent(instance, L)) {
        auto s = dp_constant(piece, L, options.force);
        if (!s) {
          ok = false;
          break;
        }
        parts.push_back(prune_useless(piece, *s));
      }
      if (ok) return finish_with(merge_schedules(parts), L, "exact");
      continue;
    }
    const Time rounded = (L + k - 1) / k * k;
    if (rounded == last_rounded) continue;
    last_rounded = rounded;
    // Converted schedules stay within (1 + 4 eps) of the rounded bound.
    const Time reach = rounded + 4 * (rounded / k);
    std::vector<Schedule> parts;
    bool ok = true;
    for (const Instance& piece : decompose_silent(instance, reach)) {
      const SimplifiedInstance simplified = simplify_instance(piece, rounded, eps);
      auto shrunk = dp_simplified(simplified);
      if (!shrunk) {
        ok = false;
        break;
      }
      parts.push_back(prune_useless(
          piece, convert_schedule(*shrunk, simplified.slot_capacity)));
    }
    if (ok) return finish_with(merge_schedules(parts), rounded, "simplified");
  }
}

}  // namespace bcast
