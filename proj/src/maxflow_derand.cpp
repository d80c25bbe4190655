#include "bcast/maxflow_derand.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "bcast/instance_io.hpp"

namespace bcast {
namespace {

double snap(double y) {
  double r = std::round(y);
  return std::abs(y - r) < kTol ? r : y;
}

double value_at(const std::vector<std::pair<Time, double>>& cumulative,
                Time t) {
  auto it = std::upper_bound(
      cumulative.begin(), cumulative.end(), t,
      [](Time v, const std::pair<Time, double>& e) { return v < e.first; });
  return it == cumulative.begin() ? 0.0 : std::prev(it)->second;
}

double log_sum_exp(const std::vector<double>& logs) {
  double top = -std::numeric_limits<double>::infinity();
  for (double v : logs) top = std::max(top, v);
  if (!std::isfinite(top)) return top;
  double sum = 0;
  for (double v : logs) sum += std::exp(v - top);
  return top + std::log(sum);
}

double free_factor(const EstimatorState& s, int I, int g) {
  const double mu = s.mu[I][g];
  return s.big[I] ? std::log((s.lambda - 1) * mu + 1)
                  : std::log((std::exp(1.0) - 1) * mu + 1);
}

double fixed_factor(const EstimatorState& s, int I, int x) {
  return s.big[I] ? x * std::log(s.lambda) : static_cast<double>(x);
}

double denominator(const EstimatorState& s, int I) {
  return s.big[I] ? s.lambda * std::log(s.lambda) * s.mu_total[I]
                  : s.small_threshold();
}

}  // namespace

EstimatorState make_estimator_state(const FractionalSchedule& x,
                                    const GroupPartition& groups, Epsilon eps,
                                    Time L,
                                    const std::vector<Time>& timesteps) {
  if (eps.num * 3 > eps.den) {
    throw std::invalid_argument("derandomization requires eps <= 1/3");
  }
  EstimatorState s;
  s.eps = eps.value();
  s.lambda = 1 + 3 * s.eps;
  s.L = L;
  s.steps = timesteps;
  std::sort(s.steps.begin(), s.steps.end());
  s.steps.erase(std::unique(s.steps.begin(), s.steps.end()), s.steps.end());
  const int k = groups.group_count();
  for (int g = 0; g < k; ++g) {
    s.cumulative.push_back(group_cumulative(x, groups.members[g]));
  }
  const int q = static_cast<int>(s.steps.size());
  for (int a = 0; a < q; ++a) {
    for (int b = a; b < q; ++b) {
      s.intervals.emplace_back(a, b);
      std::vector<double> mu(k);
      std::vector<long> fl(k);
      double total = 0;
      for (int g = 0; g < k; ++g) {
        const double v = snap(value_at(s.cumulative[g], s.steps[b]) -
                              value_at(s.cumulative[g], s.steps[a] - 1));
        fl[g] = static_cast<long>(std::floor(v));
        mu[g] = std::max(0.0, v - static_cast<double>(fl[g]));
        total += mu[g];
      }
      s.mu.push_back(std::move(mu));
      s.floor_v.push_back(std::move(fl));
      s.mu_total.push_back(total);
      s.big.push_back(total >= s.eps * static_cast<double>(L) - kTol);
    }
  }
  return s;
}

std::vector<int> realized_indicators(const EstimatorState& state, int g,
                                     double alpha) {
  const std::vector<Time> cross = crossing_times(state.cumulative[g], alpha);
  auto count_upto = [&](Time t) {
    return static_cast<long>(std::upper_bound(cross.begin(), cross.end(), t) -
                             cross.begin());
  };
  std::vector<int> out;
  out.reserve(state.intervals.size());
  for (std::size_t I = 0; I < state.intervals.size(); ++I) {
    const auto [a, b] = state.intervals[I];
    const long n = count_upto(state.steps[b]) - count_upto(state.steps[a] - 1);
    const long x = n - state.floor_v[I][g];
    if (x != 0 && x != 1) {
      throw std::logic_error("crossing count deviates from the mass by " +
                             std::to_string(x));
    }
    out.push_back(static_cast<int>(x));
  }
  return out;
}

double log_estimator(const EstimatorState& state, int interval, int h) {
  if (h > static_cast<int>(state.fixed.size())) {
    throw std::invalid_argument("estimator asks for unfixed groups");
  }
  double log_e = -denominator(state, interval);
  for (int g = 0; g < state.group_count(); ++g) {
    if (g < h) {
      const int x = realized_indicators(state, g, state.fixed[g])[interval];
      log_e += fixed_factor(state, interval, x);
    } else {
      log_e += free_factor(state, interval, g);
    }
  }
  return log_e;
}

double estimator(const EstimatorState& state, int interval, int h) {
  return std::exp(log_estimator(state, interval, h));
}

double estimator_sum(const EstimatorState& state, int h) {
  std::vector<double> logs;
  for (std::size_t I = 0; I < state.intervals.size(); ++I) {
    logs.push_back(log_estimator(state, static_cast<int>(I), h));
  }
  return std::exp(log_sum_exp(logs));
}

std::vector<double> candidate_alphas(const FractionalSchedule& x,
                                     const GroupPartition& groups, int g) {
  std::vector<double> points{0.0, 1.0};
  for (const auto& [t, y] : group_cumulative(x, groups.members.at(g))) {
    double f = y - std::floor(y);
    if (f > kTol && f < 1 - kTol) points.push_back(f);
  }
  std::sort(points.begin(), points.end());
  std::vector<double> distinct;
  for (double p : points) {
    if (distinct.empty() || p - distinct.back() > kTol) distinct.push_back(p);
  }
  distinct.back() = 1.0;
  std::vector<double> out;
  for (std::size_t i = 0; i + 1 < distinct.size(); ++i) {
    out.push_back((distinct[i] + distinct[i + 1]) / 2);
  }
  return out;
}

DerandResult derandomize(const FractionalSchedule& x,
                         const GroupPartition& groups, Epsilon eps, Time L,
                         const std::vector<Time>& timesteps,
                         int request_count) {
  EstimatorState state = make_estimator_state(x, groups, eps, L, timesteps);
  const int k = state.group_count();
  const int intervals = static_cast<int>(state.intervals.size());

  std::vector<double> current(intervals);
  for (int I = 0; I < intervals; ++I) current[I] = log_estimator(state, I, 0);

  DerandResult result;
  result.initial_sum = std::exp(log_sum_exp(current));
  const double limit = 1.0 / std::max(1, request_count);
  if (result.initial_sum > limit * (1 + 1e-12)) {
    throw RegimeError("initial estimator sum " +
                      format_double(result.initial_sum) + " exceeds 1/m = " +
                      format_double(limit));
  }

  double previous = result.initial_sum;
  std::vector<double> trial(intervals), best_logs;
  for (int g = 0; g < k; ++g) {
    double best_alpha = 0, best_sum = std::numeric_limits<double>::infinity();
    for (double alpha : candidate_alphas(x, groups, g)) {
      const std::vector<int> xs = realized_indicators(state, g, alpha);
      for (int I = 0; I < intervals; ++I) {
        trial[I] = current[I] - free_factor(state, I, g) +
                   fixed_factor(state, I, xs[I]);
      }
      const double sum = std::exp(log_sum_exp(trial));
      if (sum < best_sum) {
        best_sum = sum;
        best_alpha = alpha;
        best_logs = trial;
      }
    }
    if (best_sum > previous * (1 + 1e-9) + 1e-300) {
      throw std::logic_error("estimator sum increased at group " +
                             std::to_string(g));
    }
    current = best_logs;
    previous = best_sum;
    state.fixed.push_back(best_alpha);
    result.alphas.push_back(best_alpha);
    result.trace.push_back({g, best_alpha, best_sum});
  }

  std::vector<long> total(intervals, 0);
  for (int g = 0; g < k; ++g) {
    const std::vector<int> xs = realized_indicators(state, g, state.fixed[g]);
    for (int I = 0; I < intervals; ++I) total[I] += xs[I];
  }
  for (int I = 0; I < intervals; ++I) {
    if (total[I] > state.mu_total[I] + state.small_threshold() + kTol) {
      throw std::logic_error("chosen alphas exceed the interval bound");
    }
  }
  return result;
}

void write_trace(const DerandResult& result, std::ostream& out) {
  for (const DerandStep& s : result.trace) {
    out << "derand " << s.group << " " << format_double(s.alpha) << " "
        << format_double(s.estimator_sum) << "\n";
  }
}

}  // namespace bcast
