#include "bcast/throughput_lp.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <set>
#include <stdexcept>
#include <unordered_map>

#include <boost/container_hash/hash.hpp>

#include "bcast/instance_io.hpp"
#include "bcast/simplex.hpp"

namespace bcast {
namespace {

using Bits = std::vector<std::uint64_t>;

struct BitsHash {
  std::size_t operator()(const Bits& b) const {
    return boost::hash_range(b.begin(), b.end());
  }
};

double clean(double v) {
  if (std::abs(v) < kTol) return 0.0;
  double r = std::round(v);
  return std::abs(v - r) < kTol ? r : v;
}

Interval intersect(const Interval& a, Time start, Time end) {
  return {std::max(a.start, start), std::min(a.end, end)};
}

}  // namespace

BlockParams block_params(Time H, Epsilon eps) {
  if (H < 1) throw std::invalid_argument("H must be positive");
  BlockParams p;
  if ((2 * H * eps.den) % eps.num != 0) {
    throw std::invalid_argument("2H/eps is not an integer");
  }
  p.block = 2 * H * eps.den / eps.num;
  p.eps_h = eps.times(H, "eps*H");
  const std::int64_t den2 = eps.den * eps.den;
  if ((H * eps.num * eps.num) % den2 != 0) {
    throw std::invalid_argument("eps^2*H is not an integer");
  }
  p.eps2_h = H * eps.num * eps.num / den2;
  if (p.eps_h < 1 || p.eps2_h < 1) {
    throw std::invalid_argument("eps*H and eps^2*H must be positive");
  }
  return p;
}

int IntervalPartition::index_of(Time t) const {
  if (intervals.empty() || t < 0 || t > horizon()) return -1;
  if (t < first_length) return 0;
  return 1 + static_cast<int>((t - first_length) / block);
}

IntervalPartition build_partition(Time horizon, Time H, Epsilon eps,
                                  Time first_length) {
  if (H < 1 || (2 * H * eps.den) % eps.num != 0) {
    throw std::invalid_argument("2H/eps is not a positive integer");
  }
  IntervalPartition out;
  out.block = 2 * H * eps.den / eps.num;
  if (first_length < 1 || first_length > out.block) {
    throw std::invalid_argument("first interval length out of range");
  }
  if (horizon < 0) throw std::invalid_argument("negative horizon");
  out.first_length = first_length;
  Time start = 0, length = first_length;
  while (start <= horizon) {
    out.intervals.push_back({start, std::min(horizon, start + length - 1)});
    start += length;
    length = out.block;
  }
  return out;
}

IntervalPartition build_partition(const Instance& instance, Time H,
                                  Epsilon eps, Time first_length) {
  return build_partition(instance.max_deadline(), H, eps, first_length);
}

RequestClassification classify_requests(const Instance& instance,
                                        const IntervalPartition& partition,
                                        Time H, Epsilon eps) {
  const Time min_side = 2 * eps.times(H, "eps*H");
  RequestClassification cls;
  for (int i = 0; i < instance.request_count(); ++i) {
    const Request& r = instance.request(i);
    if (!r.has_window()) {
      throw InvalidInstance("throughput needs deadlines and weights");
    }
    const int a = partition.index_of(r.window_start());
    const int b = partition.index_of(r.window_end());
    if (r.window_length() < 2 * H) {
      if (a == b && a >= 0) {
        cls.small.push_back(i);
        cls.small_interval[i] = a;
      } else {
        cls.small_discarded.push_back(i);
        cls.discarded_weight += *r.weight;
      }
      continue;
    }
    const auto& iv = partition.intervals;
    LargeWindows w;
    w.left_interval = a;
    w.right_interval = b;
    w.left = intersect(iv[a], r.window_start(), r.window_end());
    if (b != a) {
      w.right = intersect(iv[b], r.window_start(), r.window_end());
      if (b > a + 1) w.middle = Interval{iv[a + 1].start, iv[b - 1].end};
    }
    const bool keep = w.left.length() >= min_side &&
                      (!w.right || w.right->length() >= min_side);
    cls.windows[i] = w;
    if (keep) {
      cls.large.push_back(i);
    } else {
      cls.large_discarded.push_back(i);
      cls.discarded_weight += *r.weight;
    }
  }
  return cls;
}

double configuration_value(const Interval& interval,
                           const std::vector<Item>& items,
                           const Configuration& config) {
  double value = 0;
  for (const Item& item : items) {
    for (Time t = std::max(item.start, interval.start);
         t <= std::min(item.end, interval.end); ++t) {
      if (config[t - interval.start] == item.page) {
        value += item.profit;
        break;
      }
    }
  }
  return value;
}

OracleAnswer best_configuration(const Interval& interval,
                                const std::vector<Item>& all_items) {
  const Time len = interval.length();
  std::vector<Item> items;
  for (const Item& it : all_items) {
    Item c = it;
    c.start = std::max(c.start, interval.start);
    c.end = std::min(c.end, interval.end);
    if (c.profit > 0 && c.start <= c.end) items.push_back(c);
  }
  const std::size_t words = (items.size() + 63) / 64;

  struct Node {
    Bits state;
    double value;
    int parent;
    Page page;
  };
  std::vector<std::vector<Node>> layers(1);
  layers[0].push_back({Bits(words, 0), 0.0, -1, kIdle});

  for (Time t = interval.start; t <= interval.end; ++t) {
    std::map<Page, double> gain;
    std::map<Page, std::vector<int>> live;
    std::vector<int> closing;
    for (int k = 0; k < static_cast<int>(items.size()); ++k) {
      const Item& it = items[k];
      if (it.start <= t && t <= it.end) {
        gain[it.page] += it.profit;
        live[it.page].push_back(k);
      }
      if (it.end == t) closing.push_back(k);
    }
    std::vector<std::pair<double, Page>> ranked;
    for (const auto& [p, g] : gain) ranked.emplace_back(-g, p);
    std::sort(ranked.begin(), ranked.end());
    if (static_cast<Time>(ranked.size()) > len) ranked.resize(len);
    std::vector<Page> choices{kIdle};
    for (const auto& [g, p] : ranked) choices.push_back(p);

    const std::vector<Node>& from = layers.back();
    std::vector<Node> next;
    std::unordered_map<Bits, int, BitsHash> where;
    for (int i = 0; i < static_cast<int>(from.size()); ++i) {
      for (Page p : choices) {
        Bits state = from[i].state;
        double value = from[i].value;
        if (p != kIdle) {
          for (int k : live[p]) {
            std::uint64_t bit = std::uint64_t{1} << (k % 64);
            if (!(state[k / 64] & bit)) {
              state[k / 64] |= bit;
              value += items[k].profit;
            }
          }
        }
        for (int k : closing) state[k / 64] &= ~(std::uint64_t{1} << (k % 64));
        auto [pos, inserted] =
            where.try_emplace(state, static_cast<int>(next.size()));
        if (inserted) {
          next.push_back({std::move(state), value, i, p});
        } else if (value > next[pos->second].value + 1e-12) {
          next[pos->second].value = value;
          next[pos->second].parent = i;
          next[pos->second].page = p;
        }
      }
    }
    layers.push_back(std::move(next));
  }

  const std::vector<Node>& last = layers.back();
  int best = 0;
  for (int i = 1; i < static_cast<int>(last.size()); ++i) {
    if (last[i].value > last[best].value + 1e-12) best = i;
  }
  OracleAnswer answer;
  answer.value = last[best].value;
  answer.config.assign(len, kIdle);
  int idx = best;
  for (Time i = len; i >= 1; --i) {
    const Node& node = layers[i][idx];
    answer.config[i - 1] = node.page;
    idx = node.parent;
  }
  return answer;
}

std::vector<Item> interval_items(const Instance& instance,
                                 const IntervalPartition& partition,
                                 const RequestClassification& cls,
                                 int interval,
                                 const std::vector<double>& delta) {
  const Interval& iv = partition.intervals.at(interval);
  std::vector<Item> items;
  for (int i : cls.small) {
    if (cls.small_interval.at(i) != interval) continue;
    const Request& r = instance.request(i);
    items.push_back({r.page, r.window_start(), r.window_end(), *r.weight});
  }
  for (std::size_t j = 0; j < cls.large.size(); ++j) {
    const Request& r = instance.request(cls.large[j]);
    Interval w = intersect(iv, r.window_start(), r.window_end());
    if (w.start <= w.end) items.push_back({r.page, w.start, w.end, delta.at(j)});
  }
  return items;
}

std::optional<OracleAnswer> separation_oracle(
    const Instance& instance, const IntervalPartition& partition,
    const RequestClassification& cls, int interval, const DualSolution& dual) {
  OracleAnswer ans = best_configuration(
      partition.intervals.at(interval),
      interval_items(instance, partition, cls, interval, dual.delta));
  if (ans.value > dual.gamma.at(interval) + kTol) return ans;
  return std::nullopt;
}

bool ConfigLpSolution::hits(const Instance& instance, const Column& c,
                            int request) const {
  const Request& r = instance.request(request);
  const Interval& iv = partition.intervals[c.interval];
  for (Time t = std::max(iv.start, r.window_start());
       t <= std::min(iv.end, r.window_end()); ++t) {
    if (c.config[t - iv.start] == r.page) return true;
  }
  return false;
}

double ConfigLpSolution::hit_mass(const Instance& instance, int request,
                                  int interval) const {
  double mass = 0;
  for (const Column& c : columns) {
    if (c.interval == interval && hits(instance, c, request)) mass += c.weight;
  }
  return mass;
}

ConfigLpSolution solve_config_lp_for(const Instance& instance, Time H,
                                     Epsilon eps, Time first_length) {
  block_params(H, eps);
  ConfigLpSolution sol;
  sol.partition = build_partition(instance, H, eps, first_length);
  sol.classification = classify_requests(instance, sol.partition, H, eps);
  const auto& cls = sol.classification;
  const int n_int = static_cast<int>(sol.partition.intervals.size());
  const int n_large = static_cast<int>(cls.large.size());

  std::vector<Column> cols;
  std::vector<std::vector<int>> col_hits;
  std::set<std::pair<int, Configuration>> seen;
  auto large_weight = [&](int j) { return *instance.request(cls.large[j]).weight; };

  lp::Result primal;
  for (int iter = 1;; ++iter) {
    if (iter > 100000) throw std::runtime_error("cutting plane did not converge");
    sol.iterations = iter;

    lp::Problem dual(false);
    std::vector<int> g(n_int), d(n_large), x(n_large);
    for (int i = 0; i < n_int; ++i) g[i] = dual.add_variable(1.0);
    for (int j = 0; j < n_large; ++j) d[j] = dual.add_variable(0.0);
    for (int j = 0; j < n_large; ++j) x[j] = dual.add_variable(1.0);
    for (int j = 0; j < n_large; ++j) {
      dual.add_constraint({{d[j], 1.0}, {x[j], 1.0}}, lp::Relation::kGreaterEqual,
                          large_weight(j));
    }
    for (std::size_t c = 0; c < cols.size(); ++c) {
      std::vector<std::pair<int, double>> terms{{g[cols[c].interval], 1.0}};
      for (int j : col_hits[c]) terms.emplace_back(d[j], -1.0);
      dual.add_constraint(std::move(terms), lp::Relation::kGreaterEqual,
                          cols[c].small_value);
    }
    const lp::Result dres = dual.solve();
    if (dres.status != lp::Status::kOptimal) {
      throw std::runtime_error("dual of the configuration LP failed");
    }
    sol.dual.gamma.assign(n_int, 0.0);
    sol.dual.delta.assign(n_large, 0.0);
    sol.dual.xi.assign(n_large, 0.0);
    for (int i = 0; i < n_int; ++i) sol.dual.gamma[i] = dres.x[g[i]];
    for (int j = 0; j < n_large; ++j) {
      sol.dual.delta[j] = dres.x[d[j]];
      sol.dual.xi[j] = dres.x[x[j]];
    }
    sol.dual.objective = dres.objective;

    lp::Problem restricted(true);
    std::vector<int> y(cols.size()), z(n_large);
    for (std::size_t c = 0; c < cols.size(); ++c) {
      y[c] = restricted.add_variable(cols[c].small_value);
    }
    for (int j = 0; j < n_large; ++j) z[j] = restricted.add_variable(large_weight(j));
    std::vector<std::vector<std::pair<int, double>>> per_interval(n_int);
    std::vector<std::vector<std::pair<int, double>>> cover(n_large);
    for (std::size_t c = 0; c < cols.size(); ++c) {
      per_interval[cols[c].interval].emplace_back(y[c], 1.0);
      for (int j : col_hits[c]) cover[j].emplace_back(y[c], -1.0);
    }
    for (auto& terms : per_interval) {
      if (!terms.empty()) {
        restricted.add_constraint(std::move(terms), lp::Relation::kLessEqual, 1.0);
      }
    }
    for (int j = 0; j < n_large; ++j) {
      cover[j].emplace_back(z[j], 1.0);
      restricted.add_constraint(std::move(cover[j]), lp::Relation::kLessEqual, 0.0);
      restricted.add_constraint({{z[j], 1.0}}, lp::Relation::kLessEqual, 1.0);
    }
    primal = restricted.solve();
    if (primal.status != lp::Status::kOptimal) {
      throw std::runtime_error("restricted configuration LP failed");
    }
    if (dres.objective < primal.objective - 1e-6 * std::max(1.0, primal.objective)) {
      throw std::logic_error("weak duality violated in the cutting plane");
    }

    int added = 0;
    for (int i = 0; i < n_int; ++i) {
      auto ans = separation_oracle(instance, sol.partition, cls, i, sol.dual);
      if (!ans || !seen.insert({i, ans->config}).second) continue;
      Column c;
      c.interval = i;
      c.config = ans->config;
      std::vector<Item> small_items =
          interval_items(instance, sol.partition, cls, i,
                         std::vector<double>(n_large, 0.0));
      c.small_value = configuration_value(sol.partition.intervals[i],
                                          small_items, c.config);
      cols.push_back(c);
      ConfigLpSolution probe;
      probe.partition = sol.partition;
      std::vector<int> hit;
      for (int j = 0; j < n_large; ++j) {
        if (probe.hits(instance, c, cls.large[j])) hit.push_back(j);
      }
      col_hits.push_back(std::move(hit));
      ++added;
    }
    if (added == 0) break;
    sol.generated += added;
  }

  std::vector<double> mass(n_int, 0.0);
  for (std::size_t c = 0; c < cols.size(); ++c) {
    cols[c].weight = clean(primal.x[c]);
    mass[cols[c].interval] += cols[c].weight;
  }
  for (Column& c : cols) {
    if (mass[c.interval] > 1.0) c.weight /= mass[c.interval];
    if (c.weight > 0) sol.columns.push_back(c);
  }
  sol.objective = 0;
  for (const Column& c : sol.columns) {
    sol.objective += c.small_value * c.weight;
    const Interval& iv = sol.partition.intervals[c.interval];
    for (Time i = 0; i < iv.length(); ++i) {
      if (c.config[i] != kIdle) sol.x.add(c.config[i], iv.start + i, c.weight);
    }
  }
  for (int j = 0; j < n_large; ++j) {
    double total = 0;
    for (int i = 0; i < n_int; ++i) total += sol.hit_mass(instance, cls.large[j], i);
    const double zj = std::min(1.0, clean(total));
    sol.z[cls.large[j]] = zj;
    sol.objective += large_weight(j) * zj;
  }
  return sol;
}

ConfigLpSolution solve_config_lp(const Instance& instance, Time H,
                                 Epsilon eps) {
  const BlockParams params = block_params(H, eps);
  std::optional<ConfigLpSolution> best;
  std::set<std::vector<Time>> tried;
  for (Time first = 1; first <= params.block; ++first) {
    const IntervalPartition part = build_partition(instance, H, eps, first);
    std::vector<Time> key;
    for (const Interval& iv : part.intervals) key.push_back(iv.start);
    if (!tried.insert(key).second) continue;
    ConfigLpSolution sol = solve_config_lp_for(instance, H, eps, first);
    if (!best || sol.objective > best->objective + kTol) best = std::move(sol);
  }
  return std::move(*best);
}

ZSplit zsplit_from(double eta1, double eta2, double eta3) {
  ZSplit s;
  s.eta1 = eta1;
  s.eta2 = eta2;
  s.eta3 = eta3;
  s.zm = std::min(eta2, 1.0);
  s.zb = std::min(eta1 + eta2 + eta3, 1.0) - s.zm;
  return s;
}

std::map<int, ZSplit> zsplit(const Instance& instance,
                             const ConfigLpSolution& solution) {
  std::map<int, ZSplit> out;
  for (int i : solution.classification.large) {
    const LargeWindows& w = solution.classification.windows.at(i);
    double e1 = solution.hit_mass(instance, i, w.left_interval);
    double e2 = 0, e3 = 0;
    if (w.right_interval != w.left_interval) {
      e3 = solution.hit_mass(instance, i, w.right_interval);
      for (int k = w.left_interval + 1; k < w.right_interval; ++k) {
        e2 += solution.hit_mass(instance, i, k);
      }
    }
    out[i] = zsplit_from(e1, e2, e3);
  }
  return out;
}

void write_solution(const Instance& instance,
                    const ConfigLpSolution& solution, std::ostream& out) {
  for (const Column& c : solution.columns) {
    out << "col " << c.interval << " " << format_double(c.weight);
    for (Page p : c.config) out << " " << p;
    out << "\n";
  }
  for (const auto& [i, v] : solution.z) {
    out << "z " << instance.request(i).id << " " << format_double(v) << "\n";
  }
}

}  // namespace bcast
