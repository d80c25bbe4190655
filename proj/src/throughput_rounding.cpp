#include "bcast/throughput_rounding.hpp"

#include <cmath>
#include <ostream>
#include <set>

#include "bcast/instance_io.hpp"

namespace bcast {
namespace {

double unit(Rng& rng) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

double snap(double y) {
  double r = std::round(y);
  return std::abs(y - r) < kTol ? r : y;
}

const std::vector<Page>& empty_set() {
  static const std::vector<Page> none;
  return none;
}

// x_{.,t} per time.
std::map<Time, std::map<Page, double>> columns_of(const FractionalSchedule& x) {
  std::map<Time, std::map<Page, double>> out;
  for (const auto& [p, row] : x.by_page()) {
    for (const auto& [t, v] : row) out[t][p] = v;
  }
  return out;
}

RoundingOutcome finish(const Instance& instance, RoundingOutcome out) {
  out.report = evaluate_throughput(instance, out.schedule);
  out.profit = out.report.profit;
  return out;
}

}  // namespace

int BlockStructure::block_of(Time t) const {
  if (t < 0 || blocks.empty() || t >= blocks.back().end) return -1;
  if (t < h) return 0;
  return 1 + static_cast<int>((t - h) / length);
}

bool BlockStructure::is_freed(Time t) const {
  const int b = block_of(t);
  return b >= 0 && t >= blocks[b].freed_start;
}

BlockStructure make_blocks(Time horizon, Time h, const BlockParams& params) {
  if (h < 1 || h > params.eps_h) {
    throw std::invalid_argument("block offset must lie in [1, eps*H]");
  }
  BlockStructure s;
  s.h = h;
  s.freed = params.eps2_h;
  s.length = params.eps_h;
  auto push = [&](Time start, Time end) {
    s.blocks.push_back({start, end, std::max(start, end - s.freed)});
  };
  push(0, h);
  for (Time start = h; start <= horizon; start += s.length) {
    push(start, start + s.length);
  }
  return s;
}

std::string to_string(Direction d) {
  return d == Direction::kLeft ? "left" : "right";
}

Relocation relocate(const TentativeSchedule& tentative,
                    const std::map<Time, Page>& first_round,
                    const BlockStructure& structure, Direction direction) {
  auto A = [&](Time t) -> const std::vector<Page>& {
    auto it = tentative.slots().find(t);
    return it == tentative.slots().end() ? empty_set() : it->second;
  };
  for (const auto& [t, p] : first_round) {
    const auto& a = A(t);
    if (std::find(a.begin(), a.end(), p) == a.end()) {
      throw std::invalid_argument("first-round page not in A_t at " +
                                  std::to_string(t));
    }
  }
  for (const auto& [t, a] : tentative.slots()) {
    if (!a.empty() && !first_round.count(t)) {
      throw std::invalid_argument("no first-round page at " + std::to_string(t));
    }
    if (structure.block_of(t) < 0) {
      throw std::invalid_argument("transmission outside the blocks");
    }
  }

  Relocation out;
  const auto& blocks = structure.blocks;
  for (int b = 0; b < static_cast<int>(blocks.size()); ++b) {
    const Block& blk = blocks[b];
    const Time t1 = blk.start, t2 = blk.freed_start;
    BlockReport report;
    report.block = b;
    std::map<Time, std::vector<Page>> overflow;
    for (Time t = t1; t < t2; ++t) {
      auto fr = first_round.find(t);
      if (fr == first_round.end()) continue;
      out.schedule.assign(t, fr->second);
      for (Page p : A(t)) {
        if (p != fr->second) overflow[t].push_back(p);
      }
      report.overflow += static_cast<Time>(overflow[t].size());
    }
    if (report.overflow == 0) {
      out.blocks.push_back(report);
      continue;
    }

    std::set<Time> slots;
    Time outside = 0;
    if (direction == Direction::kRight) {
      for (Time t = t1; t < blk.end; ++t) {
        if (t >= t2 || A(t).empty()) slots.insert(t);
      }
      Time suffix = 0;
      for (Time t = t2 - 1; t >= t1; --t) {
        suffix += static_cast<Time>(A(t).size());
        if (suffix > t2 - t + (blk.end - t2)) report.condition = false;
      }
    } else if (b == 0) {
      report.condition = false;
    } else {
      const Block& prev = blocks[b - 1];
      for (Time t = std::max({Time{1}, prev.freed_start, t1 - structure.freed});
           t < t1; ++t) {
        slots.insert(t);
        ++outside;
      }
      for (Time t = t1; t < t2; ++t) {
        if (A(t).empty()) slots.insert(t);
      }
      Time prefix = 0;
      for (Time t = t1; t < t2; ++t) {
        prefix += static_cast<Time>(A(t).size());
        if (prefix > t - t1 + 1 + outside) report.condition = false;
      }
    }

    std::vector<std::pair<Time, Page>> moves;
    bool ok = !(direction == Direction::kLeft && b == 0);
    if (ok && direction == Direction::kRight) {
      for (auto it = overflow.rbegin(); ok && it != overflow.rend(); ++it) {
        for (Page p : it->second) {
          if (slots.empty() || *slots.rbegin() <= it->first) {
            ok = false;
            break;
          }
          moves.emplace_back(*slots.rbegin(), p);
          slots.erase(std::prev(slots.end()));
        }
      }
    } else if (ok) {
      for (auto it = overflow.begin(); ok && it != overflow.end(); ++it) {
        for (Page p : it->second) {
          if (slots.empty() || *slots.begin() >= it->first) {
            ok = false;
            break;
          }
          moves.emplace_back(*slots.begin(), p);
          slots.erase(slots.begin());
        }
      }
    }
    report.placed = ok && report.condition;
    report.claim_failed = report.condition && !ok;
    if (report.placed) {
      for (const auto& [t, p] : moves) out.schedule.assign(t, p);
    }
    out.blocks.push_back(report);
  }
  return out;
}

TentativeSchedule alpha_point_tentative(const FractionalSchedule& x,
                                        const std::map<Page, double>& alphas) {
  TentativeSchedule out;
  for (const auto& [p, row] : x.by_page()) {
    const double alpha = alphas.at(p);
    double threshold = alpha > 0 ? alpha : 1.0;
    double cumulative = 0;
    for (const auto& [t, v] : row) {
      cumulative = snap(cumulative + v);
      while (threshold <= cumulative) {
        out.add(t, p);
        threshold += 1.0;
      }
    }
  }
  return out;
}

TentativeSchedule alpha_point_tentative(const FractionalSchedule& x,
                                        Rng& rng) {
  std::map<Page, double> alphas;
  for (const auto& [p, row] : x.by_page()) alphas[p] = unit(rng);
  return alpha_point_tentative(x, alphas);
}

std::optional<Page> contention_resolve(const std::vector<Page>& contenders,
                                       const std::map<Page, double>& column,
                                       Rng& rng) {
  if (contenders.empty()) return std::nullopt;
  const std::vector<double> probs = contention_distribution(contenders, column);
  const double u = unit(rng);
  double acc = 0;
  for (std::size_t i = 0; i < contenders.size(); ++i) {
    acc += probs[i];
    if (u < acc) return contenders[i];
  }
  return contenders.back();
}

RoundingOutcome independent_round(const Instance& instance,
                                  const ConfigLpSolution& solution, Rng& rng) {
  std::vector<std::vector<const Column*>> by_interval(
      solution.partition.intervals.size());
  for (const Column& c : solution.columns) by_interval[c.interval].push_back(&c);
  RoundingOutcome out;
  out.scheme = "independent";
  for (std::size_t i = 0; i < by_interval.size(); ++i) {
    const double u = unit(rng);
    double acc = 0;
    for (const Column* c : by_interval[i]) {
      acc += c->weight;
      if (u < acc) {
        const Time start = solution.partition.intervals[i].start;
        for (std::size_t k = 0; k < c->config.size(); ++k) {
          if (c->config[k] != kIdle) {
            out.schedule.assign(start + static_cast<Time>(k), c->config[k]);
          }
        }
        break;
      }
    }
  }
  return finish(instance, std::move(out));
}

RoundingOutcome alpha_scheme(const Instance& instance,
                             const ConfigLpSolution& solution, Epsilon eps,
                             Time H, Rng& rng) {
  const BlockParams params = block_params(H, eps);
  RoundingOutcome out;
  out.scheme = "alpha";
  const TentativeSchedule tentative = alpha_point_tentative(solution.x, rng);
  const auto columns = columns_of(solution.x);
  for (const auto& [t, a] : tentative.slots()) {
    out.contention[t] = static_cast<int>(a.size());
    if (auto p = contention_resolve(a, columns.at(t), rng)) {
      out.first_round[t] = *p;
    }
  }
  out.h = std::uniform_int_distribution<Time>(1, params.eps_h)(rng);
  out.direction = unit(rng) < 0.5 ? Direction::kLeft : Direction::kRight;
  const BlockStructure blocks =
      make_blocks(solution.partition.horizon(), out.h, params);
  Relocation moved = relocate(tentative, out.first_round, blocks, out.direction);
  out.schedule = std::move(moved.schedule);
  out.blocks = std::move(moved.blocks);
  return finish(instance, std::move(out));
}

std::uint64_t trial_seed(std::uint64_t seed, int scheme, int trial) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(scheme),
                    static_cast<std::uint32_t>(trial)};
  std::uint32_t words[2];
  seq.generate(words, words + 2);
  return (std::uint64_t{words[0]} << 32) | words[1];
}

BetterOfTwo better_of_two(const Instance& instance,
                          const ConfigLpSolution& solution, Epsilon eps,
                          Time H, int trials, std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("trials must be positive");
  BetterOfTwo result;
  bool have = false;
  for (int scheme = 0; scheme < 2; ++scheme) {
    double total = 0;
    for (int i = 0; i < trials; ++i) {
      Rng rng(trial_seed(seed, scheme, i));
      RoundingOutcome o = scheme == 0
                              ? independent_round(instance, solution, rng)
                              : alpha_scheme(instance, solution, eps, H, rng);
      total += o.profit;
      (scheme == 0 ? result.independent_profits : result.alpha_profits)
          .push_back(o.profit);
      if (!have || o.profit > result.best.profit) {
        result.best = std::move(o);
        have = true;
      }
    }
    (scheme == 0 ? result.independent_mean : result.alpha_mean) = total / trials;
  }
  return result;
}

void write_trials(const BetterOfTwo& result, std::uint64_t seed,
                  std::ostream& out) {
  for (int scheme = 0; scheme < 2; ++scheme) {
    const auto& profits =
        scheme == 0 ? result.independent_profits : result.alpha_profits;
    for (std::size_t i = 0; i < profits.size(); ++i) {
      out << "trial " << (scheme == 0 ? "independent" : "alpha") << " "
          << trial_seed(seed, scheme, static_cast<int>(i)) << " "
          << format_double(profits[i]) << "\n";
    }
  }
}

Rational exact_rational(double v) {
  if (!std::isfinite(v)) throw std::invalid_argument("non-finite weight");
  int exp = 0;
  const double mant = std::frexp(v, &exp);
  const auto digits = static_cast<std::int64_t>(std::ldexp(mant, 53));
  boost::multiprecision::cpp_int num = digits, den = 1;
  exp -= 53;
  if (exp >= 0) {
    num <<= exp;
  } else {
    den <<= -exp;
  }
  return Rational(num, den);
}

ExactSatisfaction exact_satisfaction_probability(
    const Instance& instance, const ConfigLpSolution& solution, int request,
    std::int64_t limit) {
  const Request& r = instance.request(request);
  const auto& part = solution.partition;
  const int a = part.index_of(r.window_start());
  const int b = part.index_of(std::min(r.window_end(), part.horizon()));
  ExactSatisfaction out;
  if (a < 0 || b < 0) return out;

  struct Option {
    Rational weight;
    bool hit;
  };
  std::vector<std::vector<Option>> choices;
  std::int64_t space = 1;
  Rational mass = 0;
  for (int i = a; i <= b; ++i) {
    std::vector<Option> opts;
    Rational total = 0;
    for (const Column& c : solution.columns) {
      if (c.interval != i) continue;
      opts.push_back({exact_rational(c.weight), solution.hits(instance, c, request)});
      total += opts.back().weight;
    }
    if (total > 1) {
      for (Option& o : opts) o.weight /= total;
    } else if (total < 1) {
      opts.push_back({1 - total, false});
    }
    for (const Option& o : opts) {
      if (o.hit) mass += o.weight;
    }
    space *= static_cast<std::int64_t>(opts.size());
    if (space > limit) {
      throw EnumerationTooLarge("column product space exceeds " +
                                std::to_string(limit));
    }
    choices.push_back(std::move(opts));
  }
  out.coverage = mass > 1 ? Rational(1) : mass;

  std::vector<std::size_t> pick(choices.size(), 0);
  while (true) {
    Rational prob = 1;
    bool hit = false;
    for (std::size_t i = 0; i < choices.size(); ++i) {
      prob *= choices[i][pick[i]].weight;
      hit = hit || choices[i][pick[i]].hit;
    }
    if (hit) out.probability += prob;
    std::size_t i = 0;
    while (i < choices.size() && ++pick[i] == choices[i].size()) pick[i++] = 0;
    if (i == choices.size()) break;
  }
  return out;
}

}  // namespace bcast
