#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <cmath>
#include <functional>
#include <iostream>
#include <numeric>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
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

namespace bcast::cli {
namespace {

constexpr std::int64_t kOracleBudget = 2000000;

class Infeasible : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string instance;
  std::string gen;
  std::string eps;
  std::string out;
  std::string objective;
  std::optional<Time> H;
  std::optional<Time> L;
  std::uint64_t seed = 1;
  int trials = 200;
  int count = 10;
  int n = 12;
  bool force = false;
};

struct Source {
  Instance instance;
  std::string name;
};

Source load(const Options& o) {
  if (!o.instance.empty() && !o.gen.empty()) {
    throw std::invalid_argument("use either --instance or --gen");
  }
  if (!o.instance.empty()) return {read_instance(o.instance), o.instance};
  if (!o.gen.empty()) {
    return {generate_instance(o.seed, parse_profile(o.gen)),
            "gen:" + std::to_string(o.seed)};
  }
  throw std::invalid_argument("one of --instance or --gen is required");
}

std::string ratio(double num, double den) {
  if (den <= 0) return "-";
  return format_double(std::round(num / den * 1e6) / 1e6);
}

std::string flow_text(Time f) {
  return f == kInfiniteFlow ? "inf" : std::to_string(f);
}

std::optional<double> try_oracle(const Instance& instance, bool throughput) {
  try {
    return throughput ? brute_throughput(instance, kOracleBudget).optimum
                      : brute_maxflow(instance, kOracleBudget).optimum;
  } catch (const OracleTooLarge&) {
    return std::nullopt;
  }
}

std::string opt_text(const std::optional<double>& v) {
  return v ? format_double(*v) : "-";
}

void write_schedule(const Schedule& s, std::ostream& out) {
  for (const auto& [t, p] : s.slots()) out << "send " << t << " " << p << "\n";
}

// Writes to --out when given.
void with_output(const Options& o, const std::function<void(std::ostream&)>& f) {
  if (o.out.empty()) return;
  std::ofstream file(o.out);
  if (!file) throw std::invalid_argument("cannot write " + o.out);
  f(file);
}

Epsilon maxflow_eps(const Options& o) {
  Epsilon eps = parse_epsilon(o.eps.empty() ? "1/2" : o.eps);
  eps.inverse();
  return eps;
}

// Default H is 1/eps^3; smaller values only trigger a warning.
Time throughput_H(const Options& o, Epsilon eps, std::ostream& err) {
  const std::int64_t num3 = eps.num * eps.num * eps.num;
  const std::int64_t den3 = eps.den * eps.den * eps.den;
  const Time floor_h = (den3 + num3 - 1) / num3;
  if (!o.H) {
    if (den3 % num3 != 0) {
      throw std::invalid_argument("1/eps^3 is not an integer; pass --H");
    }
    return den3 / num3;
  }
  if (*o.H < floor_h) {
    err << "warning: H=" << *o.H << " is below 1/eps^3=" << floor_h
        << "; the approximation guarantees do not apply\n";
  }
  return *o.H;
}

struct MaxflowRow {
  std::string path;
  Time L = 0;
  Time max_flow = 0;
  Time fifo = 0;
  std::optional<double> oracle;
  Schedule schedule;
};

MaxflowRow run_maxflow(const Instance& instance, const Options& o) {
  const Epsilon eps = maxflow_eps(o);
  MaxflowRow row;
  if (o.L) {
    auto res = maxflow_lp_round(instance, *o.L, eps, o.seed);
    if (!res) {
      throw Infeasible("relaxation infeasible at L=" + std::to_string(*o.L));
    }
    row.path = res->derandomized ? "lp-derandomized" : "lp-randomized";
    row.L = res->L;
    row.max_flow = res->max_flow;
    row.schedule = std::move(res->schedule);
  } else {
    SolveOptions so;
    so.force = o.force;
    so.seed = o.seed;
    MaxflowSolution sol = solve_maxflow(instance, eps, so);
    row.path = sol.path.empty() ? "empty" : sol.path;
    row.L = sol.L;
    row.max_flow = sol.max_flow;
    row.schedule = std::move(sol.schedule);
  }
  row.fifo = evaluate_max_flow(instance, fifo_schedule(instance)).max_flow;
  row.oracle = try_oracle(instance, false);
  return row;
}

struct ThroughputRow {
  ConfigLpSolution lp;
  BetterOfTwo rounding;
  std::optional<double> oracle;
};

ThroughputRow run_throughput(const Instance& instance, const Options& o,
                             std::ostream& err) {
  const Epsilon eps = parse_epsilon(o.eps.empty() ? "1/4" : o.eps);
  const Time H = throughput_H(o, eps, err);
  ThroughputRow row;
  row.lp = solve_config_lp(instance, H, eps);
  row.rounding = better_of_two(instance, row.lp, eps, H, o.trials, o.seed);
  row.oracle = try_oracle(instance, true);
  return row;
}

int cmd_generate(const Options& o, std::ostream& out) {
  if (o.gen.empty()) throw std::invalid_argument("--gen is required");
  const Instance instance = generate_instance(o.seed, parse_profile(o.gen));
  if (o.out.empty()) {
    write_instance(instance, out);
  } else {
    write_instance(instance, o.out);
  }
  return kOk;
}

int cmd_solve_maxflow(const Options& o, std::ostream& out) {
  const Source src = load(o);
  const MaxflowRow row = run_maxflow(src.instance, o);
  out << "instance\trequests\tpages\tpath\tL\tmax_flow\tfifo\toracle\tratio\n";
  out << src.name << "\t" << src.instance.request_count() << "\t"
      << src.instance.page_count() << "\t" << row.path << "\t" << row.L << "\t"
      << flow_text(row.max_flow) << "\t" << flow_text(row.fifo) << "\t"
      << opt_text(row.oracle) << "\t"
      << (row.oracle ? ratio(row.max_flow, *row.oracle) : "-") << "\n";
  with_output(o, [&](std::ostream& f) { write_schedule(row.schedule, f); });
  return kOk;
}

int cmd_solve_throughput(const Options& o, std::ostream& out,
                         std::ostream& err) {
  const Source src = load(o);
  const ThroughputRow row = run_throughput(src.instance, o, err);
  const BetterOfTwo& r = row.rounding;
  out << "instance\trequests\tlp\tdiscarded\tindependent_mean\talpha_mean\t"
         "best_profit\tratio\toracle\n";
  out << src.name << "\t" << src.instance.request_count() << "\t"
      << format_double(row.lp.objective) << "\t"
      << format_double(row.lp.classification.discarded_weight) << "\t"
      << format_double(r.independent_mean) << "\t" << format_double(r.alpha_mean)
      << "\t" << format_double(r.best.profit) << "\t"
      << ratio(r.best_mean(), row.lp.objective) << "\t" << opt_text(row.oracle)
      << "\n";
  with_output(o, [&](std::ostream& f) {
    write_solution(src.instance, row.lp, f);
    write_trials(r, o.seed, f);
    write_schedule(r.best.schedule, f);
  });
  return kOk;
}

int cmd_oracle(const Options& o, std::ostream& out) {
  const Source src = load(o);
  std::string objective = o.objective;
  if (objective.empty()) {
    objective = src.instance.is_throughput() ? "throughput" : "maxflow";
  }
  if (objective != "maxflow" && objective != "throughput") {
    throw std::invalid_argument("unknown objective " + objective);
  }
  const OracleResult res = objective == "maxflow"
                               ? brute_maxflow(src.instance)
                               : brute_throughput(src.instance);
  out << "instance\tobjective\toptimum\texplored\n";
  out << src.name << "\t" << objective << "\t" << format_double(res.optimum)
      << "\t" << res.explored << "\n";
  with_output(o, [&](std::ostream& f) { write_schedule(res.witness, f); });
  return kOk;
}

int cmd_bench(const Options& o, std::ostream& out, std::ostream& err) {
  const std::string objective = o.objective.empty() ? "maxflow" : o.objective;
  if (objective != "maxflow" && objective != "throughput") {
    throw std::invalid_argument("unknown objective " + objective);
  }
  const bool throughput = objective == "throughput";
  Profile profile = parse_profile(
      o.gen.empty() ? (throughput ? "n=3,m=6,span=8,throughput=1,wmin=1,wmax=6"
                                  : "n=3,m=6,span=6")
                    : o.gen);
  profile.throughput = throughput;
  if (o.count < 1) throw std::invalid_argument("--count must be positive");
  std::ostringstream report;
  double sum_num = 0, sum_den = 0;
  if (throughput) {
    report << "id\tseed\trequests\tlp\tindependent_mean\talpha_mean\t"
              "best_mean\tratio\toracle\n";
  } else {
    report << "id\tseed\trequests\tpath\tL\tmax_flow\tfifo\toracle\tratio\n";
  }
  for (int id = 0; id < o.count; ++id) {
    Options one = o;
    one.seed = o.seed + static_cast<std::uint64_t>(id);
    const Instance instance = generate_instance(one.seed, profile);
    report << id << "\t" << one.seed << "\t" << instance.request_count() << "\t";
    if (throughput) {
      const ThroughputRow row = run_throughput(instance, one, err);
      const double best = row.rounding.best_mean();
      sum_num += best;
      sum_den += row.lp.objective;
      report << format_double(row.lp.objective) << "\t"
             << format_double(row.rounding.independent_mean) << "\t"
             << format_double(row.rounding.alpha_mean) << "\t"
             << format_double(best) << "\t" << ratio(best, row.lp.objective)
             << "\t" << opt_text(row.oracle) << "\n";
    } else {
      const MaxflowRow row = run_maxflow(instance, one);
      std::string r = "-";
      if (row.oracle) {
        r = ratio(row.max_flow, *row.oracle);
        sum_num += row.max_flow;
        sum_den += *row.oracle;
      }
      report << row.path << "\t" << row.L << "\t" << flow_text(row.max_flow)
             << "\t" << flow_text(row.fifo) << "\t" << opt_text(row.oracle)
             << "\t" << r << "\n";
    }
  }
  report << "total\t-\t-\t" << (throughput ? "-\t-\t-\t-\t" : "-\t-\t-\t-\t-\t")
         << ratio(sum_num, sum_den) << (throughput ? "\t-" : "") << "\n";
  out << report.str();
  with_output(o, [&](std::ostream& f) { f << report.str(); });
  return kOk;
}

int cmd_demo(const Options& o, std::ostream& out) {
  const Instance instance = half_mass_instance(o.n);
  const FractionalSchedule x = half_mass_fractional(o.n);
  const Time flow =
      evaluate_max_flow(instance, lp_guided_fifo(instance, x)).max_flow;
  const Time bound = fractional_max_flow(instance, x);
  out << "n\tlp_fifo_max_flow\tfractional_max_flow\tratio\n";
  out << o.n << "\t" << flow_text(flow) << "\t" << flow_text(bound) << "\t"
      << ratio(static_cast<double>(flow), static_cast<double>(bound)) << "\n";
  return kOk;
}

void add_source(CLI::App* sub, Options& o) {
  sub->add_option("--instance", o.instance, "instance file");
  sub->add_option("--gen", o.gen, "generator profile, e.g. n=3,m=6,span=8");
  sub->add_option("--seed", o.seed, "random seed");
  sub->add_option("--out", o.out, "output path");
}

}  // namespace

Epsilon parse_epsilon(const std::string& text) {
  const auto slash = text.find('/');
  if (slash == std::string::npos) {
    double v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
      throw std::invalid_argument("bad epsilon '" + text + "'");
    }
    return Epsilon::from_double(v);
  }
  std::int64_t num = 0, den = 0;
  const char* mid = text.data() + slash;
  const char* end = text.data() + text.size();
  auto a = std::from_chars(text.data(), mid, num);
  auto b = std::from_chars(mid + 1, end, den);
  if (a.ec != std::errc() || a.ptr != mid || b.ec != std::errc() ||
      b.ptr != end || num <= 0 || den <= num) {
    throw std::invalid_argument("bad epsilon '" + text + "'");
  }
  const std::int64_t g = std::gcd(num, den);
  return {num / g, den / g};
}

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Broadcast scheduling algorithms and oracles", "bcast-cli"};
  app.require_subcommand(1);
  Options o;

  auto* gen = app.add_subcommand("generate", "write a generated instance");
  gen->add_option("--gen", o.gen, "generator profile")->required();
  gen->add_option("--seed", o.seed, "random seed");
  gen->add_option("--out", o.out, "output path");

  auto* mf = app.add_subcommand("solve-maxflow", "minimize the maximum flow time");
  add_source(mf, o);
  mf->add_option("--eps", o.eps, "accuracy 1/k (default 1/2)");
  mf->add_option("--L", o.L, "run the LP rounding at this L");
  mf->add_flag("--force", o.force, "override the DP memory guard");

  auto* tp = app.add_subcommand("solve-throughput", "maximize weighted throughput");
  add_source(tp, o);
  tp->add_option("--eps", o.eps, "accuracy (default 1/4)");
  tp->add_option("--H", o.H, "window threshold (default 1/eps^3)");
  tp->add_option("--trials", o.trials, "trials per rounding scheme");

  auto* orc = app.add_subcommand("oracle", "exact optimum by enumeration");
  add_source(orc, o);
  orc->add_option("--objective", o.objective, "maxflow or throughput");

  auto* bench = app.add_subcommand("bench", "ratio table over generated instances");
  bench->add_option("--objective", o.objective, "maxflow or throughput");
  bench->add_option("--gen", o.gen, "generator profile");
  bench->add_option("--seed", o.seed, "seed of the first instance");
  bench->add_option("--count", o.count, "number of instances");
  bench->add_option("--eps", o.eps, "accuracy");
  bench->add_option("--H", o.H, "window threshold");
  bench->add_option("--trials", o.trials, "trials per rounding scheme");
  bench->add_option("--out", o.out, "copy of the report");
  bench->add_flag("--force", o.force, "override the DP memory guard");

  auto* demo = app.add_subcommand("demo-lp-fifo", "LP-guided FIFO lower-bound family");
  demo->add_option("--n", o.n, "even page count");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kBadArgs;
  }

  try {
    if (*gen) return cmd_generate(o, out);
    if (*mf) return cmd_solve_maxflow(o, out);
    if (*tp) return cmd_solve_throughput(o, out, err);
    if (*orc) return cmd_oracle(o, out);
    if (*bench) return cmd_bench(o, out, err);
    if (*demo) return cmd_demo(o, out);
  } catch (const Infeasible& e) {
    err << "infeasible: " << e.what() << "\n";
    return kInfeasible;
  } catch (const RegimeError& e) {
    err << "regime: " << e.what() << "\n";
    return kInfeasible;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kBadArgs;
  } catch (const InvalidInstance& e) {
    err << "error: " << e.what() << "\n";
    return kBadArgs;
  } catch (const MemoryGuardError& e) {
    err << "error: " << e.what() << " (rerun with --force)\n";
    return kBadArgs;
  } catch (const OracleTooLarge& e) {
    err << "error: " << e.what() << "\n";
    return kBadArgs;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kBadArgs;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kBadArgs;
}

}  // namespace bcast::cli
