#include "bcast/maxflow_exact.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <unordered_map>

#include <boost/container_hash/hash.hpp>

namespace bcast {
namespace {

using Mask = std::uint64_t;
using SlotKey = std::vector<Mask>;

struct SlotKeyHash {
  std::size_t operator()(const SlotKey& k) const {
    return boost::hash_range(k.begin(), k.end());
  }
};

// Distinct pages requested at each time 0..max_release.
std::vector<std::vector<Page>> pages_by_release(const Instance& instance) {
  std::vector<std::vector<Page>> out(instance.max_release() + 1);
  for (const Request& r : instance.requests()) out[r.release].push_back(r.page);
  for (auto& v : out) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  }
  return out;
}

}  // namespace

std::optional<Schedule> dp_constant(const Instance& instance, Time L,
                                    bool force) {
  if (L < 1) throw std::invalid_argument("L must be at least 1");
  if (instance.empty()) return Schedule{};
  const std::uint64_t n = instance.page_count();
  const double bits = static_cast<double>(L) * std::log2(static_cast<double>(n));
  if (bits > 40 && !force) {
    throw MemoryGuardError("configuration space of 2^" +
                           std::to_string(static_cast<int>(bits)) +
                           " states exceeds the guard; use force");
  }
  if (bits > 62) throw MemoryGuardError("configuration does not fit 64 bits");

  const auto released = pages_by_release(instance);
  const Time horizon = instance.max_release() + L;
  std::uint64_t top = 1;  // n^(L-1)
  for (Time i = 0; i + 1 < L; ++i) top *= n;
  const std::uint64_t all = top * n;

  // Digit i of a state holds the page sent at time t - L + 1 + i.
  std::vector<Page> digits(L);
  auto decode = [&](std::uint64_t s) {
    for (Time i = 0; i < L; ++i) {
      digits[i] = static_cast<Page>(s % n);
      s /= n;
    }
  };
  std::vector<char> present(n);

  // prev[t - L] maps each feasible state at t to its predecessor.
  std::vector<std::unordered_map<std::uint64_t, std::uint64_t>> prev;
  std::vector<std::uint64_t> frontier(all);
  for (std::uint64_t s = 0; s < all; ++s) frontier[s] = s;

  for (Time t = L; t <= horizon; ++t) {
    const Time due = t - L;
    const std::vector<Page>* need =
        due < static_cast<Time>(released.size()) ? &released[due] : nullptr;
    auto& layer = prev.emplace_back();
    for (std::uint64_t q : frontier) {
      const std::uint64_t shifted = q / n;
      for (std::uint64_t p = 0; p < n; ++p) {
        const std::uint64_t next = shifted + p * top;
        if (layer.count(next)) continue;
        if (need && !need->empty()) {
          decode(next);
          std::fill(present.begin(), present.end(), 0);
          for (Page d : digits) present[d] = 1;
          bool ok = std::all_of(need->begin(), need->end(),
                                [&](Page x) { return present[x] != 0; });
          if (!ok) continue;
        }
        layer.emplace(next, q);
      }
    }
    if (layer.empty()) return std::nullopt;
    frontier.clear();
    for (const auto& [s, from] : layer) frontier.push_back(s);
    std::sort(frontier.begin(), frontier.end());
  }

  Schedule schedule;
  std::uint64_t state = frontier.front();
  for (Time t = horizon; t >= L; --t) {
    schedule.assign(t, static_cast<Page>(state / top));
    state = prev[t - L].at(state);
  }
  decode(state);
  for (Time i = 1; i < L; ++i) schedule.assign(i, digits[i]);
  return schedule;
}

SimplifiedInstance simplify_instance(const Instance& instance, Time L,
                                     Epsilon eps) {
  if (L < 1) throw std::invalid_argument("L must be at least 1");
  const Time k = eps.inverse();
  const Time c = eps.times(L, "eps * L");
  if (c < 1) throw std::invalid_argument("eps * L must be positive");
  std::vector<Request> shrunk = instance.requests();
  for (Request& r : shrunk) r.release = (r.release + c - 1) / c;
  SimplifiedInstance out;
  out.base = Instance(instance.page_count(), std::move(shrunk));
  out.slot_capacity = c;
  out.ell = 2 + k;
  out.L = L;
  return out;
}

std::optional<TentativeSchedule> dp_simplified(
    const SimplifiedInstance& simplified) {
  const Instance& inst = simplified.base;
  if (inst.empty()) return TentativeSchedule{};
  if (inst.page_count() > 64) {
    throw std::invalid_argument("dp_simplified supports at most 64 pages");
  }
  const Time ell = simplified.ell;
  const int cap = static_cast<int>(simplified.slot_capacity);
  const Time horizon = inst.max_release() + ell;

  std::vector<Mask> requested(horizon + 1, 0);
  for (const Request& r : inst.requests()) requested[r.release] |= Mask{1} << r.page;
  auto requested_at = [&](Time s) -> Mask {
    return s >= 0 && s <= horizon ? requested[s] : 0;
  };
  // Pages requested in the ell steps before t.
  auto candidates = [&](Time t) {
    Mask m = 0;
    for (Time i = 1; i <= ell; ++i) m |= requested_at(t - i);
    return m;
  };
  // Pages already occurring twice among the given slots.
  auto saturated = [](const Mask* slots, Time count) {
    Mask once = 0, twice = 0;
    for (Time i = 0; i < count; ++i) {
      twice |= once & slots[i];
      once |= slots[i];
    }
    return twice;
  };

  // Subsets S with required ⊆ S ⊆ pool, |S| <= cap, S ∩ banned = ∅.
  auto for_each_choice = [cap](Mask required, Mask pool, Mask banned,
                               auto&& fn) {
    if (required & banned) return;
    const int base = std::popcount(required);
    if (base > cap) return;
    std::vector<int> free_bits;
    for (Mask rest = pool & ~required & ~banned; rest; rest &= rest - 1) {
      free_bits.push_back(std::countr_zero(rest));
    }
    auto rec = [&](auto&& self, std::size_t from, Mask cur, int size) -> void {
      fn(cur);
      if (size == cap) return;
      for (std::size_t i = from; i < free_bits.size(); ++i) {
        self(self, i + 1, cur | (Mask{1} << free_bits[i]), size + 1);
      }
    };
    rec(rec, 0, required, base);
  };

  using Layer = std::unordered_map<SlotKey, SlotKey, SlotKeyHash>;
  std::vector<Layer> prev;

  // Initial configurations over shrunk steps 0..ell-1.
  std::vector<SlotKey> frontier;
  {
    SlotKey slots(ell, 0);
    auto rec = [&](auto&& self, Time i) -> void {
      if (i == ell) {
        frontier.push_back(slots);
        return;
      }
      Mask pool = 0;
      for (Time k = 0; k < i; ++k) pool |= requested_at(k);
      Mask banned = saturated(slots.data(), i);
      for_each_choice(0, pool, banned, [&](Mask s) {
        slots[i] = s;
        self(self, i + 1);
      });
      slots[i] = 0;
    };
    rec(rec, 0);
  }

  for (Time t = ell; t <= horizon; ++t) {
    const Mask need = requested_at(t - ell);
    const Mask pool = candidates(t);
    Layer& layer = prev.emplace_back();
    for (const SlotKey& q : frontier) {
      // q covers steps t-ell .. t-1; keep the newest ell-1 of them.
      Mask covered = 0;
      for (Time i = 1; i < ell; ++i) covered |= q[i];
      const Mask banned = saturated(q.data() + 1, ell - 1);
      for_each_choice(need & ~covered, pool, banned, [&](Mask s) {
        SlotKey next(q.begin() + 1, q.end());
        next.push_back(s);
        layer.try_emplace(std::move(next), q);
      });
    }
    if (layer.empty()) return std::nullopt;
    frontier.clear();
    for (const auto& [s, from] : layer) frontier.push_back(s);
    std::sort(frontier.begin(), frontier.end());
  }

  auto emit = [](TentativeSchedule& out, Time t, Mask m) {
    for (; m; m &= m - 1) out.add(t, static_cast<Page>(std::countr_zero(m)));
  };
  TentativeSchedule out;
  SlotKey state = frontier.front();
  for (Time t = horizon; t >= ell; --t) {
    emit(out, t, state.back());
    state = prev[t - ell].at(state);
  }
  for (Time i = 0; i < ell; ++i) emit(out, i, state[i]);
  return out;
}

Schedule convert_schedule(const TentativeSchedule& shrunk,
                          Time slot_capacity) {
  Schedule out;
  for (const auto& [s, pages] : shrunk.slots()) {
    if (static_cast<Time>(pages.size()) > slot_capacity) {
      throw std::invalid_argument("shrunk step " + std::to_string(s) +
                                  " exceeds slot capacity");
    }
    for (std::size_t j = 0; j < pages.size(); ++j) {
      Time t = slot_capacity * s + static_cast<Time>(j);
      if (t < 1) throw std::invalid_argument("transmission before time 1");
      out.assign(t, pages[j]);
    }
  }
  return out;
}

std::vector<Instance> decompose_silent(const Instance& instance, Time L) {
  std::vector<Request> reqs = instance.requests();
  std::stable_sort(reqs.begin(), reqs.end(),
                   [](const Request& a, const Request& b) {
                     return a.release < b.release;
                   });
  std::vector<Instance> pieces;
  std::vector<Request> current;
  for (const Request& r : reqs) {
    if (!current.empty() && r.release - current.back().release - 1 >= L) {
      pieces.emplace_back(instance.page_count(), std::move(current));
      current.clear();
    }
    current.push_back(r);
  }
  if (!current.empty()) {
    pieces.emplace_back(instance.page_count(), std::move(current));
  }
  return pieces;
}

Schedule merge_schedules(const std::vector<Schedule>& parts) {
  Schedule out;
  for (const Schedule& part : parts) {
    for (const auto& [t, p] : part.slots()) out.assign(t, p);
  }
  return out;
}

}  // namespace bcast
