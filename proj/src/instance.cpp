#include "bcast/instance.hpp"

#include <algorithm>
#include <unordered_set>

namespace bcast {

Instance::Instance(int page_count, std::vector<Request> requests,
                   std::optional<Time> horizon)
    : page_count_(page_count), requests_(std::move(requests)) {
  if (page_count_ < 0) throw InvalidInstance("negative page count");
  validate();
  if (horizon) {
    if (!requests_.empty() && *horizon < max_release() + 1) {
      throw InvalidInstance("horizon must exceed every release time");
    }
    horizon_ = *horizon;
  } else {
    horizon_ = derived_horizon();
  }
}

void Instance::validate() const {
  std::unordered_set<int> ids;
  for (const Request& r : requests_) {
    if (!ids.insert(r.id).second) {
      throw InvalidInstance("duplicate request id " + std::to_string(r.id));
    }
    if (r.release < 0) throw InvalidInstance("negative release time");
    if (r.page < 0 || r.page >= page_count_) {
      throw InvalidInstance("request " + std::to_string(r.id) +
                            " names an unknown page");
    }
    if (r.deadline.has_value() != r.weight.has_value()) {
      throw InvalidInstance("deadline and weight must be given together");
    }
    if (r.deadline && *r.deadline < r.release + 1) {
      throw InvalidInstance("deadline must be at least release + 1");
    }
    if (r.weight && !(*r.weight >= 0)) {
      throw InvalidInstance("negative weight");
    }
  }
}

Time Instance::max_release() const {
  Time best = 0;
  for (const Request& r : requests_) best = std::max(best, r.release);
  return best;
}

Time Instance::max_deadline() const {
  Time best = 0;
  for (const Request& r : requests_) {
    if (r.deadline) best = std::max(best, *r.deadline);
  }
  return best;
}

bool Instance::is_throughput() const {
  return std::all_of(requests_.begin(), requests_.end(),
                     [](const Request& r) { return r.has_window(); });
}

double Instance::total_weight() const {
  double sum = 0;
  for (const Request& r : requests_) sum += r.weight.value_or(0.0);
  return sum;
}

Time Instance::derived_horizon() const {
  if (requests_.empty()) return 0;
  return max_release() +
         std::min<Time>(request_count(), page_count_);
}

std::vector<Time> Instance::release_times(Page p) const {
  std::vector<Time> out;
  for (const Request& r : requests_) {
    if (r.page == p) out.push_back(r.release);
  }
  std::sort(out.begin(), out.end());
  return out;
}

Instance reduce_horizon(const Instance& instance) {
  return Instance(instance.page_count(), instance.requests());
}

Instance canonicalize(const Instance& instance) {
  std::vector<Request> requests = instance.requests();
  std::sort(requests.begin(), requests.end(),
            [](const Request& a, const Request& b) { return a.id < b.id; });
  return Instance(instance.page_count(), std::move(requests),
                  instance.horizon());
}

void Schedule::assign(Time t, Page p) {
  auto [it, inserted] = slots_.emplace(t, p);
  if (!inserted && it->second != p) {
    throw std::logic_error("time slot " + std::to_string(t) +
                           " already holds a page");
  }
}

std::optional<Page> Schedule::at(Time t) const {
  auto it = slots_.find(t);
  if (it == slots_.end()) return std::nullopt;
  return it->second;
}

void TentativeSchedule::add(Time t, Page p) {
  std::vector<Page>& pages = slots_[t];
  auto it = std::lower_bound(pages.begin(), pages.end(), p);
  if (it == pages.end() || *it != p) pages.insert(it, p);
}

const std::vector<Page>& TentativeSchedule::at(Time t) const {
  static const std::vector<Page> kEmpty;
  auto it = slots_.find(t);
  return it == slots_.end() ? kEmpty : it->second;
}

std::size_t TentativeSchedule::transmission_count() const {
  std::size_t n = 0;
  for (const auto& [t, pages] : slots_) n += pages.size();
  return n;
}

}  // namespace bcast
