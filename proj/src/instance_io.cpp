#include "bcast/instance_io.hpp"

#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>
#include <vector>

namespace bcast {
namespace {

template <typename T>
T parse_number(const std::string& token, int line) {
  T value{};
  const char* first = token.data();
  const char* last = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw ParseError(line, "bad number '" + token + "'");
  }
  return value;
}

}  // namespace

Instance parse_instance(std::istream& in) {
  std::optional<int> pages;
  std::optional<Time> horizon;
  std::vector<Request> requests;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
    std::istringstream fields(raw);
    std::vector<std::string> tok;
    for (std::string s; fields >> s;) tok.push_back(s);
    if (tok.empty()) continue;

    if (tok[0] == "pages") {
      if (pages) throw ParseError(line, "duplicate 'pages' line");
      if (tok.size() != 2) throw ParseError(line, "expected 'pages <n>'");
      pages = parse_number<int>(tok[1], line);
      if (*pages < 0) throw ParseError(line, "negative page count");
    } else if (tok[0] == "horizon") {
      if (!pages) throw ParseError(line, "'horizon' before 'pages'");
      if (horizon) throw ParseError(line, "duplicate 'horizon' line");
      if (tok.size() != 2) throw ParseError(line, "expected 'horizon <T>'");
      horizon = parse_number<Time>(tok[1], line);
    } else if (tok[0] == "req") {
      if (!pages) throw ParseError(line, "'req' before 'pages'");
      if (tok.size() != 4 && tok.size() != 6) {
        throw ParseError(line,
                         "expected 'req <id> <release> <page> "
                         "[<deadline> <weight>]'");
      }
      Request r;
      r.id = parse_number<int>(tok[1], line);
      r.release = parse_number<Time>(tok[2], line);
      r.page = parse_number<Page>(tok[3], line);
      if (r.release < 0) throw ParseError(line, "negative release");
      if (r.page < 0 || r.page >= *pages) {
        throw ParseError(line, "page out of range");
      }
      if (tok.size() == 6) {
        r.deadline = parse_number<Time>(tok[4], line);
        r.weight = parse_number<double>(tok[5], line);
        if (*r.deadline < r.release + 1) {
          throw ParseError(line, "deadline must be at least release + 1");
        }
        if (!(*r.weight >= 0)) throw ParseError(line, "negative weight");
      }
      requests.push_back(r);
    } else {
      throw ParseError(line, "unknown keyword '" + tok[0] + "'");
    }
  }
  if (!pages) throw ParseError(line, "missing 'pages' line");
  try {
    return Instance(*pages, std::move(requests), horizon);
  } catch (const InvalidInstance& e) {
    throw ParseError(line, e.what());
  }
}

Instance read_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  return parse_instance(in);
}

std::string format_double(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

void write_instance(const Instance& instance, std::ostream& out) {
  out << "pages " << instance.page_count() << "\n";
  out << "horizon " << instance.horizon() << "\n";
  for (const Request& r : instance.requests()) {
    out << "req " << r.id << " " << r.release << " " << r.page;
    if (r.deadline) {
      out << " " << *r.deadline << " " << format_double(*r.weight);
    }
    out << "\n";
  }
}

void write_instance(const Instance& instance, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  write_instance(instance, out);
}

}  // namespace bcast
