#ifndef BCAST_INSTANCE_IO_HPP_
#define BCAST_INSTANCE_IO_HPP_

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "bcast/instance.hpp"

namespace bcast {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// Format:
//   pages <n>
//   horizon <T>                       (optional)
//   req <id> <release> <page> [<deadline> <weight>]
// '#' starts a comment.
Instance parse_instance(std::istream& in);
Instance read_instance(const std::string& path);

void write_instance(const Instance& instance, std::ostream& out);
void write_instance(const Instance& instance, const std::string& path);

// Shortest decimal text that reads back to the same double.
std::string format_double(double value);

}  // namespace bcast

#endif  // BCAST_INSTANCE_IO_HPP_
