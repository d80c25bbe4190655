#ifndef BCAST_SIMPLEX_HPP_
#define BCAST_SIMPLEX_HPP_

#include <utility>
#include <vector>

namespace bcast::lp {

enum class Relation { kLessEqual, kGreaterEqual, kEqual };
enum class Status { kOptimal, kInfeasible, kUnbounded };

struct Result {
  Status status = Status::kInfeasible;
  double objective = 0;
  std::vector<double> x;
};

// Dense two-phase primal simplex over x >= 0. Dantzig pricing, switching
// to Bland's rule after a run of degenerate pivots.
class Problem {
 public:
  explicit Problem(bool maximize = false) : maximize_(maximize) {}

  int add_variable(double objective);
  void add_constraint(std::vector<std::pair<int, double>> terms,
                      Relation relation, double rhs);

  int variable_count() const { return static_cast<int>(cost_.size()); }
  int constraint_count() const { return static_cast<int>(rows_.size()); }

  Result solve() const;

 private:
  struct Row {
    std::vector<std::pair<int, double>> terms;
    Relation relation;
    double rhs;
  };

  bool maximize_;
  std::vector<double> cost_;
  std::vector<Row> rows_;
};

}  // namespace bcast::lp

#endif  // BCAST_SIMPLEX_HPP_
