#include "bcast/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bcast::lp {
namespace {

constexpr double kPivotEps = 1e-9;
constexpr int kDegenerateLimit = 50;
constexpr long kIterationLimit = 5'000'000;

class Tableau {
 public:
  Tableau(int rows, int cols)
      : a_(rows, std::vector<double>(cols + 1, 0.0)),
        z_(cols + 1, 0.0),
        basis_(rows, -1),
        cols_(cols) {}

  double& at(int i, int j) { return a_[i][j]; }
  double& rhs(int i) { return a_[i][cols_]; }
  int& basis(int i) { return basis_[i]; }
  int rows() const { return static_cast<int>(a_.size()); }

  void set_cost(const std::vector<double>& c) {
    std::fill(z_.begin(), z_.end(), 0.0);
    for (int j = 0; j < cols_; ++j) z_[j] = c[j];
    for (int i = 0; i < rows(); ++i) {
      double cb = c[basis_[i]];
      if (cb == 0) continue;
      for (int j = 0; j <= cols_; ++j) z_[j] -= cb * a_[i][j];
    }
  }

  double objective() const { return -z_[cols_]; }

  void pivot(int r, int s) {
    std::vector<double>& pr = a_[r];
    const double inv = 1.0 / pr[s];
    for (double& v : pr) v *= inv;
    pr[s] = 1.0;
    auto eliminate = [&](std::vector<double>& row) {
      const double f = row[s];
      if (f == 0) return;
      for (int j = 0; j <= cols_; ++j) {
        if (pr[j] != 0) {
          row[j] -= f * pr[j];
          if (std::abs(row[j]) < 1e-13) row[j] = 0;
        }
      }
      row[s] = 0;
    };
    for (int i = 0; i < rows(); ++i) {
      if (i != r) eliminate(a_[i]);
    }
    eliminate(z_);
    basis_[r] = s;
  }

  // Minimizes over columns [0, allowed). Returns false when unbounded.
  bool optimize(int allowed) {
    bool bland = false;
    int degenerate = 0;
    for (long iter = 0; iter < kIterationLimit; ++iter) {
      int s = -1;
      for (int j = 0; j < allowed; ++j) {
        if (z_[j] < -kPivotEps && (s < 0 || (!bland && z_[j] < z_[s]))) {
          s = j;
          if (bland) break;
        }
      }
      if (s < 0) return true;
      int r = -1;
      double best = 0;
      for (int i = 0; i < rows(); ++i) {
        if (a_[i][s] <= kPivotEps) continue;
        double ratio = a_[i][cols_] / a_[i][s];
        if (r < 0 || ratio < best - 1e-12 ||
            (ratio <= best + 1e-12 && basis_[i] < basis_[r])) {
          r = i;
          best = ratio;
        }
      }
      if (r < 0) return false;
      if (best < kPivotEps) {
        if (++degenerate > kDegenerateLimit) bland = true;
      } else {
        degenerate = 0;
      }
      pivot(r, s);
    }
    throw std::runtime_error("simplex iteration limit reached");
  }

 private:
  std::vector<std::vector<double>> a_;
  std::vector<double> z_;
  std::vector<int> basis_;
  int cols_;
};

}  // namespace

int Problem::add_variable(double objective) {
  cost_.push_back(objective);
  return static_cast<int>(cost_.size()) - 1;
}

void Problem::add_constraint(std::vector<std::pair<int, double>> terms,
                             Relation relation, double rhs) {
  for (const auto& [j, v] : terms) {
    if (j < 0 || j >= variable_count()) {
      throw std::out_of_range("constraint names an unknown variable");
    }
  }
  rows_.push_back({std::move(terms), relation, rhs});
}

Result Problem::solve() const {
  const int n = variable_count();
  const int m = constraint_count();

  int slacks = 0, artificials = 0;
  std::vector<Relation> rel(m);
  std::vector<double> sign(m);
  for (int i = 0; i < m; ++i) {
    sign[i] = rows_[i].rhs < 0 ? -1.0 : 1.0;
    rel[i] = rows_[i].relation;
    if (sign[i] < 0 && rel[i] != Relation::kEqual) {
      rel[i] = rel[i] == Relation::kLessEqual ? Relation::kGreaterEqual
                                              : Relation::kLessEqual;
    }
    if (rel[i] != Relation::kEqual) ++slacks;
    if (rel[i] != Relation::kLessEqual) ++artificials;
  }
  const int art_start = n + slacks;
  const int cols = art_start + artificials;

  Tableau tab(m, cols);
  int next_slack = n, next_art = art_start;
  double scale = 1.0;
  for (int i = 0; i < m; ++i) {
    for (const auto& [j, v] : rows_[i].terms) tab.at(i, j) += sign[i] * v;
    tab.rhs(i) = sign[i] * rows_[i].rhs;
    scale = std::max(scale, std::abs(tab.rhs(i)));
    switch (rel[i]) {
      case Relation::kLessEqual:
        tab.at(i, next_slack) = 1.0;
        tab.basis(i) = next_slack++;
        break;
      case Relation::kGreaterEqual:
        tab.at(i, next_slack++) = -1.0;
        tab.at(i, next_art) = 1.0;
        tab.basis(i) = next_art++;
        break;
      case Relation::kEqual:
        tab.at(i, next_art) = 1.0;
        tab.basis(i) = next_art++;
        break;
    }
  }

  Result result;
  if (artificials > 0) {
    std::vector<double> phase1(cols, 0.0);
    for (int j = art_start; j < cols; ++j) phase1[j] = 1.0;
    tab.set_cost(phase1);
    tab.optimize(cols);
    if (tab.objective() > 1e-7 * scale) {
      result.status = Status::kInfeasible;
      return result;
    }
    for (int i = 0; i < m; ++i) {
      if (tab.basis(i) < art_start) continue;
      for (int j = 0; j < art_start; ++j) {
        if (std::abs(tab.at(i, j)) > kPivotEps) {
          tab.pivot(i, j);
          break;
        }
      }
    }
  }

  std::vector<double> phase2(cols, 0.0);
  for (int j = 0; j < n; ++j) phase2[j] = maximize_ ? -cost_[j] : cost_[j];
  tab.set_cost(phase2);
  if (!tab.optimize(art_start)) {
    result.status = Status::kUnbounded;
    return result;
  }

  result.status = Status::kOptimal;
  result.x.assign(n, 0.0);
  for (int i = 0; i < m; ++i) {
    int b = tab.basis(i);
    if (b < n) result.x[b] = std::max(0.0, tab.rhs(i));
  }
  result.objective = 0;
  for (int j = 0; j < n; ++j) result.objective += cost_[j] * result.x[j];
  return result;
}

}  // namespace bcast::lp
