#include <algorithm>
#include <cassert>
#include <optional>
#include <stdexcept>
#include <vector>

#include "pitchcut/linear_system.hpp"

namespace pitchcut::lp {

namespace {

// Presolve: substitutes variables with equal bounds, folds singleton rows
// into bounds, and drops empty rows, iterating to a fixpoint. The reduced
// problem is equivalent; eliminated variables keep their forced values.
struct Presolved {
  bool infeasible = false;
  int orig_n = 0;
  std::vector<std::optional<Rational>> fixed;  // per original variable
  std::vector<int> keep;                       // compact -> original
  std::vector<Rational> lower, upper;          // per compact variable
  struct Row {
    std::vector<std::pair<int, Rational>> terms;  // compact indices
    Sense sense;
    Rational rhs;
  };
  std::vector<Row> rows;
};

Presolved presolve(const LinearSystem& sys) {
  const int n = sys.num_variables();
  Presolved P;
  P.orig_n = n;
  P.fixed.assign(n, std::nullopt);
  std::vector<Rational> lb(n), ub(n);
  for (int j = 0; j < n; ++j) {
    lb[j] = sys.variables()[j].lower;
    ub[j] = sys.variables()[j].upper;
  }
  struct Work {
    std::vector<std::pair<int, Rational>> terms;
    Sense sense;
    Rational rhs;
    bool alive = true;
  };
  std::vector<Work> rows;
  rows.reserve(sys.num_constraints());
  for (const auto& c : sys.constraints())
    rows.push_back({c.terms, c.sense, c.rhs, true});

  bool changed = true;
  while (changed && !P.infeasible) {
    changed = false;
    for (auto& r : rows) {
      if (!r.alive) continue;
      std::size_t w = 0;
      for (std::size_t t = 0; t < r.terms.size(); ++t) {
        const auto& [j, a] = r.terms[t];
        if (P.fixed[j]) {
          r.rhs -= a * *P.fixed[j];
          changed = true;
        } else {
          r.terms[w++] = r.terms[t];
        }
      }
      r.terms.resize(w);
      if (!r.terms.empty() && r.terms.size() > 1) continue;
      r.alive = false;
      changed = true;
      if (r.terms.empty()) {
        const bool ok = r.sense == Sense::Ge   ? r.rhs <= 0
                        : r.sense == Sense::Le ? r.rhs >= 0
                                               : r.rhs == 0;
        if (!ok) P.infeasible = true;
        continue;
      }
      const auto [j, a] = r.terms[0];
      const Rational v = r.rhs / a;
      const bool raises = (r.sense == Sense::Ge) == (a > 0);
      if (r.sense == Sense::Eq) {
        lb[j] = std::max(lb[j], v);
        ub[j] = std::min(ub[j], v);
      } else if (raises) {
        lb[j] = std::max(lb[j], v);
      } else {
        ub[j] = std::min(ub[j], v);
      }
      if (lb[j] > ub[j]) P.infeasible = true;
    }
    if (P.infeasible) break;
    for (int j = 0; j < n; ++j)
      if (!P.fixed[j] && lb[j] == ub[j]) {
        P.fixed[j] = lb[j];
        changed = true;
      }
  }
  if (P.infeasible) return P;

  std::vector<int> compact(n, -1);
  for (int j = 0; j < n; ++j)
    if (!P.fixed[j]) {
      compact[j] = static_cast<int>(P.keep.size());
      P.keep.push_back(j);
      P.lower.push_back(lb[j]);
      P.upper.push_back(ub[j]);
    }
  for (auto& r : rows) {
    if (!r.alive) continue;
    Presolved::Row out{std::move(r.terms), r.sense, std::move(r.rhs)};
    for (auto& [j, a] : out.terms) j = compact[j];
    P.rows.push_back(std::move(out));
  }
  return P;
}

// Dense two-phase primal simplex over exact rationals with bounded
// variables. Entering and leaving choices follow Bland's rule (lowest
// eligible column index; ties in the ratio test broken by lowest basic
// column index), so the solver never cycles and is deterministic. Slack
// columns are crashed into the initial basis where signs allow; phase 1
// runs only over the rows that still need an artificial, and only once
// per instance.
class Simplex {
 public:
  explicit Simplex(const LinearSystem& sys) : P_(presolve(sys)) {
    if (P_.infeasible) {
      feasible_known_ = true;
      feasible_ = false;
      return;
    }
    const int m = static_cast<int>(P_.rows.size());
    const int ns = static_cast<int>(P_.keep.size());
    lower_ = P_.lower;
    upper_ = P_.upper;
    has_upper_.assign(ns, true);
    tab_.assign(m, {});
    rhs_.resize(m);
    std::vector<Rational> resid(m);
    for (int i = 0; i < m; ++i) {
      tab_[i].assign(ns, Rational(0));
      for (const auto& [j, a] : P_.rows[i].terms) tab_[i][j] = a;
      rhs_[i] = P_.rows[i].rhs;
      resid[i] = rhs_[i];
      for (const auto& [j, a] : P_.rows[i].terms) resid[i] -= a * lower_[j];
    }
    basis_.assign(m, -1);
    // Slack columns; a slack whose value at the all-lower point is
    // nonnegative starts basic, avoiding an artificial for its row.
    for (int i = 0; i < m; ++i) {
      if (P_.rows[i].sense == Sense::Eq) continue;
      const int sigma = P_.rows[i].sense == Sense::Le ? 1 : -1;
      const int col = add_column();
      tab_[i][col] = sigma;
      if (sigma * resid[i] >= 0) {
        if (sigma < 0) flip_row(i);
        basis_[i] = col;
      }
    }
    first_artificial_ = static_cast<int>(lower_.size());
    for (int i = 0; i < m; ++i) {
      if (basis_[i] >= 0) continue;
      if (resid[i] < 0) flip_row(i);
      const int col = add_column();
      tab_[i][col] = 1;
      basis_[i] = col;
    }
    at_upper_.assign(lower_.size(), false);
    basic_.assign(lower_.size(), false);
    for (int i = 0; i < m; ++i) basic_[basis_[i]] = true;
    feasible_known_ = first_artificial_ == static_cast<int>(lower_.size());
    feasible_ = true;
  }

  LpOutcome minimize(const Objective& objective) {
    if (!phase1()) return {LpStatus::Infeasible, 0, {}};
    std::vector<Rational> cost(lower_.size(), Rational(0));
    Rational constant = 0;
    for (const auto& [j, c] : objective) {
      if (j < 0 || j >= P_.orig_n)
        throw std::invalid_argument("objective references unknown variable");
      if (P_.fixed[j])
        constant += c * *P_.fixed[j];
      else
        cost[compact_of(j)] += c;
    }
    if (!run(cost)) return {LpStatus::Unbounded, 0, {}};
    LpOutcome out;
    out.status = LpStatus::Optimal;
    out.point = restore(current_point());
    out.value = constant;
    for (const auto& [j, c] : objective)
      if (!P_.fixed[j]) out.value += c * out.point[j];
    return out;
  }

  std::optional<std::vector<Rational>> feasible_point() {
    if (!phase1()) return std::nullopt;
    return restore(current_point());
  }

 private:
  int compact_of(int orig) const {
    int c = 0;
    // keep is sorted; binary search for the compact index.
    const auto it = std::lower_bound(P_.keep.begin(), P_.keep.end(), orig);
    c = static_cast<int>(it - P_.keep.begin());
    return c;
  }

  std::vector<Rational> restore(const std::vector<Rational>& x) const {
    std::vector<Rational> full(P_.orig_n);
    for (int j = 0; j < P_.orig_n; ++j)
      if (P_.fixed[j]) full[j] = *P_.fixed[j];
    for (std::size_t c = 0; c < P_.keep.size(); ++c) full[P_.keep[c]] = x[c];
    return full;
  }

  int add_column() {
    const int col = static_cast<int>(lower_.size());
    lower_.emplace_back(0);
    upper_.emplace_back(0);
    has_upper_.push_back(false);  // slack/artificial: [0, +inf)
    for (auto& row : tab_) row.emplace_back(0);
    return col;
  }

  void flip_row(int i) {
    for (auto& a : tab_[i])
      if (a != 0) a = -a;
    rhs_[i] = -rhs_[i];
  }

  bool phase1() {
    if (feasible_known_) return feasible_;
    feasible_known_ = true;
    std::vector<Rational> cost(lower_.size(), Rational(0));
    for (std::size_t j = first_artificial_; j < lower_.size(); ++j) cost[j] = 1;
    const bool bounded = run(cost);
    assert(bounded);
    (void)bounded;
    const auto pt = current_point();
    Rational art = 0;
    for (std::size_t j = first_artificial_; j < lower_.size(); ++j) art += pt[j];
    if (art != 0) {
      feasible_ = false;
      return false;
    }
    drive_out_artificials();
    // Lock artificial columns at zero from here on.
    for (std::size_t j = first_artificial_; j < lower_.size(); ++j) {
      upper_[j] = 0;
      has_upper_[j] = true;
    }
    feasible_ = true;
    return true;
  }

  void drive_out_artificials() {
    const int m = static_cast<int>(tab_.size());
    for (int i = 0; i < m; ++i) {
      if (basis_[i] < first_artificial_) continue;
      int enter = -1;
      for (int j = 0; j < first_artificial_; ++j)
        if (!basic_[j] && tab_[i][j] != 0) { enter = j; break; }
      if (enter < 0) continue;  // redundant row; artificial stays basic at 0
      pivot(i, enter);
    }
  }

  std::vector<Rational> current_point() const {
    const int m = static_cast<int>(tab_.size());
    std::vector<Rational> x(lower_.size());
    for (std::size_t j = 0; j < lower_.size(); ++j)
      if (!basic_[j]) x[j] = at_upper_[j] ? upper_[j] : lower_[j];
    for (int i = 0; i < m; ++i) {
      Rational v = rhs_[i];
      for (std::size_t j = 0; j < lower_.size(); ++j)
        if (!basic_[j] && x[j] != 0 && tab_[i][j] != 0) v -= tab_[i][j] * x[j];
      x[basis_[i]] = v;
    }
    return x;
  }

  // Returns false on unboundedness.
  bool run(const std::vector<Rational>& cost) {
    const int m = static_cast<int>(tab_.size());
    const int ncols = static_cast<int>(lower_.size());
    for (;;) {
      const auto x = current_point();
      // Reduced costs d_j = c_j - c_B^T B^{-1} A_j via the current tableau.
      std::vector<Rational> cb(m);
      bool cb_zero = true;
      for (int i = 0; i < m; ++i) {
        cb[i] = cost[basis_[i]];
        if (cb[i] != 0) cb_zero = false;
      }
      int enter = -1;
      bool enter_increase = true;
      for (int j = 0; j < ncols; ++j) {
        if (basic_[j]) continue;
        if (has_upper_[j] && lower_[j] == upper_[j]) continue;  // immovable
        Rational d = cost[j];
        if (!cb_zero)
          for (int i = 0; i < m; ++i)
            if (cb[i] != 0 && tab_[i][j] != 0) d -= cb[i] * tab_[i][j];
        if (!at_upper_[j] && d < 0) {
          enter = j;
          enter_increase = true;
          break;
        }
        if (at_upper_[j] && d > 0) {
          enter = j;
          enter_increase = false;
          break;
        }
      }
      if (enter < 0) return true;  // optimal

      const int sigma = enter_increase ? 1 : -1;
      // Ratio test: the step is limited by the entering variable's own
      // opposite bound (a bound flip) or by the first basic variable to
      // hit one of its bounds.
      std::optional<Rational> best_t;
      int leave_row = -1;
      bool flip = false;
      if (has_upper_[enter]) {
        best_t = upper_[enter] - lower_[enter];
        flip = true;
      }
      for (int i = 0; i < m; ++i) {
        const Rational g = sigma * tab_[i][enter];
        if (g == 0) continue;
        Rational limit;
        if (g > 0) {
          limit = (x[basis_[i]] - lower_[basis_[i]]) / g;
        } else {
          if (!has_upper_[basis_[i]]) continue;
          limit = (upper_[basis_[i]] - x[basis_[i]]) / (-g);
        }
        if (!best_t || limit < *best_t) {
          best_t = limit;
          leave_row = i;
          flip = false;
        } else if (limit == *best_t) {
          // Ties: a basis change beats a flip, lowest basic column wins.
          if (flip || basis_[i] < basis_[leave_row]) {
            leave_row = i;
            flip = false;
          }
        }
      }
      if (!best_t) return false;  // unbounded direction
      if (flip) {
        at_upper_[enter] = !at_upper_[enter];
        continue;
      }
      const Rational g = sigma * tab_[leave_row][enter];
      const bool leaving_to_upper = g < 0;
      const int leaving = basis_[leave_row];
      pivot(leave_row, enter);
      at_upper_[leaving] = leaving_to_upper;
    }
  }

  // Makes `enter` basic in row r, keeping the tableau in basis-identity form.
  void pivot(int r, int enter) {
    const int m = static_cast<int>(tab_.size());
    const Rational piv = tab_[r][enter];
    assert(piv != 0);
    if (piv != 1) {
      for (auto& a : tab_[r])
        if (a != 0) a /= piv;
      tab_[r][enter] = 1;
      rhs_[r] /= piv;
    }
    for (int i = 0; i < m; ++i) {
      if (i == r) continue;
      const Rational f = tab_[i][enter];
      if (f == 0) continue;
      for (std::size_t j = 0; j < tab_[i].size(); ++j)
        if (tab_[r][j] != 0) tab_[i][j] -= f * tab_[r][j];
      tab_[i][enter] = 0;
      rhs_[i] -= f * rhs_[r];
    }
    basic_[basis_[r]] = false;
    basic_[enter] = true;
    basis_[r] = enter;
  }

  Presolved P_;
  std::vector<std::vector<Rational>> tab_;
  std::vector<Rational> rhs_;
  std::vector<Rational> lower_, upper_;
  std::vector<bool> has_upper_;
  std::vector<bool> at_upper_, basic_;
  std::vector<int> basis_;
  int first_artificial_ = 0;
  bool feasible_known_ = false;
  bool feasible_ = false;
};

}  // namespace

struct Solver::Impl {
  Simplex simplex;
  explicit Impl(const LinearSystem& sys) : simplex(sys) {}
};

Solver::Solver(const LinearSystem& sys) : impl_(new Impl(sys)) {}
Solver::~Solver() = default;
Solver::Solver(Solver&&) noexcept = default;
Solver& Solver::operator=(Solver&&) noexcept = default;

LpOutcome Solver::minimize(const Objective& objective) {
  return impl_->simplex.minimize(objective);
}

std::optional<std::vector<Rational>> Solver::feasible_point() {
  return impl_->simplex.feasible_point();
}

LpOutcome solve_min(const LinearSystem& sys, const Objective& objective) {
  Simplex s(sys);
  return s.minimize(objective);
}

MembershipResult check_membership(const LinearSystem& sys,
                                  const std::vector<int>& fixed_vars,
                                  const std::vector<Rational>& values) {
  if (fixed_vars.size() != values.size())
    throw std::invalid_argument("fixed_vars/values size mismatch");
  // Rebuild with the designated variables pinned via equal bounds.
  LinearSystem fixed;
  std::vector<std::optional<Rational>> pin(sys.num_variables());
  for (std::size_t k = 0; k < fixed_vars.size(); ++k) {
    const int j = fixed_vars[k];
    if (j < 0 || j >= sys.num_variables())
      throw std::invalid_argument("fixed variable out of range");
    pin[j] = values[k];
  }
  for (int j = 0; j < sys.num_variables(); ++j) {
    const auto& v = sys.variables()[j];
    if (pin[j]) {
      if (*pin[j] < v.lower || *pin[j] > v.upper) return {false, {}};
      fixed.add_variable(v.name, *pin[j], *pin[j]);
    } else {
      fixed.add_variable(v.name, v.lower, v.upper);
    }
  }
  for (const auto& c : sys.constraints())
    fixed.add_constraint(c.name, c.terms, c.sense, c.rhs);
  Simplex s(fixed);
  auto pt = s.feasible_point();
  if (!pt) return {false, {}};
  return {true, std::move(*pt)};
}

}  // namespace pitchcut::lp
