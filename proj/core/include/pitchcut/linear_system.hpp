#ifndef PITCHCUT_LINEAR_SYSTEM_HPP
#define PITCHCUT_LINEAR_SYSTEM_HPP

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "pitchcut/rational.hpp"

namespace pitchcut::lp {

enum class Sense { Ge, Le, Eq };

/// Sparse rational constraint system with [lower, upper] variable bounds.
/// Immutable by convention once fully built.
class LinearSystem {
 public:
  struct Variable {
    std::string name;
    Rational lower;
    Rational upper;
  };

  struct Constraint {
    std::string name;
    std::vector<std::pair<int, Rational>> terms;  // sorted by index, unique
    Sense sense = Sense::Ge;
    Rational rhs;
  };

  /// Returns the index of the new variable. Bounds must satisfy lower <= upper.
  int add_variable(std::string name, Rational lower = 0, Rational upper = 1);

  /// Terms are normalized: sorted, duplicates rejected, zero coefficients
  /// dropped. Every referenced variable must exist.
  void add_constraint(std::string name,
                      std::vector<std::pair<int, Rational>> terms, Sense sense,
                      Rational rhs);

  int num_variables() const { return static_cast<int>(vars_.size()); }
  int num_constraints() const { return static_cast<int>(cons_.size()); }
  const std::vector<Variable>& variables() const { return vars_; }
  const std::vector<Constraint>& constraints() const { return cons_; }
  const Variable& variable(int j) const { return vars_.at(j); }

  /// -1 when absent.
  int find_variable(const std::string& name) const;

  struct SizeReport {
    int variables = 0;
    int constraints = 0;
    std::size_t nonzeros = 0;
  };
  SizeReport size_report() const;

 private:
  std::vector<Variable> vars_;
  std::vector<Constraint> cons_;
  std::unordered_map<std::string, int> by_name_;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpOutcome {
  LpStatus status = LpStatus::Infeasible;
  Rational value;
  std::vector<Rational> point;  // one entry per variable when Optimal
};

/// Sparse objective: (variable index, coefficient) pairs.
using Objective = std::vector<std::pair<int, Rational>>;

/// Exact minimization over the LP relaxation. Two-phase primal simplex on
/// bounded variables with Bland's anti-cycling rule; deterministic for a
/// given input. The returned point satisfies every constraint and bound
/// exactly.
LpOutcome solve_min(const LinearSystem& sys, const Objective& objective);

/// Reusable exact solver over one system: presolves and runs phase 1 once,
/// then serves any number of objectives from the warm basis. Optimal values
/// match solve_min; the optimal vertex reported may differ under degeneracy.
class Solver {
 public:
  explicit Solver(const LinearSystem& sys);
  ~Solver();
  Solver(Solver&&) noexcept;
  Solver& operator=(Solver&&) noexcept;

  LpOutcome minimize(const Objective& objective);
  /// Any feasible point, or nothing when the system is infeasible.
  std::optional<std::vector<Rational>> feasible_point();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

struct MembershipResult {
  bool member = false;
  std::vector<Rational> extension;  // full assignment when member
};

/// Feasibility of the system with variables `fixed_vars[k]` pinned to
/// `x.entries[k]`; on success one feasible completion is returned.
MembershipResult check_membership(const LinearSystem& sys,
                                  const std::vector<int>& fixed_vars,
                                  const std::vector<Rational>& values);

struct LpWriteOptions {
  /// Emit fixed variables as "name = v" instead of a two-sided range.
  bool explicit_fixed_equals = false;
};

/// Standard LP text format (Minimize / Subject To / Bounds / End).
/// Coefficients with finite decimal expansions are written as decimals;
/// any other row is scaled to integers first.
std::string write_lp(const LinearSystem& sys, const Objective& objective,
                     const LpWriteOptions& opts = {});

struct ParsedLp {
  LinearSystem system;
  Objective objective;
};

/// Parses the dialect produced by write_lp.
ParsedLp read_lp(const std::string& text);

}  // namespace pitchcut::lp

#endif
