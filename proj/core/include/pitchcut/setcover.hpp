#ifndef PITCHCUT_SETCOVER_HPP
#define PITCHCUT_SETCOVER_HPP

#include <cstddef>
#include <memory>
#include <optional>
#include <vector>

#include "pitchcut/core.hpp"
#include "pitchcut/linear_system.hpp"

namespace pitchcut::setcover {

/// Recursive disjunctive formulation whose x-projection satisfies every
/// valid inequality of pitch up to `level`.
///
/// Level 1 is the instance LP (Ax >= e, x in [0,1]^n). For higher levels,
/// each instance row contributes a disjunctive block with one branch per
/// support member; each branch carries fresh copies of the original and
/// extended variables plus a homogenized copy of the previous level.
struct LevelFormulation {
  core::CoverInstance instance;
  int level = 1;
  lp::LinearSystem system;
  std::vector<int> x_vars;  // shared original variables

  struct Branch {
    int row = 0;     // instance row index (0-based)
    int branch = 0;  // position t within the support (0-based)
    std::vector<int> x_copy;  // n copied original variables
    std::vector<int> y_copy;  // copies of the previous level's extended vars
  };
  std::vector<Branch> branches;

  /// Previous level, kept for recursive lifting. Null at level 1.
  std::shared_ptr<const LevelFormulation> lower;

  /// N^level: number of extended variables.
  int extended_count() const { return system.num_variables() - instance.n; }
};

inline constexpr std::size_t kDefaultNonzeroGuard = 200000;

/// Predicted nonzero count of the level-`level` system, via the size
/// recursion; used by the build guard.
std::size_t predict_nonzeros(const core::CoverInstance& A, int level);

LevelFormulation build_level(const core::CoverInstance& A, int level,
                             std::size_t guard_nonzeros = kDefaultNonzeroGuard);

/// Lifts a feasible binary cover point to a full assignment of the level
/// system: per row the branch of the first support member at one carries
/// the (recursively lifted) point, all other branches are zero.
/// Throws if xhat is infeasible or non-binary.
std::vector<Rational> lift(const LevelFormulation& F,
                           const std::vector<int>& xhat);

/// min alpha^T x over the level LP. For a valid inequality of pitch <=
/// level the result is >= the right-hand side.
Rational certify_pitch(const LevelFormulation& F, const core::Inequality& ineq);

/// Same, reusing a warm solver built over F.system. Preferred when many
/// inequalities are certified against one formulation.
Rational certify_pitch(lp::Solver& solver, const LevelFormulation& F,
                       const core::Inequality& ineq);

/// Membership of x in the projection of the level system, with a witness
/// extension on success.
lp::MembershipResult check_membership(const LevelFormulation& F,
                                      const core::FractionalPoint& x);

/// One term of a vector-branching disjunction: the listed variables are
/// fixed to zero and `one` is fixed to one.
struct BranchFixing {
  std::vector<int> zeros;
  int one = 0;
};

using BranchDisjunction = std::vector<BranchFixing>;

/// The |S| fixings F_h over the given support ordering; their union covers
/// every binary point with x(S) >= 1. Requires rhs > 0.
BranchDisjunction vector_branch(const core::Inequality& ineq,
                                const std::vector<int>& ordering);

struct StrongestInequality {
  core::Inequality ineq;
  std::optional<int> pitch;
};

/// For every alpha in {0..p}^n, alpha != 0, the strongest valid rhs
/// alpha_0* = min alpha^T x over binary feasible points.
std::vector<StrongestInequality> enumerate_strongest(
    const core::CoverInstance& A, int p, int guard = core::kDefaultEnumGuard,
    std::size_t max_candidates = 1u << 22);

}  // namespace pitchcut::setcover

#endif
