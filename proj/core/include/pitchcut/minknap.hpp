#ifndef PITCHCUT_MINKNAP_HPP
#define PITCHCUT_MINKNAP_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "pitchcut/core.hpp"

namespace pitchcut::minknap {

/// Type tau = (I, L, m) of a {0..q}-coefficient inequality with rhs q.
/// `classes` lists I ascending; L and m are parallel to it.
struct IneqType {
  int q = 1;
  std::vector<int> classes;
  std::vector<std::vector<int>> L;  // sorted member lists
  std::vector<int> m;

  /// Position of class value i in `classes`, -1 when absent.
  int index_of(int i) const;
};

/// compute_type output together with the class and drag-union sets it was
/// derived from.
struct TypeAnalysis {
  IneqType type;
  std::vector<std::vector<int>> S;  // class members, per entry of classes
  std::vector<std::vector<int>> D;  // union of later drags within the class
};

/// delta(k) = {h : w_h >= min weight among coefficient-k indices, and
/// 0 < alpha_h < k}. Empty when no coefficient equals k. Requires integer
/// coefficients.
std::vector<int> drag(const core::KnapsackInstance& K,
                      const core::Inequality& ineq, int k);

/// While some k >= 2 has drag coefficient mass >= P - 1, lowers the
/// coefficient of the lightest coefficient-k index to k - 1 (smallest such
/// k first, lowest index on weight ties). Returns the fixpoint when any
/// reduction applied, nothing otherwise. Requires coefficients in {0..P}.
std::optional<core::Inequality> strengthen(const core::KnapsackInstance& K,
                                           const core::Inequality& ineq, int P);

/// Classifies an inequality with coefficients in {0..q} and rhs q.
/// L_i holds the max{|D_i|, min{q-1, |S_i|}} heaviest members of S_i
/// (weight ties: members other than m_i first, then lowest index) and m_i
/// is the lowest-index minimum-weight member of S_i.
TypeAnalysis compute_type(const core::KnapsackInstance& K,
                          const core::Inequality& ineq);

/// sigma(tau): max total weight of T_i subseteq L_i with
/// sum_i i * |T_i| <= q - 1, by a budgeted selection DP.
std::int64_t signature(const core::KnapsackInstance& K, const IneqType& tau);

/// Validity of a {0..q}-coefficient inequality with rhs q via the
/// signature criterion: sum_i w(S_i) >= sigma(tau) + sum w - w0 + 1.
bool check_valid_by_signature(const core::KnapsackInstance& K,
                              const core::Inequality& ineq);

struct EnumOptions {
  /// Use the literal |L_i| <= q^2 - 1 cap instead of max{q(q-2), q-1}.
  bool literal_cap = false;
  std::uint64_t max_types = 5'000'000;
};

/// Streams every candidate type for the given q: nonempty I subseteq
/// {1..q} and pairwise disjoint {m_i} union L_i with |L_i| within the cap,
/// m_i in L_i whenever |L_i| < q - 1, w_{m_i} <= w_h for h in L_i, and
/// w_{m_i} < w_{m_k} for later classes k whenever m_i lies outside L_i.
/// The visitor returns false to stop; enumerate_types returns false iff it
/// was stopped early. Throws when max_types candidates are exceeded.
bool enumerate_types(const core::KnapsackInstance& K, int q,
                     const std::function<bool(const IneqType&)>& visit,
                     const EnumOptions& opts = {});

/// Per-type separation knapsack: minimize sum_i i * y(V_i cap z) subject
/// to the fixings and the weight threshold.
struct SepProblem {
  IneqType type;
  core::KnapsackInstance instance;
  std::vector<std::vector<int>> V;  // candidate sets, per entry of classes
  std::vector<int> fixed_one;       // sorted; members of some {m_i} union L_i
  /// class_of[j] = class value i when j lies in V_i, 0 when z_j is fixed
  /// to zero.
  std::vector<int> class_of;
  std::int64_t threshold = 0;
  std::vector<Rational> objective;  // i * y_j on the V_i, zero elsewhere
  /// False when the fixings conflict (some forced-one index is fixed to
  /// zero); such a type admits no inequality and the problem is
  /// infeasible.
  bool consistent = true;
};

SepProblem build_sep_problem(const core::KnapsackInstance& K,
                             const IneqType& tau,
                             const core::FractionalPoint& y);

struct SepSolution {
  bool feasible = false;
  /// True when every feasible z costs more than the cap; value and ones
  /// are then unset.
  bool capped = false;
  Rational value;
  std::vector<int> ones;  // sorted minimizer support
};

/// Exact DP over scaled objective value. Objective entries must be
/// integer multiples of 1/grid; f(v) = max weight reachable at scaled
/// cost v, answer = least v whose weight meets the threshold.
SepSolution solve_sep_knapsack(const SepProblem& prob, const Integer& grid,
                               const std::optional<Integer>& cost_cap =
                                   std::nullopt);

/// Round-up to the grid: ceil(G * y_j) / G, clamped to 1.
core::FractionalPoint round_point(const core::FractionalPoint& y,
                                  const Integer& G);

/// Omega(y-hat, tau) for the rounded point, or nothing when the
/// separation knapsack is infeasible (no inequality of this type exists).
std::optional<Rational> omega(const core::KnapsackInstance& K,
                              const IneqType& tau,
                              const core::FractionalPoint& y,
                              const Integer& G);

/// Exhaustive reference for omega: direct 2^n minimization without
/// rounding. Oracle for tests; refuses n beyond the guard.
std::optional<Rational> omega_bruteforce(const core::KnapsackInstance& K,
                                         const IneqType& tau,
                                         const core::FractionalPoint& y,
                                         int guard = core::kDefaultEnumGuard);

/// Reads a violated inequality off a feasible z: coefficient i on
/// V_i cap ones, rhs q. Asserts validity via the signature criterion.
core::Inequality extract_inequality(const core::KnapsackInstance& K,
                                    const IneqType& tau,
                                    const std::vector<int>& ones);

struct SeparationOptions {
  std::optional<Integer> grid;  // overrides G = max{q n^2, ceil(q n / eps)}
  int jobs = 1;
  EnumOptions enumeration;
};

struct SeparationResult {
  bool violated = false;
  std::optional<core::Inequality> cut;
  Rational slack;  // exact slack of the cut at y, when violated
  int p = 1;
  Rational epsilon;
  /// Entry q-1: least Omega(y-hat, tau) observed among feasible types at
  /// that q, when one was computed below the cap.
  std::vector<std::optional<Rational>> omega_by_q;
};

/// Near-separation over all valid inequalities with coefficients in
/// {0..p}: loops q = 1..p over candidate types. Returns either a valid cut
/// with negative exact slack at y, or a certificate that every such
/// inequality (normalized to rhs q, coefficients capped at q) is satisfied
/// within additive epsilon.
SeparationResult separate(const core::KnapsackInstance& K,
                          const core::FractionalPoint& y, int p,
                          const Rational& epsilon,
                          const SeparationOptions& opts = {});

/// One case of the direct p = 2 method: V(k) = min sum_{w_j <= w_k} y_j z_j
/// + 2 sum_{w_j > w_k} y_j z_j subject to sum_{j != k} w_j z_j reaching the
/// cover threshold and z_k = 1. Exact weight-indexed DP.
struct VkResult {
  bool feasible = false;
  Rational value;
  std::vector<int> ones;  // sorted minimizer support
};
VkResult p2_case(const core::KnapsackInstance& K,
                 const core::FractionalPoint& y, int k);

/// Reads the coefficient-2 cut off a feasible V(k) solution: coefficient 1
/// on chosen indices with w_j <= w_k, 2 on the heavier ones, rhs 2.
core::Inequality p2_extract(const core::KnapsackInstance& K,
                            const std::vector<int>& ones, int k);

/// Direct p = 2 method: the n knapsacks V(k) over inequalities whose
/// heaviest 1-coefficient index is k, plus the pure-cover case x(S) >= 1
/// (which the V(k) family cannot reach). Verdict: violated iff the cover
/// minimum is < 1 or some V(k) < 2.
SeparationResult separate_p2(const core::KnapsackInstance& K,
                             const core::FractionalPoint& y);

/// Brute-force family oracle: minimum exact slack at y over every valid
/// inequality obtained from alpha in {0..p}^n by taking the strongest rhs
/// q = min alpha^T x and capping coefficients at q, kept when 1 <= q <= p.
/// Returns nothing when the family is empty.
struct FamilyMinSlack {
  Rational min_slack;
  core::Inequality argmin;
};
std::optional<FamilyMinSlack> family_min_slack(
    const core::KnapsackInstance& K, const core::FractionalPoint& y, int p,
    int guard = core::kDefaultEnumGuard);

}  // namespace pitchcut::minknap

#endif
