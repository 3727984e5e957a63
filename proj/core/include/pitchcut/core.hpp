#ifndef PITCHCUT_CORE_HPP
#define PITCHCUT_CORE_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "pitchcut/rational.hpp"

namespace pitchcut::core {

/// Set-covering system Ax >= e stored as row supports.
///
/// Indices are 0-based internally; all file formats and CLI output are
/// 1-based. Supports are kept sorted. Invariants: every support has at
/// least two members, no support contains another, indices in range.
struct CoverInstance {
  int n = 0;
  std::vector<std::vector<int>> rows;

  /// Validates the invariants and normalizes (sorts) the supports.
  static CoverInstance create(int n, std::vector<std::vector<int>> rows);
};

/// Min-knapsack set {x binary : sum w_j x_j >= w0}, with w_j <= w0.
struct KnapsackInstance {
  std::vector<std::int64_t> weights;
  std::int64_t rhs = 0;

  static KnapsackInstance create(std::vector<std::int64_t> weights,
                                 std::int64_t rhs);

  int n() const { return static_cast<int>(weights.size()); }
  std::int64_t total_weight() const;
};

/// Covering-type inequality alpha^T x >= alpha_0 with alpha >= 0.
struct Inequality {
  std::vector<Rational> coeffs;
  Rational rhs;

  int n() const { return static_cast<int>(coeffs.size()); }
  /// S(alpha) = {j : alpha_j > 0}.
  std::vector<int> support() const;
  bool integral() const;
};

/// Point of [0,1]^n with exact rational entries.
struct FractionalPoint {
  std::vector<Rational> entries;

  int n() const { return static_cast<int>(entries.size()); }
};

/// Smallest pi such that the pi smallest positive coefficients sum to at
/// least the right-hand side. Returns 0 iff rhs <= 0, and nullopt when
/// even all positive coefficients together fall short ("pitch undefined").
std::optional<int> pitch(const Inequality& ineq);

struct Dominance {
  bool dominates = false;
  bool strict = false;
};

/// a dominates b when a's coefficients are componentwise <= b's and a's
/// rhs is >= b's, so a implies b over [0,1]^n.
Dominance dominates(const Inequality& a, const Inequality& b);

/// Slack alpha^T pt - alpha_0; negative means violated.
Rational evaluate(const Inequality& ineq, const FractionalPoint& pt);

/// sum w_j - w0 + 1: the weight a complement set must reach for x(S) >= 1
/// to be valid.
std::int64_t cover_threshold(const KnapsackInstance& K);

inline constexpr int kDefaultEnumGuard = 25;

/// Validity over the knapsack via the cover criterion: for every
/// S subseteq suppt(alpha) with alpha(S) > sum alpha - alpha_0, we need
/// w(S) >= cover_threshold. Enumerates subsets of the support; refuses
/// supports larger than `guard`.
bool knap_valid_bruteforce(const KnapsackInstance& K, const Inequality& ineq,
                           int guard = kDefaultEnumGuard);

/// Independent route: enumerates all 2^n binary points of K directly.
bool knap_valid_direct(const KnapsackInstance& K, const Inequality& ineq,
                       int guard = kDefaultEnumGuard);

/// True iff every binary x with Ax >= e satisfies the inequality.
bool cover_valid_bruteforce(const CoverInstance& A, const Inequality& ineq,
                            int guard = kDefaultEnumGuard);

/// min coeffs^T x over binary feasible points of K; nullopt if K is
/// infeasible (cannot happen for a valid instance, kept for safety).
std::optional<Rational> knap_min_activity(const KnapsackInstance& K,
                                          const std::vector<Rational>& coeffs,
                                          int guard = kDefaultEnumGuard);

/// min coeffs^T x over binary feasible points of Ax >= e.
std::optional<Rational> cover_min_activity(const CoverInstance& A,
                                           const std::vector<Rational>& coeffs,
                                           int guard = kDefaultEnumGuard);

}  // namespace pitchcut::core

#endif
