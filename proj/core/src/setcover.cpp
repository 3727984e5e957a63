#include "pitchcut/setcover.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>

namespace pitchcut::setcover {

namespace {

std::string var_name(const char* kind, int level, int row, int branch,
                     int idx) {
  return std::string(kind) + "_L" + std::to_string(level) + "_R" +
         std::to_string(row + 1) + "_T" + std::to_string(branch + 1) + "_" +
         std::to_string(idx + 1);
}

struct SizeEstimate {
  std::size_t vars = 0, cons = 0, nnz = 0;
};

SizeEstimate estimate(const core::CoverInstance& A, int level) {
  const std::size_t n = A.n;
  SizeEstimate e{n, A.rows.size(), 0};
  for (const auto& row : A.rows) e.nnz += row.size();
  for (int l = 2; l <= level; ++l) {
    const std::size_t ext = e.vars - n;  // N^{l-1}
    SizeEstimate up{n, 0, 0};
    for (const auto& row : A.rows) {
      const std::size_t s = row.size();
      up.vars += s * e.vars;
      up.cons += 1 + s * (s + 1) / 2 + s * (s - 1) / 2 + s * ext + s * e.cons + n;
      up.nnz += s + s * (s - 1) + s * (s - 1) / 2 + 2 * s * ext +
                s * (e.nnz + e.cons) + n * (1 + s);
    }
    e = up;
  }
  return e;
}

}  // namespace

std::size_t predict_nonzeros(const core::CoverInstance& A, int level) {
  return estimate(A, level).nnz;
}

LevelFormulation build_level(const core::CoverInstance& A, int level,
                             std::size_t guard_nonzeros) {
  if (level < 1) throw std::invalid_argument("level must be >= 1");
  if (predict_nonzeros(A, level) > guard_nonzeros)
    throw std::runtime_error("level formulation would exceed the nonzero guard (" +
                             std::to_string(predict_nonzeros(A, level)) + " > " +
                             std::to_string(guard_nonzeros) + ")");

  LevelFormulation F;
  F.instance = A;
  F.level = level;
  const int n = A.n;

  if (level == 1) {
    for (int j = 0; j < n; ++j)
      F.x_vars.push_back(F.system.add_variable("x" + std::to_string(j + 1)));
    for (std::size_t i = 0; i < A.rows.size(); ++i) {
      std::vector<std::pair<int, Rational>> terms;
      for (int j : A.rows[i]) terms.emplace_back(j, 1);
      F.system.add_constraint("R" + std::to_string(i + 1), std::move(terms),
                              lp::Sense::Ge, 1);
    }
    return F;
  }

  F.lower = std::make_shared<const LevelFormulation>(
      build_level(A, level - 1, guard_nonzeros));
  const lp::LinearSystem& low = F.lower->system;
  const int ext = F.lower->extended_count();

  for (int j = 0; j < n; ++j)
    F.x_vars.push_back(F.system.add_variable("x" + std::to_string(j + 1)));

  for (std::size_t i = 0; i < A.rows.size(); ++i) {
    const auto& S = A.rows[i];  // ascending support ordering
    const int s = static_cast<int>(S.size());
    std::vector<LevelFormulation::Branch> blocks(s);
    for (int t = 0; t < s; ++t) {
      auto& b = blocks[t];
      b.row = static_cast<int>(i);
      b.branch = t;
      for (int j = 0; j < n; ++j)
        b.x_copy.push_back(F.system.add_variable(
            var_name("x", level, static_cast<int>(i), t, j)));
      for (int k = 0; k < ext; ++k)
        b.y_copy.push_back(F.system.add_variable(
            var_name("y", level, static_cast<int>(i), t, k)));
    }
    const std::string tag =
        "_L" + std::to_string(level) + "_R" + std::to_string(i + 1);

    {  // (sum): the branch indicators x^{t}_{j_t} add to one
      std::vector<std::pair<int, Rational>> terms;
      for (int t = 0; t < s; ++t) terms.emplace_back(blocks[t].x_copy[S[t]], 1);
      F.system.add_constraint("sum" + tag, std::move(terms), lp::Sense::Eq, 1);
    }
    for (int t = 0; t < s; ++t) {
      const auto& b = blocks[t];
      const int ind = b.x_copy[S[t]];
      const std::string ttag = tag + "_T" + std::to_string(t + 1);
      for (int h = t; h < s; ++h) {  // (x1), vacuous at h == t
        std::vector<std::pair<int, Rational>> terms;
        if (h != t) {
          terms.emplace_back(b.x_copy[S[h]], 1);
          terms.emplace_back(ind, -1);
        }
        F.system.add_constraint("x1" + ttag + "_" + std::to_string(h + 1),
                                std::move(terms), lp::Sense::Le, 0);
      }
      for (int h = 0; h < t; ++h)  // (x2)
        F.system.add_constraint("x2" + ttag + "_" + std::to_string(h + 1),
                                {{b.x_copy[S[h]], 1}}, lp::Sense::Eq, 0);
      for (int k = 0; k < ext; ++k)  // (y)
        F.system.add_constraint("y" + ttag + "_" + std::to_string(k + 1),
                                {{b.y_copy[k], 1}, {ind, -1}}, lp::Sense::Le, 0);
      // "old": homogenized copy of the previous level's constraints.
      const auto& lows = low.constraints();
      for (std::size_t c = 0; c < lows.size(); ++c) {
        std::map<int, Rational> acc;
        for (const auto& [v, a] : lows[c].terms)
          acc[v < n ? b.x_copy[v] : b.y_copy[v - n]] += a;
        acc[ind] -= lows[c].rhs;
        std::vector<std::pair<int, Rational>> terms(acc.begin(), acc.end());
        F.system.add_constraint("old" + ttag + "_" + std::to_string(c + 1),
                                std::move(terms), lows[c].sense, 0);
      }
    }
    for (int j = 0; j < n; ++j) {  // "dis": ties x to the branch copies
      std::vector<std::pair<int, Rational>> terms{{F.x_vars[j], Rational(1)}};
      for (int t = 0; t < s; ++t) terms.emplace_back(blocks[t].x_copy[j], -1);
      F.system.add_constraint("dis" + tag + "_" + std::to_string(j + 1),
                              std::move(terms), lp::Sense::Eq, 0);
    }
    for (auto& b : blocks) F.branches.push_back(std::move(b));
  }
  return F;
}

namespace {

void check_binary_feasible(const core::CoverInstance& A,
                           const std::vector<int>& xhat) {
  if (static_cast<int>(xhat.size()) != A.n)
    throw std::invalid_argument("lift: dimension mismatch");
  for (int v : xhat)
    if (v != 0 && v != 1)
      throw std::invalid_argument("lift: point must be binary");
  for (const auto& row : A.rows) {
    bool hit = false;
    for (int j : row)
      if (xhat[j]) { hit = true; break; }
    if (!hit) throw std::invalid_argument("lift: point infeasible for Ax >= e");
  }
}

}  // namespace

std::vector<Rational> lift(const LevelFormulation& F,
                           const std::vector<int>& xhat) {
  check_binary_feasible(F.instance, xhat);
  const int n = F.instance.n;
  std::vector<Rational> full(F.system.num_variables(), Rational(0));
  for (int j = 0; j < n; ++j) full[F.x_vars[j]] = xhat[j];
  if (F.level == 1) return full;

  const auto sub = lift(*F.lower, xhat);
  for (const auto& b : F.branches) {
    const auto& S = F.instance.rows[b.row];
    int tstar = -1;
    for (std::size_t h = 0; h < S.size(); ++h)
      if (xhat[S[h]]) { tstar = static_cast<int>(h); break; }
    if (b.branch != tstar) continue;  // other branches stay zero
    for (int j = 0; j < n; ++j) full[b.x_copy[j]] = xhat[j];
    for (std::size_t k = 0; k < b.y_copy.size(); ++k)
      full[b.y_copy[k]] = sub[n + k];
  }
  return full;
}

Rational certify_pitch(lp::Solver& solver, const LevelFormulation& F,
                       const core::Inequality& ineq) {
  if (ineq.n() != F.instance.n)
    throw std::invalid_argument("certify_pitch: dimension mismatch");
  lp::Objective obj;
  for (int j = 0; j < ineq.n(); ++j)
    if (ineq.coeffs[j] != 0) obj.emplace_back(F.x_vars[j], ineq.coeffs[j]);
  const auto out = solver.minimize(obj);
  if (out.status != lp::LpStatus::Optimal)
    throw std::runtime_error("certify_pitch: level LP did not solve to optimality");
  return out.value;
}

Rational certify_pitch(const LevelFormulation& F,
                       const core::Inequality& ineq) {
  lp::Solver solver(F.system);
  return certify_pitch(solver, F, ineq);
}

lp::MembershipResult check_membership(const LevelFormulation& F,
                                      const core::FractionalPoint& x) {
  if (x.n() != F.instance.n)
    throw std::invalid_argument("check_membership: dimension mismatch");
  return lp::check_membership(F.system, F.x_vars, x.entries);
}

BranchDisjunction vector_branch(const core::Inequality& ineq,
                                const std::vector<int>& ordering) {
  if (ineq.rhs <= 0)
    throw std::invalid_argument("vector_branch requires rhs > 0");
  auto supp = ineq.support();
  auto sorted = ordering;
  std::sort(sorted.begin(), sorted.end());
  if (sorted != supp)
    throw std::invalid_argument("vector_branch ordering must permute the support");
  BranchDisjunction out;
  for (std::size_t h = 0; h < ordering.size(); ++h) {
    BranchFixing f;
    f.zeros.assign(ordering.begin(), ordering.begin() + h);
    f.one = ordering[h];
    out.push_back(std::move(f));
  }
  return out;
}

std::vector<StrongestInequality> enumerate_strongest(
    const core::CoverInstance& A, int p, int guard,
    std::size_t max_candidates) {
  if (p < 0) throw std::invalid_argument("p must be >= 0");
  std::vector<StrongestInequality> out;
  if (p == 0) return out;
  double count = 1;
  for (int j = 0; j < A.n; ++j) {
    count *= p + 1;
    if (count > static_cast<double>(max_candidates))
      throw std::runtime_error("enumerate_strongest: candidate guard exceeded");
  }
  std::vector<int> alpha(A.n, 0);
  for (;;) {
    // odometer step
    int j = 0;
    while (j < A.n && alpha[j] == p) alpha[j++] = 0;
    if (j == A.n) break;
    ++alpha[j];
    std::vector<Rational> coeffs(alpha.begin(), alpha.end());
    auto rhs = core::cover_min_activity(A, coeffs, guard);
    if (!rhs) throw std::runtime_error("cover instance unexpectedly infeasible");
    core::Inequality ineq{std::move(coeffs), *rhs};
    auto pi = core::pitch(ineq);
    out.push_back({std::move(ineq), pi});
  }
  return out;
}

}  // namespace pitchcut::setcover
