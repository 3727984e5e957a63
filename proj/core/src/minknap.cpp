#include "pitchcut/minknap.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <string>
#include <thread>

namespace pitchcut::minknap {

namespace {

std::int64_t as_int(const Rational& v, const char* what) {
  if (v.get_den() != 1)
    throw std::invalid_argument(std::string(what) + " must be an integer");
  const Integer num = v.get_num();
  if (!num.fits_slong_p())
    throw std::invalid_argument(std::string(what) + " out of range");
  return num.get_si();
}

std::vector<int> int_coeffs(const core::Inequality& ineq, int lo, int hi,
                            const char* what) {
  std::vector<int> a(ineq.n());
  for (int j = 0; j < ineq.n(); ++j) {
    const std::int64_t v = as_int(ineq.coeffs[j], what);
    if (v < lo || v > hi)
      throw std::invalid_argument(std::string(what) + " outside {" +
                                  std::to_string(lo) + ".." +
                                  std::to_string(hi) + "}");
    a[j] = static_cast<int>(v);
  }
  return a;
}

void check_unit_box(const core::FractionalPoint& y) {
  for (const auto& v : y.entries)
    if (v < 0 || v > 1)
      throw std::invalid_argument("point must lie in [0,1]^n");
}

std::vector<int> drag_of(const std::vector<std::int64_t>& w,
                         const std::vector<int>& a, int k) {
  std::int64_t wmin = std::numeric_limits<std::int64_t>::max();
  bool hit = false;
  for (std::size_t j = 0; j < a.size(); ++j)
    if (a[j] == k) {
      hit = true;
      wmin = std::min(wmin, w[j]);
    }
  std::vector<int> out;
  if (!hit) return out;
  for (std::size_t h = 0; h < a.size(); ++h)
    if (w[h] >= wmin && a[h] > 0 && a[h] < k) out.push_back(static_cast<int>(h));
  return out;
}

}  // namespace

int IneqType::index_of(int i) const {
  for (std::size_t t = 0; t < classes.size(); ++t)
    if (classes[t] == i) return static_cast<int>(t);
  return -1;
}

std::vector<int> drag(const core::KnapsackInstance& K,
                      const core::Inequality& ineq, int k) {
  if (k < 1) throw std::invalid_argument("drag requires k >= 1");
  if (ineq.n() != K.n())
    throw std::invalid_argument("drag: dimension mismatch");
  const auto a =
      int_coeffs(ineq, 0, std::numeric_limits<int>::max(), "coefficient");
  return drag_of(K.weights, a, k);
}

std::optional<core::Inequality> strengthen(const core::KnapsackInstance& K,
                                           const core::Inequality& ineq,
                                           int P) {
  if (P < 1) throw std::invalid_argument("strengthen requires P >= 1");
  if (ineq.n() != K.n())
    throw std::invalid_argument("strengthen: dimension mismatch");
  auto a = int_coeffs(ineq, 0, P, "coefficient");
  bool changed = false;
  for (bool again = true; again;) {
    again = false;
    for (int k = 2; k <= P && !again; ++k) {
      const auto delta = drag_of(K.weights, a, k);
      std::int64_t mass = 0;
      for (int h : delta) mass += a[h];
      if (mass < P - 1) continue;
      // Lower the lightest coefficient-k index (lowest index on ties).
      int pick = -1;
      for (std::size_t j = 0; j < a.size(); ++j)
        if (a[j] == k && (pick < 0 || K.weights[j] < K.weights[pick]))
          pick = static_cast<int>(j);
      a[pick] = k - 1;
      changed = again = true;
    }
  }
  if (!changed) return std::nullopt;
  core::Inequality out;
  out.coeffs.assign(a.begin(), a.end());
  out.rhs = ineq.rhs;
  return out;
}

TypeAnalysis compute_type(const core::KnapsackInstance& K,
                          const core::Inequality& ineq) {
  if (ineq.n() != K.n())
    throw std::invalid_argument("compute_type: dimension mismatch");
  const std::int64_t q64 = as_int(ineq.rhs, "right-hand side");
  if (q64 < 1 || q64 > K.n())
    throw std::invalid_argument("compute_type: rhs out of range");
  const int q = static_cast<int>(q64);
  const auto a = int_coeffs(ineq, 0, q, "coefficient");
  const auto& w = K.weights;

  std::vector<std::vector<int>> deltas(q + 1);
  for (int k = 2; k <= q; ++k) deltas[k] = drag_of(w, a, k);

  TypeAnalysis out;
  out.type.q = q;
  for (int i = 1; i <= q; ++i) {
    std::vector<int> S;
    for (std::size_t j = 0; j < a.size(); ++j)
      if (a[j] == i) S.push_back(static_cast<int>(j));
    if (S.empty()) continue;
    std::vector<int> D;
    for (int k = i + 1; k <= q; ++k)
      for (int h : deltas[k])
        if (a[h] == i) D.push_back(h);
    std::sort(D.begin(), D.end());
    D.erase(std::unique(D.begin(), D.end()), D.end());

    int m = S[0];
    for (int j : S)
      if (w[j] < w[m]) m = j;

    const std::size_t lsize =
        std::max(D.size(), static_cast<std::size_t>(
                               std::min<std::size_t>(q - 1, S.size())));
    // Heaviest members first; on weight ties m_i goes last, then lowest
    // index. This reproduces the admissible choice L_i = S_i \ {m_i} when
    // m_i ties for the cut-off weight.
    auto order = S;
    std::sort(order.begin(), order.end(), [&](int x, int yj) {
      if (w[x] != w[yj]) return w[x] > w[yj];
      if ((x == m) != (yj == m)) return yj == m;
      return x < yj;
    });
    std::vector<int> L(order.begin(), order.begin() + lsize);
    std::sort(L.begin(), L.end());
    if (!std::includes(L.begin(), L.end(), D.begin(), D.end()))
      throw std::logic_error("drag union escaped the heaviest members");

    out.type.classes.push_back(i);
    out.type.L.push_back(std::move(L));
    out.type.m.push_back(m);
    out.S.push_back(std::move(S));
    out.D.push_back(std::move(D));
  }
  return out;
}

std::int64_t signature(const core::KnapsackInstance& K, const IneqType& tau) {
  const int budget = tau.q - 1;
  std::vector<std::int64_t> best(budget + 1, 0);
  for (std::size_t t = 0; t < tau.classes.size(); ++t) {
    const int cost = tau.classes[t];
    for (int h : tau.L[t])
      for (int b = budget; b >= cost; --b)
        best[b] = std::max(best[b], best[b - cost] + K.weights[h]);
  }
  return best[budget];
}

bool check_valid_by_signature(const core::KnapsackInstance& K,
                              const core::Inequality& ineq) {
  const auto ta = compute_type(K, ineq);
  std::int64_t lhs = 0;
  for (const auto& S : ta.S)
    for (int j : S) lhs += K.weights[j];
  return lhs >= signature(K, ta.type) + core::cover_threshold(K);
}

namespace {

struct TypeEnum {
  const core::KnapsackInstance& K;
  int q;
  std::size_t cap;
  std::uint64_t max_types;
  std::uint64_t& emitted;
  const std::function<bool(const IneqType&)>& visit;
  bool stopped = false;

  std::vector<int> classes;  // ascending
  std::vector<std::vector<int>> L;
  std::vector<int> m;
  std::vector<bool> used;

  bool emit() {
    if (++emitted > max_types)
      throw std::runtime_error("type enumeration guard exceeded at q = " +
                               std::to_string(q));
    IneqType t;
    t.q = q;
    t.classes = classes;
    t.L = L;
    t.m = m;
    if (!visit(t)) {
      stopped = true;
      return false;
    }
    return true;
  }

  // Fills classes from position `pos` downward (pos indexes `classes`
  // from the back so later classes' m are fixed before earlier ones).
  bool fill(int pos) {
    if (pos < 0) return emit();
    const std::size_t ci = static_cast<std::size_t>(pos);
    const auto& w = K.weights;
    const int n = K.n();
    for (int mi = 0; mi < n; ++mi) {
      if (used[mi]) continue;
      // Later classes already assigned sit at positions > pos.
      bool lighter = true;
      for (std::size_t t = ci + 1; t < classes.size(); ++t)
        if (w[mi] >= w[m[t]]) { lighter = false; break; }
      used[mi] = true;
      m[ci] = mi;
      // Candidates for L members: unused and at least as heavy as m_i.
      std::vector<int> cand;
      for (int h = 0; h < n; ++h)
        if (!used[h] && w[h] >= w[mi]) cand.push_back(h);
      // Branch (a): m_i inside L_i, any size 1..cap.
      if (cap >= 1) {
        L[ci].assign(1, mi);
        if (!subsets(pos, ci, cand, 0, cap - 1, true)) return false;
      }
      // Branch (b): m_i outside L_i; needs |L_i| >= q-1 and m_i strictly
      // lighter than every later class minimum.
      if (lighter) {
        L[ci].clear();
        const std::size_t lo = q >= 1 ? static_cast<std::size_t>(q - 1) : 0;
        if (lo <= cap && !subsets(pos, ci, cand, 0, cap, false)) return false;
      }
      used[mi] = false;
    }
    return true;
  }

  // Extends L[ci] with members of cand[from..]; emits whenever the size
  // constraint holds. with_m: branch (a), minimum size already met.
  bool subsets(int pos, std::size_t ci, const std::vector<int>& cand,
               std::size_t from, std::size_t room, bool with_m) {
    const std::size_t have = L[ci].size();
    const std::size_t need =
        with_m ? 0 : (q >= 1 ? static_cast<std::size_t>(q - 1) : 0);
    if (have >= need) {
      auto sorted = L[ci];
      std::sort(sorted.begin(), sorted.end());
      std::swap(sorted, L[ci]);
      const bool ok = fill(pos - 1);
      std::swap(sorted, L[ci]);
      if (!ok) return false;
    }
    if (room == 0) return true;
    for (std::size_t t = from; t < cand.size(); ++t) {
      const int h = cand[t];
      if (used[h]) continue;
      used[h] = true;
      L[ci].push_back(h);
      const bool ok = subsets(pos, ci, cand, t + 1, room - 1, with_m);
      L[ci].pop_back();
      used[h] = false;
      if (!ok) return false;
    }
    return true;
  }
};

}  // namespace

bool enumerate_types(const core::KnapsackInstance& K, int q,
                     const std::function<bool(const IneqType&)>& visit,
                     const EnumOptions& opts) {
  if (q < 1) throw std::invalid_argument("enumerate_types requires q >= 1");
  const std::size_t cap =
      opts.literal_cap
          ? static_cast<std::size_t>(q) * q - 1
          : static_cast<std::size_t>(std::max(q * (q - 2), q - 1));
  std::uint64_t emitted = 0;
  for (int mask = 1; mask < (1 << q); ++mask) {
    TypeEnum e{K, q, cap, opts.max_types, emitted, visit};
    for (int i = 1; i <= q; ++i)
      if (mask & (1 << (i - 1))) e.classes.push_back(i);
    e.L.assign(e.classes.size(), {});
    e.m.assign(e.classes.size(), 0);
    e.used.assign(K.n(), false);
    if (!e.fill(static_cast<int>(e.classes.size()) - 1)) return false;
  }
  return true;
}

SepProblem build_sep_problem(const core::KnapsackInstance& K,
                             const IneqType& tau,
                             const core::FractionalPoint& y) {
  if (y.n() != K.n())
    throw std::invalid_argument("build_sep_problem: dimension mismatch");
  check_unit_box(y);
  const auto& w = K.weights;
  const int n = K.n();
  const std::size_t nc = tau.classes.size();
  constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max();

  SepProblem prob;
  prob.type = tau;
  prob.instance = K;
  prob.V.resize(nc);
  prob.class_of.assign(n, 0);
  prob.objective.assign(n, Rational(0));

  std::vector<bool> fixed(n, false);
  for (std::size_t t = 0; t < nc; ++t) {
    for (int h : tau.L[t]) {
      if (fixed[h]) throw std::invalid_argument("type classes overlap");
      fixed[h] = true;
      prob.fixed_one.push_back(h);
    }
    if (!fixed[tau.m[t]]) {
      fixed[tau.m[t]] = true;
      prob.fixed_one.push_back(tau.m[t]);
    }
  }
  std::sort(prob.fixed_one.begin(), prob.fixed_one.end());

  for (std::size_t t = 0; t < nc; ++t) {
    std::int64_t M = kInf;
    for (int h : tau.L[t]) M = std::min(M, w[h]);
    for (std::size_t k = t + 1; k < nc; ++k)
      M = std::min(M, w[tau.m[k]] - 1);
    std::vector<int> V = tau.L[t];
    if (static_cast<int>(tau.L[t].size()) >= tau.q - 1) {
      for (int j = 0; j < n; ++j) {
        const bool forbidden =
            fixed[j] && !(std::binary_search(tau.L[t].begin(), tau.L[t].end(),
                                             j) ||
                          j == tau.m[t]);
        if (forbidden) continue;
        if (w[j] >= w[tau.m[t]] && w[j] <= M) V.push_back(j);
      }
    }
    std::sort(V.begin(), V.end());
    V.erase(std::unique(V.begin(), V.end()), V.end());
    for (int j : V) {
      if (prob.class_of[j] != 0)
        throw std::invalid_argument("candidate sets overlap");
      prob.class_of[j] = tau.classes[t];
      prob.objective[j] = tau.classes[t] * y.entries[j];
    }
    prob.V[t] = std::move(V);
  }
  for (int j : prob.fixed_one)
    if (prob.class_of[j] == 0) {
      // m_i heavier than its own candidate ceiling: the fixings conflict.
      prob.consistent = false;
      prob.objective[j] = 0;
    }
  prob.threshold = signature(K, tau) + core::cover_threshold(K);
  return prob;
}

SepSolution solve_sep_knapsack(const SepProblem& prob, const Integer& grid,
                               const std::optional<Integer>& cost_cap) {
  SepSolution sol;
  if (!prob.consistent) return sol;
  const auto& K = prob.instance;
  const int n = K.n();

  std::vector<bool> is_fixed_one(n, false);
  for (int j : prob.fixed_one) is_fixed_one[j] = true;

  auto scaled = [&](int j) {
    const Rational t = prob.objective[j] * Rational(grid);
    if (t.get_den() != 1)
      throw std::invalid_argument("objective entry off the 1/G grid");
    const Integer num = t.get_num();
    if (num < 0 || !num.fits_slong_p())
      throw std::invalid_argument("scaled objective entry out of range");
    return num.get_si();
  };

  std::int64_t base_cost = 0, base_weight = 0, total_weight = 0;
  std::vector<int> ones;
  std::vector<int> items;  // positive-cost optional indices
  std::vector<std::int64_t> item_cost;
  for (int j = 0; j < n; ++j) {
    if (prob.class_of[j] == 0) continue;
    const std::int64_t c = scaled(j);
    total_weight += K.weights[j];
    if (is_fixed_one[j]) {
      base_cost += c;
      base_weight += K.weights[j];
      ones.push_back(j);
    } else if (c == 0) {
      // Free weight: always worth taking.
      base_weight += K.weights[j];
      ones.push_back(j);
    } else {
      items.push_back(j);
      item_cost.push_back(c);
    }
  }
  if (total_weight < prob.threshold) return sol;  // infeasible
  sol.feasible = true;

  std::int64_t budget = std::numeric_limits<std::int64_t>::max();
  if (cost_cap) {
    if (!cost_cap->fits_slong_p())
      throw std::invalid_argument("cost cap out of range");
    budget = cost_cap->get_si();
  }
  if (base_cost > budget) {
    sol.capped = true;
    return sol;
  }

  std::int64_t picked_cost = -1;
  std::vector<int> picked;
  if (base_weight >= prob.threshold) {
    picked_cost = 0;
  } else {
    const std::int64_t span =
        std::min(std::accumulate(item_cost.begin(), item_cost.end(),
                                 std::int64_t{0}),
                 budget - base_cost);
    if (span >= 0) {
      if ((span + 1) * static_cast<std::int64_t>(items.size() + 1) >
          std::int64_t{8} << 20)
        throw std::runtime_error("separation DP exceeds the size guard");
      constexpr std::int64_t kNone = std::numeric_limits<std::int64_t>::min();
      // f[t][v]: max weight over the first t items at scaled cost exactly v.
      std::vector<std::vector<std::int64_t>> f(
          items.size() + 1, std::vector<std::int64_t>(span + 1, kNone));
      f[0][0] = 0;
      for (std::size_t t = 0; t < items.size(); ++t) {
        const std::int64_t c = item_cost[t];
        const std::int64_t wt = K.weights[items[t]];
        for (std::int64_t v = 0; v <= span; ++v) {
          std::int64_t best = f[t][v];
          if (v >= c && f[t][v - c] != kNone)
            best = std::max(best, f[t][v - c] + wt);
          f[t + 1][v] = best;
        }
      }
      const std::int64_t need = prob.threshold - base_weight;
      for (std::int64_t v = 0; v <= span && picked_cost < 0; ++v)
        if (f[items.size()][v] >= need) picked_cost = v;
      if (picked_cost >= 0) {
        std::int64_t v = picked_cost;
        for (std::size_t t = items.size(); t-- > 0;) {
          // Taken iff skipping the item cannot reach the same weight.
          if (f[t][v] == f[t + 1][v]) continue;
          picked.push_back(items[t]);
          v -= item_cost[t];
        }
      }
    }
  }
  if (picked_cost < 0) {
    sol.capped = true;
    return sol;
  }
  ones.insert(ones.end(), picked.begin(), picked.end());
  std::sort(ones.begin(), ones.end());
  sol.ones = std::move(ones);
  sol.value = 0;
  for (int j : sol.ones) sol.value += prob.objective[j];
  return sol;
}

core::FractionalPoint round_point(const core::FractionalPoint& y,
                                  const Integer& G) {
  if (G < 1) throw std::invalid_argument("grid must be >= 1");
  check_unit_box(y);
  core::FractionalPoint out;
  out.entries.reserve(y.entries.size());
  for (const auto& v : y.entries) {
    const Rational t = v * Rational(G);
    Integer up;
    const Integer num = t.get_num(), den = t.get_den();
    mpz_cdiv_q(up.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    Rational r = Rational(up) / Rational(G);
    out.entries.push_back(r > 1 ? Rational(1) : r);
  }
  return out;
}

std::optional<Rational> omega(const core::KnapsackInstance& K,
                              const IneqType& tau,
                              const core::FractionalPoint& y,
                              const Integer& G) {
  const auto yhat = round_point(y, G);
  const auto prob = build_sep_problem(K, tau, yhat);
  const auto sol = solve_sep_knapsack(prob, G);
  if (!sol.feasible) return std::nullopt;
  return sol.value;
}

std::optional<Rational> omega_bruteforce(const core::KnapsackInstance& K,
                                         const IneqType& tau,
                                         const core::FractionalPoint& y,
                                         int guard) {
  const auto prob = build_sep_problem(K, tau, y);
  if (!prob.consistent) return std::nullopt;
  std::vector<int> free;
  for (int j = 0; j < K.n(); ++j)
    if (prob.class_of[j] != 0 &&
        !std::binary_search(prob.fixed_one.begin(), prob.fixed_one.end(), j))
      free.push_back(j);
  if (static_cast<int>(free.size()) > guard)
    throw std::runtime_error("omega_bruteforce: instance exceeds the guard");
  std::int64_t base_w = 0;
  Rational base_c = 0;
  for (int j : prob.fixed_one) {
    base_w += K.weights[j];
    base_c += prob.objective[j];
  }
  std::optional<Rational> best;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << free.size());
       ++mask) {
    std::int64_t wsum = base_w;
    Rational c = base_c;
    for (std::size_t t = 0; t < free.size(); ++t)
      if (mask & (std::uint64_t{1} << t)) {
        wsum += K.weights[free[t]];
        c += prob.objective[free[t]];
      }
    if (wsum < prob.threshold) continue;
    if (!best || c < *best) best = c;
  }
  return best;
}

core::Inequality extract_inequality(const core::KnapsackInstance& K,
                                    const IneqType& tau,
                                    const std::vector<int>& ones) {
  core::FractionalPoint zero;
  zero.entries.assign(K.n(), Rational(0));
  const auto prob = build_sep_problem(K, tau, zero);
  std::int64_t wsum = 0;
  std::vector<bool> in(K.n(), false);
  for (int j : ones) {
    if (j < 0 || j >= K.n() || prob.class_of[j] == 0)
      throw std::invalid_argument("extract_inequality: z not feasible");
    in[j] = true;
    wsum += K.weights[j];
  }
  for (int j : prob.fixed_one)
    if (!in[j])
      throw std::invalid_argument("extract_inequality: forced index missing");
  if (!prob.consistent || wsum < prob.threshold)
    throw std::invalid_argument("extract_inequality: z not feasible");
  core::Inequality out;
  out.coeffs.assign(K.n(), Rational(0));
  for (int j : ones) out.coeffs[j] = prob.class_of[j];
  out.rhs = tau.q;
  if (!check_valid_by_signature(K, out))
    throw std::logic_error("extracted inequality failed the validity check");
  return out;
}

namespace {

Integer grid_for(int q, int n, const Rational& eps,
                 const std::optional<Integer>& override) {
  if (override) {
    if (*override < 1) throw std::invalid_argument("grid must be >= 1");
    return *override;
  }
  const Integer base = Integer(q) * n * n;
  const Rational t = Rational(Integer(q) * n) / eps;
  Integer up;
  const Integer num = t.get_num(), den = t.get_den();
  mpz_cdiv_q(up.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return std::max(base, up);
}

}  // namespace

SeparationResult separate(const core::KnapsackInstance& K,
                          const core::FractionalPoint& y, int p,
                          const Rational& epsilon,
                          const SeparationOptions& opts) {
  if (p < 1) throw std::invalid_argument("separate requires p >= 1");
  if (epsilon <= 0 || epsilon >= 1)
    throw std::invalid_argument("epsilon must lie in (0,1)");
  if (y.n() != K.n())
    throw std::invalid_argument("separate: dimension mismatch");
  check_unit_box(y);

  SeparationResult res;
  res.p = p;
  res.epsilon = epsilon;
  res.omega_by_q.resize(p);

  for (int q = 1; q <= p; ++q) {
    const Integer G = grid_for(q, K.n(), epsilon, opts.grid);
    const auto yhat = round_point(y, G);
    const Integer cap = Integer(q) * G;

    std::vector<IneqType> types;
    enumerate_types(
        K, q,
        [&](const IneqType& t) {
          types.push_back(t);
          return true;
        },
        opts.enumeration);

    std::optional<Rational> qmin;
    std::size_t hit = types.size();

    auto probe = [&](const IneqType& t)
        -> std::pair<std::optional<Rational>, bool> {
      const auto prob = build_sep_problem(K, t, yhat);
      const auto sol = solve_sep_knapsack(prob, G, cap);
      if (!sol.feasible || sol.capped) return {std::nullopt, false};
      return {sol.value, sol.value < q};
    };

    const int jobs = std::max(1, opts.jobs);
    if (jobs == 1) {
      for (std::size_t idx = 0; idx < types.size(); ++idx) {
        const auto [val, violated] = probe(types[idx]);
        if (val && (!qmin || *val < *qmin)) qmin = val;
        if (violated) {
          hit = idx;
          break;
        }
      }
    } else {
      std::atomic<std::size_t> first{types.size()};
      std::mutex mu;
      auto worker = [&](int wid) {
        std::optional<Rational> local;
        for (std::size_t idx = wid; idx < types.size();
             idx += static_cast<std::size_t>(jobs)) {
          if (idx >= first.load(std::memory_order_relaxed)) continue;
          const auto [val, violated] = probe(types[idx]);
          if (val && (!local || *val < *local)) local = val;
          if (violated) {
            std::size_t cur = first.load();
            while (idx < cur && !first.compare_exchange_weak(cur, idx)) {
            }
          }
        }
        if (local) {
          std::lock_guard<std::mutex> lk(mu);
          if (!qmin || *local < *qmin) qmin = local;
        }
      };
      std::vector<std::thread> pool;
      for (int t = 0; t < jobs; ++t) pool.emplace_back(worker, t);
      for (auto& t : pool) t.join();
      hit = first.load();
    }

    if (hit < types.size()) {
      const auto prob = build_sep_problem(K, types[hit], yhat);
      const auto sol = solve_sep_knapsack(prob, G, cap);
      auto cut = extract_inequality(K, types[hit], sol.ones);
      res.slack = core::evaluate(cut, y);
      if (res.slack >= 0)
        throw std::logic_error("separation produced a non-violated cut");
      res.violated = true;
      res.cut = std::move(cut);
      res.omega_by_q[q - 1] = qmin;
      return res;
    }
    res.omega_by_q[q - 1] = qmin;
  }
  return res;
}

namespace {

// Exact min-cost selection: minimize sum cost_t z_t subject to
// sum weight_t z_t >= need, by a weight-indexed DP over rationals.
// Returns nothing when even the full selection misses `need`.
struct MinCostPick {
  Rational cost;
  std::vector<std::size_t> picked;
};
std::optional<MinCostPick> min_cost_cover(
    const std::vector<std::int64_t>& weight,
    const std::vector<Rational>& cost, std::int64_t need) {
  if (need <= 0) return MinCostPick{Rational(0), {}};
  const std::int64_t total =
      std::accumulate(weight.begin(), weight.end(), std::int64_t{0});
  if (total < need) return std::nullopt;
  const std::size_t T = weight.size();
  // g[t][s]: min cost among the first t items at weight sum exactly s.
  std::vector<std::vector<std::optional<Rational>>> g(
      T + 1, std::vector<std::optional<Rational>>(total + 1));
  g[0][0] = Rational(0);
  for (std::size_t t = 0; t < T; ++t)
    for (std::int64_t s = 0; s <= total; ++s) {
      auto best = g[t][s];
      if (s >= weight[t] && g[t][s - weight[t]]) {
        const Rational via = *g[t][s - weight[t]] + cost[t];
        if (!best || via < *best) best = via;
      }
      g[t + 1][s] = best;
    }
  std::int64_t arg = -1;
  for (std::int64_t s = need; s <= total; ++s)
    if (g[T][s] && (arg < 0 || *g[T][s] < *g[T][arg])) arg = s;
  if (arg < 0) return std::nullopt;
  MinCostPick out{*g[T][arg], {}};
  std::int64_t s = arg;
  for (std::size_t t = T; t-- > 0;) {
    if (g[t][s] && *g[t][s] == *g[t + 1][s]) continue;
    out.picked.push_back(t);
    s -= weight[t];
  }
  return out;
}

}  // namespace

VkResult p2_case(const core::KnapsackInstance& K,
                 const core::FractionalPoint& y, int k) {
  if (y.n() != K.n())
    throw std::invalid_argument("p2_case: dimension mismatch");
  if (k < 0 || k >= K.n()) throw std::invalid_argument("p2_case: bad index");
  check_unit_box(y);
  const auto& w = K.weights;
  auto cost_of = [&](int j) {
    return w[j] <= w[k] ? y.entries[j] : 2 * y.entries[j];
  };
  VkResult res;
  std::int64_t zero_w = 0;
  std::vector<int> ones{k};
  std::vector<std::int64_t> weight;
  std::vector<Rational> cost;
  std::vector<int> item_idx;
  for (int j = 0; j < K.n(); ++j) {
    if (j == k) continue;
    if (cost_of(j) == 0) {
      zero_w += w[j];
      ones.push_back(j);
    } else {
      weight.push_back(w[j]);
      cost.push_back(cost_of(j));
      item_idx.push_back(j);
    }
  }
  const auto pick =
      min_cost_cover(weight, cost, core::cover_threshold(K) - zero_w);
  if (!pick) return res;
  res.feasible = true;
  res.value = pick->cost + cost_of(k);
  for (std::size_t t : pick->picked) ones.push_back(item_idx[t]);
  std::sort(ones.begin(), ones.end());
  res.ones = std::move(ones);
  return res;
}

core::Inequality p2_extract(const core::KnapsackInstance& K,
                            const std::vector<int>& ones, int k) {
  core::Inequality out;
  out.coeffs.assign(K.n(), Rational(0));
  for (int j : ones)
    out.coeffs[j] = K.weights[j] <= K.weights[k] ? 1 : 2;
  out.rhs = 2;
  return out;
}

SeparationResult separate_p2(const core::KnapsackInstance& K,
                             const core::FractionalPoint& y) {
  if (y.n() != K.n())
    throw std::invalid_argument("separate_p2: dimension mismatch");
  check_unit_box(y);
  SeparationResult res;
  res.p = 2;
  res.epsilon = 0;
  res.omega_by_q.resize(2);

  // Pure covers first: min y(z) over covers, violated when < 1.
  {
    std::int64_t zero_w = 0;
    std::vector<int> zeros;
    std::vector<std::int64_t> weight;
    std::vector<Rational> cost;
    std::vector<int> item_idx;
    for (int j = 0; j < K.n(); ++j) {
      if (y.entries[j] == 0) {
        zero_w += K.weights[j];
        zeros.push_back(j);
      } else {
        weight.push_back(K.weights[j]);
        cost.push_back(y.entries[j]);
        item_idx.push_back(j);
      }
    }
    const auto pick =
        min_cost_cover(weight, cost, core::cover_threshold(K) - zero_w);
    if (pick) {
      res.omega_by_q[0] = pick->cost;
      if (pick->cost < 1) {
        auto ones = zeros;
        for (std::size_t t : pick->picked) ones.push_back(item_idx[t]);
        std::sort(ones.begin(), ones.end());
        core::Inequality cut;
        cut.coeffs.assign(K.n(), Rational(0));
        for (int j : ones) cut.coeffs[j] = 2;
        cut.rhs = 2;
        res.violated = true;
        res.slack = core::evaluate(cut, y);
        res.cut = std::move(cut);
        return res;
      }
    }
  }

  std::optional<Rational> best;
  int best_k = -1;
  std::vector<int> best_ones;
  for (int k = 0; k < K.n(); ++k) {
    const auto vk = p2_case(K, y, k);
    if (!vk.feasible) continue;
    if (!best || vk.value < *best) {
      best = vk.value;
      best_k = k;
      best_ones = vk.ones;
    }
  }
  res.omega_by_q[1] = best;
  if (best && *best < 2) {
    auto cut = p2_extract(K, best_ones, best_k);
    res.violated = true;
    res.slack = core::evaluate(cut, y);
    res.cut = std::move(cut);
  }
  return res;
}

std::optional<FamilyMinSlack> family_min_slack(const core::KnapsackInstance& K,
                                               const core::FractionalPoint& y,
                                               int p, int guard) {
  if (p < 1) throw std::invalid_argument("family_min_slack requires p >= 1");
  if (y.n() != K.n())
    throw std::invalid_argument("family_min_slack: dimension mismatch");
  double count = 1;
  for (int j = 0; j < K.n(); ++j) {
    count *= p + 1;
    if (count > double{1 << 22})
      throw std::runtime_error("family_min_slack: candidate guard exceeded");
  }
  std::optional<FamilyMinSlack> best;
  std::vector<int> alpha(K.n(), 0);
  for (;;) {
    int j = 0;
    while (j < K.n() && alpha[j] == p) alpha[j++] = 0;
    if (j == K.n()) break;
    ++alpha[j];
    std::vector<Rational> coeffs(alpha.begin(), alpha.end());
    const auto q = core::knap_min_activity(K, coeffs, guard);
    if (!q || *q < 1 || *q > p) continue;
    core::Inequality ineq;
    ineq.rhs = *q;
    ineq.coeffs.reserve(K.n());
    for (const auto& c : coeffs)
      ineq.coeffs.push_back(c > *q ? *q : c);
    const Rational slack = core::evaluate(ineq, y);
    if (!best || slack < best->min_slack)
      best = FamilyMinSlack{slack, std::move(ineq)};
  }
  return best;
}

}  // namespace pitchcut::minknap
