#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "pitchcut/minknap.hpp"
#include "test_util.hpp"

using namespace pitchcut;
using core::FractionalPoint;
using core::Inequality;
using core::KnapsackInstance;

namespace {

const KnapsackInstance& two_mono() {
  static const KnapsackInstance K =
      KnapsackInstance::create({10, 10, 5, 6, 7}, 10);
  return K;
}

const KnapsackInstance& three_notmono() {
  static const KnapsackInstance K =
      KnapsackInstance::create({6, 6, 5, 4, 4}, 13);
  return K;
}

const KnapsackInstance& big_example() {
  static const KnapsackInstance K = KnapsackInstance::create(
      {10, 10, 80, 100, 80, 20, 50, 25}, 280);
  return K;
}

Inequality make_ineq(std::vector<int> coeffs, int rhs) {
  Inequality out;
  for (int c : coeffs) out.coeffs.emplace_back(c);
  out.rhs = rhs;
  return out;
}

// 1-based convenience for comparing index sets against worked values.
std::vector<int> plus_one(std::vector<int> v) {
  for (int& x : v) ++x;
  return v;
}

}  // namespace

TEST_CASE("drag sets on the worked examples") {
  // x1 + x2 + x3 + x4 + 3(x6 + x7) + 4 x8 >= 4 on the 8-item instance
  const auto ineq = make_ineq({1, 1, 1, 1, 0, 3, 3, 4}, 4);
  CHECK(plus_one(minknap::drag(big_example(), ineq, 3)) ==
        std::vector<int>{3, 4});
  CHECK(plus_one(minknap::drag(big_example(), ineq, 4)) ==
        std::vector<int>{3, 4, 7});
  // no coefficient equals 2, so delta(2) is empty by convention
  CHECK(minknap::drag(big_example(), ineq, 2).empty());

  // the strengthened pitch-2 cut has empty drags
  const auto cut = make_ineq({2, 2, 1, 1, 1}, 2);
  CHECK(minknap::drag(two_mono(), cut, 1).empty());
  CHECK(minknap::drag(two_mono(), cut, 2).empty());
}

TEST_CASE("strengthening the weight-2 example") {
  const auto weak = make_ineq({2, 2, 2, 1, 1}, 2);
  REQUIRE(core::knap_valid_bruteforce(two_mono(), weak));
  const auto out = minknap::strengthen(two_mono(), weak, 2);
  REQUIRE(out.has_value());
  const auto want = make_ineq({2, 2, 1, 1, 1}, 2);
  CHECK(out->coeffs == want.coeffs);
  CHECK(out->rhs == want.rhs);
  CHECK(core::knap_valid_bruteforce(two_mono(), *out));
  const auto dom = core::dominates(*out, weak);
  CHECK(dom.dominates);
  CHECK(dom.strict);
  // already strengthened: fixpoint reached, nothing to do
  CHECK(!minknap::strengthen(two_mono(), *out, 2).has_value());
}

TEST_CASE("strengthening the non-monotone example") {
  const auto start = make_ineq({1, 1, 2, 1, 1}, 3);
  REQUIRE(core::knap_valid_bruteforce(three_notmono(), start));
  const auto out = minknap::strengthen(three_notmono(), start, 3);
  REQUIRE(out.has_value());
  const auto want = make_ineq({1, 1, 1, 1, 1}, 3);
  CHECK(out->coeffs == want.coeffs);
  CHECK(out->rhs == want.rhs);
  CHECK(core::knap_valid_bruteforce(three_notmono(), *out));
}

TEST_CASE("strengthened inequalities stay valid on random instances") {
  std::mt19937 rng(67);
  std::uniform_int_distribution<int> coef(0, 3);
  int applied = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const auto K = testutil::random_knapsack(rng, 6, 25);
    Inequality ineq;
    for (int j = 0; j < K.n(); ++j) ineq.coeffs.emplace_back(coef(rng));
    ineq.rhs = 3;
    if (!core::knap_valid_bruteforce(K, ineq)) continue;
    const auto out = minknap::strengthen(K, ineq, 3);
    if (!out) continue;
    ++applied;
    CHECK(core::knap_valid_bruteforce(K, *out));
    CHECK(core::dominates(*out, ineq).strict);
  }
  CHECK(applied > 0);
}

TEST_CASE("type of the worked 8-item inequality") {
  const auto ineq = make_ineq({1, 1, 1, 1, 0, 3, 3, 4}, 4);
  const auto ta = minknap::compute_type(big_example(), ineq);
  CHECK(ta.type.q == 4);
  CHECK(ta.type.classes == std::vector<int>{1, 3, 4});
  CHECK(plus_one(ta.D[ta.type.index_of(1)]) == std::vector<int>{3, 4});
  CHECK(plus_one(ta.D[ta.type.index_of(3)]) == std::vector<int>{7});
  CHECK(plus_one(ta.D[ta.type.index_of(4)]).empty());
  CHECK(plus_one(ta.type.L[0]) == std::vector<int>{2, 3, 4});
  CHECK(plus_one(ta.type.L[1]) == std::vector<int>{6, 7});
  CHECK(plus_one(ta.type.L[2]) == std::vector<int>{8});
  CHECK(plus_one(ta.type.m) == std::vector<int>{1, 6, 8});
  CHECK(minknap::signature(big_example(), ta.type) == 190);
  // 295 >= 190 + 375 - 280 + 1 = 286
  CHECK(minknap::check_valid_by_signature(big_example(), ineq));
}

TEST_CASE("signature criterion matches brute-force validity") {
  std::mt19937 rng(71);
  std::uniform_int_distribution<int> coef(0, 3);
  for (int trial = 0; trial < 400; ++trial) {
    const auto K = testutil::random_knapsack(rng, 6, 30);
    Inequality ineq;
    bool has_pos = false;
    for (int j = 0; j < K.n(); ++j) {
      ineq.coeffs.emplace_back(coef(rng));
      if (ineq.coeffs.back() > 0) has_pos = true;
    }
    if (!has_pos) continue;
    Rational top = 0;
    for (const auto& c : ineq.coeffs) top = std::max(top, c);
    ineq.rhs = top;  // coefficients in {0..q}, rhs q
    CHECK(minknap::check_valid_by_signature(K, ineq) ==
          core::knap_valid_bruteforce(K, ineq));
  }
}

TEST_CASE("signature depends only on the type") {
  // two inequalities with equal (I, L, m) share a signature
  std::mt19937 rng(73);
  std::uniform_int_distribution<int> coef(1, 2);
  for (int trial = 0; trial < 100; ++trial) {
    const auto K = testutil::random_knapsack(rng, 7, 20);
    Inequality a, b;
    for (int j = 0; j < K.n(); ++j) {
      a.coeffs.emplace_back(coef(rng));
      b.coeffs.emplace_back(coef(rng));
    }
    a.rhs = b.rhs = 2;
    const auto ta = minknap::compute_type(K, a);
    const auto tb = minknap::compute_type(K, b);
    if (ta.type.classes != tb.type.classes || ta.type.L != tb.type.L ||
        ta.type.m != tb.type.m)
      continue;
    CHECK(minknap::signature(K, ta.type) == minknap::signature(K, tb.type));
  }
}

TEST_CASE("type enumeration covers every valid inequality's type") {
  std::mt19937 rng(79);
  std::uniform_int_distribution<int> coef(0, 2);
  for (int trial = 0; trial < 60; ++trial) {
    const auto K = testutil::random_knapsack(rng, 5, 15);
    Inequality ineq;
    bool has_pos = false;
    for (int j = 0; j < K.n(); ++j) {
      ineq.coeffs.emplace_back(coef(rng));
      if (ineq.coeffs.back() > 0) has_pos = true;
    }
    if (!has_pos) continue;
    Rational top = 0;
    for (const auto& c : ineq.coeffs) top = std::max(top, c);
    ineq.rhs = top;
    if (!core::knap_valid_bruteforce(K, ineq)) continue;
    // dominated inequalities (reducible drags) may fall outside the
    // enumeration; strengthen to the undominated representative first
    if (auto better = minknap::strengthen(
            K, ineq, static_cast<int>(ineq.rhs.get_num().get_si())))
      ineq = *better;
    const auto target = minknap::compute_type(K, ineq).type;
    bool found = false;
    minknap::enumerate_types(K, target.q, [&](const minknap::IneqType& t) {
      found = t.classes == target.classes && t.L == target.L &&
              t.m == target.m;
      return !found;
    });
    CHECK(found);
  }
}

TEST_CASE("q = 1 enumeration yields one type per item") {
  const auto& K = two_mono();
  int count = 0;
  minknap::enumerate_types(K, 1, [&](const minknap::IneqType& t) {
    CHECK(t.q == 1);
    CHECK(t.classes == std::vector<int>{1});
    ++count;
    return true;
  });
  CHECK(count == K.n());
}

TEST_CASE("separation knapsack DP equals exhaustive search") {
  std::mt19937 rng(83);
  std::uniform_int_distribution<int> qd(1, 3);
  int solved = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 4 + static_cast<int>(rng() % 7);  // 4..10
    const auto K = testutil::random_knapsack(rng, n, 30);
    const auto y = testutil::random_point(rng, n, 8);
    const int q = qd(rng);
    bool done = false;
    minknap::enumerate_types(K, q, [&](const minknap::IneqType& tau) {
      const auto prob = minknap::build_sep_problem(K, tau, y);
      if (!prob.consistent) return true;
      const Integer grid(840);  // lcm of the denominators 1..8
      const auto got = minknap::solve_sep_knapsack(prob, grid);
      // reference: all subsets containing the fixed ones
      std::optional<Rational> best;
      const std::uint64_t lim = std::uint64_t{1} << n;
      for (std::uint64_t mask = 0; mask < lim; ++mask) {
        bool ok = true;
        for (int j : prob.fixed_one)
          if (!(mask >> j & 1)) ok = false;
        for (int j = 0; j < n && ok; ++j)
          if ((mask >> j & 1) && prob.class_of[j] == 0 &&
              !std::binary_search(prob.fixed_one.begin(),
                                  prob.fixed_one.end(), j))
            ok = false;
        if (!ok) continue;
        std::int64_t w = 0;
        for (int j = 0; j < n; ++j)
          if (mask >> j & 1) w += K.weights[j];
        if (w < prob.threshold) continue;
        Rational val = 0;
        for (int j = 0; j < n; ++j)
          if (mask >> j & 1) val += prob.objective[j];
        if (!best || val < *best) best = val;
      }
      CHECK(got.feasible == best.has_value());
      if (got.feasible) CHECK(got.value == *best);
      done = true;
      return false;  // one type per trial keeps the runtime flat
    });
    if (done) ++solved;
  }
  CHECK(solved > 150);
}

TEST_CASE("grid denominators outside the objective are rejected") {
  const auto& K = two_mono();
  FractionalPoint y;
  y.entries.assign(5, Rational(1) / 3);
  minknap::enumerate_types(K, 1, [&](const minknap::IneqType& tau) {
    const auto prob = minknap::build_sep_problem(K, tau, y);
    if (!prob.consistent) return true;
    CHECK_THROWS(minknap::solve_sep_knapsack(prob, Integer(2)));
    return false;
  });
}

TEST_CASE("rounding sandwich") {
  std::mt19937 rng(89);
  int sampled = 0;
  while (sampled < 50) {
    const int n = 4 + static_cast<int>(rng() % 9);  // 4..12
    const auto K = testutil::random_knapsack(rng, n, 40);
    const auto y = testutil::random_point(rng, n, 32);
    const int q = 1 + static_cast<int>(rng() % 2);
    const Integer G(static_cast<long>(q) * n * n);
    const auto yhat = minknap::round_point(y, G);
    bool used = false;
    minknap::enumerate_types(K, q, [&](const minknap::IneqType& tau) {
      const auto lo = minknap::omega_bruteforce(K, tau, y);
      const auto hi = minknap::omega_bruteforce(K, tau, yhat);
      CHECK(lo.has_value() == hi.has_value());
      if (lo && hi) {
        CHECK(*lo <= *hi);
        CHECK(*hi <= *lo + Rational(static_cast<long>(q) * n) / G);
        // the DP on the rounded point agrees with brute force
        const auto dp = minknap::omega(K, tau, y, G);
        REQUIRE(dp.has_value());
        CHECK(*dp == *hi);
      }
      used = true;
      return false;
    });
    if (used) ++sampled;
  }
}

TEST_CASE("worked p = 2 separation") {
  FractionalPoint y;
  y.entries = {Rational(1) / 2, Rational(0), Rational(0), Rational(0),
               Rational(0)};
  const auto v5 = minknap::p2_case(two_mono(), y, 4);
  REQUIRE(v5.feasible);
  CHECK(v5.value == Rational(1));
  const auto cut = minknap::p2_extract(two_mono(), v5.ones, 4);
  const auto want = make_ineq({2, 2, 1, 1, 1}, 2);
  CHECK(cut.coeffs == want.coeffs);
  CHECK(cut.rhs == want.rhs);
  CHECK(core::evaluate(cut, y) == Rational(-1));
  CHECK(core::knap_valid_bruteforce(two_mono(), cut));

  const auto res = minknap::separate_p2(two_mono(), y);
  CHECK(res.violated);
  REQUIRE(res.cut.has_value());
  CHECK(core::evaluate(*res.cut, y) < 0);
  CHECK(core::knap_valid_bruteforce(two_mono(), *res.cut));
}

TEST_CASE("type separation finds the worked violation") {
  FractionalPoint y;
  y.entries = {Rational(1) / 2, Rational(0), Rational(0), Rational(0),
               Rational(0)};
  const auto res = minknap::separate(two_mono(), y, 2, Rational(1) / 100);
  CHECK(res.violated);
  REQUIRE(res.cut.has_value());
  CHECK(core::evaluate(*res.cut, y) < 0);
  CHECK(core::knap_valid_bruteforce(two_mono(), *res.cut));
}

TEST_CASE("separation verdicts agree across methods and with brute force") {
  std::mt19937 rng(97);
  const Rational eps = Rational(1) / 100;
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 4 + static_cast<int>(rng() % 3);  // 4..6
    const auto K = testutil::random_knapsack(rng, n, 30);
    const auto y = testutil::random_point(rng, n, 64);
    const auto types = minknap::separate(K, y, 2, eps);
    const auto p2 = minknap::separate_p2(K, y);
    CHECK(types.violated == p2.violated);
    if (types.violated) {
      CHECK(core::knap_valid_bruteforce(K, *types.cut));
      CHECK(core::evaluate(*types.cut, y) < 0);
      CHECK(core::knap_valid_bruteforce(K, *p2.cut));
      CHECK(core::evaluate(*p2.cut, y) < 0);
    }
    const auto brute = minknap::family_min_slack(K, y, 2);
    if (brute) {
      if (types.violated)
        CHECK(brute->min_slack < 0);
      else
        CHECK(brute->min_slack >= -eps);
    }
  }
}

TEST_CASE("parallel separation matches sequential") {
  std::mt19937 rng(101);
  for (int trial = 0; trial < 10; ++trial) {
    const auto K = testutil::random_knapsack(rng, 6, 30);
    const auto y = testutil::random_point(rng, 6, 32);
    minknap::SeparationOptions seq, par;
    par.jobs = 4;
    const auto a = minknap::separate(K, y, 2, Rational(1) / 100, seq);
    const auto b = minknap::separate(K, y, 2, Rational(1) / 100, par);
    CHECK(a.violated == b.violated);
    if (a.violated) {
      CHECK(core::evaluate(*a.cut, y) < 0);
      CHECK(core::evaluate(*b.cut, y) < 0);
    }
  }
}
