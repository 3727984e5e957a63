#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <stdexcept>

#include "pitchcut/core.hpp"
#include "test_util.hpp"

using namespace pitchcut;
using core::CoverInstance;
using core::FractionalPoint;
using core::Inequality;
using core::KnapsackInstance;

namespace {

Inequality make_ineq(std::vector<int> coeffs, int rhs) {
  Inequality out;
  for (int c : coeffs) out.coeffs.emplace_back(c);
  out.rhs = rhs;
  return out;
}

}  // namespace

TEST_CASE("cover instance validation") {
  CHECK_NOTHROW(CoverInstance::create(3, {{0, 1}, {1, 2}}));
  CHECK_THROWS_AS(CoverInstance::create(3, {{0}}), std::invalid_argument);
  CHECK_THROWS_AS(CoverInstance::create(3, {{0, 3}}), std::invalid_argument);
  // nested supports rejected
  CHECK_THROWS_AS(CoverInstance::create(3, {{0, 1, 2}, {0, 1}}),
                  std::invalid_argument);
  // supports come back sorted
  const auto A = CoverInstance::create(3, {{2, 0}});
  CHECK(A.rows[0] == std::vector<int>{0, 2});
}

TEST_CASE("knapsack instance validation") {
  CHECK_NOTHROW(KnapsackInstance::create({3, 4}, 4));
  CHECK_THROWS_AS(KnapsackInstance::create({3, 5}, 4), std::invalid_argument);
  CHECK_THROWS_AS(KnapsackInstance::create({0, 4}, 4), std::invalid_argument);
  const auto K = KnapsackInstance::create({10, 10, 5, 6, 7}, 10);
  CHECK(K.total_weight() == 38);
  CHECK(core::cover_threshold(K) == 29);
}

TEST_CASE("pitch") {
  CHECK(core::pitch(make_ineq({1, 1, 1}, 1)) == 1);
  CHECK(core::pitch(make_ineq({1, 1, 1}, 2)) == 2);
  // the two smallest positive coefficients (1 + 1) reach the rhs
  CHECK(core::pitch(make_ineq({2, 2, 1, 1, 1}, 2)) == 2);
  CHECK(core::pitch(make_ineq({2, 1, 1}, 2)) == 2);
  CHECK(core::pitch(make_ineq({3, 1, 1}, 3)) == 3);
  CHECK(core::pitch(make_ineq({1, 1}, 0)) == 0);
  CHECK(core::pitch(make_ineq({0, 0}, 0)) == 0);
  // all positive coefficients together fall short
  CHECK(!core::pitch(make_ineq({1, 1}, 3)).has_value());
  // fractional coefficients participate
  Inequality frac;
  frac.coeffs = {Rational(1) / 2, Rational(1) / 2, Rational(2)};
  frac.rhs = Rational(1) / 2;
  CHECK(core::pitch(frac) == 1);
}

TEST_CASE("dominance and evaluation") {
  const auto strong = make_ineq({2, 2, 1, 1, 1}, 2);
  const auto weak = make_ineq({2, 2, 2, 1, 1}, 2);
  CHECK(core::dominates(strong, weak).dominates);
  CHECK(core::dominates(strong, weak).strict);
  CHECK(!core::dominates(weak, strong).dominates);
  CHECK(core::dominates(strong, strong).dominates);
  CHECK(!core::dominates(strong, strong).strict);

  FractionalPoint y;
  y.entries = {Rational(1) / 2, Rational(0), Rational(0), Rational(0),
               Rational(0)};
  CHECK(core::evaluate(strong, y) == Rational(-1));
  CHECK(strong.support() == std::vector<int>{0, 1, 2, 3, 4});
  CHECK(strong.integral());
}

TEST_CASE("validity oracles agree on the running examples") {
  const auto K2 = KnapsackInstance::create({10, 10, 5, 6, 7}, 10);
  const auto strong = make_ineq({2, 2, 1, 1, 1}, 2);
  const auto weak = make_ineq({2, 2, 2, 1, 1}, 2);
  CHECK(core::knap_valid_bruteforce(K2, strong));
  CHECK(core::knap_valid_direct(K2, strong));
  CHECK(core::knap_valid_bruteforce(K2, weak));
  // too strong: drop a coefficient below the valid cut
  CHECK(!core::knap_valid_bruteforce(K2, make_ineq({2, 1, 1, 1, 1}, 2)));
  CHECK(!core::knap_valid_direct(K2, make_ineq({2, 1, 1, 1, 1}, 2)));

  const auto K3 = KnapsackInstance::create({6, 6, 5, 4, 4}, 13);
  CHECK(core::knap_valid_bruteforce(K3, make_ineq({1, 1, 2, 1, 1}, 3)));
  CHECK(core::knap_valid_direct(K3, make_ineq({1, 1, 1, 1, 1}, 3)));
}

TEST_CASE("validity oracles agree on random instances") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> coef(0, 2);
  std::uniform_int_distribution<int> rhs(1, 3);
  for (int trial = 0; trial < 200; ++trial) {
    const auto K = testutil::random_knapsack(rng, 6, 20);
    Inequality ineq;
    for (int j = 0; j < K.n(); ++j) ineq.coeffs.emplace_back(coef(rng));
    ineq.rhs = rhs(rng);
    CHECK(core::knap_valid_bruteforce(K, ineq) ==
          core::knap_valid_direct(K, ineq));
  }
}

TEST_CASE("min activity oracles") {
  const auto A = CoverInstance::create(3, {{0, 1}, {0, 2}, {1, 2}});
  std::vector<Rational> ones(3, Rational(1));
  CHECK(core::cover_min_activity(A, ones) == Rational(2));

  const auto K = KnapsackInstance::create({10, 10, 5, 6, 7}, 10);
  std::vector<Rational> alpha = {Rational(2), Rational(2), Rational(1),
                                 Rational(1), Rational(1)};
  CHECK(core::knap_min_activity(K, alpha) == Rational(2));
  // single item suffices when it reaches the threshold
  const auto K1 = KnapsackInstance::create({4, 4}, 4);
  CHECK(core::knap_min_activity(K1, {Rational(1), Rational(3)}) == Rational(1));
}

TEST_CASE("enumeration guard refuses large instances") {
  std::vector<std::int64_t> w(30, 1);
  const auto K = KnapsackInstance::create(std::move(w), 5);
  Inequality ineq;
  ineq.coeffs.assign(30, Rational(1));
  ineq.rhs = 1;
  CHECK_THROWS(core::knap_valid_direct(K, ineq, 25));
}

#include "pitchcut/json_io.hpp"

TEST_CASE("json round trips") {
  const auto inst = io::parse_instance(
      R"({"kind":"minknap","weights":[10,10,5,6,7],"rhs":10})");
  const auto& K = std::get<KnapsackInstance>(inst);
  CHECK(K.rhs == 10);
  const auto back = io::parse_instance(io::write_instance(inst));
  CHECK(std::get<KnapsackInstance>(back).weights == K.weights);

  const auto cover = io::parse_instance(
      R"({"kind":"setcover","n":3,"rows":[[1,2],[1,3],[2,3]]})");
  const auto& A = std::get<CoverInstance>(cover);
  CHECK(A.rows[0] == std::vector<int>{0, 1});  // 1-based on the wire
  CHECK(io::write_instance(cover) == io::write_instance(
      io::parse_instance(io::write_instance(cover))));

  const auto pt = io::parse_point(R"(["1/2","0.25",1])");
  CHECK(pt.entries[0] == Rational(1) / 2);
  CHECK(pt.entries[1] == Rational(1) / 4);
  CHECK(pt.entries[2] == Rational(1));
  const auto pt2 = io::parse_point(io::write_point(pt));
  CHECK(pt2.entries == pt.entries);

  const auto ineq = io::parse_inequality(R"({"coeffs":["2","2","1"],"rhs":"2"})");
  CHECK(ineq.rhs == Rational(2));
  const auto ineq2 = io::parse_inequality(io::write_inequality(ineq));
  CHECK(ineq2.coeffs == ineq.coeffs);

  CHECK_THROWS(io::parse_instance(R"({"kind":"mystery"})"));
}
