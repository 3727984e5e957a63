#include <benchmark/benchmark.h>

#include <random>

#include "pitchcut/minknap.hpp"
#include "pitchcut/setcover.hpp"

using namespace pitchcut;

namespace {

core::CoverInstance cover_instance(int n, int m) {
  std::mt19937 rng(12345);
  std::vector<std::vector<int>> rows;
  std::uniform_int_distribution<int> var(0, n - 1);
  while (static_cast<int>(rows.size()) < m) {
    std::vector<int> row;
    while (static_cast<int>(row.size()) < 2) {
      const int v = var(rng);
      if (std::find(row.begin(), row.end(), v) == row.end()) row.push_back(v);
    }
    std::sort(row.begin(), row.end());
    bool dup = false;
    for (const auto& r : rows)
      if (r == row) dup = true;
    if (!dup) rows.push_back(std::move(row));
  }
  return core::CoverInstance::create(n, std::move(rows));
}

core::KnapsackInstance knap_instance(int n) {
  std::mt19937 rng(777);
  std::uniform_int_distribution<std::int64_t> w(5, 50);
  std::vector<std::int64_t> ws(n);
  std::int64_t total = 0;
  for (auto& x : ws) {
    x = w(rng);
    total += x;
  }
  return core::KnapsackInstance::create(std::move(ws), total * 2 / 3);
}

core::FractionalPoint fractional_point(int n) {
  std::mt19937 rng(999);
  std::uniform_int_distribution<int> num(0, 16);
  core::FractionalPoint pt;
  for (int j = 0; j < n; ++j) pt.entries.emplace_back(Rational(num(rng)) / 16);
  return pt;
}

void BM_build_level2(benchmark::State& state) {
  const auto A = cover_instance(static_cast<int>(state.range(0)), 5);
  for (auto _ : state)
    benchmark::DoNotOptimize(setcover::build_level(A, 2, 1u << 24));
}
BENCHMARK(BM_build_level2)->Arg(5)->Arg(7)->Arg(9);

void BM_certify_level2(benchmark::State& state) {
  const auto A = cover_instance(static_cast<int>(state.range(0)), 4);
  const auto F = setcover::build_level(A, 2, 1u << 24);
  core::Inequality e;
  e.coeffs.assign(A.n, Rational(1));
  e.rhs = 2;
  for (auto _ : state) {
    lp::Solver solver(F.system);
    benchmark::DoNotOptimize(setcover::certify_pitch(solver, F, e));
  }
}
BENCHMARK(BM_certify_level2)->Arg(5)->Arg(7);

void BM_simplex_warm_objectives(benchmark::State& state) {
  const auto A = cover_instance(6, 5);
  const auto F = setcover::build_level(A, 2, 1u << 24);
  lp::Solver solver(F.system);
  std::mt19937 rng(31);
  std::uniform_int_distribution<int> coef(0, 3);
  for (auto _ : state) {
    lp::Objective obj;
    for (int v : F.x_vars) obj.emplace_back(v, Rational(coef(rng)));
    benchmark::DoNotOptimize(solver.minimize(obj));
  }
}
BENCHMARK(BM_simplex_warm_objectives);

void BM_separate_p2(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto K = knap_instance(n);
  const auto y = fractional_point(n);
  for (auto _ : state)
    benchmark::DoNotOptimize(minknap::separate_p2(K, y));
}
BENCHMARK(BM_separate_p2)->Arg(8)->Arg(16)->Arg(32);

void BM_separate_types(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto K = knap_instance(n);
  const auto y = fractional_point(n);
  for (auto _ : state)
    benchmark::DoNotOptimize(
        minknap::separate(K, y, 2, Rational(1) / 100));
}
BENCHMARK(BM_separate_types)->Arg(6)->Arg(8)->Arg(10);

void BM_enumerate_types_q2(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto K = knap_instance(n);
  for (auto _ : state) {
    std::size_t count = 0;
    minknap::enumerate_types(K, 2, [&](const minknap::IneqType&) {
      ++count;
      return true;
    });
    benchmark::DoNotOptimize(count);
  }
}
BENCHMARK(BM_enumerate_types_q2)->Arg(8)->Arg(12);

}  // namespace

BENCHMARK_MAIN();
