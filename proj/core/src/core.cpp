#include "pitchcut/core.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace pitchcut {

Rational parse_rational(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty rational literal");
  auto dot = text.find('.');
  if (dot != std::string::npos) {
    // Exact decimal: sign, integer part, fractional part.
    std::string digits = text.substr(0, dot) + text.substr(dot + 1);
    std::size_t frac_len = text.size() - dot - 1;
    if (frac_len == 0) throw std::invalid_argument("bad decimal: " + text);
    // base must be explicit: a leading zero would otherwise read as octal
    Integer num(digits, 10);
    Integer den(1);
    for (std::size_t i = 0; i < frac_len; ++i) den *= 10;
    Rational r(num, den);
    r.canonicalize();
    return r;
  }
  Rational r;
  if (r.set_str(text, 10) != 0)
    throw std::invalid_argument("bad rational literal: " + text);
  if (r.get_den() == 0) throw std::invalid_argument("zero denominator: " + text);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& r) { return r.get_str(); }

bool has_finite_decimal(const Rational& r) {
  Integer den = r.get_den();
  for (const int p : {2, 5}) {
    while (mpz_divisible_ui_p(den.get_mpz_t(), p)) den /= p;
  }
  return den == 1;
}

std::string to_decimal_string(const Rational& r) {
  if (!has_finite_decimal(r))
    throw std::domain_error("no finite decimal expansion: " + to_string(r));
  Integer num = r.get_num(), den = r.get_den();
  int twos = 0, fives = 0;
  Integer d = den;
  while (mpz_divisible_ui_p(d.get_mpz_t(), 2)) { d /= 2; ++twos; }
  while (mpz_divisible_ui_p(d.get_mpz_t(), 5)) { d /= 5; ++fives; }
  const int shift = std::max(twos, fives);
  Integer scale = 1;
  for (int i = 0; i < shift; ++i) scale *= 10;
  num = num * scale / den;
  bool neg = num < 0;
  if (neg) num = -num;
  std::string digits = num.get_str();
  std::string out;
  if (shift == 0) {
    out = digits;
  } else {
    if (static_cast<int>(digits.size()) <= shift)
      digits.insert(0, shift + 1 - digits.size(), '0');
    out = digits.substr(0, digits.size() - shift) + "." +
          digits.substr(digits.size() - shift);
  }
  return neg ? "-" + out : out;
}

}  // namespace pitchcut

namespace pitchcut::core {

CoverInstance CoverInstance::create(int n, std::vector<std::vector<int>> rows) {
  if (n < 1) throw std::invalid_argument("cover instance needs n >= 1");
  for (auto& row : rows) {
    std::sort(row.begin(), row.end());
    row.erase(std::unique(row.begin(), row.end()), row.end());
    if (row.size() < 2)
      throw std::invalid_argument("cover row support must have >= 2 members");
    if (row.front() < 0 || row.back() >= n)
      throw std::invalid_argument("cover row index out of range");
  }
  for (std::size_t a = 0; a < rows.size(); ++a)
    for (std::size_t b = 0; b < rows.size(); ++b)
      if (a != b && std::includes(rows[a].begin(), rows[a].end(),
                                  rows[b].begin(), rows[b].end()))
        throw std::invalid_argument("cover row supports must not nest");
  return CoverInstance{n, std::move(rows)};
}

KnapsackInstance KnapsackInstance::create(std::vector<std::int64_t> weights,
                                          std::int64_t rhs) {
  if (weights.empty()) throw std::invalid_argument("knapsack needs n >= 1");
  if (rhs < 1) throw std::invalid_argument("knapsack threshold must be positive");
  for (auto w : weights) {
    if (w < 1) throw std::invalid_argument("knapsack weights must be positive");
    if (w > rhs)
      throw std::invalid_argument("knapsack weights must satisfy w_j <= w_0");
  }
  return KnapsackInstance{std::move(weights), rhs};
}

std::int64_t KnapsackInstance::total_weight() const {
  return std::accumulate(weights.begin(), weights.end(), std::int64_t{0});
}

std::vector<int> Inequality::support() const {
  std::vector<int> s;
  for (int j = 0; j < n(); ++j)
    if (coeffs[j] > 0) s.push_back(j);
  return s;
}

bool Inequality::integral() const {
  if (rhs.get_den() != 1) return false;
  for (const auto& c : coeffs)
    if (c.get_den() != 1) return false;
  return true;
}

std::optional<int> pitch(const Inequality& ineq) {
  for (const auto& c : ineq.coeffs)
    if (c < 0) throw std::invalid_argument("pitch needs alpha >= 0");
  if (ineq.rhs <= 0) return 0;
  std::vector<Rational> pos;
  for (const auto& c : ineq.coeffs)
    if (c > 0) pos.push_back(c);
  std::sort(pos.begin(), pos.end());
  Rational acc = 0;
  for (std::size_t k = 0; k < pos.size(); ++k) {
    acc += pos[k];
    if (acc >= ineq.rhs) return static_cast<int>(k + 1);
  }
  return std::nullopt;  // unsatisfiable even at all-ones
}

Dominance dominates(const Inequality& a, const Inequality& b) {
  if (a.n() != b.n()) throw std::invalid_argument("dimension mismatch");
  Dominance d;
  d.dominates = true;
  for (int j = 0; j < a.n(); ++j) {
    if (a.coeffs[j] > b.coeffs[j]) return {};
    if (a.coeffs[j] < b.coeffs[j]) d.strict = true;
  }
  if (a.rhs < b.rhs) return {};
  if (a.rhs > b.rhs) d.strict = true;
  return d;
}

Rational evaluate(const Inequality& ineq, const FractionalPoint& pt) {
  if (ineq.n() != pt.n()) throw std::invalid_argument("dimension mismatch");
  Rational acc = -ineq.rhs;
  for (int j = 0; j < ineq.n(); ++j) acc += ineq.coeffs[j] * pt.entries[j];
  return acc;
}

std::int64_t cover_threshold(const KnapsackInstance& K) {
  return K.total_weight() - K.rhs + 1;
}

namespace {

void check_guard(std::size_t bits, int guard, const char* what) {
  if (static_cast<int>(bits) > guard)
    throw std::runtime_error(std::string(what) + ": instance too large for " +
                             std::to_string(guard) + "-bit enumeration");
}

}  // namespace

bool knap_valid_bruteforce(const KnapsackInstance& K, const Inequality& ineq,
                           int guard) {
  if (ineq.n() != K.n()) throw std::invalid_argument("dimension mismatch");
  const auto supp = ineq.support();
  check_guard(supp.size(), guard, "knap_valid_bruteforce");
  Rational alpha_sum = 0;
  for (int j : supp) alpha_sum += ineq.coeffs[j];
  const Rational alpha_cut = alpha_sum - ineq.rhs;
  const std::int64_t w_cut = cover_threshold(K);
  // Valid iff alpha(S) > sum alpha - alpha_0 forces w(S) >= threshold.
  const std::uint64_t lim = std::uint64_t{1} << supp.size();
  for (std::uint64_t mask = 0; mask < lim; ++mask) {
    Rational a = 0;
    std::int64_t w = 0;
    for (std::size_t b = 0; b < supp.size(); ++b)
      if (mask >> b & 1) {
        a += ineq.coeffs[supp[b]];
        w += K.weights[supp[b]];
      }
    if (a > alpha_cut && w < w_cut) return false;
  }
  return true;
}

bool knap_valid_direct(const KnapsackInstance& K, const Inequality& ineq,
                       int guard) {
  if (ineq.n() != K.n()) throw std::invalid_argument("dimension mismatch");
  check_guard(K.n(), guard, "knap_valid_direct");
  const std::uint64_t lim = std::uint64_t{1} << K.n();
  for (std::uint64_t mask = 0; mask < lim; ++mask) {
    std::int64_t w = 0;
    for (int j = 0; j < K.n(); ++j)
      if (mask >> j & 1) w += K.weights[j];
    if (w < K.rhs) continue;
    Rational a = 0;
    for (int j = 0; j < K.n(); ++j)
      if (mask >> j & 1) a += ineq.coeffs[j];
    if (a < ineq.rhs) return false;
  }
  return true;
}

bool cover_valid_bruteforce(const CoverInstance& A, const Inequality& ineq,
                            int guard) {
  if (ineq.n() != A.n) throw std::invalid_argument("dimension mismatch");
  check_guard(A.n, guard, "cover_valid_bruteforce");
  const std::uint64_t lim = std::uint64_t{1} << A.n;
  for (std::uint64_t mask = 0; mask < lim; ++mask) {
    bool feasible = true;
    for (const auto& row : A.rows) {
      bool hit = false;
      for (int j : row)
        if (mask >> j & 1) { hit = true; break; }
      if (!hit) { feasible = false; break; }
    }
    if (!feasible) continue;
    Rational a = 0;
    for (int j = 0; j < A.n; ++j)
      if (mask >> j & 1) a += ineq.coeffs[j];
    if (a < ineq.rhs) return false;
  }
  return true;
}

std::optional<Rational> knap_min_activity(const KnapsackInstance& K,
                                          const std::vector<Rational>& coeffs,
                                          int guard) {
  if (static_cast<int>(coeffs.size()) != K.n())
    throw std::invalid_argument("dimension mismatch");
  check_guard(K.n(), guard, "knap_min_activity");
  std::optional<Rational> best;
  const std::uint64_t lim = std::uint64_t{1} << K.n();
  for (std::uint64_t mask = 0; mask < lim; ++mask) {
    std::int64_t w = 0;
    for (int j = 0; j < K.n(); ++j)
      if (mask >> j & 1) w += K.weights[j];
    if (w < K.rhs) continue;
    Rational a = 0;
    for (int j = 0; j < K.n(); ++j)
      if (mask >> j & 1) a += coeffs[j];
    if (!best || a < *best) best = a;
  }
  return best;
}

std::optional<Rational> cover_min_activity(const CoverInstance& A,
                                           const std::vector<Rational>& coeffs,
                                           int guard) {
  if (static_cast<int>(coeffs.size()) != A.n)
    throw std::invalid_argument("dimension mismatch");
  check_guard(A.n, guard, "cover_min_activity");
  std::optional<Rational> best;
  const std::uint64_t lim = std::uint64_t{1} << A.n;
  for (std::uint64_t mask = 0; mask < lim; ++mask) {
    bool feasible = true;
    for (const auto& row : A.rows) {
      bool hit = false;
      for (int j : row)
        if (mask >> j & 1) { hit = true; break; }
      if (!hit) { feasible = false; break; }
    }
    if (!feasible) continue;
    Rational a = 0;
    for (int j = 0; j < A.n; ++j)
      if (mask >> j & 1) a += coeffs[j];
    if (!best || a < *best) best = a;
  }
  return best;
}

}  // namespace pitchcut::core
