#include <sstream>
#include <stdexcept>
#include <vector>

#include "pitchcut/linear_system.hpp"

namespace pitchcut::lp {

namespace {

// Scales a list of rationals to integers when any of them has no finite
// decimal expansion; otherwise leaves them untouched.
void normalize_for_output(std::vector<Rational>& vals) {
  bool all_decimal = true;
  for (const auto& v : vals)
    if (!has_finite_decimal(v)) { all_decimal = false; break; }
  if (all_decimal) return;
  Integer l = 1;
  for (const auto& v : vals) {
    const Integer den = v.get_den();
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), den.get_mpz_t());
  }
  for (auto& v : vals) v *= Rational(l);
}

std::string fmt(const Rational& r) { return to_decimal_string(r); }

void append_terms(std::ostringstream& os,
                  const std::vector<std::pair<int, Rational>>& terms,
                  const std::vector<Rational>& coeffs,
                  const LinearSystem& sys) {
  bool first = true;
  for (std::size_t k = 0; k < terms.size(); ++k) {
    const Rational& c = coeffs[k];
    const std::string& name = sys.variable(terms[k].first).name;
    if (first) {
      os << fmt(c) << " " << name;
      first = false;
    } else if (c < 0) {
      os << " - " << fmt(-c) << " " << name;
    } else {
      os << " + " << fmt(c) << " " << name;
    }
  }
}

}  // namespace

std::string write_lp(const LinearSystem& sys, const Objective& objective,
                     const LpWriteOptions& opts) {
  std::ostringstream os;
  os << "Minimize\n obj:";
  {
    std::vector<Rational> coeffs;
    for (const auto& [j, c] : objective) coeffs.push_back(c);
    normalize_for_output(coeffs);
    if (!objective.empty()) {
      os << " ";
      append_terms(os, objective, coeffs, sys);
    }
  }
  os << "\nSubject To\n";
  for (const auto& con : sys.constraints()) {
    std::vector<Rational> vals;
    for (const auto& [j, c] : con.terms) vals.push_back(c);
    vals.push_back(con.rhs);
    normalize_for_output(vals);
    const Rational rhs = vals.back();
    vals.pop_back();
    os << " " << con.name << ": ";
    if (con.terms.empty()) {
      // Vacuous row; the LP dialect needs at least one term.
      if (sys.num_variables() == 0)
        throw std::runtime_error("cannot export constraint over no variables");
      os << "0 " << sys.variable(0).name;
    } else {
      append_terms(os, con.terms, vals, sys);
    }
    switch (con.sense) {
      case Sense::Ge: os << " >= "; break;
      case Sense::Le: os << " <= "; break;
      case Sense::Eq: os << " = "; break;
    }
    os << fmt(rhs) << "\n";
  }
  os << "Bounds\n";
  for (const auto& v : sys.variables()) {
    std::vector<Rational> vals{v.lower, v.upper};
    bool decimal = has_finite_decimal(v.lower) && has_finite_decimal(v.upper);
    if (!decimal)
      throw std::runtime_error("bound on " + v.name +
                               " has no finite decimal expansion");
    if (v.lower == v.upper && opts.explicit_fixed_equals)
      os << " " << v.name << " = " << fmt(v.lower) << "\n";
    else
      os << " " << fmt(v.lower) << " <= " << v.name << " <= " << fmt(v.upper)
         << "\n";
  }
  os << "End\n";
  return os.str();
}

namespace {

struct Tokenizer {
  std::vector<std::string> toks;
  std::size_t pos = 0;

  explicit Tokenizer(const std::string& line) {
    std::istringstream is(line);
    std::string t;
    while (is >> t) toks.push_back(t);
  }
  bool done() const { return pos >= toks.size(); }
  const std::string& peek() const { return toks[pos]; }
  std::string next() { return toks[pos++]; }
};

bool looks_numeric(const std::string& t) {
  if (t.empty()) return false;
  const char c = t[0];
  return (c >= '0' && c <= '9') || c == '-' || c == '+' || c == '.';
}

// terms ::= [sign] [number] name { ("+"|"-") [number] name }
std::vector<std::pair<std::string, Rational>> parse_terms(Tokenizer& tz) {
  std::vector<std::pair<std::string, Rational>> out;
  int sign = 1;
  bool expect_term = true;
  while (!tz.done()) {
    const std::string& t = tz.peek();
    if (!expect_term && (t == "+" || t == "-")) {
      sign = t == "+" ? 1 : -1;
      tz.next();
      expect_term = true;
      continue;
    }
    if (!expect_term) break;  // sense token follows
    Rational coeff = 1;
    std::string tok = tz.next();
    if (looks_numeric(tok)) {
      coeff = parse_rational(tok);
      if (tz.done()) throw std::runtime_error("dangling coefficient in LP file");
      tok = tz.next();
    }
    out.emplace_back(tok, sign * coeff);
    sign = 1;
    expect_term = false;
  }
  if (expect_term && !out.empty())
    throw std::runtime_error("trailing operator in LP file");
  return out;
}

}  // namespace

ParsedLp read_lp(const std::string& text) {
  enum class Section { None, Objective, Constraints, Bounds, Done };
  Section section = Section::None;

  struct RawCon {
    std::string name;
    std::vector<std::pair<std::string, Rational>> terms;
    Sense sense;
    Rational rhs;
  };
  std::vector<std::pair<std::string, Rational>> raw_obj;
  std::vector<RawCon> raw_cons;
  struct RawBound {
    std::string name;
    Rational lower, upper;
  };
  std::vector<RawBound> raw_bounds;

  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    Tokenizer tz(line);
    if (tz.done()) continue;
    const std::string head = tz.toks[0];
    if (head == "Minimize") { section = Section::Objective; continue; }
    if (head == "Subject" && tz.toks.size() > 1 && tz.toks[1] == "To") {
      section = Section::Constraints;
      continue;
    }
    if (head == "Bounds") { section = Section::Bounds; continue; }
    if (head == "End") { section = Section::Done; continue; }

    switch (section) {
      case Section::Objective: {
        if (tz.peek().back() == ':') tz.next();
        auto terms = parse_terms(tz);
        raw_obj.insert(raw_obj.end(), terms.begin(), terms.end());
        break;
      }
      case Section::Constraints: {
        RawCon con;
        std::string label = tz.next();
        if (label.back() != ':')
          throw std::runtime_error("constraint without label: " + line);
        con.name = label.substr(0, label.size() - 1);
        con.terms = parse_terms(tz);
        if (tz.done()) throw std::runtime_error("constraint without sense: " + line);
        const std::string s = tz.next();
        if (s == ">=") con.sense = Sense::Ge;
        else if (s == "<=") con.sense = Sense::Le;
        else if (s == "=") con.sense = Sense::Eq;
        else throw std::runtime_error("bad sense token: " + s);
        con.rhs = parse_rational(tz.next());
        raw_cons.push_back(std::move(con));
        break;
      }
      case Section::Bounds: {
        // Either "lo <= name <= up" or "name = v".
        if (tz.toks.size() == 5 && tz.toks[1] == "<=" && tz.toks[3] == "<=") {
          raw_bounds.push_back({tz.toks[2], parse_rational(tz.toks[0]),
                                parse_rational(tz.toks[4])});
        } else if (tz.toks.size() == 3 && tz.toks[1] == "=") {
          const Rational v = parse_rational(tz.toks[2]);
          raw_bounds.push_back({tz.toks[0], v, v});
        } else {
          throw std::runtime_error("bad bounds line: " + line);
        }
        break;
      }
      default:
        throw std::runtime_error("unexpected LP line: " + line);
    }
  }

  ParsedLp out;
  for (const auto& b : raw_bounds)
    out.system.add_variable(b.name, b.lower, b.upper);
  auto var = [&](const std::string& name) {
    const int j = out.system.find_variable(name);
    if (j < 0) throw std::runtime_error("undeclared variable: " + name);
    return j;
  };
  for (const auto& c : raw_cons) {
    std::vector<std::pair<int, Rational>> terms;
    for (const auto& [name, coeff] : c.terms) terms.emplace_back(var(name), coeff);
    out.system.add_constraint(c.name, std::move(terms), c.sense, c.rhs);
  }
  for (const auto& [name, coeff] : raw_obj)
    out.objective.emplace_back(var(name), coeff);
  return out;
}

}  // namespace pitchcut::lp
