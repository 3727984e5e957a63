#include "pitchcut/linear_system.hpp"

#include <algorithm>
#include <stdexcept>

namespace pitchcut::lp {

int LinearSystem::add_variable(std::string name, Rational lower,
                               Rational upper) {
  if (lower > upper)
    throw std::invalid_argument("variable bounds must satisfy lower <= upper: " +
                                name);
  if (by_name_.count(name))
    throw std::invalid_argument("duplicate variable name: " + name);
  const int idx = num_variables();
  by_name_.emplace(name, idx);
  vars_.push_back({std::move(name), std::move(lower), std::move(upper)});
  return idx;
}

void LinearSystem::add_constraint(std::string name,
                                  std::vector<std::pair<int, Rational>> terms,
                                  Sense sense, Rational rhs) {
  std::sort(terms.begin(), terms.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (std::size_t i = 0; i + 1 < terms.size(); ++i)
    if (terms[i].first == terms[i + 1].first)
      throw std::invalid_argument("duplicate column in constraint: " + name);
  for (const auto& [j, c] : terms)
    if (j < 0 || j >= num_variables())
      throw std::invalid_argument("unknown variable in constraint: " + name);
  std::erase_if(terms, [](const auto& t) { return t.second == 0; });
  cons_.push_back({std::move(name), std::move(terms), sense, std::move(rhs)});
}

int LinearSystem::find_variable(const std::string& name) const {
  auto it = by_name_.find(name);
  return it == by_name_.end() ? -1 : it->second;
}

LinearSystem::SizeReport LinearSystem::size_report() const {
  SizeReport r;
  r.variables = num_variables();
  r.constraints = num_constraints();
  for (const auto& c : cons_) r.nonzeros += c.terms.size();
  return r;
}

}  // namespace pitchcut::lp
