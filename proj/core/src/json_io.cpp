#include "pitchcut/json_io.hpp"

#include <json.hpp>
#include <stdexcept>

namespace pitchcut::io {

namespace {

using nlohmann::json;

Rational rational_from(const json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer())
    return parse_rational(std::to_string(j.get<long long>()));
  throw std::invalid_argument("expected a rational string or integer");
}

std::vector<Rational> rationals_from(const json& j) {
  if (!j.is_array()) throw std::invalid_argument("expected an array");
  std::vector<Rational> out;
  out.reserve(j.size());
  for (const auto& e : j) out.push_back(rational_from(e));
  return out;
}

json rationals_to(const std::vector<Rational>& vals) {
  json out = json::array();
  for (const auto& v : vals) out.push_back(to_string(v));
  return out;
}

core::Inequality inequality_from(const json& j) {
  core::Inequality out;
  out.coeffs = rationals_from(j.at("coeffs"));
  out.rhs = rational_from(j.at("rhs"));
  return out;
}

json inequality_to(const core::Inequality& ineq) {
  return {{"coeffs", rationals_to(ineq.coeffs)},
          {"rhs", to_string(ineq.rhs)}};
}

}  // namespace

Instance parse_instance(const std::string& text) {
  const json j = json::parse(text);
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "setcover") {
    const int n = j.at("n").get<int>();
    std::vector<std::vector<int>> rows;
    for (const auto& row : j.at("rows")) {
      std::vector<int> s;
      for (const auto& e : row) s.push_back(e.get<int>() - 1);
      rows.push_back(std::move(s));
    }
    return core::CoverInstance::create(n, std::move(rows));
  }
  if (kind == "minknap") {
    std::vector<std::int64_t> w;
    for (const auto& e : j.at("weights")) w.push_back(e.get<std::int64_t>());
    return core::KnapsackInstance::create(std::move(w),
                                          j.at("rhs").get<std::int64_t>());
  }
  throw std::invalid_argument("unknown instance kind: " + kind);
}

std::string write_instance(const Instance& inst) {
  json j;
  if (const auto* A = std::get_if<core::CoverInstance>(&inst)) {
    j["kind"] = "setcover";
    j["n"] = A->n;
    json rows = json::array();
    for (const auto& row : A->rows) {
      json s = json::array();
      for (int v : row) s.push_back(v + 1);
      rows.push_back(std::move(s));
    }
    j["rows"] = std::move(rows);
  } else {
    const auto& K = std::get<core::KnapsackInstance>(inst);
    j["kind"] = "minknap";
    j["weights"] = K.weights;
    j["rhs"] = K.rhs;
  }
  return j.dump(2) + "\n";
}

core::FractionalPoint parse_point(const std::string& text) {
  return {rationals_from(json::parse(text))};
}

std::string write_point(const core::FractionalPoint& pt) {
  return rationals_to(pt.entries).dump(2) + "\n";
}

core::Inequality parse_inequality(const std::string& text) {
  return inequality_from(json::parse(text));
}

std::string write_inequality(const core::Inequality& ineq) {
  return inequality_to(ineq).dump(2) + "\n";
}

std::string write_separation_result(const minknap::SeparationResult& res) {
  json j;
  json omegas = json::array();
  for (const auto& o : res.omega_by_q)
    omegas.push_back(o ? json(to_string(*o)) : json(nullptr));
  if (res.violated) {
    j["status"] = "violated";
    j["ineq"] = inequality_to(*res.cut);
    j["slack"] = to_string(res.slack);
  } else {
    j["status"] = "certified";
    j["p"] = res.p;
    j["epsilon"] = to_string(res.epsilon);
  }
  j["omega_by_q"] = std::move(omegas);
  return j.dump(2) + "\n";
}

minknap::SeparationResult parse_separation_result(const std::string& text) {
  const json j = json::parse(text);
  minknap::SeparationResult res;
  const std::string status = j.at("status").get<std::string>();
  if (status == "violated") {
    res.violated = true;
    res.cut = inequality_from(j.at("ineq"));
    res.slack = rational_from(j.at("slack"));
  } else if (status == "certified") {
    res.p = j.at("p").get<int>();
    res.epsilon = rational_from(j.at("epsilon"));
  } else {
    throw std::invalid_argument("unknown separation status: " + status);
  }
  for (const auto& o : j.at("omega_by_q"))
    res.omega_by_q.push_back(o.is_null()
                                 ? std::optional<Rational>{}
                                 : std::optional<Rational>{rational_from(o)});
  return res;
}

}  // namespace pitchcut::io
