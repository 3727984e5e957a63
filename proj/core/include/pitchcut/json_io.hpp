#ifndef PITCHCUT_JSON_IO_HPP
#define PITCHCUT_JSON_IO_HPP

#include <string>
#include <variant>

#include "pitchcut/core.hpp"
#include "pitchcut/minknap.hpp"

namespace pitchcut::io {

/// Instance files carry either a set-cover system ("kind":"setcover",
/// 1-based row supports) or a min-knapsack ("kind":"minknap").
using Instance = std::variant<core::CoverInstance, core::KnapsackInstance>;

Instance parse_instance(const std::string& text);
std::string write_instance(const Instance& inst);

/// Points are JSON arrays of rational strings ("1/3") or decimals ("0.25").
core::FractionalPoint parse_point(const std::string& text);
std::string write_point(const core::FractionalPoint& pt);

/// Inequalities: {"coeffs":[...],"rhs":...}, same rational encoding.
core::Inequality parse_inequality(const std::string& text);
std::string write_inequality(const core::Inequality& ineq);

/// {"status":"violated","ineq":{...},"slack":"-1"} or
/// {"status":"certified","p":2,"epsilon":"1/100"}, both with the per-q
/// Omega minima under "omega_by_q" (null where none was computed).
std::string write_separation_result(const minknap::SeparationResult& res);
minknap::SeparationResult parse_separation_result(const std::string& text);

}  // namespace pitchcut::io

#endif
