#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "pitchcut/json_io.hpp"
#include "pitchcut/linear_system.hpp"
#include "pitchcut/minknap.hpp"
#include "pitchcut/setcover.hpp"

namespace {

using namespace pitchcut;

constexpr int kExitCertified = 0;
constexpr int kExitFailure = 1;
constexpr int kExitDisagreement = 2;
constexpr int kExitViolated = 10;

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw std::runtime_error("cannot write " + out_path);
  out << text;
}

core::CoverInstance load_cover(const std::string& path) {
  auto inst = io::parse_instance(slurp(path));
  if (auto* A = std::get_if<core::CoverInstance>(&inst)) return std::move(*A);
  throw std::runtime_error(path + ": expected a set-cover instance");
}

core::KnapsackInstance load_knap(const std::string& path) {
  auto inst = io::parse_instance(slurp(path));
  if (auto* K = std::get_if<core::KnapsackInstance>(&inst))
    return std::move(*K);
  throw std::runtime_error(path + ": expected a min-knapsack instance");
}

struct RunConfig {
  std::string instance_path, point_path, ineq_path, out_path;
  int pi = 1;
  int p = 2;
  std::string epsilon = "1/100";
  std::string grid;
  std::string method = "types";
  std::string task = "valid";
  int jobs = 1;
  std::size_t guard_nonzeros = setcover::kDefaultNonzeroGuard;
  int guard_enum = core::kDefaultEnumGuard;
  unsigned seed = 0;  // reserved: reproducibility tag echoed into reports
};

int cmd_build(const RunConfig& cfg) {
  const auto A = load_cover(cfg.instance_path);
  const auto F = setcover::build_level(A, cfg.pi, cfg.guard_nonzeros);
  emit(lp::write_lp(F.system, {}), cfg.out_path);
  const auto report = F.system.size_report();
  std::cerr << "variables " << report.variables << " constraints "
            << report.constraints << " nonzeros " << report.nonzeros << "\n";
  // Size recursion check: N^{l} <= m n (N^{l-1} + n) at every level.
  bool ok = true;
  for (const setcover::LevelFormulation* f = &F; f->lower; f = f->lower.get()) {
    const long long bound = static_cast<long long>(A.rows.size()) * A.n *
                            (f->lower->extended_count() + A.n);
    if (f->extended_count() > bound) ok = false;
  }
  std::cerr << "size bound " << (ok ? "ok" : "exceeded") << "\n";
  return ok ? kExitCertified : kExitFailure;
}

int cmd_certify(const RunConfig& cfg) {
  const auto A = load_cover(cfg.instance_path);
  const auto F = setcover::build_level(A, cfg.pi, cfg.guard_nonzeros);
  lp::Solver solver(F.system);
  std::optional<Rational> min_slack;
  std::size_t checked = 0;
  auto consider = [&](const core::Inequality& ineq) {
    const Rational slack = setcover::certify_pitch(solver, F, ineq) - ineq.rhs;
    if (!min_slack || slack < *min_slack) min_slack = slack;
    ++checked;
  };
  if (!cfg.ineq_path.empty()) {
    consider(io::parse_inequality(slurp(cfg.ineq_path)));
  } else {
    for (const auto& s :
         setcover::enumerate_strongest(A, cfg.pi, cfg.guard_enum))
      if (s.pitch && *s.pitch >= 1 && *s.pitch <= cfg.pi) consider(s.ineq);
  }
  std::cout << "checked " << checked << " inequalities\n";
  if (!min_slack) {
    std::cout << "min slack n/a\n";
    return kExitCertified;
  }
  std::cout << "min slack " << to_string(*min_slack) << "\n";
  return *min_slack >= 0 ? kExitCertified : kExitFailure;
}

int cmd_separate(const RunConfig& cfg) {
  const auto K = load_knap(cfg.instance_path);
  const auto y = io::parse_point(slurp(cfg.point_path));
  minknap::SeparationOptions opts;
  opts.jobs = cfg.jobs;
  if (!cfg.grid.empty()) opts.grid = Integer(cfg.grid);
  const Rational eps = parse_rational(cfg.epsilon);

  std::optional<minknap::SeparationResult> types_res, p2_res;
  if (cfg.method == "types" || cfg.method == "both")
    types_res = minknap::separate(K, y, cfg.p, eps, opts);
  if (cfg.method == "p2" || cfg.method == "both") {
    if (cfg.p != 2)
      throw std::runtime_error("the p2 method requires --p 2");
    p2_res = minknap::separate_p2(K, y);
  }
  const auto& primary = types_res ? *types_res : *p2_res;
  emit(io::write_separation_result(primary), cfg.out_path);
  if (types_res && p2_res && types_res->violated != p2_res->violated) {
    std::cerr << "methods disagree: types says "
              << (types_res->violated ? "violated" : "certified")
              << ", p2 says " << (p2_res->violated ? "violated" : "certified")
              << "\n";
    return kExitDisagreement;
  }
  return primary.violated ? kExitViolated : kExitCertified;
}

int cmd_oracle(const RunConfig& cfg) {
  if (cfg.task == "valid") {
    const auto ineq = io::parse_inequality(slurp(cfg.ineq_path));
    auto inst = io::parse_instance(slurp(cfg.instance_path));
    bool valid;
    if (auto* K = std::get_if<core::KnapsackInstance>(&inst)) {
      valid = core::knap_valid_bruteforce(*K, ineq, cfg.guard_enum);
      if (valid != core::knap_valid_direct(*K, ineq, cfg.guard_enum))
        throw std::logic_error("validity oracles disagree");
    } else {
      valid = core::cover_valid_bruteforce(
          std::get<core::CoverInstance>(inst), ineq, cfg.guard_enum);
    }
    std::cout << (valid ? "valid" : "invalid") << "\n";
    return valid ? kExitCertified : kExitFailure;
  }
  if (cfg.task == "drag") {
    const auto K = load_knap(cfg.instance_path);
    const auto ineq = io::parse_inequality(slurp(cfg.ineq_path));
    for (int k = 1; Rational(k) <= ineq.rhs; ++k) {
      std::cout << "delta(" << k << ") =";
      for (int h : minknap::drag(K, ineq, k)) std::cout << " " << (h + 1);
      std::cout << "\n";
    }
    return kExitCertified;
  }
  if (cfg.task == "strongest") {
    const auto A = load_cover(cfg.instance_path);
    for (const auto& s :
         setcover::enumerate_strongest(A, cfg.p, cfg.guard_enum)) {
      for (const auto& c : s.ineq.coeffs) std::cout << to_string(c) << " ";
      std::cout << ">= " << to_string(s.ineq.rhs) << " pitch "
                << (s.pitch ? std::to_string(*s.pitch) : "undef") << "\n";
    }
    return kExitCertified;
  }
  if (cfg.task == "minslack") {
    const auto K = load_knap(cfg.instance_path);
    const auto y = io::parse_point(slurp(cfg.point_path));
    const auto best =
        minknap::family_min_slack(K, y, cfg.p, cfg.guard_enum);
    if (!best) {
      std::cout << "family empty\n";
      return kExitCertified;
    }
    std::cout << "min slack " << to_string(best->min_slack) << "\n";
    std::cout << io::write_inequality(best->argmin);
    return best->min_slack < 0 ? kExitViolated : kExitCertified;
  }
  throw std::runtime_error("unknown oracle task: " + cfg.task);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bounded-pitch cutting planes for covering problems"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_common = [&](CLI::App* sub, bool needs_instance = true) {
    auto* opt = sub->add_option("--instance", cfg.instance_path,
                                "instance JSON file");
    if (needs_instance) opt->required();
    sub->add_option("--out", cfg.out_path, "output path (default stdout)");
    sub->add_option("--seed", cfg.seed, "reproducibility seed");
  };

  auto* build = app.add_subcommand("build", "emit the level-pi LP system");
  add_common(build);
  build->add_option("--pi", cfg.pi, "formulation level")->required();
  build->add_option("--guard-nonzeros", cfg.guard_nonzeros,
                    "predicted-size refusal threshold");

  auto* certify =
      app.add_subcommand("certify", "check pitch <= pi inequalities");
  add_common(certify);
  certify->add_option("--pi", cfg.pi, "formulation level")->required();
  certify->add_option("--ineq", cfg.ineq_path, "inequality JSON file");
  certify->add_option("--guard-nonzeros", cfg.guard_nonzeros,
                      "predicted-size refusal threshold");
  certify->add_option("--guard", cfg.guard_enum, "enumeration guard");

  auto* separate =
      app.add_subcommand("separate", "near-separation at a fractional point");
  add_common(separate);
  separate->add_option("--point", cfg.point_path, "point JSON file")
      ->required();
  separate->add_option("--p", cfg.p, "coefficient bound");
  separate->add_option("--epsilon", cfg.epsilon, "additive tolerance");
  separate->add_option("--grid", cfg.grid, "override the rounding grid G");
  separate->add_option("--method", cfg.method, "types | p2 | both")
      ->check(CLI::IsMember({"types", "p2", "both"}));
  separate->add_option("--jobs", cfg.jobs, "parallel type workers");

  auto* oracle = app.add_subcommand("oracle", "brute-force cross-checks");
  add_common(oracle);
  oracle->add_option("--task", cfg.task,
                     "valid | drag | strongest | minslack");
  oracle->add_option("--ineq", cfg.ineq_path, "inequality JSON file");
  oracle->add_option("--point", cfg.point_path, "point JSON file");
  oracle->add_option("--p", cfg.p, "coefficient bound");
  oracle->add_option("--guard", cfg.guard_enum, "enumeration guard");

  CLI11_PARSE(app, argc, argv);
  try {
    if (build->parsed()) return cmd_build(cfg);
    if (certify->parsed()) return cmd_certify(cfg);
    if (separate->parsed()) return cmd_separate(cfg);
    return cmd_oracle(cfg);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}
