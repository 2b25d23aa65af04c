#pragma once

// Command-line front door: design, equilibrium, beliefs, simulate, sweep,
// compare, bound, supm, and figures subcommands emitting CSV/JSON data
// series. Every output embeds its run manifest (command, flags, seed,
// version) so a run can be replayed byte-identically; wall-clock timing
// goes to stderr, not into the artifacts.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cforge/design.hpp"
#include "cforge/distributions.hpp"
#include "cforge/equilibrium.hpp"
#include "cforge/objectives.hpp"
#include "cforge/simulate.hpp"

namespace cforge::cli {

inline constexpr const char* kVersion = "0.1.0";

struct GlobalOptions {
  std::uint64_t seed = 0;
  int workers = 0;  // 0: resolve from CONTEST_FORGE_THREADS, fall back to 1
  std::string out;  // empty: stdout
  std::string format = "csv";
  double tol = 1e-12;

  int resolved_workers() const {
    if (workers > 0) return workers;
    if (const char* env = std::getenv("CONTEST_FORGE_THREADS")) {
      const int parsed = std::atoi(env);
      if (parsed > 0) return parsed;
    }
    return 1;
  }
};

namespace detail {

inline nlohmann::json manifest_json(const std::string& command,
                                    const std::vector<std::string>& args,
                                    const GlobalOptions& global) {
  nlohmann::json m;
  m["command"] = command;
  m["args"] = args;
  m["seed"] = global.seed;
  m["workers"] = global.resolved_workers();
  m["version"] = kVersion;
  m["output"] = global.out.empty() ? "-" : global.out;
  return m;
}

// Writes payload to --out or stdout; returns the destination label.
inline void deliver(const GlobalOptions& global, std::ostream& out,
                    std::ostream& err, const std::string& payload) {
  if (global.out.empty()) {
    out << payload;
    return;
  }
  std::ofstream file(global.out, std::ios::binary);
  if (!file) {
    err << "cannot open output file: " << global.out << "\n";
    throw DomainError("cannot open output file");
  }
  file << payload;
}

inline std::string csv_header(const nlohmann::json& manifest,
                              const std::string& columns) {
  std::ostringstream os;
  os << "# manifest: " << manifest.dump() << "\n" << columns << "\n";
  return os.str();
}

inline std::string format_double(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

inline std::vector<int> parse_int_list(const std::string& spec) {
  std::vector<int> values;
  if (spec.empty()) return values;
  std::istringstream is(spec);
  std::string token;
  while (std::getline(is, token, ',')) {
    if (token.empty()) continue;
    values.push_back(std::stoi(token));
  }
  return values;
}

inline std::vector<double> parse_prizes(const std::string& spec, int m,
                                        double budget) {
  if (spec == "wta") {
    std::vector<double> prizes(m, 0.0);
    prizes[0] = budget;
    return prizes;
  }
  if (spec.rfind("equal:", 0) == 0) {
    const int l = std::stoi(spec.substr(6));
    if (l < 1 || l > m) throw DomainError("equal:l requires 1 <= l <= m");
    std::vector<double> prizes(m, 0.0);
    for (int i = 0; i < l; ++i) prizes[i] = budget / l;
    return prizes;
  }
  std::vector<double> prizes;
  std::istringstream is(spec);
  std::string token;
  while (std::getline(is, token, ',')) prizes.push_back(std::stod(token));
  return prizes;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Subcommand bodies
// ---------------------------------------------------------------------------

inline int cmd_bound(const GlobalOptions& global,
                     const std::vector<std::string>& args, std::ostream& out,
                     std::ostream& err) {
  auto f = [](double k) { return std::log(k) - (2.0 - k) * (k - 1.0); };
  const double k_bar = find_root(f, {0.05, 0.9, global.tol});
  const double residual = std::abs(f(k_bar));
  nlohmann::json j;
  j["manifest"] = detail::manifest_json("bound", args, global);
  j["k_bar"] = k_bar;
  j["residual"] = residual;
  if (global.format == "json") {
    detail::deliver(global, out, err, j.dump(2) + "\n");
  } else {
    std::ostringstream os;
    os.precision(12);
    // File outputs carry the manifest; the console form leads with the
    // bare ratio so it can be piped directly.
    if (!global.out.empty())
      os << "# manifest: " << j["manifest"].dump() << "\n";
    os << k_bar << "\n" << "residual " << residual << "\n";
    detail::deliver(global, out, err, os.str());
  }
  return 0;
}

inline int cmd_design(const GlobalOptions& global,
                      const std::vector<std::string>& args,
                      const std::string& objective,
                      const std::string& dist_spec, int n, double budget,
                      std::ostream& out, std::ostream& err) {
  if (n < 2) {
    err << "n must be >= 2\n";
    return 2;
  }
  if (objective == "total" && n < 3) {
    err << "total-effort design needs n >= 3\n";
    return 2;
  }
  if (budget < 0) {
    err << "budget must be non-negative\n";
    return 2;
  }
  const auto dist = AbilityDistribution::parse(dist_spec);
  DesignReport report;
  if (objective == "max") {
    report = optimal_max_effort(dist, n, budget);
  } else {
    report = optimal_complete_simple(dist, n);
    report.objective_value *= budget;
    for (double& p : report.chosen_prizes) p *= budget;
    report.diagnostics["budget"] = budget;
    const double k = optimal_ratio(dist);
    report.diagnostics["asymptotic_ratio"] = k;
    report.diagnostics["foc_residual"] = std::abs(shortlist_ratio_foc(dist, k));
  }

  nlohmann::json j;
  j["manifest"] = detail::manifest_json("design", args, global);
  j["objective"] = objective;
  j["dist"] = dist.to_string();
  j["n"] = report.n;
  j["m"] = report.chosen_m;
  j["prizes"] = report.chosen_prizes;
  j["objective_value"] = report.objective_value;
  j["admission_ratio"] = report.admission_ratio;
  j["diagnostics"] = report.diagnostics;
  if (!report.sweep.empty()) {
    nlohmann::json sweep = nlohmann::json::array();
    for (const auto& [m, value] : report.sweep)
      sweep.push_back({{"m", m}, {"value", value}});
    j["sweep"] = sweep;
  }
  detail::deliver(global, out, err, j.dump(2) + "\n");
  return 0;
}

inline int cmd_supm(const GlobalOptions& global,
                    const std::vector<std::string>& args, int n,
                    std::ostream& out, std::ostream& err) {
  if (n < 3) {
    err << "n must be >= 3\n";
    return 2;
  }
  const auto table = sup_optimal_m_table(n);
  int best_m = table.front().first;
  double best = table.front().second;
  for (const auto& [m, h] : table)
    if (h > best) {
      best = h;
      best_m = m;
    }
  std::ostringstream os;
  os << detail::csv_header(detail::manifest_json("supm", args, global),
                           "m,h_total");
  for (const auto& [m, h] : table)
    os << m << "," << detail::format_double(h) << "\n";
  os << "# sup_optimal_m " << best_m << "\n";
  detail::deliver(global, out, err, os.str());
  return 0;
}

inline int cmd_equilibrium(const GlobalOptions& global,
                           const std::vector<std::string>& args,
                           const std::string& dist_spec, int n, int m,
                           const std::string& prizes_spec,
                           const std::string& cost_spec, int grid,
                           double budget, std::ostream& out,
                           std::ostream& err) {
  if (n < 2 || m < 2 || m > n) {
    err << "need 2 <= m <= n\n";
    return 2;
  }
  if (grid < 64) {
    err << "grid must be >= 64\n";
    return 2;
  }
  const auto dist = AbilityDistribution::parse(dist_spec);
  ContestConfig config{n, m, detail::parse_prizes(prizes_spec, m, budget),
                       budget};
  config.validate();
  const auto cost = CostModel::parse(cost_spec);
  const ShortlistContext ctx(dist, n, m);
  const auto schedule = solve_equilibrium(ctx, config, cost, grid);

  std::ostringstream os;
  os << detail::csv_header(detail::manifest_json("equilibrium", args, global),
                           "x,quantile,effort");
  const auto& xs = schedule.grid();
  const auto& bs = schedule.efforts();
  for (size_t i = 0; i < xs.size(); ++i)
    os << detail::format_double(xs[i]) << ","
       << detail::format_double(1.0 - dist.cdf(xs[i])) << ","
       << detail::format_double(bs[i]) << "\n";
  detail::deliver(global, out, err, os.str());
  return 0;
}

inline int cmd_beliefs(const GlobalOptions& global,
                       const std::vector<std::string>& args,
                       const std::string& dist_spec, int n, int m, double x1,
                       int points, std::ostream& out, std::ostream& err) {
  if (n < 2 || m < 2 || m > n) {
    err << "need 2 <= m <= n\n";
    return 2;
  }
  if (points < 2) {
    err << "points must be >= 2\n";
    return 2;
  }
  const auto dist = AbilityDistribution::parse(dist_spec);
  const ShortlistContext ctx(dist, n, m);
  std::ostringstream os;
  os << detail::csv_header(
      detail::manifest_json("beliefs", args, global),
      "z,prior_pdf,posterior_factor,posterior_pdf,posterior_cdf,prior_cdf");
  for (int i = 1; i <= points; ++i) {
    const double p = static_cast<double>(i) / (points + 1);
    const double z = dist.inverse_cdf(p);
    const double prior = dist.pdf(z);
    const double posterior = marginal_posterior_pdf(ctx, x1, z);
    os << detail::format_double(z) << "," << detail::format_double(prior)
       << "," << detail::format_double(posterior / prior) << ","
       << detail::format_double(posterior) << ","
       << detail::format_double(marginal_posterior_cdf(ctx, x1, z)) << ","
       << detail::format_double(dist.cdf(z)) << "\n";
  }
  detail::deliver(global, out, err, os.str());
  return 0;
}

inline int cmd_simulate(const GlobalOptions& global,
                        const std::vector<std::string>& args,
                        const std::string& dist_spec, int n, int m,
                        const std::string& prizes_spec,
                        const std::string& cost_spec, long trials, int grid,
                        double budget, std::ostream& out, std::ostream& err) {
  if (n < 2 || m < 2 || m > n) {
    err << "need 2 <= m <= n\n";
    return 2;
  }
  if (trials < 1000) {
    err << "trials must be >= 1000\n";
    return 2;
  }
  const auto dist = AbilityDistribution::parse(dist_spec);
  ContestConfig config{n, m, detail::parse_prizes(prizes_spec, m, budget),
                       budget};
  config.validate();
  const auto cost = CostModel::parse(cost_spec);
  const ShortlistContext ctx(dist, n, m);
  const auto schedule = solve_equilibrium(ctx, config, cost, grid);
  const auto [te, me] = estimate_objectives(config, dist, cost, schedule,
                                            trials, global.seed,
                                            global.resolved_workers());

  // Analytic references from the deterministic evaluator (linear cost).
  double te_ref = std::numeric_limits<double>::quiet_NaN();
  double me_ref = te_ref;
  if (cost.kind() == CostModel::Kind::Linear) {
    cforge::PrizeObjectiveEvaluator evaluator(dist, n, m);
    te_ref = evaluator.evaluate(config.prizes, EffortObjective::Total);
    me_ref = evaluator.evaluate(config.prizes, EffortObjective::Max);
  }

  if (global.format == "json") {
    nlohmann::json j;
    j["manifest"] = detail::manifest_json("simulate", args, global);
    auto fill = [](const EstimateWithCI& est, double ref) {
      nlohmann::json e;
      e["mean"] = est.mean;
      e["standard_error"] = est.standard_error;
      e["trials"] = est.trials;
      if (std::isfinite(ref)) {
        e["analytic"] = ref;
        e["z_score"] = est.z_score(ref);
      }
      return e;
    };
    j["total_effort"] = fill(te, te_ref);
    j["max_effort"] = fill(me, me_ref);
    detail::deliver(global, out, err, j.dump(2) + "\n");
  } else {
    std::ostringstream os;
    os << detail::csv_header(
        detail::manifest_json("simulate", args, global),
        "objective,mean,standard_error,trials,analytic,z_score");
    auto row = [&](const char* name, const EstimateWithCI& est, double ref) {
      os << name << "," << detail::format_double(est.mean) << ","
         << detail::format_double(est.standard_error) << "," << est.trials
         << "," << detail::format_double(ref) << ","
         << detail::format_double(est.z_score(ref)) << "\n";
    };
    row("total", te, te_ref);
    row("max", me, me_ref);
    detail::deliver(global, out, err, os.str());
  }
  return 0;
}

inline int cmd_sweep(const GlobalOptions& global,
                     const std::vector<std::string>& args,
                     const std::string& dist_spec, const std::string& n_list,
                     const std::string& m_list, const std::string& l_spec,
                     const std::string& rep, std::ostream& out,
                     std::ostream& err) {
  const auto dist = AbilityDistribution::parse(dist_spec);
  const auto ns = detail::parse_int_list(n_list);
  if (rep != "quantile" && rep != "beta") {
    err << "rep must be quantile or beta\n";
    return 2;
  }
  std::ostringstream os;
  os << detail::csv_header(
      detail::manifest_json("sweep", args, global),
      "n,m,l,S_total,S_max,representation,wall_time_ms");
  for (int n : ns) {
    if (n < 2) {
      err << "n must be >= 2\n";
      return 2;
    }
    std::vector<int> ms = detail::parse_int_list(m_list);
    if (ms.empty())
      for (int m = 2; m <= n; ++m) ms.push_back(m);
    for (int m : ms) {
      if (m < 2 || m > n) continue;
      const int l = l_spec == "complete" ? m - 1 : std::stoi(l_spec);
      if (l < 1 || l > m) continue;
      const auto start = std::chrono::steady_clock::now();
      double s_total;
      if (rep == "beta") {
        if (l != m - 1 || m >= n) {
          err << "beta representation needs complete contests with m < n\n";
          return 2;
        }
        s_total = total_effort_beta_rep(dist, n, m);
      } else {
        s_total = total_effort(dist, SimpleContestSpec(n, m, l));
      }
      const double s_max = max_effort(dist, SimpleContestSpec(n, m, l));
      const double ms_elapsed =
          std::chrono::duration<double, std::milli>(
              std::chrono::steady_clock::now() - start)
              .count();
      os << n << "," << m << "," << l << ","
         << detail::format_double(s_total) << ","
         << detail::format_double(s_max) << "," << rep << ","
         << detail::format_double(ms_elapsed) << "\n";
    }
  }
  detail::deliver(global, out, err, os.str());
  return 0;
}

inline int cmd_compare(const GlobalOptions& global,
                       const std::vector<std::string>& args,
                       const std::string& dist_spec,
                       const std::string& n_list, std::ostream& out,
                       std::ostream& err) {
  const auto dist = AbilityDistribution::parse(dist_spec);
  const auto ns = detail::parse_int_list(n_list);
  for (int n : ns)
    if (n < 4) {
      err << "compare requires each n >= 4\n";
      return 2;
    }
  std::ostringstream os;
  os << detail::csv_header(
      detail::manifest_json("compare", args, global),
      "n,m_star,me_duel,me_full,te_opt,te_full,me_ratio,te_ratio");
  std::vector<double> logs, mes, ns_d, tes;
  for (int n : ns) {
    const double me_duel = max_effort(dist, SimpleContestSpec(n, 2, 1));
    const double me_full = max_effort(dist, SimpleContestSpec(n, n, 1));
    const auto opt = optimal_complete_simple(dist, n);
    const double te_full = total_effort(dist, SimpleContestSpec(n, n, 1));
    const double me_ratio = me_duel / me_full;
    const double te_ratio = opt.objective_value / te_full;
    os << n << "," << opt.chosen_m << "," << detail::format_double(me_duel)
       << "," << detail::format_double(me_full) << ","
       << detail::format_double(opt.objective_value) << ","
       << detail::format_double(te_full) << ","
       << detail::format_double(me_ratio) << ","
       << detail::format_double(te_ratio) << "\n";
    logs.push_back(std::log(n));
    mes.push_back(me_ratio);
    ns_d.push_back(n);
    tes.push_back(te_ratio);
  }
  if (ns.size() >= 2) {
    const auto me_fit = fit_line(logs, mes);
    const auto te_fit = fit_line(ns_d, tes);
    os << "# fit me_ratio ~ log(n): slope="
       << detail::format_double(me_fit.slope)
       << " r2=" << detail::format_double(me_fit.r_squared) << "\n";
    os << "# fit te_ratio ~ n: slope=" << detail::format_double(te_fit.slope)
       << " r2=" << detail::format_double(te_fit.r_squared) << "\n";
  }
  detail::deliver(global, out, err, os.str());
  return 0;
}

inline int cmd_figures(const GlobalOptions& global,
                       const std::vector<std::string>& args,
                       const std::string& which, const std::string& dist_spec,
                       const std::string& n_list, std::ostream& out,
                       std::ostream& err) {
  const auto manifest = detail::manifest_json("figures", args, global);
  std::ostringstream os;
  if (which == "beliefs") {
    return cmd_beliefs(global, args, dist_spec.empty() ? "power:2" : dist_spec,
                       5, 2, 0.6, 60, out, err);
  }
  const auto ns = detail::parse_int_list(n_list);
  if (which == "universal") {
    os << detail::csv_header(manifest, "n,sup_m,predicted");
    for (int n : ns)
      os << n << "," << sup_optimal_m(n) << ","
         << detail::format_double(universal_bound() * n) << "\n";
  } else if (which == "dist_opt") {
    const auto dist = AbilityDistribution::parse(
        dist_spec.empty() ? "uniform:0,1" : dist_spec);
    const double k = optimal_ratio(dist);
    os << detail::csv_header(manifest, "n,m_actual,m_predicted");
    for (int n : ns)
      os << n << "," << optimal_complete_simple(dist, n).chosen_m << ","
         << std::lround(k * n) << "\n";
  } else if (which == "performance") {
    const auto dist = AbilityDistribution::parse(
        dist_spec.empty() ? "uniform:0,1" : dist_spec);
    os << detail::csv_header(manifest, "n,te_opt,te_duel,te_full");
    for (int n : ns) {
      const auto opt = optimal_complete_simple(dist, n);
      os << n << "," << detail::format_double(opt.objective_value) << ","
         << detail::format_double(total_effort(dist, SimpleContestSpec(n, 2, 1)))
         << ","
         << detail::format_double(total_effort(dist, SimpleContestSpec(n, n, 1)))
         << "\n";
    }
  } else {
    throw UnknownFigureError("unknown figure: " + which);
  }
  detail::deliver(global, out, err, os.str());
  return 0;
}

// ---------------------------------------------------------------------------
// Dispatch
// ---------------------------------------------------------------------------

inline int cmd_dispatch(const std::vector<std::string>& args,
                        std::ostream& out = std::cout,
                        std::ostream& err = std::cerr) {
  GlobalOptions global;
  CLI::App app{"rank-order contest design toolkit"};
  app.require_subcommand(0, 1);
  app.add_option("--seed", global.seed, "random seed");
  app.add_option("--workers", global.workers,
                 "worker threads (default: CONTEST_FORGE_THREADS or 1)");
  app.add_option("--out", global.out, "output file (default: stdout)");
  app.add_option("--format", global.format, "csv|json")
      ->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--tol", global.tol, "root-finding tolerance")
      ->check(CLI::PositiveNumber);

  std::string objective = "total", dist_spec = "uniform:0,1";
  std::string prizes_spec = "wta", cost_spec = "linear:1";
  std::string n_list = "8,16,32,64,128,256,512", m_list, l_spec = "complete";
  std::string rep = "quantile", which = "universal";
  int n = 0, m = 2, grid = 512, points = 60;
  long trials = 100000;
  double budget = 1.0, x1 = 0.6;

  auto* design = app.add_subcommand("design", "optimal contest design report");
  design->add_option("--objective", objective, "total|max")
      ->check(CLI::IsMember({"total", "max"}));
  design->add_option("--dist", dist_spec, "ability distribution spec");
  design->add_option("--n", n, "registered contestants")->required();
  design->add_option("--budget", budget, "prize budget");

  auto* bound = app.add_subcommand("bound", "universal admission-ratio bound");
  (void)bound;

  auto* supm = app.add_subcommand("supm", "largest capacity optimal for some prior");
  supm->add_option("--n", n, "registered contestants")->required();

  auto* equilibrium =
      app.add_subcommand("equilibrium", "tabulate the equilibrium effort schedule");
  equilibrium->add_option("--dist", dist_spec, "ability distribution spec");
  equilibrium->add_option("--n", n, "registered contestants")->required();
  equilibrium->add_option("--m", m, "shortlist size")->required();
  equilibrium->add_option("--prizes", prizes_spec, "comma list, wta, or equal:l");
  equilibrium->add_option("--cost", cost_spec, "linear:k or power:p,scale");
  equilibrium->add_option("--grid", grid, "schedule grid size");
  equilibrium->add_option("--budget", budget, "prize budget");

  auto* beliefs = app.add_subcommand("beliefs", "posterior belief grids");
  beliefs->add_option("--dist", dist_spec, "ability distribution spec");
  beliefs->add_option("--n", n, "registered contestants")->required();
  beliefs->add_option("--m", m, "shortlist size")->required();
  beliefs->add_option("--x1", x1, "observer ability");
  beliefs->add_option("--points", points, "grid points");

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo objective estimates");
  simulate->add_option("--dist", dist_spec, "ability distribution spec");
  simulate->add_option("--n", n, "registered contestants")->required();
  simulate->add_option("--m", m, "shortlist size")->required();
  simulate->add_option("--prizes", prizes_spec, "comma list, wta, or equal:l");
  simulate->add_option("--cost", cost_spec, "cost model spec");
  simulate->add_option("--trials", trials, "Monte Carlo trials");
  simulate->add_option("--grid", grid, "schedule grid size");
  simulate->add_option("--budget", budget, "prize budget");

  auto* sweep = app.add_subcommand("sweep", "effort objectives over configurations");
  sweep->add_option("--dist", dist_spec, "ability distribution spec");
  sweep->add_option("--n", n_list, "comma list of n values");
  sweep->add_option("--m", m_list, "comma list of m values (default 2..n)");
  sweep->add_option("--l", l_spec, "prize count or 'complete'");
  sweep->add_option("--rep", rep, "quantile|beta");

  auto* compare = app.add_subcommand("compare", "shortlist vs no-shortlist ratios");
  compare->add_option("--dist", dist_spec, "ability distribution spec");
  compare->add_option("--n", n_list, "comma list of n values");

  auto* figures = app.add_subcommand("figures", "plot-ready data bundles");
  figures->add_option("--which", which, "beliefs|dist_opt|universal|performance");
  figures->add_option("--dist", dist_spec, "ability distribution spec");
  figures->add_option("--n", n_list, "comma list of n values");

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  std::vector<const char*> argv;
  argv.push_back("contest-forge");
  for (const auto& a : args) argv.push_back(a.c_str());

  const auto started = std::chrono::steady_clock::now();
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return 2;
  }

  int code = 0;
  try {
    if (design->parsed())
      code = cmd_design(global, args, objective, dist_spec, n, budget, out, err);
    else if (bound->parsed())
      code = cmd_bound(global, args, out, err);
    else if (supm->parsed())
      code = cmd_supm(global, args, n, out, err);
    else if (equilibrium->parsed())
      code = cmd_equilibrium(global, args, dist_spec, n, m, prizes_spec,
                             cost_spec, grid, budget, out, err);
    else if (beliefs->parsed())
      code = cmd_beliefs(global, args, dist_spec, n, m, x1, points, out, err);
    else if (simulate->parsed())
      code = cmd_simulate(global, args, dist_spec, n, m, prizes_spec, cost_spec,
                          trials, grid, budget, out, err);
    else if (sweep->parsed())
      code = cmd_sweep(global, args, dist_spec, n_list, m_list, l_spec, rep,
                       out, err);
    else if (compare->parsed())
      code = cmd_compare(global, args, dist_spec, n_list, out, err);
    else if (figures->parsed())
      code = cmd_figures(global, args, which, dist_spec, n_list, out, err);
    else {
      out << app.help();
      return 0;
    }
  } catch (const DomainError& e) {
    err << e.what() << "\n";
    return 2;
  } catch (const UnknownFigureError& e) {
    err << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << e.what() << "\n";
    return 2;
  }
  const double elapsed = std::chrono::duration<double, std::milli>(
                             std::chrono::steady_clock::now() - started)
                             .count();
  err << "# wall_time_ms " << elapsed << "\n";
  return code;
}

}  // namespace cforge::cli
