#pragma once

// Optimal contest design: the two-contestant winner-take-all solution for
// maximum individual effort, exhaustive selection of the best complete
// simple contest for total effort, the asymptotic admission-ratio solver,
// the distribution-free admission bound, the capacity-supremum algorithm,
// and a brute-force prize-grid oracle for small instances.

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cforge/distributions.hpp"
#include "cforge/error.hpp"
#include "cforge/numerics.hpp"
#include "cforge/objectives.hpp"

namespace cforge {

struct DesignReport {
  EffortObjective objective = EffortObjective::Total;
  int n = 0;
  int chosen_m = 0;
  std::vector<double> chosen_prizes;
  double objective_value = std::numeric_limits<double>::quiet_NaN();
  double admission_ratio = 0;
  std::map<std::string, double> diagnostics;
  std::vector<std::pair<int, double>> sweep;  // (m, objective value)
};

// Distribution-free cap on the asymptotically optimal admission ratio: the
// root of ln k = (2-k)(k-1) in (0,1).
inline double universal_bound() {
  auto f = [](double k) { return std::log(k) - (2.0 - k) * (k - 1.0); };
  return find_root(f, {0.05, 0.9, 1e-15});
}

// Asymptotically optimal admission ratio for a given prior: the root of the
// first-order condition in k. The universal bound caps the search range; a
// wider scan is attempted before reporting a degenerate distribution.
inline double optimal_ratio(const AbilityDistribution& dist) {
  auto foc = [&](double k) { return shortlist_ratio_foc(dist, k); };
  RootBracket bracket{0, 0, 1e-12};
  try {
    bracket = scan_bracket(foc, 1e-3, 0.35, 64, /*log_spaced=*/true, 1e-12);
  } catch (const NoSignChangeError&) {
    bracket = scan_bracket(foc, 1e-4, 0.99, 128, /*log_spaced=*/true, 1e-12);
  }
  return find_root(foc, bracket);
}

// Maximum-individual-effort design: admit two, award everything to the
// winner. The reported value assumes linear unit cost.
inline DesignReport optimal_max_effort(const AbilityDistribution& dist, int n,
                                       double budget) {
  if (n < 2) throw DomainError("optimal_max_effort: n must be >= 2");
  if (budget < 0) throw DomainError("optimal_max_effort: negative budget");
  DesignReport report;
  report.objective = EffortObjective::Max;
  report.n = n;
  report.chosen_m = 2;
  report.chosen_prizes = {budget, 0.0};
  report.objective_value = budget * max_effort(dist, SimpleContestSpec(n, 2, 1));
  report.admission_ratio = 2.0 / n;
  return report;
}

// Total-effort design: enumerate shortlist sizes, evaluating each complete
// simple contest through the beta representation (quantile form at m = n,
// where the beta parameters degenerate). Ties break toward smaller m.
inline DesignReport optimal_complete_simple(const AbilityDistribution& dist,
                                            int n) {
  if (n < 3) throw DomainError("optimal_complete_simple: n must be >= 3");
  DesignReport report;
  report.objective = EffortObjective::Total;
  report.n = n;
  double best = -1;
  int best_m = 2;
  report.sweep.reserve(n - 1);
  for (int m = 2; m <= n; ++m) {
    const double value =
        m < n ? total_effort_beta_rep(dist, n, m)
              : total_effort(dist, SimpleContestSpec::complete(n, n));
    report.sweep.emplace_back(m, value);
    if (value > best + 1e-12 * std::max(1.0, std::abs(best))) {
      best = value;
      best_m = m;
    }
  }
  report.chosen_m = best_m;
  report.chosen_prizes.assign(best_m, 0.0);
  for (int i = 0; i < best_m - 1; ++i)
    report.chosen_prizes[i] = 1.0 / (best_m - 1);
  report.objective_value = best;
  report.admission_ratio = static_cast<double>(best_m) / n;
  report.diagnostics["budget"] = 1.0;
  return report;
}

// Largest shortlist capacity that is optimal under some prior: the argmax
// over m of the cumulative kernel at q = 1. One adaptive integral per m.
inline std::vector<std::pair<int, double>> sup_optimal_m_table(int n) {
  if (n < 3) throw DomainError("sup_optimal_m: n must be >= 3");
  std::vector<std::pair<int, double>> table;
  table.reserve(n - 1);
  Quadrature q;
  q.relative_tolerance = 1e-10;
  q.absolute_tolerance = 1e-14;
  for (int m = 2; m <= n; ++m) {
    const SimpleContestSpec spec = SimpleContestSpec::complete(n, m);
    auto g = [&](double t) {
      return effort_kernel(spec, t, EffortObjective::Total);
    };
    table.emplace_back(
        m, integrate(g, 0.0, 1.0, q, detail::kernel_splits(spec)));
  }
  return table;
}

inline int sup_optimal_m(int n) {
  const auto table = sup_optimal_m_table(n);
  int best_m = table.front().first;
  double best = table.front().second;
  for (const auto& [m, value] : table) {
    if (value > best) {
      best = value;
      best_m = m;
    }
  }
  return best_m;
}

// ---------------------------------------------------------------------------
// Brute-force prize search
// ---------------------------------------------------------------------------

struct PrizeGrid {
  int resolution = 21;  // points per prize-gap coordinate, including 0 and B
};

struct BruteForceResult {
  std::vector<double> prizes;
  std::vector<double> gaps;  // rank-weighted gap coordinates of the winner
  double value = 0;
  long candidates = 0;
};

// Evaluates TE/ME for arbitrary rank-ordered prize vectors on a fixed CDF
// grid: equilibrium effort is accumulated per prize gap once, then every
// candidate is a weighted combination followed by an order-statistics
// quadrature. Linear unit cost throughout.
class PrizeObjectiveEvaluator {
 public:
  PrizeObjectiveEvaluator(const AbilityDistribution& dist, int n, int m,
                          int nodes = 4096)
      : n_(n), m_(m), nodes_(nodes) {
    const double u_hi = dist.unbounded_above() ? 1.0 - 1e-9 : 1.0;
    us_.resize(nodes_ + 1);
    for (int i = 0; i <= nodes_; ++i) us_[i] = u_hi * i / nodes_;

    abilities_.resize(nodes_ + 1);
    admission_.resize(nodes_ + 1);
    top_density_.resize(nodes_ + 1);
    for (int i = 0; i <= nodes_; ++i) {
      abilities_[i] = dist.inverse_cdf(us_[i]);
      admission_[i] = detail::admission_probability_u(n_, m_, us_[i]);
      top_density_[i] = detail::pow_int(us_[i], n_ - 1);
    }
    cumulative_gap_effort_.assign(m_ - 1, std::vector<double>(nodes_ + 1, 0.0));
    for (int l = 1; l <= m_ - 1; ++l) {
      auto& cum = cumulative_gap_effort_[l - 1];
      double prev_k = kernel(l, us_[0], abilities_[0]);
      for (int i = 1; i <= nodes_; ++i) {
        const double k = kernel(l, us_[i], abilities_[i]);
        cum[i] = cum[i - 1] + 0.5 * (prev_k + k) * (us_[i] - us_[i - 1]);
        prev_k = k;
      }
    }
  }

  double evaluate(const std::vector<double>& prizes,
                  EffortObjective objective) const {
    std::vector<double> gaps(m_ - 1);
    for (int l = 1; l <= m_ - 1; ++l) gaps[l - 1] = prizes[l - 1] - prizes[l];
    double value = 0;
    std::vector<double> b(nodes_ + 1, 0.0);
    for (int i = 0; i <= nodes_; ++i) {
      double e = 0;
      for (int l = 0; l < m_ - 1; ++l)
        if (gaps[l] != 0) e += gaps[l] * cumulative_gap_effort_[l][i];
      b[i] = e;
    }
    const auto& weight =
        objective == EffortObjective::Total ? admission_ : top_density_;
    for (int i = 1; i <= nodes_; ++i)
      value += 0.5 * (b[i] * weight[i] + b[i - 1] * weight[i - 1]) *
               (us_[i] - us_[i - 1]);
    return n_ * value;
  }

 private:
  double kernel(int l, double u, double ability) const {
    if (u <= 0 || u >= 1) {
      if (u >= 1 && l == 1) return (n_ - 1) * ability;
      return 0.0;
    }
    const double log_term = log_binomial(n_ - 1, l - 1) +
                            (n_ - l - 1) * std::log(u) +
                            (l - 1) * std::log1p(-u) -
                            detail::log_admission_probability_u(n_, m_, u);
    return (n_ - l) * std::exp(log_term) * ability;
  }

  int n_, m_, nodes_;
  std::vector<double> us_, abilities_, admission_, top_density_;
  std::vector<std::vector<double>> cumulative_gap_effort_;
};

namespace detail {

inline void enumerate_gap_grid(int coords, int resolution, double budget,
                               std::vector<double>& current,
                               const std::function<void(const std::vector<double>&)>& visit) {
  if (coords == 0) {
    visit(current);
    return;
  }
  double used = 0;
  for (double z : current) used += z;
  const double step = budget / (resolution - 1);
  for (int i = 0; i < resolution; ++i) {
    const double z = i * step;
    if (used + z > budget * (1 + 1e-12)) break;
    current.push_back(z);
    enumerate_gap_grid(coords - 1, resolution, budget, current, visit);
    current.pop_back();
  }
}

}  // namespace detail

// Exhaustive search over rank-ordered, budget-feasible prize vectors. The
// grid enumerates the rank-weighted gap coordinates z_l = l (V_l - V_{l+1})
// on the simplex sum z <= budget, where the rank-order and budget
// constraints become coordinate bounds.
inline BruteForceResult brute_force_prize_oracle(const AbilityDistribution& dist,
                                                 int n, int m,
                                                 const PrizeGrid& grid,
                                                 EffortObjective objective,
                                                 double budget = 1.0) {
  if (grid.resolution < 5)
    throw DomainError("brute force: resolution must be >= 5 per coordinate");
  if (m < 2 || m > 4)
    throw DomainError("brute force: shortlist size limited to 2..4");
  if (m > n) throw DomainError("brute force: need m <= n");
  const double per_coord = grid.resolution;
  double estimate = 1;
  for (int i = 0; i < m - 1; ++i) estimate *= per_coord;
  if (estimate > 1e7)
    throw BudgetExceededError("brute force: candidate grid exceeds 1e7 vectors");

  PrizeObjectiveEvaluator evaluator(dist, n, m);
  BruteForceResult result;
  result.value = -std::numeric_limits<double>::infinity();

  std::vector<double> z;
  auto visit = [&](const std::vector<double>& gaps_z) {
    ++result.candidates;
    std::vector<double> prizes(m, 0.0);
    for (int l = m - 1; l >= 1; --l)
      prizes[l - 1] = prizes[l] + gaps_z[l - 1] / l;
    const double value = evaluator.evaluate(prizes, objective);
    if (value > result.value + 1e-15) {
      result.value = value;
      result.prizes = prizes;
      result.gaps = gaps_z;
    }
  };
  detail::enumerate_gap_grid(m - 1, grid.resolution, budget, z, visit);
  return result;
}

// Practical design recipe: solve the ratio when the prior is known, fall
// back to the two-contestant winner-take-all at small n, and admit at the
// universal ratio otherwise.
inline DesignReport cheatsheet(bool dist_known, int n,
                               const std::optional<AbilityDistribution>& dist =
                                   std::nullopt,
                               double budget = 1.0) {
  if (n < 2) throw DomainError("cheatsheet: n must be >= 2");
  DesignReport report;
  report.n = n;
  if (dist_known) {
    if (!dist) throw DomainError("cheatsheet: known distribution not supplied");
    const double k = optimal_ratio(*dist);
    const int m = std::clamp(static_cast<int>(std::lround(k * n)), 2, n);
    report.objective = EffortObjective::Total;
    report.chosen_m = m;
    report.chosen_prizes.assign(m, 0.0);
    for (int i = 0; i < m - 1; ++i) report.chosen_prizes[i] = budget / (m - 1);
    report.objective_value =
        budget * total_effort(*dist, SimpleContestSpec::complete(n, m));
    report.admission_ratio = static_cast<double>(m) / n;
    report.diagnostics["asymptotic_ratio"] = k;
    report.diagnostics["foc_residual"] = std::abs(shortlist_ratio_foc(*dist, k));
    return report;
  }
  if (n < 32) {
    report.objective = EffortObjective::Max;
    report.chosen_m = 2;
    report.chosen_prizes = {budget, 0.0};
    report.admission_ratio = 2.0 / n;
    return report;
  }
  const double k_bar = universal_bound();
  const int m = std::clamp(static_cast<int>(std::lround(k_bar * n)), 2, n);
  report.objective = EffortObjective::Total;
  report.chosen_m = m;
  report.chosen_prizes.assign(m, 0.0);
  for (int i = 0; i < m - 1; ++i) report.chosen_prizes[i] = budget / (m - 1);
  report.admission_ratio = static_cast<double>(m) / n;
  report.diagnostics["universal_bound"] = k_bar;
  return report;
}

}  // namespace cforge
