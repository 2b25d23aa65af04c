#pragma once

// The unique symmetric equilibrium effort function of an admitted
// contestant: cost models, the equilibrium integrand, a tabulated schedule
// solver, expected utility under deviations, and a numerical best-response
// certificate.

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <utility>
#include <vector>

#include "cforge/beliefs.hpp"
#include "cforge/distributions.hpp"
#include "cforge/error.hpp"
#include "cforge/interp.hpp"
#include "cforge/numerics.hpp"

namespace cforge {

class CostModel {
 public:
  enum class Kind { Linear, Power, Custom };

  static CostModel linear(double slope = 1.0) {
    if (!(slope > 0)) throw DomainError("cost: slope must be positive");
    CostModel c;
    c.kind_ = Kind::Linear;
    c.slope_ = slope;
    return c;
  }

  // g(e) = scale * e^p with p >= 1.
  static CostModel power(double exponent, double scale = 1.0) {
    if (!(exponent >= 1)) throw DomainError("cost: exponent must be >= 1");
    if (!(scale > 0)) throw DomainError("cost: scale must be positive");
    CostModel c;
    c.kind_ = Kind::Power;
    c.slope_ = scale;
    c.exponent_ = exponent;
    return c;
  }

  // Custom strictly increasing g with g(0) = 0; the inverse is recovered by
  // bracketed root finding when not supplied.
  static CostModel custom(std::function<double(double)> g,
                          std::function<double(double)> g_inverse = {}) {
    CostModel c;
    c.kind_ = Kind::Custom;
    c.g_ = std::move(g);
    c.g_inv_ = std::move(g_inverse);
    if (std::abs(c.g_(0.0)) > 1e-12)
      throw DomainError("cost: custom g must satisfy g(0) = 0");
    return c;
  }

  Kind kind() const { return kind_; }

  double operator()(double effort) const {
    switch (kind_) {
      case Kind::Linear: return slope_ * effort;
      case Kind::Power: return slope_ * std::pow(effort, exponent_);
      case Kind::Custom: return g_(effort);
    }
    return 0;
  }

  double inverse(double cost) const {
    if (cost <= 0) return 0.0;
    switch (kind_) {
      case Kind::Linear: return cost / slope_;
      case Kind::Power: return std::pow(cost / slope_, 1.0 / exponent_);
      case Kind::Custom: {
        if (g_inv_) return g_inv_(cost);
        double hi = 1.0;
        while (g_(hi) < cost && hi < 1e12) hi *= 2;
        auto f = [&](double e) { return g_(e) - cost; };
        return find_root(f, {0.0, hi, 1e-13});
      }
    }
    return 0;
  }

  static CostModel parse(const std::string& spec) {
    const auto colon = spec.find(':');
    const std::string name = spec.substr(0, colon);
    const std::string args =
        colon == std::string::npos ? "" : spec.substr(colon + 1);
    if (name == "linear") return linear(args.empty() ? 1.0 : std::stod(args));
    if (name == "power") {
      const auto comma = args.find(',');
      const double p = std::stod(args.substr(0, comma));
      const double s = comma == std::string::npos
                           ? 1.0
                           : std::stod(args.substr(comma + 1));
      return power(p, s);
    }
    throw DomainError("unknown cost spec: " + spec);
  }

 private:
  CostModel() = default;
  Kind kind_ = Kind::Linear;
  double slope_ = 1.0;
  double exponent_ = 1.0;
  std::function<double(double)> g_, g_inv_;
};

struct ContestConfig {
  int n = 2;
  int m = 2;
  std::vector<double> prizes;  // length m, non-increasing, non-negative
  double budget = 1.0;

  void validate() const {
    if (n < 2) throw DomainError("contest: n must be >= 2");
    if (m < 2 || m > n) throw DomainError("contest: need 2 <= m <= n");
    if (static_cast<int>(prizes.size()) != m)
      throw DimensionMismatchError("contest: prize vector must have length m");
    double total = 0;
    for (size_t i = 0; i < prizes.size(); ++i) {
      if (prizes[i] < 0) throw DomainError("contest: prizes must be non-negative");
      if (i > 0 && prizes[i] > prizes[i - 1] + 1e-12)
        throw DomainError("contest: prizes must be non-increasing");
      total += prizes[i];
    }
    if (total > budget * (1 + 1e-9) + 1e-12)
      throw BudgetExceededError("contest: prizes exceed budget");
  }

  static ContestConfig winner_take_all(int n, int m, double budget = 1.0) {
    ContestConfig c{n, m, std::vector<double>(m, 0.0), budget};
    c.prizes[0] = budget;
    c.validate();
    return c;
  }

  // l equal prizes of budget/l followed by m-l empty ranks.
  static ContestConfig simple(int n, int m, int l, double budget = 1.0) {
    if (l < 1 || l > m) throw DomainError("contest: need 1 <= l <= m");
    ContestConfig c{n, m, std::vector<double>(m, 0.0), budget};
    for (int i = 0; i < l; ++i) c.prizes[i] = budget / l;
    c.validate();
    return c;
  }
};

// Tabulated equilibrium effort with monotone-cubic interpolation between
// grid abilities. Evaluates to 0 below the support and stays flat above the
// last grid point.
class EffortSchedule {
 public:
  EffortSchedule() = default;
  EffortSchedule(std::vector<double> abilities, std::vector<double> efforts)
      : interp_(std::move(abilities), std::move(efforts)) {
    const auto& b = interp_.values();
    for (size_t i = 1; i < b.size(); ++i)
      if (b[i] < b[i - 1] - 1e-12)
        throw DomainError("effort schedule: efforts must be non-decreasing");
  }

  double operator()(double x) const { return std::max(0.0, interp_(x)); }
  const std::vector<double>& grid() const { return interp_.grid(); }
  const std::vector<double>& efforts() const { return interp_.values(); }
  double top_effort() const { return interp_.values().back(); }

 private:
  MonotoneCubic interp_;
};

namespace detail {

inline void check_config(const ShortlistContext& ctx, const ContestConfig& config) {
  if (config.n != ctx.n || config.m != ctx.m)
    throw ConfigMismatchError("configuration does not match shortlist context");
}

// Marginal cost-side integrand expressed over the CDF value u; multiplying
// by f(t) dt turns it into the ability-space integrand below.
inline double equilibrium_integrand_u(const ShortlistContext& ctx,
                                      const ContestConfig& config, double u) {
  const int n = ctx.n, m = ctx.m;
  if (u <= 0) return 0.0;
  if (u >= 1) {
    // Only the l = 1 term survives and the admission probability is 1.
    const double gap = config.prizes[0] - config.prizes[1];
    return gap == 0 ? 0.0 : (n - 1) * gap * ctx.dist.support_max();
  }
  // Both the gap sum and the admission probability can underflow for large
  // n, so the ratio is assembled in log space.
  const double log_j = log_admission_probability_u(n, m, u);
  const double lu = std::log(u), lcu = std::log1p(-u);
  LogSumExp acc;
  for (int l = 1; l <= m - 1; ++l) {
    const double gap = config.prizes[l - 1] - config.prizes[l];
    if (gap == 0) continue;
    acc.add(std::log(gap * (n - l)) + log_binomial(n - 1, l - 1) +
            (n - l - 1) * lu + (l - 1) * lcu);
  }
  const double log_sum = acc.log_value();
  if (log_sum == -std::numeric_limits<double>::infinity()) return 0.0;
  const double ability = ctx.dist.inverse_cdf(u);
  return std::exp(log_sum - log_j) * ability;
}

}  // namespace detail

// Integrand of the equilibrium first-order condition at ability t: the
// prize-gap-weighted density of overtaking exactly the rank-l threshold,
// scaled by ability and normalized by the admission probability.
inline double equilibrium_integrand(const ShortlistContext& ctx,
                                    const ContestConfig& config, double t) {
  detail::check_config(ctx, config);
  return detail::equilibrium_integrand_u(ctx, config, ctx.dist.cdf(t)) *
         ctx.dist.pdf(t);
}

// Solves b(x) = g^{-1}( int_0^x integrand dt ) on a Chebyshev-in-quantile
// ability grid. The cumulative integral is computed once per grid cell and
// reused by every later point.
inline EffortSchedule solve_equilibrium(const ShortlistContext& ctx,
                                        const ContestConfig& config,
                                        const CostModel& cost, int grid_size) {
  detail::check_config(ctx, config);
  config.validate();
  if (grid_size < 64) throw DomainError("solve_equilibrium: grid_size must be >= 64");

  const double u_hi = ctx.dist.unbounded_above() ? 1.0 - kQuantileFloor : 1.0;
  std::vector<double> us(grid_size + 1);
  for (int k = 0; k <= grid_size; ++k) {
    const double theta = M_PI * k / grid_size;
    us[k] = u_hi * 0.5 * (1.0 - std::cos(theta));
  }

  Quadrature q;
  q.relative_tolerance = 1e-11;
  q.absolute_tolerance = 1e-14;
  auto integrand = [&](double u) {
    return detail::equilibrium_integrand_u(ctx, config, u);
  };
  std::vector<double> abilities(us.size()), efforts(us.size());
  double cumulative = 0;
  abilities[0] = ctx.dist.inverse_cdf(us[0]);
  efforts[0] = 0;
  for (size_t k = 1; k < us.size(); ++k) {
    cumulative += integrate(integrand, us[k - 1], us[k], q);
    abilities[k] = ctx.dist.inverse_cdf(us[k]);
    efforts[k] = cost.inverse(std::max(0.0, cumulative));
  }
  for (size_t k = 1; k < efforts.size(); ++k)
    efforts[k] = std::max(efforts[k], efforts[k - 1]);
  return EffortSchedule(std::move(abilities), std::move(efforts));
}

// Expected utility of reporting gamma (exerting the schedule's effort at
// gamma) when the true ability is x and everyone else plays the schedule.
inline double expected_utility(const ShortlistContext& ctx,
                               const ContestConfig& config, const CostModel& cost,
                               double x, double gamma,
                               const EffortSchedule& schedule) {
  detail::check_config(ctx, config);
  if (!(x > 0)) throw DomainError("expected_utility: ability must be positive");
  double value = 0;
  for (int l = 1; l <= ctx.m; ++l) {
    if (config.prizes[l - 1] == 0) continue;
    value += config.prizes[l - 1] * rank_probability(ctx, x, gamma, l);
  }
  return value - cost(schedule(gamma)) / x;
}

// Largest utility gain available from any grid deviation; a correct
// equilibrium schedule keeps this at numerical-noise level.
inline double best_response_gap(const ShortlistContext& ctx,
                                const ContestConfig& config, const CostModel& cost,
                                const EffortSchedule& schedule, double x,
                                int deviation_grid) {
  if (deviation_grid < 11)
    throw DomainError("best_response_gap: need at least 11 deviation points");
  const double truthful = expected_utility(ctx, config, cost, x, x, schedule);
  const double u_hi = ctx.dist.unbounded_above() ? 1.0 - kQuantileFloor : 1.0;
  double best = 0;
  for (int i = 0; i < deviation_grid; ++i) {
    const double u = u_hi * i / (deviation_grid - 1);
    const double gamma = ctx.dist.inverse_cdf(u);
    const double gain =
        expected_utility(ctx, config, cost, x, gamma, schedule) - truthful;
    best = std::max(best, gain);
  }
  return best;
}

}  // namespace cforge
