#pragma once

// Ex-ante effort objectives for simple contests: the distribution-free
// kernels of the quantile representation, total/maximum effort through that
// representation, the beta-distribution form for complete simple contests,
// and the asymptotic admission-ratio machinery.

#include <cmath>
#include <string>
#include <vector>

#include "cforge/beliefs.hpp"
#include "cforge/distributions.hpp"
#include "cforge/error.hpp"
#include "cforge/numerics.hpp"

namespace cforge {

// Simple contest: l equal prizes of 1/l among m admitted out of n (budget
// normalized to 1).
struct SimpleContestSpec {
  int n;
  int m;
  int l;

  SimpleContestSpec(int n_, int m_, int l_) : n(n_), m(m_), l(l_) {
    if (n < 2) throw DomainError("simple contest: n must be >= 2");
    if (m < 2 || m > n) throw DomainError("simple contest: need 2 <= m <= n");
    if (l < 1 || l > m) throw DomainError("simple contest: need 1 <= l <= m");
  }

  static SimpleContestSpec complete(int n, int m) {
    return SimpleContestSpec(n, m, m - 1);
  }
};

enum class EffortObjective { Total, Max };

namespace detail {

// log of C(n-1,l) (1-t)^(n-l-1) t^(l-1), the rank-l overtaking factor of the
// kernel prefactor in top-quantile space.
inline double log_kernel_prefactor(int n, int l, double t) {
  return log_binomial(n - 1, l) + (n - l - 1) * std::log1p(-t) +
         (l - 1) * std::log(t);
}

// log of sum_j C(n-1,j-1) (1-t)^(n-j) t^(j-1): the admission probability at
// top-quantile t. The sum telescopes to a regularized incomplete beta,
// which is cheaper than the m-term log-sum once m grows.
inline double log_admission_q(int n, int m, double t) {
  if (m == n) return 0.0;
  if (m > 40)
    return std::min(0.0, log_reg_inc_beta(1.0 - t, static_cast<double>(n - m),
                                          static_cast<double>(m)));
  const double lt = std::log(t), lct = std::log1p(-t);
  LogSumExp acc;
  for (int j = 1; j <= m; ++j)
    acc.add(log_binomial(n - 1, j - 1) + (n - j) * lct + (j - 1) * lt);
  return std::min(0.0, acc.log_value());
}

// int_0^t of the admission probability, in closed form through regularized
// incomplete betas.
inline double admission_q_cumulative(int n, int m, double t) {
  if (t <= 0) return 0.0;
  if (t >= 1) return static_cast<double>(m) / n;
  if (m == n) return t;
  if (t < 1e-7) {
    // The integrand decreases from 1; bracket the average by its endpoints.
    const double zeta = std::exp(log_admission_q(n, m, t));
    return t * 0.5 * (1.0 + zeta);
  }
  const double a = static_cast<double>(n - m);
  const double b = static_cast<double>(m);
  const double value = b / n - (1.0 - t) * reg_inc_beta(1.0 - t, a, b) +
                       a / n * reg_inc_beta(1.0 - t, a + 1.0, b);
  return std::max(0.0, value);
}

}  // namespace detail

// Distribution-free kernel of the quantile representation at top-quantile
// t: the rank-l prize-gap factor divided by the admission probability,
// times the cumulative weight of abilities above t (Total) or only the
// overall-best ability (Max).
inline double effort_kernel(const SimpleContestSpec& spec, double t,
                            EffortObjective which) {
  if (!(t > 0) || !(t < 1))
    throw DomainError("effort_kernel: t must lie in (0,1)");
  const int n = spec.n, m = spec.m, l = spec.l;
  const double log_ratio = detail::log_kernel_prefactor(n, l, t) -
                           detail::log_admission_q(n, m, t);
  const double inner =
      which == EffortObjective::Total
          ? detail::admission_q_cumulative(n, m, t)
          : -std::expm1(n * std::log1p(-t)) / n;
  return std::exp(log_ratio) * inner;
}

// Tabulated kernel G and its cumulative H(q) = int_0^q G on a grid graded
// toward q = 0, where the kernel has its 1/n-scale boundary layer.
struct KernelTable {
  SimpleContestSpec spec;
  EffortObjective objective;
  std::vector<double> qs;
  std::vector<double> g;
  std::vector<double> h;

  static KernelTable build(const SimpleContestSpec& spec,
                           EffortObjective objective, int grid_size = 4096) {
    if (grid_size < 16) throw DomainError("kernel table: grid too small");
    KernelTable table{spec, objective, {}, {}, {}};
    table.qs.resize(grid_size + 1);
    table.g.resize(grid_size + 1);
    table.h.resize(grid_size + 1);
    for (int i = 0; i <= grid_size; ++i) {
      const double s = static_cast<double>(i) / grid_size;
      table.qs[i] = s * s;
    }
    table.qs.back() = 1.0;
    table.g[0] = 0.0;
    for (int i = 1; i <= grid_size; ++i) {
      const double q = std::min(table.qs[i], 1.0 - 1e-15);
      table.g[i] = effort_kernel(spec, q, objective);
    }
    table.h[0] = 0.0;
    for (int i = 1; i <= grid_size; ++i)
      table.h[i] = table.h[i - 1] + 0.5 * (table.g[i] + table.g[i - 1]) *
                                        (table.qs[i] - table.qs[i - 1]);
    return table;
  }

  double h_at(double q) const {
    if (q <= 0) return 0.0;
    if (q >= 1) return h.back();
    const size_t i = std::upper_bound(qs.begin(), qs.end(), q) - qs.begin() - 1;
    const double w = (q - qs[i]) / (qs[i + 1] - qs[i]);
    return h[i] + w * (h[i + 1] - h[i]);
  }
};

namespace detail {

inline std::vector<double> kernel_splits(const SimpleContestSpec& spec) {
  std::vector<double> splits;
  const double n = spec.n;
  for (double s : {0.25 * spec.l / n, 1.0 * spec.l / n, 4.0 * spec.l / n,
                   1.0 * spec.m / n, 4.0 * spec.m / n, 0.5})
    if (s > 0 && s < 1) splits.push_back(s);
  return splits;
}

inline double effort_objective_value(const AbilityDistribution& dist,
                                     const SimpleContestSpec& spec,
                                     EffortObjective which) {
  if (spec.l == spec.m) return 0.0;  // trivial simple contest: no prize gap
  Quadrature q;
  q.relative_tolerance = 1e-10;
  q.absolute_tolerance = 1e-13;
  auto integrand = [&](double t) {
    return effort_kernel(spec, t, which) * dist.quantile_value(t);
  };
  return spec.n * integrate(integrand, 0.0, 1.0, q, kernel_splits(spec));
}

}  // namespace detail

// Ex-ante total equilibrium effort of a simple contest under linear unit
// cost, through the quantile representation.
inline double total_effort(const AbilityDistribution& dist,
                           const SimpleContestSpec& spec) {
  return detail::effort_objective_value(dist, spec, EffortObjective::Total);
}

// Ex-ante expected effort of the strongest registrant.
inline double max_effort(const AbilityDistribution& dist,
                         const SimpleContestSpec& spec) {
  return detail::effort_objective_value(dist, spec, EffortObjective::Max);
}

// Total effort of the complete simple contest (m admitted, m-1 prizes)
// through the beta-distribution representation. Requires m < n.
inline double total_effort_beta_rep(const AbilityDistribution& dist, int n,
                                    int m) {
  if (m < 2 || m >= n)
    throw DomainError("total_effort_beta_rep: need 2 <= m < n");
  const double a = static_cast<double>(n - m);
  const double b = static_cast<double>(m);

  Quadrature quad;
  quad.relative_tolerance = 1e-10;
  quad.absolute_tolerance = 1e-13;

  const double mu1 = (n - m) / static_cast<double>(n - 1);
  const double sigma = std::sqrt(mu1 * (1.0 - mu1) / n);
  std::vector<double> splits;
  for (double s : {mu1 - 6 * sigma, mu1 - 2 * sigma, mu1, mu1 + 2 * sigma,
                   mu1 + 6 * sigma})
    if (s > 0 && s < 1) splits.push_back(s);

  auto first = [&](double q) {
    return dist.inverse_cdf(q) * beta_pdf(q, a + 1.0, b);
  };
  const double term1 = integrate(first, 0.0, 1.0, quad, splits);

  auto second = [&](double q) {
    const double log_ratio =
        log_beta_pdf(q, a, b) - log_reg_inc_beta(q, a, b);
    const double upper = reg_inc_beta(1.0 - q, b + 1.0, a);
    return dist.inverse_cdf(q) * (q / (1.0 - q)) * (m / a) *
           std::exp(log_ratio) * upper;
  };
  const double term2 = integrate(second, 0.0, 1.0, quad, splits);
  return term1 + term2;
}

// Limit of (total effort)/n for complete simple contests with admission
// ratio k, as a function of the prior through its inverse CDF.
inline double asymptotic_effort_rate(const AbilityDistribution& dist, double k) {
  if (!(k > 0) || !(k < 1))
    throw DomainError("asymptotic_effort_rate: k must lie in (0,1)");
  Quadrature quad;
  quad.relative_tolerance = 1e-10;
  quad.absolute_tolerance = 1e-13;
  auto integrand = [&](double q) {
    const double cq = 1.0 - q;
    return dist.inverse_cdf(q) * (k / (1.0 - k)) * (cq - k) / (cq * cq);
  };
  return integrate(integrand, 0.0, 1.0 - k, quad);
}

// Left-hand side of the first-order condition for the asymptotically
// optimal admission ratio; its sign change over (0,1) brackets the optimum.
inline double shortlist_ratio_foc(const AbilityDistribution& dist, double k) {
  if (!(k > 0) || !(k < 1))
    throw DomainError("shortlist_ratio_foc: k must lie in (0,1)");
  const double q0 = 2.0 * k - k * k;
  Quadrature quad;
  quad.relative_tolerance = 1e-11;
  // The integral crosses zero at the optimum; an absolute floor below the
  // integrand's roundoff level would never be reached there.
  quad.absolute_tolerance = 1e-12;
  auto integrand = [&](double q) {
    return dist.quantile_value(q) * (1.0 / q - q0 / (q * q));
  };
  std::vector<double> splits;
  if (q0 > k && q0 < 1) splits.push_back(q0);
  return integrate(integrand, k, 1.0, quad, splits);
}

}  // namespace cforge
