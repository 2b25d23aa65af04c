#pragma once

// Posterior beliefs of an admitted contestant: the admission-probability
// normalizer, joint and marginal posterior densities, subjective rank
// probabilities with their derivatives, and threat probabilities. All rank
// integrals are evaluated in CDF space so one code path serves every
// distribution.

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "cforge/distributions.hpp"
#include "cforge/error.hpp"
#include "cforge/numerics.hpp"

namespace cforge {

struct ShortlistContext {
  AbilityDistribution dist;
  int n;  // registered contestants
  int m;  // shortlist size

  ShortlistContext(AbilityDistribution d, int n_, int m_)
      : dist(std::move(d)), n(n_), m(m_) {
    if (n < 2) throw DomainError("shortlist: n must be >= 2");
    if (m < 2 || m > n) throw DomainError("shortlist: need 2 <= m <= n");
  }
};

namespace detail {

// x^e with the 0^0 = 1 convention used throughout the rank formulas.
inline double pow_int(double x, int e) {
  if (e == 0) return 1.0;
  return std::pow(x, e);
}

// log of sum over j=1..m of C(n-1,j-1) u^(n-j) (1-u)^(j-1): the prior
// probability of ranking in the top m given CDF value u.
inline double log_admission_probability_u(int n, int m, double u) {
  if (m == n) return 0.0;
  if (u <= 0) return -std::numeric_limits<double>::infinity();
  if (u >= 1) return 0.0;
  const double lu = std::log(u), lcu = std::log1p(-u);
  LogSumExp acc;
  for (int j = 1; j <= m; ++j)
    acc.add(log_binomial(n - 1, j - 1) + (n - j) * lu + (j - 1) * lcu);
  return std::min(0.0, acc.log_value());
}

inline double admission_probability_u(int n, int m, double u) {
  return std::exp(log_admission_probability_u(n, m, u));
}

}  // namespace detail

// Prior probability that a contestant with ability x ranks in the top m of
// n draws (binomial-sum form). Non-decreasing in m; equals 1 when m = n.
inline double admission_probability(const ShortlistContext& ctx, double x) {
  return detail::admission_probability_u(ctx.n, ctx.m, ctx.dist.cdf(x));
}

// Same quantity through its defining mixture of a binomial mass and an
// incomplete-beta integral; retained as an independent algebraic route.
inline double admission_probability_integral_form(const ShortlistContext& ctx,
                                                  double x) {
  const int n = ctx.n, m = ctx.m;
  const double u = ctx.dist.cdf(x);
  const double c = std::exp(log_binomial(n - 1, m - 1));
  double value = c * detail::pow_int(u, n - m) * detail::pow_int(1.0 - u, m - 1);
  value += c * (m - 1) * incomplete_beta(u, n - m + 1, m - 1);
  return value;
}

// Joint posterior density of the other admitted contestants' abilities,
// given the observer's ability x1 and everyone's admission.
inline double joint_posterior_pdf(const ShortlistContext& ctx, double x1,
                                  std::span<const double> others) {
  const int n = ctx.n, m = ctx.m;
  if (static_cast<int>(others.size()) != m - 1)
    throw DimensionMismatchError("joint_posterior_pdf: need m-1 opponents");
  const double min_other = *std::min_element(others.begin(), others.end());
  const double pivot = std::min(min_other, x1);
  double value = std::exp(log_binomial(n - 1, m - 1)) *
                 detail::pow_int(ctx.dist.cdf(pivot), n - m);
  for (double z : others) value *= ctx.dist.pdf(z);
  return value / admission_probability(ctx, x1);
}

namespace detail {

// Unnormalized marginal posterior weight (density over prior density) as a
// function of the opponent CDF value w; branch on w vs the observer's u1.
inline double marginal_weight(int n, int m, double u1, double w) {
  const double u = std::min(w, u1);
  double val = pow_int(u, n - m) * pow_int(1.0 - u, m - 2);
  if (m > 2) val += (m - 2) * incomplete_beta(u, n - m + 1, m - 2);
  return std::exp(log_binomial(n - 1, m - 1)) * val;
}

}  // namespace detail

// Posterior density of one co-admitted opponent's ability at z.
inline double marginal_posterior_pdf(const ShortlistContext& ctx, double x1,
                                     double z) {
  const double u1 = ctx.dist.cdf(x1);
  const double w = ctx.dist.cdf(z);
  return detail::marginal_weight(ctx.n, ctx.m, u1, w) * ctx.dist.pdf(z) /
         admission_probability(ctx, x1);
}

// Posterior CDF of one co-admitted opponent's ability at z.
inline double marginal_posterior_cdf(const ShortlistContext& ctx, double x1,
                                     double z) {
  const int n = ctx.n, m = ctx.m;
  const double u1 = ctx.dist.cdf(x1);
  const double w = ctx.dist.cdf(z);
  const double logc = log_binomial(n - 1, m - 1);
  const double j = admission_probability(ctx, x1);

  // int_0^y B_u(a, m-2) du expressed through regularized incomplete betas.
  auto beta_cum = [&](double y) {
    if (m == 2) return 0.0;
    const double a = static_cast<double>(n - m + 1);
    const double b = static_cast<double>(m - 2);
    return std::exp(log_beta(a, b)) * reg_inc_beta_integral(y, a, b);
  };

  const double below = std::min(w, u1);
  double cdf = std::exp(logc) * (incomplete_beta(below, n - m + 1, m - 1) +
                                 (m - 2) * beta_cum(below));
  if (w > u1) {
    double tail = detail::pow_int(u1, n - m) * detail::pow_int(1.0 - u1, m - 2);
    if (m > 2) tail += (m - 2) * incomplete_beta(u1, n - m + 1, m - 2);
    cdf += std::exp(logc) * (w - u1) * tail;
  }
  return std::min(1.0, cdf / j);
}

// Perceived probability that reporting ability gamma yields rank l (1 =
// best among the m admitted), given true ability x. Continuous in gamma.
inline double rank_probability(const ShortlistContext& ctx, double x,
                               double gamma, int l) {
  const int n = ctx.n, m = ctx.m;
  if (l < 1 || l > m) throw RankOutOfRangeError("rank_probability: l outside [1,m]");
  const double u = ctx.dist.cdf(x);
  const double w = ctx.dist.cdf(gamma);
  const double j = admission_probability(ctx, x);

  // At gamma = x both piecewise branches share this limit; evaluating it
  // directly avoids last-ulp disagreement between them.
  if (std::abs(gamma - x) < 1e-12 || w == u) {
    if (l < m)
      return std::exp(log_binomial(n - 1, l - 1)) * detail::pow_int(u, n - l) *
             detail::pow_int(1.0 - u, l - 1) / j;
    return std::exp(log_binomial(n - 1, m - 1)) * detail::pow_int(u, n - m) *
           detail::pow_int(1.0 - u, m - 1) / j;
  }

  if (w < u) {
    if (l < m)
      return std::exp(log_binomial(n - 1, l - 1)) * detail::pow_int(w, n - l) *
             detail::pow_int(1.0 - w, l - 1) / j;
    double val = detail::pow_int(u, n - m) * detail::pow_int(1.0 - u, m - 1);
    val += (m - 1) * (incomplete_beta(u, n - m + 1, m - 1) -
                      incomplete_beta(w, n - m + 1, m - 1));
    return std::exp(log_binomial(n - 1, m - 1)) * val / j;
  }

  // Reported ability above the true one (w > u).
  if (l == m)
    return std::exp(log_binomial(n - 1, m - 1)) * detail::pow_int(u, n - m) *
           detail::pow_int(1.0 - w, m - 1) / j;
  double inner = detail::pow_int(u, n - m) * detail::pow_int(w - u, m - l);
  // int_0^u t^(n-m) (w-t)^(m-l-1) dt = w^(n-l) B_{u/w}(n-m+1, m-l).
  inner += (m - l) * detail::pow_int(w, n - l) *
           incomplete_beta(u / w, n - m + 1, m - l);
  return std::exp(log_binomial(n - 1, m - 1) + log_binomial(m - 1, l - 1)) *
         detail::pow_int(1.0 - w, l - 1) * inner / j;
}

// d/dgamma of rank_probability, evaluated at the truthful report gamma = x.
inline double rank_probability_derivative(const ShortlistContext& ctx, double x,
                                          int l) {
  const int n = ctx.n, m = ctx.m;
  if (l < 1 || l > m)
    throw RankOutOfRangeError("rank_probability_derivative: l outside [1,m]");
  const double u = ctx.dist.cdf(x);
  const double f = ctx.dist.pdf(x);
  const double j = admission_probability(ctx, x);
  if (l == m)
    return -std::exp(log_binomial(n - 1, m - 1)) * (m - 1) *
           detail::pow_int(u, n - m) * detail::pow_int(1.0 - u, m - 2) * f / j;
  double val = (n - l) * detail::pow_int(u, n - l - 1) *
               detail::pow_int(1.0 - u, l - 1);
  if (l > 1)
    val -= (l - 1) * detail::pow_int(u, n - l) * detail::pow_int(1.0 - u, l - 2);
  return std::exp(log_binomial(n - 1, l - 1)) * val * f / j;
}

// Posterior probability that the l-th strongest opponent is no stronger
// than the observer. Requires l < m.
inline double threat_probability(const ShortlistContext& ctx, double x1, int l) {
  const int n = ctx.n, m = ctx.m;
  if (l < 1 || l >= m)
    throw RankOutOfRangeError("threat_probability: need 1 <= l < m");
  const double u = ctx.dist.cdf(x1);
  const double j = admission_probability(ctx, x1);
  return (n - 1) * std::exp(log_binomial(n - 2, l - 1)) *
         incomplete_beta(u, n - l, l) / j;
}

}  // namespace cforge
