#pragma once

// Monte Carlo ground truth: plays the contest end to end (draw abilities,
// shortlist, tabulated equilibrium efforts, rank-order prize allocation)
// and estimates effort objectives, rank frequencies, and empirical
// posteriors with confidence intervals. Estimates are bit-reproducible for
// a fixed (seed, trials, worker count).

#include <algorithm>
#include <cmath>
#include <numeric>
#include <thread>
#include <vector>

#include "cforge/beliefs.hpp"
#include "cforge/distributions.hpp"
#include "cforge/equilibrium.hpp"
#include "cforge/error.hpp"
#include "cforge/numerics.hpp"

namespace cforge {

struct ContestOutcome {
  std::vector<double> abilities;       // length n
  std::vector<int> admitted;           // indices of the m admitted, by rank of ability
  std::vector<double> efforts;         // length n, zero for eliminated
  std::vector<int> ranks;              // admitted indices ordered by effort rank
  std::vector<double> prizes_awarded;  // length n
  std::vector<double> utilities;       // length n
};

struct EstimateWithCI {
  double mean = 0;
  double standard_error = 0;
  long trials = 0;
  std::uint64_t seed = 0;

  double z_score(double reference) const {
    return standard_error > 0 ? (mean - reference) / standard_error : 0.0;
  }
};

namespace detail {

// Indices of the top-m abilities, ties broken toward the lower index.
inline void top_m_indices(const std::vector<double>& abilities, int m,
                          std::vector<int>& out) {
  const int n = static_cast<int>(abilities.size());
  out.resize(n);
  std::iota(out.begin(), out.end(), 0);
  std::partial_sort(out.begin(), out.begin() + m, out.end(),
                    [&](int a, int b) {
                      if (abilities[a] != abilities[b])
                        return abilities[a] > abilities[b];
                      return a < b;
                    });
  out.resize(m);
}

}  // namespace detail

// Plays one contest. Eliminated contestants exert zero effort and earn zero
// utility; prizes go to admitted contestants in non-increasing effort order.
inline ContestOutcome run_contest(const ContestConfig& config,
                                  const AbilityDistribution& dist,
                                  const CostModel& cost,
                                  const EffortSchedule& schedule,
                                  RandomStream& stream) {
  config.validate();
  const int n = config.n, m = config.m;
  ContestOutcome out;
  out.abilities.resize(n);
  for (int i = 0; i < n; ++i)
    out.abilities[i] = dist.inverse_cdf(stream.next_double());

  detail::top_m_indices(out.abilities, m, out.admitted);

  out.efforts.assign(n, 0.0);
  for (int idx : out.admitted) out.efforts[idx] = schedule(out.abilities[idx]);

  out.ranks = out.admitted;
  std::sort(out.ranks.begin(), out.ranks.end(), [&](int a, int b) {
    if (out.efforts[a] != out.efforts[b]) return out.efforts[a] > out.efforts[b];
    return a < b;
  });

  out.prizes_awarded.assign(n, 0.0);
  out.utilities.assign(n, 0.0);
  for (int r = 0; r < m; ++r) {
    const int idx = out.ranks[r];
    out.prizes_awarded[idx] = config.prizes[r];
    out.utilities[idx] =
        config.prizes[r] - cost(out.efforts[idx]) / out.abilities[idx];
  }
  return out;
}

// Monte Carlo estimates of total and maximum effort. Workers own disjoint
// streams (stream id = worker index) over contiguous trial chunks; the
// partial sums are merged in fixed worker order.
inline std::pair<EstimateWithCI, EstimateWithCI> estimate_objectives(
    const ContestConfig& config, const AbilityDistribution& dist,
    const CostModel& cost, const EffortSchedule& schedule, long trials,
    std::uint64_t seed, int workers = 1) {
  config.validate();
  if (trials < 1000) throw DomainError("estimate_objectives: trials must be >= 1000");
  if (workers < 1) throw DomainError("estimate_objectives: workers must be >= 1");
  workers = static_cast<int>(std::min<long>(workers, trials));

  struct Partial {
    double te = 0, te2 = 0, me = 0, me2 = 0;
  };
  std::vector<Partial> partials(workers);

  auto run_chunk = [&](int w, long count) {
    RandomStream stream(seed, static_cast<std::uint64_t>(w));
    Partial acc;
    const int n = config.n, m = config.m;
    std::vector<double> abilities(n);
    std::vector<int> top;
    for (long t = 0; t < count; ++t) {
      for (int i = 0; i < n; ++i)
        abilities[i] = dist.inverse_cdf(stream.next_double());
      detail::top_m_indices(abilities, m, top);
      double total = 0, best = 0;
      for (int idx : top) {
        const double e = schedule(abilities[idx]);
        total += e;
        best = std::max(best, e);
      }
      acc.te += total;
      acc.te2 += total * total;
      acc.me += best;
      acc.me2 += best * best;
    }
    partials[w] = acc;
  };

  const long base = trials / workers, extra = trials % workers;
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) {
    const long count = base + (w < extra ? 1 : 0);
    pool.emplace_back(run_chunk, w, count);
  }
  for (auto& th : pool) th.join();

  Partial total;
  for (const auto& p : partials) {
    total.te += p.te;
    total.te2 += p.te2;
    total.me += p.me;
    total.me2 += p.me2;
  }
  auto finish = [&](double sum, double sum2) {
    EstimateWithCI est;
    est.trials = trials;
    est.seed = seed;
    est.mean = sum / trials;
    const double var =
        std::max(0.0, (sum2 - sum * sum / trials) / (trials - 1));
    est.standard_error = std::sqrt(var / trials);
    return est;
  };
  return {finish(total.te, total.te2), finish(total.me, total.me2)};
}

struct EmpiricalPosterior {
  std::vector<double> samples;  // sorted opponent abilities
  double ks_distance = 0;       // vs the analytic posterior CDF at bucket midpoint
  double ks_critical_1pct = 0;
  double acceptance_rate = 0;
  double bucket_midpoint = 0;
};

// Conditional sampler for the posterior of a co-admitted opponent's
// ability. The observer's ability is drawn from the prior restricted to
// [bucket_lo, bucket_hi] (the same conditional law as rejecting prior draws
// outside the bucket); the draw is accepted when the observer lands in the
// top m, and one co-admitted opponent is recorded.
inline EmpiricalPosterior empirical_posterior(const AbilityDistribution& dist,
                                              int n, int m, double bucket_lo,
                                              double bucket_hi,
                                              long accepted_target,
                                              std::uint64_t seed) {
  if (!(bucket_lo < bucket_hi))
    throw DomainError("empirical_posterior: empty ability bucket");
  const ShortlistContext ctx(dist, n, m);
  const double p_lo = dist.cdf(bucket_lo), p_hi = dist.cdf(bucket_hi);
  if (!(p_hi > p_lo))
    throw DomainError("empirical_posterior: bucket has zero prior mass");

  RandomStream stream(seed, 0);
  EmpiricalPosterior result;
  result.samples.reserve(accepted_target);
  std::vector<double> opponents(n - 1);
  long attempts = 0;
  while (static_cast<long>(result.samples.size()) < accepted_target) {
    ++attempts;
    if (attempts > 1000000 && result.samples.size() <
                                  static_cast<size_t>(attempts) / 10000)
      throw AcceptanceTooLowError(
          "empirical_posterior: acceptance rate below 1e-4");
    const double x1 =
        dist.inverse_cdf(p_lo + (p_hi - p_lo) * stream.next_double());
    int stronger = 0;
    for (int i = 0; i < n - 1; ++i) {
      opponents[i] = dist.inverse_cdf(stream.next_double());
      if (opponents[i] > x1) ++stronger;
    }
    if (stronger > m - 1) continue;  // observer eliminated
    // The co-admitted opponents are the m-1 strongest rivals; record one
    // uniformly at random.
    std::nth_element(opponents.begin(), opponents.begin() + (m - 2),
                     opponents.end(), std::greater<double>());
    const int pick = static_cast<int>(stream.next_double() * (m - 1));
    result.samples.push_back(opponents[std::min(pick, m - 2)]);
  }
  result.acceptance_rate =
      static_cast<double>(result.samples.size()) / attempts;
  std::sort(result.samples.begin(), result.samples.end());

  result.bucket_midpoint = 0.5 * (bucket_lo + bucket_hi);
  const long count = static_cast<long>(result.samples.size());
  double ks = 0;
  for (long i = 0; i < count; ++i) {
    const double analytic =
        marginal_posterior_cdf(ctx, result.bucket_midpoint, result.samples[i]);
    const double lo = static_cast<double>(i) / count;
    const double hi = static_cast<double>(i + 1) / count;
    ks = std::max({ks, std::abs(analytic - lo), std::abs(analytic - hi)});
  }
  result.ks_distance = ks;
  result.ks_critical_1pct = std::sqrt(-0.5 * std::log(0.005)) / std::sqrt(count);
  return result;
}

}  // namespace cforge
