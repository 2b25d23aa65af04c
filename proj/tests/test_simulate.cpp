#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numeric>
#include <vector>

#include "cforge/design.hpp"
#include "cforge/simulate.hpp"

using namespace cforge;

namespace {
const auto kUniform = AbilityDistribution::uniform(0, 1);
const auto kPower2 = AbilityDistribution::power(2);
}  // namespace

TEST_CASE("contest outcomes: full field and trivial prizes", "[simulate]") {
  // m = n: nobody eliminated, every contestant exerts the schedule effort.
  {
    const ShortlistContext ctx(kUniform, 4, 4);
    const auto config = ContestConfig::simple(4, 4, 3);
    const auto schedule =
        solve_equilibrium(ctx, config, CostModel::linear(), 128);
    RandomStream stream(3, 0);
    const auto out = run_contest(config, kUniform, CostModel::linear(),
                                 schedule, stream);
    CHECK(out.admitted.size() == 4);
    for (int i = 0; i < 4; ++i)
      CHECK(out.efforts[i] ==
            Catch::Approx(schedule(out.abilities[i])).margin(1e-12));
  }

  // Trivial simple contest: zero effort, every admitted utility is V1.
  {
    const ShortlistContext ctx(kUniform, 5, 3);
    const auto config = ContestConfig::simple(5, 3, 3);
    const auto schedule =
        solve_equilibrium(ctx, config, CostModel::linear(), 128);
    RandomStream stream(4, 0);
    const auto out = run_contest(config, kUniform, CostModel::linear(),
                                 schedule, stream);
    for (int idx : out.admitted) {
      CHECK(out.efforts[idx] == 0.0);
      CHECK(out.utilities[idx] == Catch::Approx(1.0 / 3));
    }
  }
}

TEST_CASE("contest outcomes: shortlist, ranking, and conservation",
          "[simulate]") {
  const ShortlistContext ctx(kUniform, 3, 2);
  const auto config = ContestConfig::winner_take_all(3, 2);
  const auto schedule = solve_equilibrium(ctx, config, CostModel::linear(), 128);
  RandomStream stream(12, 0);
  for (int trial = 0; trial < 200; ++trial) {
    const auto out =
        run_contest(config, kUniform, CostModel::linear(), schedule, stream);

    // Admitted = top-2 abilities; winner = higher ability (b monotone).
    std::vector<int> order{0, 1, 2};
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      return out.abilities[a] > out.abilities[b];
    });
    CHECK(out.admitted == std::vector<int>{order[0], order[1]});
    CHECK(out.ranks.front() == order[0]);
    CHECK(out.prizes_awarded[order[0]] == 1.0);

    // Eliminated contestants exert nothing and earn nothing.
    CHECK(out.efforts[order[2]] == 0.0);
    CHECK(out.utilities[order[2]] == 0.0);

    const double paid = std::accumulate(out.prizes_awarded.begin(),
                                        out.prizes_awarded.end(), 0.0);
    CHECK(paid == Catch::Approx(1.0));
  }
}

TEST_CASE("objective estimates match analytic values", "[simulate]") {
  // n=m=2 winner-take-all: TE = 1/3 exactly.
  {
    const ShortlistContext ctx(kUniform, 2, 2);
    const auto config = ContestConfig::winner_take_all(2, 2);
    const auto schedule =
        solve_equilibrium(ctx, config, CostModel::linear(), 256);
    const auto [te, me] = estimate_objectives(config, kUniform,
                                              CostModel::linear(), schedule,
                                              1000000, 2024, 2);
    CHECK(std::abs(te.mean - 1.0 / 3) <= 3 * te.standard_error);
    CHECK(me.mean <= te.mean);
  }

  // Complete simple contest (10, 3): the beta representation is the oracle.
  {
    const ShortlistContext ctx(kUniform, 10, 3);
    const auto config = ContestConfig::simple(10, 3, 2);
    const auto schedule =
        solve_equilibrium(ctx, config, CostModel::linear(), 512);
    const auto [te, me] = estimate_objectives(config, kUniform,
                                              CostModel::linear(), schedule,
                                              200000, 7, 2);
    const double analytic = total_effort_beta_rep(kUniform, 10, 3);
    CHECK(std::abs(te.mean - analytic) <= 3 * te.standard_error);
  }
}

TEST_CASE("zero budget produces exactly zero effort estimates", "[simulate]") {
  const ShortlistContext ctx(kUniform, 4, 2);
  ContestConfig config{4, 2, {0.0, 0.0}, 0.0};
  const auto schedule = solve_equilibrium(ctx, config, CostModel::linear(), 128);
  const auto [te, me] = estimate_objectives(config, kUniform,
                                            CostModel::linear(), schedule,
                                            1000, 5, 1);
  CHECK(te.mean == 0.0);
  CHECK(me.mean == 0.0);
  CHECK(te.standard_error == 0.0);
}

TEST_CASE("estimates are bit-identical for fixed seed and workers",
          "[simulate]") {
  const ShortlistContext ctx(kPower2, 6, 3);
  const auto config = ContestConfig::simple(6, 3, 2);
  const auto schedule = solve_equilibrium(ctx, config, CostModel::linear(), 256);
  for (int workers : {1, 3}) {
    const auto a = estimate_objectives(config, kPower2, CostModel::linear(),
                                       schedule, 50000, 99, workers);
    const auto b = estimate_objectives(config, kPower2, CostModel::linear(),
                                       schedule, 50000, 99, workers);
    CHECK(a.first.mean == b.first.mean);
    CHECK(a.first.standard_error == b.first.standard_error);
    CHECK(a.second.mean == b.second.mean);
    CHECK(a.second.standard_error == b.second.standard_error);
  }
  CHECK_THROWS_AS(estimate_objectives(config, kPower2, CostModel::linear(),
                                      schedule, 100, 99, 1),
                  DomainError);
}

TEST_CASE("admission frequency matches the analytic admission probability",
          "[simulate]") {
  const ShortlistContext ctx(kUniform, 6, 2);
  const double x = 0.7;
  RandomStream stream(31, 0);
  const long trials = 400000;
  long admitted = 0;
  for (long t = 0; t < trials; ++t) {
    int stronger = 0;
    for (int i = 0; i < 5; ++i)
      if (stream.next_double() > x) ++stronger;
    if (stronger <= 1) ++admitted;
  }
  const double freq = static_cast<double>(admitted) / trials;
  const double analytic = admission_probability(ctx, x);
  const double se = std::sqrt(analytic * (1 - analytic) / trials);
  CHECK(std::abs(freq - analytic) <= 3 * se);
}

TEST_CASE("truthful play beats fixed deviations in realized utility",
          "[simulate]") {
  // Full shortlist (m = n), where the schedule is a global best response.
  const ShortlistContext ctx(kUniform, 3, 3);
  ContestConfig config{3, 3, {0.7, 0.3, 0.0}, 1.0};
  const auto schedule = solve_equilibrium(ctx, config, CostModel::linear(), 256);
  const double x = 0.55;
  for (double gamma : {0.15, 0.35, 0.75, 0.95}) {
    RandomStream truthful_stream(77, 0), deviate_stream(77, 0);
    double truthful_sum = 0, deviate_sum = 0, sq = 0;
    const long trials = 300000;
    for (long t = 0; t < trials; ++t) {
      // Common random numbers for the two arms.
      const double o1 = truthful_stream.next_double();
      const double o2 = truthful_stream.next_double();
      (void)deviate_stream;
      auto play = [&](double report) {
        int beat = 0;
        if (schedule(o1) > schedule(report)) ++beat;
        if (schedule(o2) > schedule(report)) ++beat;
        return config.prizes[beat] - schedule(report) / x;
      };
      const double diff = play(x) - play(gamma);
      truthful_sum += play(x);
      deviate_sum += play(gamma);
      sq += diff * diff;
    }
    const double mean_diff = (truthful_sum - deviate_sum) / trials;
    const double var = (sq - trials * mean_diff * mean_diff) / (trials - 1);
    const double se = std::sqrt(std::max(var, 0.0) / trials);
    CHECK(mean_diff >= -3 * se);
  }
}

TEST_CASE("empirical posterior: no-information case matches the prior",
          "[simulate]") {
  const auto result = empirical_posterior(kUniform, 4, 4, 0.35, 0.65, 100000, 5);
  CHECK(result.ks_distance < result.ks_critical_1pct);
  CHECK(result.acceptance_rate == Catch::Approx(1.0));
}

TEST_CASE("empirical posterior matches the analytic marginal", "[simulate]") {
  const auto result = empirical_posterior(kPower2, 5, 2, 0.58, 0.62, 100000, 6);
  CHECK(result.ks_distance < result.ks_critical_1pct);
  CHECK(static_cast<long>(result.samples.size()) == 100000);
}

TEST_CASE("empirical posterior flags hopeless conditioning", "[simulate]") {
  // A bottom-quantile observer essentially never reaches the top two of 40.
  CHECK_THROWS_AS(empirical_posterior(kUniform, 40, 2, 0.0, 0.01, 1000, 7),
                  AcceptanceTooLowError);
  CHECK_THROWS_AS(empirical_posterior(kUniform, 5, 2, 0.6, 0.6, 1000, 7),
                  DomainError);
}

TEST_CASE("conditional rank frequencies match the belief formulas",
          "[simulate]") {
  const ShortlistContext ctx(kUniform, 5, 3);
  const double x = 0.6;
  RandomStream stream(13, 0);
  const long trials = 1500000;
  long accepted = 0;
  long counts[3] = {0, 0, 0};
  double opp[4];
  for (long t = 0; t < trials; ++t) {
    int stronger = 0;
    for (int i = 0; i < 4; ++i) {
      opp[i] = stream.next_double();
      if (opp[i] > x) ++stronger;
    }
    if (stronger > 2) continue;
    ++accepted;
    ++counts[stronger];
  }
  for (int l = 1; l <= 3; ++l) {
    const double freq = static_cast<double>(counts[l - 1]) / accepted;
    const double analytic = rank_probability(ctx, x, x, l);
    const double se = std::sqrt(analytic * (1 - analytic) / accepted);
    CHECK(std::abs(freq - analytic) <= 3 * se);
  }
}
