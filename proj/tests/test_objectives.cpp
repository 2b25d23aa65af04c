#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "cforge/objectives.hpp"
#include "oracles.hpp"

using namespace cforge;

namespace {
const auto kUniform = AbilityDistribution::uniform(0, 1);
const auto kPower2 = AbilityDistribution::power(2);
}  // namespace

TEST_CASE("effort kernel: domain, limits, and ordering", "[objectives]") {
  const SimpleContestSpec spec(6, 3, 2);
  CHECK_THROWS_AS(effort_kernel(spec, 0.0, EffortObjective::Total), DomainError);
  CHECK_THROWS_AS(effort_kernel(spec, 1.0, EffortObjective::Total), DomainError);

  // Vanishes as t -> 0+.
  CHECK(effort_kernel(spec, 1e-9, EffortObjective::Total) <= 1e-8);
  CHECK(effort_kernel(spec, 1e-9, EffortObjective::Max) <= 1e-8);

  // The best-ability weight is one summand of the full admission weight.
  for (double t = 0.02; t < 1.0; t += 0.02)
    REQUIRE(effort_kernel(spec, t, EffortObjective::Max) <=
            effort_kernel(spec, t, EffortObjective::Total) + 1e-14);
}

TEST_CASE("effort kernel matches a literal evaluation", "[objectives]") {
  // n=3, m=2, l=1 at t=0.5, against direct quadrature of the defining
  // expression.
  const SimpleContestSpec spec(3, 2, 1);
  const double t = 0.5;
  const double prefactor = std::exp(log_binomial(2, 1)) * std::pow(1 - t, 1) *
                           std::pow(t, 0);
  Quadrature q;
  q.relative_tolerance = 1e-12;
  const double inner =
      integrate([&](double p) { return oracles::zeta(3, 2, p); }, 0.0, t, q);
  const double expected = prefactor / oracles::zeta(3, 2, t) * inner;
  CHECK(effort_kernel(spec, t, EffortObjective::Total) ==
        Catch::Approx(expected).epsilon(1e-10));

  // Max variant swaps the cumulative weight for int_0^t (1-p)^(n-1) dp.
  const double inner_max =
      integrate([&](double p) { return std::pow(1 - p, 2); }, 0.0, t, q);
  CHECK(effort_kernel(spec, t, EffortObjective::Max) ==
        Catch::Approx(prefactor / oracles::zeta(3, 2, t) * inner_max)
            .epsilon(1e-10));
}

TEST_CASE("cumulative admission weight obeys the min{1, m/(nq)} envelope",
          "[objectives]") {
  for (auto [n, m] : std::vector<std::pair<int, int>>{
           {8, 8}, {12, 4}, {40, 9}, {100, 31}}) {
    for (double t : {0.01, 0.05, 0.2, 0.5, 0.9}) {
      const double avg = detail::admission_q_cumulative(n, m, t) / t;
      const double cap = std::min(1.0, static_cast<double>(m) / (n * t));
      REQUIRE(avg <= cap * (1 + 1e-9));
      REQUIRE(avg >= 0.25 * cap * (1 - 1e-9));
    }
  }
}

TEST_CASE("total effort: trivial contest and the two-player closed form",
          "[objectives]") {
  CHECK(total_effort(kUniform, SimpleContestSpec(5, 3, 3)) == 0.0);
  CHECK(max_effort(kUniform, SimpleContestSpec(5, 3, 3)) == 0.0);

  // n=m=2 winner-take-all: b(x) = x^2/2, so TE = E[x1^2/2 + x2^2/2] = 1/3.
  CHECK(total_effort(kUniform, SimpleContestSpec(2, 2, 1)) ==
        Catch::Approx(1.0 / 3).epsilon(1e-9));
}

TEST_CASE("quantile representation equals order-statistics expectations",
          "[objectives]") {
  for (const auto& dist : {kUniform, kPower2}) {
    for (auto [n, m, l] :
         std::vector<std::array<int, 3>>{{6, 3, 2}, {5, 2, 1}, {7, 4, 2}}) {
      const double quantile_form = total_effort(dist, SimpleContestSpec(n, m, l));
      const double order_form =
          oracles::order_statistics_total_effort(dist, n, m, l);
      REQUIRE(std::abs(quantile_form - order_form) <=
              1e-5 * std::max(quantile_form, 1e-9));

      const double max_quantile = max_effort(dist, SimpleContestSpec(n, m, l));
      const double max_order =
          oracles::order_statistics_max_effort(dist, n, m, l);
      REQUIRE(std::abs(max_quantile - max_order) <=
              1e-5 * std::max(max_quantile, 1e-9));
    }
  }
}

TEST_CASE("full-field winner-take-all total effort stays in a fixed band",
          "[objectives]") {
  // Uniform closed form is (n-1)/(n+1); the sweep should stay within 2x.
  double lo = 1e300, hi = 0;
  for (int n : {4, 8, 16, 64, 256, 512}) {
    const double s = total_effort(kUniform, SimpleContestSpec(n, n, 1));
    CHECK(s == Catch::Approx((n - 1.0) / (n + 1.0)).epsilon(1e-8));
    lo = std::min(lo, s);
    hi = std::max(hi, s);
  }
  CHECK(hi / lo < 2.0);
}

TEST_CASE("beta representation agrees with the quantile form", "[objectives]") {
  for (const auto& dist : {kUniform, kPower2}) {
    const double beta_form = total_effort_beta_rep(dist, 10, 3);
    const double quantile_form =
        total_effort(dist, SimpleContestSpec::complete(10, 3));
    CHECK(std::abs(beta_form - quantile_form) <= 1e-4 * quantile_form);
  }
  CHECK_THROWS_AS(total_effort_beta_rep(kUniform, 10, 10), DomainError);
  CHECK_THROWS_AS(total_effort_beta_rep(kUniform, 10, 11), DomainError);
}

TEST_CASE("beta representation inner ratio identity", "[objectives]") {
  // beta(q,n-m,m) / (n int_0^q beta) = (n-m)/(nq) * b(m,q)/B(m,q), where b
  // is the binomial mass C(n-1,m-1) q^(n-m) (1-q)^(m-1) and B the m-term
  // admission sum. Both sides evaluated directly at probe points.
  const int n = 10, m = 3;
  for (double q : {0.3, 0.55, 0.8}) {
    const double small_b = std::exp(log_binomial(n - 1, m - 1)) *
                           std::pow(q, n - m) * std::pow(1 - q, m - 1);
    double big_b = 0;
    for (int j = 1; j <= m; ++j)
      big_b += std::exp(log_binomial(n - 1, j - 1)) * std::pow(q, n - j) *
               std::pow(1 - q, j - 1);

    CHECK(small_b == Catch::Approx(beta_pdf(q, n - m + 1, m) / n).epsilon(1e-12));
    CHECK(big_b == Catch::Approx(reg_inc_beta(q, n - m, m)).epsilon(1e-12));

    const double lhs =
        beta_pdf(q, n - m, m) / (n * reg_inc_beta(q, n - m, m));
    const double rhs = (n - m) / (static_cast<double>(n) * q) * small_b / big_b;
    CHECK(lhs == Catch::Approx(rhs).epsilon(1e-11));
  }
}

TEST_CASE("asymptotic effort rate: limits and stationarity", "[objectives]") {
  CHECK(asymptotic_effort_rate(kUniform, 0.999) ==
        Catch::Approx(0.0).margin(1e-4));
  CHECK_THROWS_AS(asymptotic_effort_rate(kUniform, 0.0), DomainError);
  CHECK_THROWS_AS(asymptotic_effort_rate(kUniform, 1.0), DomainError);

  // Stationary at the uniform optimum ratio.
  const double h = 1e-4;
  const double derivative = (asymptotic_effort_rate(kUniform, 0.1507 + h) -
                             asymptotic_effort_rate(kUniform, 0.1507 - h)) /
                            (2 * h);
  CHECK(std::abs(derivative) <= 1e-3);
}

TEST_CASE("per-contestant effort approaches the asymptotic rate",
          "[objectives]") {
  const double k = 0.2;
  const double phi = asymptotic_effort_rate(kUniform, k);
  double prev_gap = 1e300;
  for (int n : {64, 128, 256, 512}) {
    const int m = static_cast<int>(std::ceil(k * n));
    const double gap = std::abs(total_effort_beta_rep(kUniform, n, m) / n - phi);
    CHECK(gap < prev_gap);
    prev_gap = gap;
  }
}

TEST_CASE("ratio first-order condition: roots and scale invariance",
          "[objectives]") {
  auto foc_uniform = [&](double k) { return shortlist_ratio_foc(kUniform, k); };
  const double root = find_root(foc_uniform, {0.05, 0.3, 1e-12});
  CHECK(root == Catch::Approx(0.1507).margin(1e-3));

  // Exponential: the rate only scales the FOC, so scaled values coincide.
  const auto exp_half = AbilityDistribution::exponential(0.5);
  const auto exp_two = AbilityDistribution::exponential(2.0);
  for (double k : {0.05, 0.097, 0.2}) {
    const double base = shortlist_ratio_foc(AbilityDistribution::exponential(1), k);
    CHECK(shortlist_ratio_foc(exp_half, k) * 0.5 ==
          Catch::Approx(base).margin(1e-9));
    CHECK(shortlist_ratio_foc(exp_two, k) * 2.0 ==
          Catch::Approx(base).margin(1e-9));
  }

  // The weight (1/q - q0/q^2) changes sign exactly at q0 = 2k - k^2.
  const double k = 0.25, q0 = 2 * k - k * k;
  auto weight = [&](double q) { return 1.0 / q - q0 / (q * q); };
  CHECK(weight(q0 - 0.01) < 0.0);
  CHECK(std::abs(weight(q0)) <= 1e-12);
  CHECK(weight(q0 + 0.01) > 0.0);
}

TEST_CASE("total effort decreases with the shortlist size", "[objectives]") {
  for (int l : {1, 2, 3}) {
    double prev = 1e300;
    for (int m = l + 1; m <= 10; ++m) {
      const double s = total_effort(kUniform, SimpleContestSpec(10, m, l));
      REQUIRE(s < prev);
      prev = s;
    }
  }
}

TEST_CASE("cumulative kernel ratios decrease in q", "[objectives]") {
  // H_(m)(q)/H_(m')(q) non-increasing for m < m'.
  const int n = 10;
  std::vector<KernelTable> tables;
  for (int m = 2; m <= 6; ++m)
    tables.push_back(KernelTable::build(SimpleContestSpec::complete(n, m),
                                        EffortObjective::Total, 8192));
  for (size_t i = 0; i + 1 < tables.size(); ++i) {
    double prev_ratio = 1e300;
    for (double q = 0.02; q <= 1.0; q += 0.01) {
      const double ratio = tables[i].h_at(q) / tables[i + 1].h_at(q);
      REQUIRE(ratio <= prev_ratio * (1 + 1e-7));
      prev_ratio = ratio;
    }
  }
}

TEST_CASE("kernel table cumulative matches adaptive integration",
          "[objectives]") {
  const SimpleContestSpec spec(12, 5, 4);
  const auto table =
      KernelTable::build(spec, EffortObjective::Total, 8192);
  Quadrature q;
  q.relative_tolerance = 1e-10;
  for (double probe : {0.1, 0.4, 0.95}) {
    const double direct = integrate(
        [&](double t) { return effort_kernel(spec, t, EffortObjective::Total); },
        0.0, probe, q, detail::kernel_splits(spec));
    CHECK(table.h_at(probe) == Catch::Approx(direct).epsilon(5e-6));
  }
}

TEST_CASE("desk-scale growth fits", "[objectives]") {
  std::vector<double> logs, values;
  for (int n : {8, 16, 32, 64, 128, 256}) {
    logs.push_back(std::log(n));
    values.push_back(total_effort(kUniform, SimpleContestSpec(n, 2, 1)));
  }
  CHECK(fit_line(logs, values).r_squared >= 0.98);
}
