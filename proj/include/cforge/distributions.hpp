#pragma once

// Prior ability distributions: CDF, density, inverse CDF, and the
// top-quantile map v(q) = F^{-1}(1-q). Built-ins cover the uniform, power,
// exponential and beta families plus a piecewise-linear quantile
// construction for adversarial shapes.

#include <cmath>
#include <limits>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "cforge/error.hpp"
#include "cforge/numerics.hpp"

namespace cforge {

// Quantile floor used when a support is unbounded: objective integrals run
// over [kQuantileFloor, 1] in top-quantile space and the tail above the
// corresponding ability carries less than ~1e-8 of any objective here.
inline constexpr double kQuantileFloor = 1e-10;

class AbilityDistribution {
 public:
  enum class Kind { Uniform, Power, Exponential, Beta, PiecewiseLinearQuantile };

  static AbilityDistribution uniform(double lo, double hi) {
    if (!(lo < hi)) throw DomainError("uniform: requires lo < hi");
    AbilityDistribution d;
    d.kind_ = Kind::Uniform;
    d.a_ = lo;
    d.b_ = hi;
    return d;
  }

  // F(x) = x^a on [0,1].
  static AbilityDistribution power(double exponent) {
    if (!(exponent > 0)) throw DomainError("power: exponent must be positive");
    AbilityDistribution d;
    d.kind_ = Kind::Power;
    d.a_ = exponent;
    return d;
  }

  static AbilityDistribution exponential(double rate) {
    if (!(rate > 0)) throw DomainError("exponential: rate must be positive");
    AbilityDistribution d;
    d.kind_ = Kind::Exponential;
    d.a_ = rate;
    return d;
  }

  static AbilityDistribution beta(double alpha, double beta_param) {
    if (!(alpha > 0) || !(beta_param > 0))
      throw DomainError("beta: shape parameters must be positive");
    AbilityDistribution d;
    d.kind_ = Kind::Beta;
    d.a_ = alpha;
    d.b_ = beta_param;
    return d;
  }

  // Specified directly by knots of the decreasing quantile map v(q),
  // q in [0,1]. Knot q values must be strictly increasing starting at 0 and
  // ending at 1; knot v values strictly decreasing and non-negative.
  static AbilityDistribution piecewise_linear_quantile(
      std::vector<std::pair<double, double>> knots) {
    if (knots.size() < 2)
      throw DomainError("pwl: need at least two knots");
    if (knots.front().first != 0.0 || knots.back().first != 1.0)
      throw DomainError("pwl: knot quantiles must span [0,1]");
    for (size_t i = 1; i < knots.size(); ++i) {
      if (!(knots[i].first > knots[i - 1].first))
        throw DomainError("pwl: knot quantiles must be strictly increasing");
      if (!(knots[i].second < knots[i - 1].second))
        throw DomainError("pwl: knot values must be strictly decreasing");
    }
    if (knots.back().second < 0)
      throw DomainError("pwl: abilities must be non-negative");
    AbilityDistribution d;
    d.kind_ = Kind::PiecewiseLinearQuantile;
    d.knots_ = std::move(knots);
    return d;
  }

  // |v'(q)| = eps on [0, q0), 1 on [q0, 1], with v(1) = 0.
  static AbilityDistribution pwl_two_slope(double q0, double eps) {
    if (!(q0 > 0) || !(q0 < 1)) throw DomainError("pwl: q0 must be in (0,1)");
    if (!(eps > 0)) throw DomainError("pwl: eps must be positive");
    const double v0 = eps * q0 + (1.0 - q0);
    return piecewise_linear_quantile(
        {{0.0, v0}, {q0, 1.0 - q0}, {1.0, 0.0}});
  }

  // Parses CLI-style spec strings: "uniform:0,1", "power:2", "exp:1.0",
  // "beta:50,50", "pwl:q0=0.86,eps=0.01".
  static AbilityDistribution parse(const std::string& spec);

  Kind kind() const { return kind_; }

  double support_min() const {
    switch (kind_) {
      case Kind::Uniform: return a_;
      case Kind::Power: return 0.0;
      case Kind::Exponential: return 0.0;
      case Kind::Beta: return 0.0;
      case Kind::PiecewiseLinearQuantile: return knots_.back().second;
    }
    return 0.0;
  }

  double support_max() const {
    switch (kind_) {
      case Kind::Uniform: return b_;
      case Kind::Power: return 1.0;
      case Kind::Exponential:
        return std::numeric_limits<double>::infinity();
      case Kind::Beta: return 1.0;
      case Kind::PiecewiseLinearQuantile: return knots_.front().second;
    }
    return 1.0;
  }

  bool unbounded_above() const { return std::isinf(support_max()); }

  // Largest ability used by grid-based consumers: support max for bounded
  // supports, the (1 - kQuantileFloor) quantile otherwise.
  double effective_max() const {
    return unbounded_above() ? quantile_value(kQuantileFloor) : support_max();
  }

  double cdf(double x) const {
    if (x <= support_min()) return 0.0;
    if (x >= support_max()) return 1.0;
    switch (kind_) {
      case Kind::Uniform: return (x - a_) / (b_ - a_);
      case Kind::Power: return std::pow(x, a_);
      case Kind::Exponential: return -std::expm1(-a_ * x);
      case Kind::Beta: return reg_inc_beta(x, a_, b_);
      case Kind::PiecewiseLinearQuantile: return 1.0 - quantile_of(x);
    }
    return 0.0;
  }

  double pdf(double x) const {
    if (x < support_min() || x > support_max()) return 0.0;
    switch (kind_) {
      case Kind::Uniform: return 1.0 / (b_ - a_);
      case Kind::Power:
        return a_ * std::pow(x, a_ - 1.0);
      case Kind::Exponential: return a_ * std::exp(-a_ * x);
      case Kind::Beta: return beta_pdf(x, a_, b_);
      case Kind::PiecewiseLinearQuantile: {
        const double q = quantile_of(x);
        return 1.0 / std::abs(slope_at(q));
      }
    }
    return 0.0;
  }

  double inverse_cdf(double p) const {
    if (p < 0 || p > 1) throw DomainError("inverse_cdf: p outside [0,1]");
    switch (kind_) {
      case Kind::Uniform: return a_ + (b_ - a_) * p;
      case Kind::Power: return std::pow(p, 1.0 / a_);
      case Kind::Exponential:
        if (p == 1.0) return std::numeric_limits<double>::infinity();
        return -std::log1p(-p) / a_;
      case Kind::Beta: {
        if (p == 0.0) return 0.0;
        if (p == 1.0) return 1.0;
        auto g = [&](double x) { return reg_inc_beta(x, a_, b_) - p; };
        return find_root(g, {0.0, 1.0, 1e-14});
      }
      case Kind::PiecewiseLinearQuantile: return value_at(1.0 - p);
    }
    return 0.0;
  }

  // v(q) = F^{-1}(1-q), evaluated per family so that small q stays accurate.
  double quantile_value(double q) const {
    if (q < 0 || q > 1) throw DomainError("quantile_value: q outside [0,1]");
    if (q == 0 && unbounded_above())
      throw DomainError("quantile_value: q=0 with unbounded support");
    switch (kind_) {
      case Kind::Uniform: return a_ + (b_ - a_) * (1.0 - q);
      case Kind::Power: return std::pow(1.0 - q, 1.0 / a_);
      case Kind::Exponential: return -std::log(q) / a_;
      case Kind::Beta: {
        if (q == 0.0) return 1.0;
        if (q == 1.0) return 0.0;
        if (q < 0.5) {
          // Solve the upper tail through its complement for accuracy.
          auto g = [&](double x) { return reg_inc_beta(1.0 - x, b_, a_) - q; };
          return find_root(g, {0.0, 1.0, 1e-14});
        }
        return inverse_cdf(1.0 - q);
      }
      case Kind::PiecewiseLinearQuantile: return value_at(q);
    }
    return 0.0;
  }

  std::string to_string() const {
    std::ostringstream os;
    switch (kind_) {
      case Kind::Uniform: os << "uniform:" << a_ << "," << b_; break;
      case Kind::Power: os << "power:" << a_; break;
      case Kind::Exponential: os << "exp:" << a_; break;
      case Kind::Beta: os << "beta:" << a_ << "," << b_; break;
      case Kind::PiecewiseLinearQuantile: {
        os << "pwlknots:";
        for (size_t i = 0; i < knots_.size(); ++i) {
          if (i) os << ";";
          os << knots_[i].first << "," << knots_[i].second;
        }
        break;
      }
    }
    return os.str();
  }

 private:
  AbilityDistribution() = default;

  // Piecewise-linear helpers in top-quantile space.
  double value_at(double q) const {
    size_t i = 1;
    while (i + 1 < knots_.size() && knots_[i].first < q) ++i;
    const auto& [q0, v0] = knots_[i - 1];
    const auto& [q1, v1] = knots_[i];
    return v0 + (v1 - v0) * (q - q0) / (q1 - q0);
  }
  double slope_at(double q) const {
    size_t i = 1;
    while (i + 1 < knots_.size() && knots_[i].first < q) ++i;
    const auto& [q0, v0] = knots_[i - 1];
    const auto& [q1, v1] = knots_[i];
    return (v1 - v0) / (q1 - q0);
  }
  double quantile_of(double x) const {
    // v is strictly decreasing; invert by segment.
    size_t i = 1;
    while (i + 1 < knots_.size() && knots_[i].second > x) ++i;
    const auto& [q0, v0] = knots_[i - 1];
    const auto& [q1, v1] = knots_[i];
    return q0 + (x - v0) * (q1 - q0) / (v1 - v0);
  }

  Kind kind_ = Kind::Uniform;
  double a_ = 0, b_ = 1;
  std::vector<std::pair<double, double>> knots_;
};

inline AbilityDistribution AbilityDistribution::parse(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string name = spec.substr(0, colon);
  const std::string args =
      colon == std::string::npos ? "" : spec.substr(colon + 1);
  auto split = [](const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream is(s);
    while (std::getline(is, cur, sep)) out.push_back(cur);
    return out;
  };
  auto num = [&](const std::string& s) {
    size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos != s.size()) throw DomainError("bad number in distribution spec: " + s);
    return v;
  };
  if (name == "uniform") {
    auto parts = split(args, ',');
    if (parts.size() != 2) throw DomainError("uniform spec needs lo,hi");
    return uniform(num(parts[0]), num(parts[1]));
  }
  if (name == "power") {
    if (args.empty()) throw DomainError("power spec needs an exponent");
    return power(num(args));
  }
  if (name == "exp") {
    if (args.empty()) throw DomainError("exp spec needs a rate");
    return exponential(num(args));
  }
  if (name == "beta") {
    auto parts = split(args, ',');
    if (parts.size() != 2) throw DomainError("beta spec needs alpha,beta");
    return beta(num(parts[0]), num(parts[1]));
  }
  if (name == "pwl") {
    double q0 = -1, eps = -1;
    for (const auto& kv : split(args, ',')) {
      auto eq = kv.find('=');
      if (eq == std::string::npos) throw DomainError("pwl spec needs key=value");
      const std::string key = kv.substr(0, eq);
      const double val = num(kv.substr(eq + 1));
      if (key == "q0") q0 = val;
      else if (key == "eps") eps = val;
      else throw DomainError("pwl spec: unknown key " + key);
    }
    if (q0 < 0 || eps < 0) throw DomainError("pwl spec needs q0 and eps");
    return pwl_two_slope(q0, eps);
  }
  throw DomainError("unknown distribution spec: " + spec);
}

}  // namespace cforge
