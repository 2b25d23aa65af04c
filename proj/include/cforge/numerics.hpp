#pragma once

// Shared numerical kernels: adaptive Gauss-Kronrod quadrature, Brent root
// finding, log-gamma/beta special functions, and a counter-based random
// stream with reproducible, disjoint substreams.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <queue>
#include <vector>

#include "cforge/error.hpp"

namespace cforge {

// ---------------------------------------------------------------------------
// Quadrature
// ---------------------------------------------------------------------------

struct Quadrature {
  double relative_tolerance = 1e-9;
  double absolute_tolerance = 1e-12;
  int max_subdivisions = 4000;

  void validate() const {
    if (relative_tolerance <= 0 || absolute_tolerance <= 0)
      throw DomainError("quadrature tolerances must be positive");
    if (max_subdivisions < 1)
      throw DomainError("quadrature needs at least one subdivision");
  }
};

struct QuadratureResult {
  double value = 0;
  double error_estimate = 0;
  int subdivisions = 0;
};

namespace detail {

// 15-point Kronrod extension of the 7-point Gauss rule (QUADPACK dqk15).
inline constexpr double kGk15Nodes[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.0};
inline constexpr double kGk15KronrodWeights[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728};
inline constexpr double kGk15GaussWeights[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469};

struct PanelEstimate {
  double value;
  double error;
};

template <class F>
PanelEstimate gauss_kronrod_15(F&& f, double a, double b) {
  const double centr = 0.5 * (a + b);
  const double hlgth = 0.5 * (b - a);

  const double fc = f(centr);
  double resg = kGk15GaussWeights[3] * fc;
  double resk = kGk15KronrodWeights[7] * fc;
  double resabs = std::abs(resk);
  double fv1[7], fv2[7];
  for (int j = 0; j < 7; ++j) {
    const double absc = hlgth * kGk15Nodes[j];
    fv1[j] = f(centr - absc);
    fv2[j] = f(centr + absc);
    const double fsum = fv1[j] + fv2[j];
    if (j % 2 == 1) resg += kGk15GaussWeights[j / 2] * fsum;
    resk += kGk15KronrodWeights[j] * fsum;
    resabs += kGk15KronrodWeights[j] * (std::abs(fv1[j]) + std::abs(fv2[j]));
  }
  const double reskh = resk * 0.5;
  double resasc = kGk15KronrodWeights[7] * std::abs(fc - reskh);
  for (int j = 0; j < 7; ++j)
    resasc += kGk15KronrodWeights[j] *
              (std::abs(fv1[j] - reskh) + std::abs(fv2[j] - reskh));

  const double result = resk * hlgth;
  resabs *= std::abs(hlgth);
  resasc *= std::abs(hlgth);
  double err = std::abs((resk - resg) * hlgth);
  if (resasc != 0.0 && err != 0.0)
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  const double eps = std::numeric_limits<double>::epsilon();
  if (resabs > std::numeric_limits<double>::min() / (50.0 * eps))
    err = std::max(err, 50.0 * eps * resabs);
  return {result, err};
}

struct Segment {
  double a, b, value, error;
  bool operator<(const Segment& other) const { return error < other.error; }
};

}  // namespace detail

// Globally adaptive integration over [a, b] with optional interior split
// hints (useful for sharply peaked integrands). Nodes never touch the
// endpoints, so integrable endpoint singularities are tolerated.
template <class F>
QuadratureResult integrate_full(F&& f, double a, double b,
                                const Quadrature& q = {},
                                const std::vector<double>& splits = {}) {
  q.validate();
  if (a == b) return {0.0, 0.0, 0};

  std::vector<double> pts;
  pts.push_back(a);
  for (double s : splits)
    if (s > std::min(a, b) && s < std::max(a, b)) pts.push_back(s);
  pts.push_back(b);
  std::sort(pts.begin(), pts.end());
  if (a > b) std::reverse(pts.begin(), pts.end());

  std::priority_queue<detail::Segment> heap;
  double total = 0, total_err = 0;
  for (size_t i = 0; i + 1 < pts.size(); ++i) {
    auto est = detail::gauss_kronrod_15(f, pts[i], pts[i + 1]);
    heap.push({pts[i], pts[i + 1], est.value, est.error});
    total += est.value;
    total_err += est.error;
  }

  int subdivisions = 0;
  auto tolerance = [&] {
    return std::max(q.absolute_tolerance,
                    q.relative_tolerance * std::abs(total));
  };
  while (total_err > tolerance()) {
    if (subdivisions >= q.max_subdivisions)
      throw NonConvergenceError("integrate: subdivision budget exhausted",
                                total_err);
    detail::Segment worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid == worst.a || mid == worst.b) {
      // Interval no longer splittable; accept its estimate as converged.
      total_err -= worst.error;
      worst.error = 0;
      heap.push(worst);
      continue;
    }
    auto left = detail::gauss_kronrod_15(f, worst.a, mid);
    auto right = detail::gauss_kronrod_15(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    heap.push({worst.a, mid, left.value, left.error});
    heap.push({mid, worst.b, right.value, right.error});
    ++subdivisions;
  }
  return {total, total_err, subdivisions};
}

template <class F>
double integrate(F&& f, double a, double b, const Quadrature& q = {},
                 const std::vector<double>& splits = {}) {
  return integrate_full(std::forward<F>(f), a, b, q, splits).value;
}

// ---------------------------------------------------------------------------
// Root finding
// ---------------------------------------------------------------------------

struct RootBracket {
  double lo;
  double hi;
  double tolerance = 1e-12;
};

// Brent's method. Requires f(lo) * f(hi) <= 0.
template <class F>
double find_root(F&& f, const RootBracket& bracket) {
  double a = bracket.lo, b = bracket.hi;
  if (!(a < b)) throw DomainError("find_root: bracket requires lo < hi");
  const double tol = bracket.tolerance;

  double fa = f(a), fb = f(b);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if (fa * fb > 0.0)
    throw NoSignChangeError("find_root: no sign change across bracket");

  double c = a, fc = fa;
  double d = b - a, e = d;
  const double eps = std::numeric_limits<double>::epsilon();
  for (int iter = 0; iter < 200; ++iter) {
    if (std::abs(fc) < std::abs(fb)) {
      a = b;
      b = c;
      c = a;
      fa = fb;
      fb = fc;
      fc = fa;
    }
    const double tol1 = 2.0 * eps * std::abs(b) + 0.5 * tol;
    const double xm = 0.5 * (c - b);
    if (std::abs(xm) <= tol1 || fb == 0.0) return b;
    if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
      double p, qq;
      const double s = fb / fa;
      if (a == c) {
        p = 2.0 * xm * s;
        qq = 1.0 - s;
      } else {
        const double q1 = fa / fc;
        const double r = fb / fc;
        p = s * (2.0 * xm * q1 * (q1 - r) - (b - a) * (r - 1.0));
        qq = (q1 - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0) qq = -qq;
      p = std::abs(p);
      if (2.0 * p < std::min(3.0 * xm * qq - std::abs(tol1 * qq),
                             std::abs(e * qq))) {
        e = d;
        d = p / qq;
      } else {
        d = xm;
        e = d;
      }
    } else {
      d = xm;
      e = d;
    }
    a = b;
    fa = fb;
    b += (std::abs(d) > tol1) ? d : (xm > 0 ? tol1 : -tol1);
    fb = f(b);
    if ((fb > 0.0) == (fc > 0.0)) {
      c = a;
      fc = fa;
      d = b - a;
      e = d;
    }
  }
  return b;
}

// Scans [lo, hi] on a log- or linearly-spaced grid and returns the first
// sub-interval with a sign change.
template <class F>
RootBracket scan_bracket(F&& f, double lo, double hi, int points = 64,
                         bool log_spaced = true, double tolerance = 1e-12) {
  if (points < 2) throw DomainError("scan_bracket: need at least 2 points");
  if (log_spaced && lo <= 0)
    throw DomainError("scan_bracket: log spacing requires lo > 0");
  double prev_x = lo, prev_f = f(lo);
  for (int i = 1; i < points; ++i) {
    const double t = static_cast<double>(i) / (points - 1);
    const double x =
        log_spaced ? lo * std::pow(hi / lo, t) : lo + (hi - lo) * t;
    const double fx = f(x);
    if (prev_f == 0.0) return {prev_x, x, tolerance};
    if (prev_f * fx <= 0.0) return {prev_x, x, tolerance};
    prev_x = x;
    prev_f = fx;
  }
  throw NoSignChangeError("scan_bracket: no sign change on grid");
}

// ---------------------------------------------------------------------------
// Special functions (all in log space internally)
// ---------------------------------------------------------------------------

inline double log_gamma(double x) { return std::lgamma(x); }

inline double log_beta(double a, double b) {
  return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

inline double log_binomial(double n, double k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

namespace detail {

// Continued fraction for the regularized incomplete beta (modified Lentz).
inline double beta_continued_fraction(double a, double b, double x) {
  constexpr int kMaxIter = 2000;
  constexpr double kEps = 3e-16;
  const double kFpMin = std::numeric_limits<double>::min() / kEps;

  const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < kFpMin) d = kFpMin;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kFpMin) d = kFpMin;
    c = 1.0 + aa / c;
    if (std::abs(c) < kFpMin) c = kFpMin;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kFpMin) d = kFpMin;
    c = 1.0 + aa / c;
    if (std::abs(c) < kFpMin) c = kFpMin;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kEps) break;
  }
  return h;
}

}  // namespace detail

// Regularized incomplete beta I_x(a,b).
inline double reg_inc_beta(double x, double a, double b) {
  if (!(a > 0) || !(b > 0))
    throw DomainError("reg_inc_beta: shape parameters must be positive");
  if (x < 0 || x > 1) throw DomainError("reg_inc_beta: x outside [0,1]");
  if (x == 0) return 0.0;
  if (x == 1) return 1.0;
  const double log_front = a * std::log(x) + b * std::log1p(-x) - log_beta(a, b);
  if (x < (a + 1.0) / (a + b + 2.0))
    return std::exp(log_front) * detail::beta_continued_fraction(a, b, x) / a;
  return 1.0 -
         std::exp(log_front) * detail::beta_continued_fraction(b, a, 1.0 - x) / b;
}

// log I_x(a,b); stable when I underflows (deep lower tail).
inline double log_reg_inc_beta(double x, double a, double b) {
  if (!(a > 0) || !(b > 0))
    throw DomainError("log_reg_inc_beta: shape parameters must be positive");
  if (x < 0 || x > 1) throw DomainError("log_reg_inc_beta: x outside [0,1]");
  if (x == 0) return -std::numeric_limits<double>::infinity();
  if (x == 1) return 0.0;
  if (x < (a + 1.0) / (a + b + 2.0)) {
    const double log_front =
        a * std::log(x) + b * std::log1p(-x) - log_beta(a, b);
    return log_front +
           std::log(detail::beta_continued_fraction(a, b, x) / a);
  }
  const double comp = std::exp(a * std::log(x) + b * std::log1p(-x) -
                               log_beta(a, b)) *
                      detail::beta_continued_fraction(b, a, 1.0 - x) / b;
  return std::log1p(-comp);
}

// Unnormalized incomplete beta B_x(a,b) = int_0^x t^(a-1) (1-t)^(b-1) dt.
inline double incomplete_beta(double x, double a, double b) {
  if (!(a > 0) || !(b > 0))
    throw DomainError("incomplete_beta: shape parameters must be positive");
  if (x < 0 || x > 1) throw DomainError("incomplete_beta: x outside [0,1]");
  if (x == 0) return 0.0;
  return std::exp(log_beta(a, b) + log_reg_inc_beta(x, a, b));
}

inline double log_beta_pdf(double x, double a, double b) {
  if (x <= 0 || x >= 1) {
    // Edge values by continuity; infinite density only for shape < 1.
    if (x == 0) {
      if (a > 1) return -std::numeric_limits<double>::infinity();
      if (a == 1) return (b - 1.0) * 0.0 - log_beta(a, b);
      return std::numeric_limits<double>::infinity();
    }
    if (x == 1) {
      if (b > 1) return -std::numeric_limits<double>::infinity();
      if (b == 1) return -log_beta(a, b);
      return std::numeric_limits<double>::infinity();
    }
    throw DomainError("beta_pdf: x outside [0,1]");
  }
  return (a - 1.0) * std::log(x) + (b - 1.0) * std::log1p(-x) - log_beta(a, b);
}

inline double beta_pdf(double x, double a, double b) {
  if (!(a > 0) || !(b > 0))
    throw DomainError("beta_pdf: shape parameters must be positive");
  if (x < 0 || x > 1) throw DomainError("beta_pdf: x outside [0,1]");
  return std::exp(log_beta_pdf(x, a, b));
}

// Closed form of int_0^x t^(a-1) (x-t)^(b-1) dt for integer a,b >= 1.
inline double scaled_upper_beta_identity(double x, int a, int b) {
  if (a < 1 || b < 1)
    throw DomainError("scaled_upper_beta_identity: need integer a,b >= 1");
  if (!(x > 0)) throw DomainError("scaled_upper_beta_identity: need x > 0");
  return std::exp(log_beta(a, b) + (a + b - 1.0) * std::log(x));
}

// P(X <= k) for X ~ Binomial(n, p).
inline double binomial_cdf(int k, int n, double p) {
  if (n < 0 || p < 0 || p > 1) throw DomainError("binomial_cdf: bad arguments");
  if (k < 0) return 0.0;
  if (k >= n) return 1.0;
  return reg_inc_beta(1.0 - p, static_cast<double>(n - k),
                      static_cast<double>(k + 1));
}

// int_0^y I_u(a,b) du = y I_y(a,b) - a/(a+b) I_y(a+1,b).
inline double reg_inc_beta_integral(double y, double a, double b) {
  if (y <= 0) return 0.0;
  if (y > 1) throw DomainError("reg_inc_beta_integral: y outside [0,1]");
  return y * reg_inc_beta(y, a, b) -
         a / (a + b) * reg_inc_beta(y, a + 1.0, b);
}

// Log-sum-exp accumulator for sums of positive terms given in log space.
class LogSumExp {
 public:
  void add(double log_term) {
    if (log_term == -std::numeric_limits<double>::infinity()) return;
    if (log_term > max_) {
      sum_ = sum_ * std::exp(max_ - log_term) + 1.0;
      max_ = log_term;
    } else {
      sum_ += std::exp(log_term - max_);
    }
  }
  double log_value() const {
    if (sum_ == 0) return -std::numeric_limits<double>::infinity();
    return max_ + std::log(sum_);
  }
  double value() const { return std::exp(log_value()); }

 private:
  double max_ = -std::numeric_limits<double>::infinity();
  double sum_ = 0;
};

// ---------------------------------------------------------------------------
// Random stream
// ---------------------------------------------------------------------------

// Counter-based generator: the i-th draw is a keyed hash of (seed,
// stream_id, i), so identical (seed, stream_id) reproduce identical
// sequences bit-for-bit and distinct stream ids give unrelated streams.
class RandomStream {
 public:
  RandomStream(std::uint64_t seed, std::uint64_t stream_id)
      : seed_(seed),
        stream_id_(stream_id),
        key0_(mix(seed + 0x9E3779B97F4A7C15ULL)),
        key1_(mix(stream_id + 0xD1B54A32D192ED03ULL)) {}

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

  std::uint64_t next_u64() {
    const std::uint64_t z = key0_ + counter_++ * 0x9E3779B97F4A7C15ULL;
    return mix(z ^ key1_);
  }

  // Uniform in [0, 1) with 53 random bits.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
  }

  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::uint64_t key0_;
  std::uint64_t key1_;
  std::uint64_t counter_ = 0;
};

// ---------------------------------------------------------------------------
// Small statistics helpers
// ---------------------------------------------------------------------------

struct LinearFit {
  double intercept = 0;
  double slope = 0;
  double r_squared = 0;
};

inline LinearFit fit_line(const std::vector<double>& x,
                          const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2)
    throw DimensionMismatchError("fit_line: need matching vectors, size >= 2");
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
    syy += y[i] * y[i];
  }
  const double denom = n * sxx - sx * sx;
  LinearFit fit;
  fit.slope = (n * sxy - sx * sy) / denom;
  fit.intercept = (sy - fit.slope * sx) / n;
  double ss_res = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (fit.intercept + fit.slope * x[i]);
    ss_res += r * r;
  }
  const double ss_tot = syy - sy * sy / n;
  fit.r_squared = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0;
  return fit;
}

}  // namespace cforge
