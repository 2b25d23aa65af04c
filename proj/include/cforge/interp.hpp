#pragma once

// Fritsch-Carlson monotone piecewise-cubic interpolation.

#include <algorithm>
#include <cmath>
#include <vector>

#include "cforge/error.hpp"

namespace cforge {

class MonotoneCubic {
 public:
  MonotoneCubic() = default;

  MonotoneCubic(std::vector<double> xs, std::vector<double> ys)
      : xs_(std::move(xs)), ys_(std::move(ys)) {
    const size_t n = xs_.size();
    if (n < 2 || ys_.size() != n)
      throw DimensionMismatchError("monotone cubic: need matching grids, size >= 2");
    for (size_t i = 1; i < n; ++i)
      if (!(xs_[i] > xs_[i - 1]))
        throw DomainError("monotone cubic: abscissae must be strictly increasing");

    std::vector<double> h(n - 1), delta(n - 1);
    for (size_t i = 0; i + 1 < n; ++i) {
      h[i] = xs_[i + 1] - xs_[i];
      delta[i] = (ys_[i + 1] - ys_[i]) / h[i];
    }
    slopes_.assign(n, 0.0);
    for (size_t i = 1; i + 1 < n; ++i) {
      if (delta[i - 1] * delta[i] <= 0) {
        slopes_[i] = 0.0;
      } else {
        const double w1 = 2 * h[i] + h[i - 1];
        const double w2 = h[i] + 2 * h[i - 1];
        slopes_[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
      }
    }
    slopes_[0] = edge_slope(h[0], n > 2 ? h[1] : h[0], delta[0],
                            n > 2 ? delta[1] : delta[0]);
    slopes_[n - 1] = edge_slope(h[n - 2], n > 2 ? h[n - 3] : h[n - 2],
                                delta[n - 2], n > 2 ? delta[n - 3] : delta[n - 2]);
  }

  double operator()(double x) const {
    if (x <= xs_.front()) return ys_.front();
    if (x >= xs_.back()) return ys_.back();
    const size_t i =
        std::upper_bound(xs_.begin(), xs_.end(), x) - xs_.begin() - 1;
    const double h = xs_[i + 1] - xs_[i];
    const double t = (x - xs_[i]) / h;
    const double t2 = t * t, t3 = t2 * t;
    const double h00 = 2 * t3 - 3 * t2 + 1;
    const double h10 = t3 - 2 * t2 + t;
    const double h01 = -2 * t3 + 3 * t2;
    const double h11 = t3 - t2;
    return h00 * ys_[i] + h10 * h * slopes_[i] + h01 * ys_[i + 1] +
           h11 * h * slopes_[i + 1];
  }

  const std::vector<double>& grid() const { return xs_; }
  const std::vector<double>& values() const { return ys_; }

 private:
  static double edge_slope(double h0, double h1, double d0, double d1) {
    double s = ((2 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
    if (s * d0 <= 0) return 0.0;
    if (d0 * d1 <= 0 && std::abs(s) > 3 * std::abs(d0)) return 3 * d0;
    return s;
  }

  std::vector<double> xs_, ys_, slopes_;
};

}  // namespace cforge
