#include "ptutor/analytics/stats.hpp"

#include <cmath>
#include <algorithm>
#include <numeric>

#include "ptutor/error.hpp"

namespace ptutor::analytics {

double mean(std::span<const double> x) {
  if (x.empty()) return 0.0;
  return std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
}

double population_sd(std::span<const double> x) {
  if (x.empty()) return 0.0;
  const double m = mean(x);
  double ss = 0.0;
  for (double v : x) ss += (v - m) * (v - m);
  return std::sqrt(ss / static_cast<double>(x.size()));
}

double pearson_corr(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw InvalidRequest("correlation inputs differ in length");
  if (x.size() < 3) throw InvalidRequest("correlation needs at least three points");
  const double mx = mean(x);
  const double my = mean(y);
  double sxy = 0.0;
  double sxx = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) throw ZeroVariance("correlation of a constant series");
  const double r = sxy / std::sqrt(sxx * syy);
  return std::clamp(r, -1.0, 1.0);
}

}  // namespace ptutor::analytics
