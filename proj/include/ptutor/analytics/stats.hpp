#pragma once

#include <span>

namespace ptutor::analytics {

double mean(std::span<const double> x);
/// Population standard deviation.
double population_sd(std::span<const double> x);

/// Pearson product-moment correlation. Throws InvalidRequest on unequal
/// lengths or fewer than three points, ZeroVariance if either side is constant.
double pearson_corr(std::span<const double> x, std::span<const double> y);

}  // namespace ptutor::analytics
