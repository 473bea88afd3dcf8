#pragma once

#include <span>

#include "stochtrend/types.hpp"

namespace stochtrend {

double normal_cdf(double x);

/// Inverse standard normal CDF. Rational initial guess refined by one Halley
/// step against erfc; absolute error below 1e-12 on (1e-300, 1 - 1e-16).
double normal_quantile(double p);

double mean(std::span<const double> x);
/// Sample standard deviation with divisor n-1; 0 for fewer than two values.
double sample_sd(std::span<const double> x);
double median(std::span<const double> x);

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
};

/// Ordinary least-squares line through (x, y).
LineFit least_squares_line(std::span<const double> x, std::span<const double> y);

}  // namespace stochtrend
