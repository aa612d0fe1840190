#pragma once

#include <cstdint>
#include <vector>

namespace plurality {

struct WilsonInterval {
    double low = 0.0;
    double high = 0.0;
};

// 95% by default (z = 1.96).
WilsonInterval wilson_interval(std::int64_t successes, std::int64_t trials, double z = 1.96);

struct MeanStdErr {
    double mean = 0.0;
    double std_err = 0.0;
    std::int64_t count = 0;
};
MeanStdErr mean_std_err(const std::vector<double>& xs);

// Empirical quantile by linear interpolation of the order statistics.
double quantile(std::vector<double> xs, double q);

struct LinearFit {
    double intercept = 0.0;
    double slope = 0.0;
};
// Ordinary least squares y = intercept + slope * x.
LinearFit least_squares(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace plurality
