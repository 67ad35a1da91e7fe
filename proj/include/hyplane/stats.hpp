#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hyplane/random.hpp"

namespace hyplane {

inline constexpr double kDefaultAlpha = 0.05;

struct KsResult {
    double statistic = 0.0;
    double p_value = 1.0;
};

// Two-sample Kolmogorov-Smirnov; inputs are sorted in place.
KsResult ks_two_sample(std::vector<double> a, std::vector<double> b);
// Asymptotic survival function with Stephens' small-sample correction.
double ks_p_value(double statistic, std::size_t n, std::size_t m);

double chi_square_sf(double statistic, double dof);

struct ChiSquareResult {
    double statistic = 0.0;
    double dof = 0.0;
    double p_value = 1.0;
};

// Counts against expected counts; bins with expectation below 5 are pooled
// with their neighbours before the statistic is formed.
ChiSquareResult chi_square_gof(const std::vector<double>& observed, const std::vector<double>& expected,
                               int fitted_parameters = 0);
// Counts of a Poisson(mean) variable, binned 0, 1, ..., with a pooled tail.
ChiSquareResult poisson_gof(const std::vector<long>& counts, double mean);

struct CorrelationResult {
    double r = 0.0;
    double p_value = 1.0;
};

CorrelationResult pearson(const std::vector<double>& x, const std::vector<double>& y);

struct EnergyResult {
    double statistic = 0.0;
    double p_value = 1.0;
    int permutations = 0;
};

using Point2 = std::array<double, 2>;

// Two-sample energy distance test with a permutation p-value.
EnergyResult energy_test(const std::vector<Point2>& a, const std::vector<Point2>& b, int permutations,
                         RandomStream rng);

struct SlopeResult {
    double slope = 0.0;
    double stderr_ = 0.0;
    std::vector<double> counts;
};

// Least-squares slope of log N(eps) against log(1/eps).
SlopeResult boxdim_estimate(const std::vector<double>& points, const std::vector<double>& scales);
SlopeResult boxdim_estimate(const std::vector<Point2>& points, const std::vector<double>& scales);
SlopeResult fit_loglog(const std::vector<double>& scales, const std::vector<double>& counts);

// Holm step-down adjusted p-values, in input order.
std::vector<double> holm_adjust(const std::vector<double>& p);

struct TestReport {
    std::string name;
    std::vector<std::size_t> sample_sizes;
    double statistic = 0.0;
    std::optional<double> p_value;
    std::optional<double> slope;
    std::optional<double> slope_stderr;
    double alpha = kDefaultAlpha;
    bool passed = false;
    std::uint64_t seed = 0;
    std::map<std::string, double> details;

    std::string to_json_line() const;
};

} // namespace hyplane
