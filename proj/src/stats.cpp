#include "hyplane/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <unordered_set>

#include <boost/math/special_functions/gamma.hpp>
#include <json.hpp>

#include "hyplane/errors.hpp"

namespace hyplane {

KsResult ks_two_sample(std::vector<double> a, std::vector<double> b)
{
    if (a.empty() || b.empty()) {
        throw PreconditionError("KS test needs two non-empty samples");
    }
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double n = static_cast<double>(a.size());
    const double m = static_cast<double>(b.size());
    std::size_t i = 0;
    std::size_t j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        const double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] == x) {
            ++i;
        }
        while (j < b.size() && b[j] == x) {
            ++j;
        }
        d = std::max(d, std::abs(i / n - j / m));
    }
    return {d, ks_p_value(d, a.size(), b.size())};
}

double ks_p_value(double statistic, std::size_t n, std::size_t m)
{
    const double en = std::sqrt(static_cast<double>(n) * static_cast<double>(m) / static_cast<double>(n + m));
    const double lambda = (en + 0.12 + 0.11 / en) * statistic;
    if (lambda < 1e-3) {
        return 1.0;
    }
    double q = 0.0;
    if (lambda < 1.18) {
        // Jacobi theta form of the Kolmogorov distribution.
        const double c = std::numbers::pi * std::numbers::pi / (8.0 * lambda * lambda);
        double sum = 0.0;
        for (int k = 1; k <= 20; ++k) {
            const double odd = 2.0 * k - 1.0;
            sum += std::exp(-odd * odd * c);
        }
        q = 1.0 - std::sqrt(2.0 * std::numbers::pi) / lambda * sum;
    } else {
        double sign = 1.0;
        for (int k = 1; k <= 100; ++k) {
            const double term = std::exp(-2.0 * k * k * lambda * lambda);
            q += sign * term;
            if (term < 1e-17) {
                break;
            }
            sign = -sign;
        }
        q *= 2.0;
    }
    return std::clamp(q, 0.0, 1.0);
}

double chi_square_sf(double statistic, double dof)
{
    if (!(dof > 0.0)) {
        throw PreconditionError("chi-square needs positive degrees of freedom");
    }
    if (statistic <= 0.0) {
        return 1.0;
    }
    return boost::math::gamma_q(0.5 * dof, 0.5 * statistic);
}

ChiSquareResult chi_square_gof(const std::vector<double>& observed, const std::vector<double>& expected,
                               int fitted_parameters)
{
    if (observed.size() != expected.size() || observed.empty()) {
        throw PreconditionError("chi-square needs matching non-empty bins");
    }
    // Pool adjacent bins left to right until each expectation reaches 5.
    std::vector<double> obs;
    std::vector<double> exp;
    double o = 0.0;
    double e = 0.0;
    for (std::size_t k = 0; k < observed.size(); ++k) {
        o += observed[k];
        e += expected[k];
        if (e >= 5.0) {
            obs.push_back(o);
            exp.push_back(e);
            o = 0.0;
            e = 0.0;
        }
    }
    if (e > 0.0 || o > 0.0) {
        if (exp.empty()) {
            obs.push_back(o);
            exp.push_back(e);
        } else {
            obs.back() += o;
            exp.back() += e;
        }
    }
    ChiSquareResult out;
    for (std::size_t k = 0; k < obs.size(); ++k) {
        out.statistic += (obs[k] - exp[k]) * (obs[k] - exp[k]) / exp[k];
    }
    out.dof = static_cast<double>(obs.size()) - 1.0 - fitted_parameters;
    if (out.dof < 1.0) {
        throw PreconditionError("too few populated bins for a chi-square test");
    }
    out.p_value = chi_square_sf(out.statistic, out.dof);
    return out;
}

ChiSquareResult poisson_gof(const std::vector<long>& counts, double mean)
{
    if (counts.empty() || !(mean > 0.0)) {
        throw PreconditionError("Poisson fit needs counts and a positive mean");
    }
    const long top = *std::max_element(counts.begin(), counts.end());
    const std::size_t bins = static_cast<std::size_t>(std::max<long>(top, static_cast<long>(mean * 3 + 10))) + 1;
    std::vector<double> observed(bins, 0.0);
    for (long c : counts) {
        observed[static_cast<std::size_t>(c)] += 1.0;
    }
    std::vector<double> expected(bins, 0.0);
    const double n = static_cast<double>(counts.size());
    double cumulative = 0.0;
    for (std::size_t k = 0; k + 1 < bins; ++k) {
        const double pk = std::exp(k * std::log(mean) - mean - std::lgamma(k + 1.0));
        expected[k] = n * pk;
        cumulative += pk;
    }
    expected[bins - 1] = n * std::max(0.0, 1.0 - cumulative);
    return chi_square_gof(observed, expected);
}

CorrelationResult pearson(const std::vector<double>& x, const std::vector<double>& y)
{
    if (x.size() != y.size() || x.size() < 4) {
        throw PreconditionError("Pearson correlation needs at least 4 paired values");
    }
    const double n = static_cast<double>(x.size());
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double sxy = 0.0;
    double sxx = 0.0;
    double syy = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        sxy += (x[k] - mx) * (y[k] - my);
        sxx += (x[k] - mx) * (x[k] - mx);
        syy += (y[k] - my) * (y[k] - my);
    }
    CorrelationResult out;
    out.r = sxy / std::sqrt(sxx * syy);
    const double z = std::atanh(std::clamp(out.r, -1.0 + 1e-15, 1.0 - 1e-15)) * std::sqrt(n - 3.0);
    out.p_value = std::erfc(std::abs(z) / std::numbers::sqrt2);
    return out;
}

namespace {

// Sum of Euclidean distances over unordered pairs of points [lo, hi).
double block_pair_sum(const std::vector<float>& xs, const std::vector<float>& ys, std::size_t lo, std::size_t hi)
{
    double total = 0.0;
    for (std::size_t i = lo; i < hi; ++i) {
        const float xi = xs[i];
        const float yi = ys[i];
        float row = 0.0f;
#pragma omp simd reduction(+ : row)
        for (std::size_t j = i + 1; j < hi; ++j) {
            const float dx = xs[j] - xi;
            const float dy = ys[j] - yi;
            row += std::sqrt(dx * dx + dy * dy);
        }
        total += row;
    }
    return total;
}

} // namespace

EnergyResult energy_test(const std::vector<Point2>& a, const std::vector<Point2>& b, int permutations,
                         RandomStream rng)
{
    if (a.size() < 2 || b.size() < 2 || permutations < 1) {
        throw PreconditionError("energy test needs two samples of size >= 2");
    }
    const std::size_t n = a.size();
    const std::size_t m = b.size();
    const std::size_t total = n + m;
    std::vector<Point2> pooled(a);
    pooled.insert(pooled.end(), b.begin(), b.end());

    // Centre and scale so single precision distances keep their accuracy.
    Point2 mean{0.0, 0.0};
    for (const auto& p : pooled) {
        mean[0] += p[0] / total;
        mean[1] += p[1] / total;
    }
    double spread = 0.0;
    for (const auto& p : pooled) {
        spread = std::max({spread, std::abs(p[0] - mean[0]), std::abs(p[1] - mean[1])});
    }
    spread = spread > 0.0 ? spread : 1.0;

    std::vector<float> xs(total);
    std::vector<float> ys(total);
    auto load = [&](const std::vector<std::size_t>& order) {
        for (std::size_t k = 0; k < total; ++k) {
            xs[k] = static_cast<float>((pooled[order[k]][0] - mean[0]) / spread);
            ys[k] = static_cast<float>((pooled[order[k]][1] - mean[1]) / spread);
        }
    };
    std::vector<std::size_t> order(total);
    std::iota(order.begin(), order.end(), std::size_t{0});
    load(order);
    const double all = block_pair_sum(xs, ys, 0, total);

    auto statistic = [&]() {
        const double saa = block_pair_sum(xs, ys, 0, n);
        const double sbb = block_pair_sum(xs, ys, n, total);
        const double sab = all - saa - sbb;
        const double dn = static_cast<double>(n);
        const double dm = static_cast<double>(m);
        const double e = 2.0 * sab / (dn * dm) - 2.0 * saa / (dn * dn) - 2.0 * sbb / (dm * dm);
        return e * dn * dm / (dn + dm) * spread;
    };

    EnergyResult out;
    out.statistic = statistic();
    out.permutations = permutations;
    int exceed = 0;
    for (int p = 0; p < permutations; ++p) {
        for (std::size_t k = total - 1; k > 0; --k) {
            const std::size_t j = static_cast<std::size_t>(rng.uniform() * static_cast<double>(k + 1));
            std::swap(order[k], order[std::min(j, k)]);
        }
        load(order);
        exceed += statistic() >= out.statistic;
    }
    out.p_value = (1.0 + exceed) / (1.0 + permutations);
    return out;
}

SlopeResult fit_loglog(const std::vector<double>& scales, const std::vector<double>& counts)
{
    const std::size_t k = scales.size();
    std::vector<double> x(k);
    std::vector<double> y(k);
    for (std::size_t i = 0; i < k; ++i) {
        x[i] = std::log(1.0 / scales[i]);
        y[i] = std::log(std::max(counts[i], 1.0));
    }
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / k;
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / k;
    double sxx = 0.0;
    double sxy = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    SlopeResult out;
    out.slope = sxy / sxx;
    double rss = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        const double r = y[i] - (my + out.slope * (x[i] - mx));
        rss += r * r;
    }
    out.stderr_ = std::sqrt(rss / static_cast<double>(k - 2) / sxx);
    out.counts = counts;
    return out;
}

namespace {

void check_scales(const std::vector<double>& scales)
{
    if (scales.size() < 4) {
        throw PreconditionError("box counting needs at least 4 scales");
    }
    const auto [lo, hi] = std::minmax_element(scales.begin(), scales.end());
    if (!(*lo > 0.0) || *hi / *lo < 8.0 * (1.0 - 1e-12)) {
        throw PreconditionError("box-counting scales must be positive and span 3 octaves");
    }
}

} // namespace

SlopeResult boxdim_estimate(const std::vector<double>& points, const std::vector<double>& scales)
{
    check_scales(scales);
    std::vector<double> counts;
    for (double eps : scales) {
        std::unordered_set<long long> boxes;
        for (double p : points) {
            boxes.insert(static_cast<long long>(std::floor(p / eps)));
        }
        counts.push_back(static_cast<double>(boxes.size()));
    }
    return fit_loglog(scales, counts);
}

SlopeResult boxdim_estimate(const std::vector<Point2>& points, const std::vector<double>& scales)
{
    check_scales(scales);
    std::vector<double> counts;
    for (double eps : scales) {
        std::unordered_set<long long> boxes;
        boxes.reserve(points.size());
        for (const auto& p : points) {
            const long long i = static_cast<long long>(std::floor(p[0] / eps));
            const long long j = static_cast<long long>(std::floor(p[1] / eps));
            boxes.insert(i * 4294967311LL + j);
        }
        counts.push_back(static_cast<double>(boxes.size()));
    }
    return fit_loglog(scales, counts);
}

std::vector<double> holm_adjust(const std::vector<double>& p)
{
    const std::size_t m = p.size();
    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](auto i, auto j) { return p[i] < p[j]; });
    std::vector<double> out(m);
    double running = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
        running = std::max(running, std::min(1.0, static_cast<double>(m - k) * p[order[k]]));
        out[order[k]] = running;
    }
    return out;
}

std::string TestReport::to_json_line() const
{
    nlohmann::ordered_json j;
    j["name"] = name;
    j["sample_sizes"] = sample_sizes;
    j["statistic"] = statistic;
    j["p_value"] = p_value ? nlohmann::ordered_json(*p_value) : nlohmann::ordered_json(nullptr);
    if (slope) {
        j["slope"] = *slope;
        j["slope_stderr"] = slope_stderr.value_or(0.0);
    }
    j["alpha"] = alpha;
    j["verdict"] = passed ? "pass" : "fail";
    j["seed"] = seed;
    if (!details.empty()) {
        j["details"] = details;
    }
    return j.dump();
}

} // namespace hyplane
