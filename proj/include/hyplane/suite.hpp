#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "hyplane/stats.hpp"
#include "hyplane/tiling.hpp"

namespace hyplane {

enum class InvarianceMode : std::uint8_t { mobius, reversibility, target, markov };

const char* to_string(InvarianceMode mode);
InvarianceMode invariance_mode_from_string(std::string_view name);

// Which tiling feeds the mobius comparison.
enum class MobiusSampler : std::uint8_t {
    markov,
    farey,
    // Jumps with 1/x^2 tails; must be rejected.
    corrupted,
};

struct SuiteOptions {
    std::size_t n = 10000;
    std::uint64_t seed = 1;
    double alpha = kDefaultAlpha;
    double resolution = 1e-4;
    // Energy-test permutations (reversibility).
    int permutations = 200;
    // Reference point |z0| for mobius, height y for reversibility, target a.
    double mobius_radius = 0.5;
    double height = 4.0;
    double target = 5.0;
    // Jump cutoff for the bare accordions of the target mode.
    double target_cutoff = 1e-6;
};

inline constexpr std::size_t kMinSuiteSamples = 1000;

TestReport invariance_suite(InvarianceMode mode, const SuiteOptions& options);
TestReport mobius_test(MobiusSampler sampler, const SuiteOptions& options);

/*!
 * Runs the first sampler of a mode against itself on independent streams,
 * `repetitions` times. Passes when the rejection rate at alpha is at most 2 alpha.
 */
TestReport null_calibration(InvarianceMode mode, const SuiteOptions& options, int repetitions);

//---------------------------------------------------------------------------//
// Coverage of a chord and dyadic trace counts.
//---------------------------------------------------------------------------//

struct CoverageProfile {
    std::vector<double> scales;
    // Mean uncovered Euclidean length per scale.
    std::vector<double> uncovered;
    // Largest summed trace length seen at any scale (never above the chord length).
    double max_trace_sum = 0.0;
    // dyadic[s][k]: mean count of traces in [2^-(n+1), 2^-n), n = first_bin + k.
    std::vector<std::vector<double>> dyadic;
    int first_bin = 5;
    int last_bin = 12;
    // Every sample had non-increasing uncovered length.
    bool monotone = true;
};

// The jump cutoff is min(scales) / 10 at every scale, so each sample's tilings are nested.
CoverageProfile coverage_profile(const Chord& chord, const std::vector<double>& scales, int samples,
                                 std::uint64_t seed, int first_bin = 5, int last_bin = 12);

TestReport coverage_report(int samples, std::uint64_t seed);
TestReport dyadic_report(int samples, std::uint64_t seed);

//---------------------------------------------------------------------------//
// Box dimensions.
//---------------------------------------------------------------------------//

// Scales 2^-first_exp .. 2^-last_exp.
std::vector<double> dyadic_scales(int first_exp, int last_exp);

// R values in [1, 10] of an accordion from (-1, 1) run until R > 10.
std::vector<double> accordion_range(RandomStream stream, double cutoff);

TestReport range_dimension_report(int samples, std::uint64_t seed);
TestReport boundary_dimension_report(int samples, std::uint64_t seed);
TestReport dimension_report(int samples, std::uint64_t seed);

//---------------------------------------------------------------------------//
// Algebraic checks.
//---------------------------------------------------------------------------//

TestReport duality_report(std::size_t n, std::uint64_t seed);

// Square relation on accordion squares, completed-foot law and type-II rate.
TestReport quadrangulation_report(std::size_t n, std::uint64_t seed);

} // namespace hyplane
