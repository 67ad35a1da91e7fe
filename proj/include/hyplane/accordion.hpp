#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

#include "hyplane/errors.hpp"
#include "hyplane/random.hpp"

namespace hyplane {

inline constexpr std::uint64_t kDefaultMaxJumps = 10'000'000;

// Normalized jump: the new foot sits at x in the chart where the arch is (-1, 1).
struct JumpEvent {
    double x = 0.0;
    std::uint64_t index = 0;
    // Waiting time since the previous jump.
    double wait = 0.0;
};

// Current arch (L, R) of an accordion in the half-plane.
struct Arch {
    double L = -1.0;
    double R = 1.0;

    double width() const { return R - L; }
    // Affine image of a normalized coordinate: -1 -> L, 1 -> R.
    double place(double x) const { return L + 0.5 * (x + 1.0) * width(); }
};

struct JumpStep {
    Arch arch;
    std::array<double, 3> triangle{};
    // New side edge (from, to), increasing.
    std::array<double, 2> side{};
};

JumpStep apply_jump(const Arch& arch, double x);
// Inverse of apply_jump on consecutive arches.
double recover_jump(const Arch& before, const Arch& after);

enum class JumpLaw : std::uint8_t {
    zeta,
    // Deliberately wrong law with density proportional to 1/x^2, for sanity checks.
    pareto,
};

class JumpSource {
  public:
    virtual ~JumpSource() = default;
    virtual JumpEvent next() = 0;
};

/*!
 * Poisson jumps with |x| > 1 + cutoff.
 *
 * Jumps are i.i.d. from the law restricted above the cutoff; waiting times
 * are exponential at the restricted zeta mass.
 */
class PoissonJumps final : public JumpSource {
  public:
    PoissonJumps(RandomStream stream, double cutoff, JumpLaw law = JumpLaw::zeta);

    JumpEvent next() override;
    double rate() const { return rate_; }

  private:
    RandomStream stream_;
    double threshold_;
    double rate_;
    JumpLaw law_;
    std::uint64_t count_ = 0;
};

// Replays a fixed list of jumps, one waiting-time unit apart.
class ScriptedJumps final : public JumpSource {
  public:
    explicit ScriptedJumps(std::vector<double> xs) : xs_(std::move(xs)) {}
    JumpEvent next() override;

  private:
    std::vector<double> xs_;
    std::size_t pos_ = 0;
};

struct AccordionRun {
    std::vector<std::array<double, 3>> triangles;
    std::vector<std::array<double, 2>> side_gaps;
    std::vector<JumpEvent> jumps;
    std::vector<Arch> arches;
    Arch start;
    Arch final;
    double elapsed = 0.0;
};

class BudgetExceeded : public Error {
  public:
    BudgetExceeded(AccordionRun partial)
        : Error("accordion stop condition not reached within the jump budget"), partial_(std::move(partial)) {}
    const AccordionRun& partial() const { return partial_; }

  private:
    AccordionRun partial_;
};

using ArchPredicate = std::function<bool(const Arch&)>;

// Runs jumps from `start` until stop(arch) holds.
AccordionRun build_accordion(const Arch& start, JumpSource& source, const ArchPredicate& stop,
                             std::uint64_t max_jumps = kDefaultMaxJumps);

// Runs until the first arch with L < a < R; the last triangle disconnects a.
AccordionRun grow_until_disconnect(const Arch& start, double a, JumpSource& source,
                                   std::uint64_t max_jumps = kDefaultMaxJumps);

} // namespace hyplane
