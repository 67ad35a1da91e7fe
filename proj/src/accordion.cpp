#include "hyplane/accordion.hpp"

#include <cmath>

#include "hyplane/measures.hpp"

namespace hyplane {

JumpStep apply_jump(const Arch& arch, double x)
{
    if (!(std::abs(x) > 1.0) || !std::isfinite(x)) {
        throw PreconditionError("normalized jumps satisfy |x| > 1");
    }
    const double width = arch.width();
    const double grown = width * 0.5 * (std::abs(x) + 1.0);
    JumpStep step;
    if (x > 1.0) {
        step.arch = {arch.L, arch.R + (grown - width)};
        step.triangle = {arch.L, arch.R, step.arch.R};
        step.side = {arch.R, step.arch.R};
    } else {
        step.arch = {arch.L - (grown - width), arch.R};
        step.triangle = {step.arch.L, arch.L, arch.R};
        step.side = {step.arch.L, arch.L};
    }
    return step;
}

double recover_jump(const Arch& before, const Arch& after)
{
    const double ratio = after.width() / before.width();
    const bool right = after.R != before.R;
    if (right == (after.L != before.L)) {
        throw PreconditionError("exactly one foot moves in a triangle jump");
    }
    return (right ? 1.0 : -1.0) * (2.0 * ratio - 1.0);
}

PoissonJumps::PoissonJumps(RandomStream stream, double cutoff, JumpLaw law)
    : stream_(stream), threshold_(1.0 + cutoff), law_(law)
{
    if (!(cutoff > 0.0)) {
        throw PreconditionError("jump cutoff must be positive");
    }
    rate_ = tail_mass(threshold_);
}

JumpEvent PoissonJumps::next()
{
    JumpEvent ev;
    ev.index = count_++;
    ev.wait = stream_.exponential(rate_);
    if (law_ == JumpLaw::zeta) {
        ev.x = sample_zeta(stream_, threshold_);
    } else {
        const bool negative = stream_.coin();
        const double x = threshold_ / stream_.uniform_open();
        ev.x = negative ? -x : x;
    }
    return ev;
}

JumpEvent ScriptedJumps::next()
{
    if (pos_ >= xs_.size()) {
        throw PreconditionError("scripted jump list exhausted");
    }
    JumpEvent ev;
    ev.index = pos_;
    ev.wait = 1.0;
    ev.x = xs_[pos_++];
    return ev;
}

AccordionRun build_accordion(const Arch& start, JumpSource& source, const ArchPredicate& stop,
                             std::uint64_t max_jumps)
{
    if (!(start.L < start.R)) {
        throw PreconditionError("arch needs L < R");
    }
    AccordionRun run;
    run.start = start;
    Arch arch = start;
    while (!stop(arch)) {
        if (run.jumps.size() >= max_jumps) {
            run.final = arch;
            throw BudgetExceeded(std::move(run));
        }
        const JumpEvent ev = source.next();
        const JumpStep step = apply_jump(arch, ev.x);
        run.jumps.push_back(ev);
        run.triangles.push_back(step.triangle);
        run.side_gaps.push_back(step.side);
        run.arches.push_back(step.arch);
        run.elapsed += ev.wait;
        arch = step.arch;
    }
    run.final = arch;
    return run;
}

AccordionRun grow_until_disconnect(const Arch& start, double a, JumpSource& source, std::uint64_t max_jumps)
{
    if (a >= start.L && a <= start.R) {
        throw PreconditionError("target must lie outside the initial arch");
    }
    return build_accordion(
        start, source, [a](const Arch& arch) { return arch.L < a && a < arch.R; }, max_jumps);
}

} // namespace hyplane
