#include "hyplane/random.hpp"

#include <cmath>

#include "hyplane/errors.hpp"

namespace hyplane {

namespace {

constexpr std::uint32_t kM0 = 0xD2511F53;
constexpr std::uint32_t kM1 = 0xCD9E8D57;
constexpr std::uint32_t kW0 = 0x9E3779B9;
constexpr std::uint32_t kW1 = 0xBB67AE85;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo)
{
    const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
    hi = static_cast<std::uint32_t>(p >> 32);
    lo = static_cast<std::uint32_t>(p);
}

} // namespace

PhiloxCounter philox4x32(PhiloxCounter c, PhiloxKey k)
{
    for (int round = 0; round < 10; ++round) {
        std::uint32_t hi0, lo0, hi1, lo1;
        mulhilo(kM0, c[0], hi0, lo0);
        mulhilo(kM1, c[2], hi1, lo1);
        c = {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
        k[0] += kW0;
        k[1] += kW1;
    }
    return c;
}

std::uint64_t mix64(std::uint64_t z)
{
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

RandomStream::RandomStream(std::uint64_t seed) : seed_(seed) {}

RandomStream RandomStream::split(std::uint64_t index) const
{
    // Chain the parent hash with the index; the golden-ratio offset keeps
    // split(0) of the root distinct from the root itself.
    return {seed_, mix64(path_ ^ mix64(index + 0x9E3779B97F4A7C15ULL))};
}

std::uint64_t RandomStream::next_u64()
{
    if (used_ >= 4) {
        const PhiloxCounter ctr{static_cast<std::uint32_t>(block_), static_cast<std::uint32_t>(block_ >> 32),
                                static_cast<std::uint32_t>(path_), static_cast<std::uint32_t>(path_ >> 32)};
        const PhiloxKey key{static_cast<std::uint32_t>(seed_), static_cast<std::uint32_t>(seed_ >> 32)};
        buffer_ = philox4x32(ctr, key);
        ++block_;
        used_ = 0;
    }
    const std::uint64_t out = (static_cast<std::uint64_t>(buffer_[used_]) << 32) | buffer_[used_ + 1];
    used_ += 2;
    return out;
}

double RandomStream::uniform()
{
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RandomStream::uniform_open()
{
    double u;
    do {
        u = uniform();
    } while (u == 0.0);
    return u;
}

double RandomStream::exponential(double rate)
{
    if (!(rate > 0.0)) {
        throw PreconditionError("exponential rate must be positive");
    }
    return -std::log(uniform_open()) / rate;
}

} // namespace hyplane
