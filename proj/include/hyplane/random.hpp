#pragma once

#include <array>
#include <cstdint>

namespace hyplane {

// Philox4x32-10 block function.
using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

PhiloxCounter philox4x32(PhiloxCounter ctr, PhiloxKey key);

// SplitMix64 output finalizer.
std::uint64_t mix64(std::uint64_t z);

//---------------------------------------------------------------------------//
/*!
 * Counter-based splittable stream.
 *
 * A stream is a seed plus a path of split indices, hashed into 64 bits. The
 * k-th block of output is philox(k, path_hash) under the seed key, so a
 * stream can be recreated anywhere from (seed, path) alone and child
 * streams never share counters with their parent.
 */
class RandomStream {
  public:
    explicit RandomStream(std::uint64_t seed);

    RandomStream split(std::uint64_t index) const;

    std::uint64_t seed() const { return seed_; }
    std::uint64_t path_hash() const { return path_; }

    std::uint64_t next_u64();
    // Uniform on [0, 1) with 53 random bits.
    double uniform();
    // Uniform on (0, 1).
    double uniform_open();
    bool coin() { return (next_u64() >> 63) != 0; }
    double exponential(double rate);

  private:
    RandomStream(std::uint64_t seed, std::uint64_t path) : seed_(seed), path_(path) {}

    std::uint64_t seed_;
    std::uint64_t path_ = 0;
    std::uint64_t block_ = 0;
    std::array<std::uint32_t, 4> buffer_{};
    int used_ = 4;
};

} // namespace hyplane
