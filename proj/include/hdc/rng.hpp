#pragma once

#include <cmath>
#include <cstdint>

namespace hdc {

// Counter-based pseudo-random stream.
//
// Draw k of stream (seed, s) is mix64(base(seed, s) + k * gamma), i.e. a
// stateless function of the counter, so streams can be handed out per
// Monte Carlo replicate and results do not depend on execution order.
// mix64 is the SplitMix64 finalizer (full-avalanche bijection on 64 bits);
// distinct (seed, stream_index) pairs land in disjoint windows of the mixed
// Weyl sequence except with probability ~2^-64.
class rng_stream {
public:
    explicit rng_stream(std::uint64_t seed, std::int64_t stream_index = 0) noexcept
        : seed_(seed), stream_(stream_index) {
        base_ = mix64(mix64(seed + kGamma) + kGamma * static_cast<std::uint64_t>(stream_index));
    }

    std::uint64_t seed() const noexcept { return seed_; }
    std::int64_t stream_index() const noexcept { return stream_; }

    /// Stream with the same seed and stream_index shifted by `offset`.
    rng_stream substream(std::int64_t offset) const noexcept {
        return rng_stream(seed_, stream_ + offset);
    }

    std::uint64_t next_u64() noexcept {
        counter_ += kGamma;
        return mix64(base_ + counter_);
    }

    /// Uniform double in [0, 1), 53 random bits.
    double uniform() noexcept {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform double in the open interval (0, 1).
    double uniform_open() noexcept {
        return (static_cast<double>(next_u64() >> 12) + 0.5) * 0x1.0p-52;
    }

    /// Unit-mean exponential variate, strictly positive.
    double exponential() noexcept {
        return -std::log(uniform_open());
    }

private:
    static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ull;

    static std::uint64_t mix64(std::uint64_t z) noexcept {
        z ^= z >> 30;
        z *= 0xBF58476D1CE4E5B9ull;
        z ^= z >> 27;
        z *= 0x94D049BB133111EBull;
        z ^= z >> 31;
        return z;
    }

    std::uint64_t seed_;
    std::int64_t stream_;
    std::uint64_t base_ = 0;
    std::uint64_t counter_ = 0;
};

} // namespace hdc
