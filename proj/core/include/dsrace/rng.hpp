// Copyright (c) 2026 The dsrace developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef DSRACE_RNG_HPP
#define DSRACE_RNG_HPP

#include <cmath>
#include <cstdint>
#include <limits>

namespace dsrace {

// Substream layout
// ----------------
// Every Monte Carlo trial owns a private SplitMix64 stream whose state is
//
//     seed(master, t) = mix64(mix64(master) + (t + 1) * kGoldenGamma)
//
// For a fixed master seed, t -> (t + 1) * gamma + c is a bijection on 64-bit
// integers (gamma is odd) and mix64 is a bijection too, so distinct trial
// indices never share a seed. Results therefore depend only on
// (master, t), never on which thread ran the trial.

inline constexpr std::uint64_t kGoldenGamma = 0x9e3779b97f4a7c15ULL;

/// The SplitMix64 output finalizer (a bijection).
constexpr std::uint64_t mix64(std::uint64_t x)
{
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ULL;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebULL;
    x ^= x >> 31;
    return x;
}

constexpr std::uint64_t derive_stream_seed(std::uint64_t master, std::uint64_t index)
{
    return mix64(mix64(master) + (index + 1) * kGoldenGamma);
}

/// SplitMix64; satisfies UniformRandomBitGenerator.
class SplitMix64 {
public:
    using result_type = std::uint64_t;

    constexpr explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    constexpr result_type operator()()
    {
        state_ += kGoldenGamma;
        return mix64(state_);
    }

private:
    std::uint64_t state_;
};

/// Bernoulli(p) on raw 64-bit draws: success iff draw < threshold.
/// Bit-exact across platforms, unlike std::bernoulli_distribution.
class BernoulliThreshold {
public:
    explicit BernoulliThreshold(double p)
    {
        const double scaled = std::ldexp(p, 64);
        constexpr auto top = std::numeric_limits<std::uint64_t>::max();
        threshold_ = scaled >= 0x1p64 ? top : static_cast<std::uint64_t>(scaled);
    }

    template <class Engine>
    bool operator()(Engine& engine) const
    {
        return engine() < threshold_;
    }

    std::uint64_t threshold() const { return threshold_; }

private:
    std::uint64_t threshold_ = 0;
};

}  // namespace dsrace

#endif  // DSRACE_RNG_HPP
