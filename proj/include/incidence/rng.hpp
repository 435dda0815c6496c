#pragma once

// Deterministic random numbers that are identical on every platform: std::mt19937_64 has a
// standardized output sequence, and every mapping onto ranges or reals below is our own
// (the standard distributions are implementation-defined).

#include <cmath>
#include <cstdint>
#include <random>

namespace incidence {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Derived stream for a sub-task, e.g. one level of a construction.
    static Rng derive(std::uint64_t seed, std::uint64_t stream)
    {
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
        Rng out(0);
        out.engine_.seed(seq);
        return out;
    }

    std::uint64_t next() { return engine_(); }

    /// Uniform integer in [lo, hi] by rejection sampling.
    std::int64_t uniform(std::int64_t lo, std::int64_t hi)
    {
        const std::uint64_t span = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo);
        if (span == UINT64_MAX) return static_cast<std::int64_t>(next());
        const std::uint64_t n = span + 1;
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t v;
        do {
            v = next();
        } while (v >= limit);
        return lo + static_cast<std::int64_t>(v % n);
    }

    /// Uniform double in [0, 1) from the top 53 bits.
    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Standard normal by Box-Muller.
    double normal()
    {
        double u = unit();
        while (u <= 0.0) u = unit();
        return std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * 3.14159265358979323846 * unit());
    }

private:
    std::mt19937_64 engine_;
};

} // namespace incidence
