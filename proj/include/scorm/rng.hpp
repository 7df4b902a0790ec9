#pragma once

// Seeded random streams. Every stochastic operation takes an explicit
// seed; replicate streams are derived with a splittable mix so results
// are reproducible regardless of execution order.

#include <cstdint>
#include <random>

namespace scorm {

// SplitMix64 step; used both as a seed scrambler and a stream splitter.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Derives an independent sub-seed for replicate `index` of a master seed.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    std::uint64_t s = master;
    std::uint64_t a = splitmix64(s);
    s = master ^ (0x9e3779b97f4a7c15ULL + index * 0xd1b54a32d192ed03ULL);
    std::uint64_t b = splitmix64(s);
    return a ^ (b + 0x2545f4914f6cdd1dULL * (index + 1));
}

// Thin wrapper over mt19937_64 producing doubles in [0, 1).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform() {
        // 53-bit mantissa; never returns 1.0.
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    // Uniform integer in [0, n).
    std::size_t index(std::size_t n) {
        std::uniform_int_distribution<std::size_t> dist(0, n - 1);
        return dist(engine_);
    }

    std::mt19937_64& engine() { return engine_; }

private:
    std::mt19937_64 engine_;
};

} // namespace scorm
