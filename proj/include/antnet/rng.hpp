#ifndef ANTNET_RNG_HPP
#define ANTNET_RNG_HPP

#include <cstdint>
#include <random>

namespace antnet {

/// SplitMix64 finalizer. Used to turn loosely related integers (seed,
/// iteration, ant index) into well-separated engine seeds.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Seed for an independent stream identified by (seed, a, b). The same
/// triple always yields the same stream, regardless of which thread
/// consumes it.
inline std::uint64_t derive_stream_seed(std::uint64_t seed, std::uint64_t a,
                                        std::uint64_t b) {
    return splitmix64(splitmix64(splitmix64(seed) ^ a) ^ b);
}

/// Deterministic random source. Wraps mt19937_64 but generates doubles
/// by explicit bit manipulation so results do not depend on the standard
/// library's distribution implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform double in [0, 1), 53 random bits.
    double uniform01() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    /// Uniform double in [lo, hi).
    double uniform(double lo, double hi) {
        return lo + (hi - lo) * uniform01();
    }

    /// Uniform index in [0, n). Rejection sampling keeps it unbiased.
    std::size_t uniform_index(std::size_t n) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t v = engine_();
        while (v >= limit) v = engine_();
        return static_cast<std::size_t>(v % n);
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace antnet

#endif
