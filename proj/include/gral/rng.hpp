#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "gral/error.hpp"

namespace gral {

/// splitmix64 mixer; used to derive independent sub-stream seeds from a
/// master seed so that split/init/dropout/schedule randomness never share
/// a stream.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
    return mix64(mix64(master) ^ mix64(stream * 0xd1342543de82ef95ULL + 1));
}

/// Deterministic random generator. Wraps mt19937_64 with hand-rolled
/// distributions; std::*_distribution output is not pinned by the standard
/// and would break bit-reproducibility across toolchains.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform double in [0, 1) with 53-bit resolution.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, bound); bound > 0.
    std::uint64_t uniform_int(std::uint64_t bound) {
        check(bound > 0, "uniform_int: bound must be positive");
        // rejection sampling to avoid modulo bias
        const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound + 1) % bound;
        std::uint64_t x;
        do {
            x = engine_();
        } while (x > limit);
        return x % bound;
    }

    bool bernoulli(double p) { return uniform() < p; }

    /// Beta(1, b) via inverse CDF: F(x) = 1 - (1-x)^b.
    double beta_one(double b) {
        check(b > 0.0, "beta_one: shape must be positive");
        return 1.0 - std::pow(uniform(), 1.0 / b);
    }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(uniform_int(i));
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    std::mt19937_64 engine_;
};

/// Sub-stream tags for the per-seed randomness of one experiment run.
namespace stream {
inline constexpr std::uint64_t split = 1;
inline constexpr std::uint64_t init = 2;
inline constexpr std::uint64_t dropout = 3;
inline constexpr std::uint64_t schedule = 4;
inline constexpr std::uint64_t kmeans = 5;
}  // namespace stream

}  // namespace gral
