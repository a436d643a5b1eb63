#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace dyncolor {

/// Seedable 64-bit generator. All sampling primitives are implemented here
/// rather than through <random> distributions so that streams are identical
/// across standard library implementations.
class Rng {
public:
    static constexpr std::string_view algorithm_id = "mt19937_64";

    explicit Rng(std::uint64_t seed = 0) : engine_(seed), seed_(seed) {}

    std::uint64_t seed() const noexcept { return seed_; }

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform integer in [0, bound). bound must be positive.
    std::uint64_t below(std::uint64_t bound);

    /// Uniform integer in [lo, hi], inclusive.
    std::uint64_t between(std::uint64_t lo, std::uint64_t hi) { return lo + below(hi - lo + 1); }

    /// Uniform double in [0, 1) with 53 random bits.
    double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return unit() < p; }

    bool coin() { return (engine_() >> 63) != 0; }

    /// Binomial(trials, p) by sequential inversion; expected cost O(1 + trials * p).
    std::uint64_t binomial(std::uint64_t trials, double p);

private:
    std::mt19937_64 engine_;
    std::uint64_t seed_;
};

/// splitmix64 finalizer, used for seed derivation.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// 64-bit FNV-1a.
constexpr std::uint64_t fnv1a64(std::string_view s) noexcept
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char ch : s) {
        h ^= static_cast<unsigned char>(ch);
        h *= 0x100000001b3ULL;
    }
    return h;
}

} // namespace dyncolor
