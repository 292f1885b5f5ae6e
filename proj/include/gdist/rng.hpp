#pragma once

#include <cstdint>
#include <random>

namespace gdist {

using Seed = std::uint64_t;

// SplitMix64 finalizer; used to derive statistically independent child
// seeds from (parent seed, index) pairs.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

constexpr Seed derive_seed(Seed parent, std::uint64_t index) noexcept {
    return splitmix64(splitmix64(parent) ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

// Seedable engine with a uniform [0,1) helper. Streams for independent work
// items are split off with `child`, so results do not depend on the order in
// which the items are processed.
class Rng {
public:
    explicit Rng(Seed seed) : seed_(seed), engine_(splitmix64(seed)) {}

    Seed seed() const noexcept { return seed_; }
    Rng child(std::uint64_t index) const { return Rng(derive_seed(seed_, index)); }

    // 53-bit uniform in [0,1).
    double uniform() noexcept { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    std::uint64_t next() noexcept { return engine_(); }

    // Uniform integer in [lo, hi].
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
        return std::uniform_int_distribution<std::int64_t>(lo, hi)(engine_);
    }

    std::mt19937_64& engine() noexcept { return engine_; }

private:
    Seed seed_;
    std::mt19937_64 engine_;
};

} // namespace gdist
