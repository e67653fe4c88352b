// Seeded deterministic random stream. All stochastic operators draw from one of
// these; identical seed + identical call sequence gives identical outputs on
// every platform (mt19937_64 core, custom bounded draws).
#pragma once

#include <cstdint>
#include <random>

namespace stereogen {

class RngStream {
public:
    explicit RngStream(std::uint64_t seed) : seed_(seed), engine_(seed) {}

    std::uint64_t seed() const { return seed_; }

    std::uint64_t next_u64() { return engine_(); }

    // Uniform double in [0, 1), 53 mantissa bits.
    double next_u01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    // Uniform integer in [lo, hi], both inclusive. Unbiased via rejection.
    int next_int(int lo, int hi) {
        const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
        std::uint64_t x;
        do {
            x = engine_();
        } while (x >= limit);
        return lo + static_cast<int>(x % span);
    }

    // Derived independent stream. Forks depend on this stream's seed and the
    // index only, never on how many values have been drawn; concurrent tasks
    // fork by task index so results are schedule-independent.
    RngStream fork(std::uint64_t index) const { return RngStream(mix(seed_, index)); }

    static std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
        return splitmix64(a ^ splitmix64(b + 0x9e3779b97f4a7c15ull));
    }

private:
    static std::uint64_t splitmix64(std::uint64_t x) {
        x += 0x9e3779b97f4a7c15ull;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
        return x ^ (x >> 31);
    }

    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

} // namespace stereogen
