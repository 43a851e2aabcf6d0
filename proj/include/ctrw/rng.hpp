#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace ctrw {

// SplitMix64 finisher. Used as a stateless counter-based mixer so that
// replica k of a run with master seed m always gets the same child seed,
// independent of scheduling or thread count.
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

inline std::uint64_t child_seed(std::uint64_t master, std::uint64_t replica) {
    return mix64(master + 0x9E3779B97F4A7C15ull * replica);
}

// Thin deterministic wrapper around mt19937_64. Two Rng instances built from
// equal seeds produce bitwise-identical draw sequences.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t raw() { return eng_(); }

    // uniform on [0,1), 53-bit resolution
    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    // uniform on (0,1): rejects the single zero value
    double uniform_pos() {
        for (;;) {
            double u = uniform();
            if (u > 0.0) return u;
        }
    }

    double exponential() { return -std::log(uniform_pos()); }

    double normal() { return normal_(eng_); }

    std::mt19937_64& engine() { return eng_; }

  private:
    std::mt19937_64 eng_;
    std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace ctrw
