// rng.hpp
// Seed derivation and deterministic sampling. Every random draw in the
// library comes from std::mt19937_64, whose output sequence is fixed by
// the C++ standard, so identical seeds reproduce identical results on any
// platform.

#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>

namespace triality {

// SplitMix64 finalizer.
constexpr std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Sub-seed derivation: each salt word is folded into the running state as
// state = splitmix64(state ^ salt). Used for the per-(qubit, repetition)
// call seeds in the harness and the per-operator streams in tomography.
template <class... Salts>
constexpr std::uint64_t derive_seed(std::uint64_t master, Salts... salts) {
    std::uint64_t state = splitmix64(master);
    ((state = splitmix64(state ^ static_cast<std::uint64_t>(salts))), ...);
    return state;
}

// Uniform double in [0, 1) built from the top 53 bits of one draw.
inline double uniform_unit(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Binomial(trials, p) by direct Bernoulli summation: one 64-bit draw per
// trial, O(trials). Exact endpoints: p <= 0 yields 0, p >= 1 yields trials.
inline std::int64_t binomial_sample(std::mt19937_64& rng, std::int64_t trials, double p) {
    if (trials < 0) {
        throw std::invalid_argument("binomial_sample: trials must be nonnegative");
    }
    if (p <= 0.0) return 0;
    if (p >= 1.0) return trials;
    std::int64_t hits = 0;
    for (std::int64_t t = 0; t < trials; ++t) {
        if (uniform_unit(rng) < p) ++hits;
    }
    return hits;
}

}  // namespace triality
