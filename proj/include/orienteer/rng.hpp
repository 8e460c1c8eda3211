#pragma once

#include <cstdint>
#include <cmath>
#include <span>
#include <stdexcept>

namespace orienteer {

// Seeded PRNG pinned to the splitmix64 algorithm (Steele, Lea & Flood 2014).
// The generator is fixed here, rather than taken from <random>, so that a
// seed produces the same report on every platform and compiler; the standard
// distributions carry no such guarantee.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform double in [0, 1) with the full 53 bits of mantissa.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + next_double() * (hi - lo); }

    // Standard normal via Box-Muller; consumes exactly two uniforms per call.
    double normal() {
        double u1 = next_double();
        double u2 = next_double();
        if (u1 < 1e-300) u1 = 1e-300;
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
    }

    // Inverse-CDF draw over a small probability vector: cumulative sums with
    // half-open intervals [c_{k-1}, c_k). Probabilities may sum to slightly
    // less or more than 1 from rounding; the last index absorbs the residue.
    std::size_t categorical(std::span<const double> probs) {
        double u = next_double();
        double cum = 0.0;
        for (std::size_t k = 0; k + 1 < probs.size(); ++k) {
            cum += probs[k];
            if (u < cum) return k;
        }
        return probs.empty() ? 0 : probs.size() - 1;
    }

    // Poisson draw. Knuth's product method below mean 30, Hormann's PTRS
    // transformed rejection above, so large means (counts ~1e5) stay O(1).
    std::uint64_t poisson(double mean);

    // Sub-stream derivation: stream k of a master seed is obtained by mixing
    // the seed with the stream index through the splitmix64 finalizer twice.
    // Shots and probe states use this so results do not depend on evaluation
    // order or worker count.
    static std::uint64_t substream(std::uint64_t master, std::uint64_t index) {
        return mix(mix(master ^ 0x6A09E667F3BCC909ULL) + (index + 1) * 0x9E3779B97F4A7C15ULL);
    }

private:
    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    std::uint64_t state_;
};

} // namespace orienteer
