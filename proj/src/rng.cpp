#include "orienteer/rng.hpp"

namespace orienteer {

namespace {

// Hormann's PTRS transformed-rejection sampler (1993). Constant expected
// cost for any mean, which matters for resampling counts of order 1e5.
std::uint64_t poisson_ptrs(Rng& rng, double mean) {
    const double b = 0.931 + 2.53 * std::sqrt(mean);
    const double a = -0.059 + 0.02483 * b;
    const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
    const double v_r = 0.9277 - 3.6224 / (b - 2.0);
    const double log_mean = std::log(mean);

    for (;;) {
        double u = rng.next_double() - 0.5;
        double v = rng.next_double();
        double us = 0.5 - std::fabs(u);
        double kf = std::floor((2.0 * a / us + b) * u + mean + 0.43);
        if (kf < 0.0) continue;
        if (us >= 0.07 && v <= v_r) return static_cast<std::uint64_t>(kf);
        if (us < 0.013 && v > us) continue;
        double k = kf;
        if (std::log(v * inv_alpha / (a / (us * us) + b)) <=
            k * log_mean - mean - std::lgamma(k + 1.0)) {
            return static_cast<std::uint64_t>(kf);
        }
    }
}

std::uint64_t poisson_knuth(Rng& rng, double mean) {
    const double limit = std::exp(-mean);
    std::uint64_t k = 0;
    double p = 1.0;
    do {
        ++k;
        p *= rng.next_double();
    } while (p > limit);
    return k - 1;
}

} // namespace

std::uint64_t Rng::poisson(double mean) {
    if (mean < 0.0) throw std::invalid_argument("poisson: negative mean");
    if (mean == 0.0) return 0;
    return mean < 30.0 ? poisson_knuth(*this, mean) : poisson_ptrs(*this, mean);
}

} // namespace orienteer
