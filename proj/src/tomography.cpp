#include "orienteer/tomography.hpp"

#include <cmath>

#include "orienteer/rng.hpp"

namespace orienteer {

namespace {

constexpr double kProbFloor = 1e-12;
constexpr double kEigFloor = 1e-14;

CMat inv_sqrt_psd(const CMat& m) {
    return hermitian_function(m, [](double x) { return 1.0 / std::sqrt(std::max(x, kEigFloor)); },
                              1e-8);
}

CMat sqrt_psd(const CMat& m) {
    return hermitian_function(m, [](double x) { return std::sqrt(std::max(x, 0.0)); }, 1e-8);
}

void hermitize(CMat& m) {
    for (std::size_t r = 0; r < m.rows(); ++r) {
        m(r, r) = cplx{m(r, r).real(), 0.0};
        for (std::size_t c = r + 1; c < m.cols(); ++c) {
            const cplx avg = 0.5 * (m(r, c) + std::conj(m(c, r)));
            m(r, c) = avg;
            m(c, r) = std::conj(avg);
        }
    }
}

} // namespace

ProbeSet ProbeSet::standard(std::uint64_t shots_per_state) {
    const auto eig = pauli_eigenstates();
    const auto names = pauli_eigenstate_labels();
    ProbeSet probes;
    probes.shots_per_state = shots_per_state;
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = 0; j < 6; ++j) {
            probes.states.push_back(kron(eig[i], eig[j]));
            probes.labels.push_back(std::string(names[i]) + names[j]);
        }
    return probes;
}

CountsMatrix collect_statistics(const Povm& povm, const ProbeSet& probes, std::uint64_t seed) {
    CountsMatrix counts(probes.states.size());
    for (std::size_t i = 0; i < probes.states.size(); ++i) {
        auto probs = born_probabilities(povm, probes.states[i]);
        // Condition on detection: a leaky (subnormalized) measurement, e.g.
        // a jittered walk, loses a little probability past the detectors;
        // recorded statistics see only the detected events.
        const double total = probs[0] + probs[1] + probs[2] + probs[3];
        if (total <= 0.0)
            throw std::invalid_argument("collect_statistics: probe has zero detection probability");
        for (double& p : probs) p /= total;
        if (probes.shots_per_state == 0) {
            counts[i] = probs;
            continue;
        }
        Rng rng(Rng::substream(seed, i));
        std::array<double, 4> row{0, 0, 0, 0};
        for (std::uint64_t s = 0; s < probes.shots_per_state; ++s)
            row[rng.categorical(probs)] += 1.0;
        counts[i] = row;
    }
    return counts;
}

TomographyResult reconstruct_ml(const CountsMatrix& counts, const ProbeSet& probes,
                                int max_iters, double tol, const Povm* reference,
                                const Povm* initial) {
    const std::size_t n_probes = probes.states.size();
    if (counts.size() != n_probes)
        throw std::invalid_argument("reconstruct_ml: counts rows do not match probe count");
    if (max_iters < 1) throw std::invalid_argument("reconstruct_ml: max_iters must be >= 1");

    double grand_total = 0.0;
    for (const auto& row : counts)
        for (double c : row) {
            if (c < 0.0 || !std::isfinite(c))
                throw std::invalid_argument("reconstruct_ml: counts must be finite and >= 0");
            grand_total += c;
        }
    if (grand_total <= 0.0) throw std::invalid_argument("reconstruct_ml: all counts are zero");

    std::vector<CMat> rho;
    rho.reserve(n_probes);
    for (const auto& s : probes.states) rho.push_back(projector(s));

    // Frequencies normalized per probe (each row a multinomial distribution).
    // The update itself is invariant under the normalization; it only fixes
    // the scale the log-likelihood tolerance works at, independent of the
    // shot budget. All-zero rows carry no information and get weight zero.
    std::vector<std::array<double, 4>> freq(n_probes);
    for (std::size_t i = 0; i < n_probes; ++i) {
        const double row_total = counts[i][0] + counts[i][1] + counts[i][2] + counts[i][3];
        for (std::size_t j = 0; j < 4; ++j)
            freq[i][j] = row_total > 0.0 ? counts[i][j] / row_total : 0.0;
    }

    std::array<CMat, 4> pi;
    if (initial) {
        for (std::size_t j = 0; j < 4; ++j) pi[j] = initial->elements[j];
    } else {
        for (std::size_t j = 0; j < 4; ++j) pi[j] = 0.25 * CMat::identity(4);
    }

    auto born = [&](std::size_t i, std::size_t j) {
        cplx t{0.0, 0.0};
        for (std::size_t r = 0; r < 4; ++r)
            for (std::size_t c = 0; c < 4; ++c) t += rho[i](c, r) * pi[j](r, c);
        return std::max(t.real(), kProbFloor);
    };

    auto log_likelihood = [&]() {
        double ll = 0.0;
        for (std::size_t i = 0; i < n_probes; ++i)
            for (std::size_t j = 0; j < 4; ++j)
                if (freq[i][j] > 0.0) ll += freq[i][j] * std::log(born(i, j));
        return ll;
    };

    TomographyResult result;
    double ll = log_likelihood();
    int iter = 0;
    for (; iter < max_iters; ++iter) {
        std::array<CMat, 4> r_ops;
        for (std::size_t j = 0; j < 4; ++j) {
            CMat r(4, 4);
            for (std::size_t i = 0; i < n_probes; ++i) {
                if (freq[i][j] == 0.0) continue;
                const double w = freq[i][j] / born(i, j);
                for (std::size_t a = 0; a < 4; ++a)
                    for (std::size_t b = 0; b < 4; ++b) r(a, b) += w * rho[i](a, b);
            }
            r_ops[j] = std::move(r);
        }

        CMat lambda(4, 4);
        std::array<CMat, 4> rpr;
        for (std::size_t j = 0; j < 4; ++j) {
            rpr[j] = matmul(r_ops[j], matmul(pi[j], r_ops[j]));
            lambda += rpr[j];
        }
        hermitize(lambda);
        const CMat norm = inv_sqrt_psd(lambda);
        for (std::size_t j = 0; j < 4; ++j) {
            pi[j] = matmul(norm, matmul(rpr[j], norm));
            hermitize(pi[j]);
        }

        const double ll_new = log_likelihood();
        const double gain = ll_new - ll;
        ll = ll_new;
        result.min_ll_gain = std::min(result.min_ll_gain, gain);
        if (tol >= 0.0 && gain < tol && gain > -1e-9) {
            result.converged = true;
            ++iter;
            break;
        }
    }

    result.iterations = iter;
    result.final_log_likelihood = ll;
    result.reconstructed.label = reference ? reference->label + "-reconstructed"
                                           : "reconstructed";
    result.reconstructed.elements.assign(pi.begin(), pi.end());
    if (reference) {
        result.reconstructed.guesses = reference->guesses;
        result.has_reference = true;
        double sum = 0.0;
        for (std::size_t j = 0; j < 4; ++j) {
            result.element_fidelity[j] = povm_fidelity(pi[j], reference->elements[j]);
            sum += result.element_fidelity[j];
        }
        result.overall_fidelity = sum / 4.0;
    } else {
        result.reconstructed.guesses.assign(4, Direction{0.0, 0.0, 1.0});
    }
    return result;
}

double povm_fidelity(const CMat& a, const CMat& b) {
    const double ta = a.trace().real();
    const double tb = b.trace().real();
    if (ta <= 0.0 || tb <= 0.0)
        throw std::invalid_argument("povm_fidelity: operators must have positive trace");
    const CMat an = (1.0 / ta) * a;
    const CMat bn = (1.0 / tb) * b;
    const CMat ra = sqrt_psd(an);
    CMat inner_op = matmul(ra, matmul(bn, ra));
    hermitize(inner_op);
    const auto eig = eig_hermitian(inner_op, 1e-8);
    double s = 0.0;
    for (double v : eig.eigenvalues) s += std::sqrt(std::max(v, 0.0));
    // Rounding in the eigensolver can push the sum a hair past 1.
    return std::min(s * s, 1.0);
}

CoinSchedule perturbed_schedule(SchemeId scheme, const NoiseModel& noise) {
    CoinSchedule sched = builtin_schedule(scheme, CoinEncoding::Plates);
    if (noise.plate_angle_sigma < 0.0)
        throw std::invalid_argument("perturbed_schedule: sigma must be >= 0");
    if (noise.plate_angle_sigma == 0.0) return sched;
    Rng rng(Rng::substream(noise.seed, 0));
    for (auto& step : sched.steps)
        for (auto& [pos, coin] : step)
            for (auto& plate : coin.plates) plate.angle += noise.plate_angle_sigma * rng.normal();
    return sched;
}

} // namespace orienteer
