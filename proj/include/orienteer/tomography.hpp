#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "orienteer/protocol.hpp"

namespace orienteer {

// The 36 tomography probes: tensor products of the six Pauli eigenstates on
// each qubit, first factor slow. shots_per_state == 0 selects exact mode,
// where collect_statistics returns Born probabilities instead of counts.
struct ProbeSet {
    std::vector<CVec> states;
    std::vector<std::string> labels; // e.g. "+x+y"
    std::uint64_t shots_per_state = 0;

    static ProbeSet standard(std::uint64_t shots_per_state);
};

// Row per probe, column per outcome. Real-valued so the exact-statistics
// mode (probabilities) and sampled counts share one type.
using CountsMatrix = std::vector<std::array<double, 4>>;

struct NoiseModel {
    double plate_angle_sigma = 0.0; // radians
    std::uint64_t seed = 0;
};

CountsMatrix collect_statistics(const Povm& povm, const ProbeSet& probes, std::uint64_t seed);

struct TomographyResult {
    Povm reconstructed;
    std::array<double, 4> element_fidelity{0, 0, 0, 0}; // vs reference, if given
    double overall_fidelity = 0.0;
    int iterations = 0;
    double final_log_likelihood = 0.0;
    double min_ll_gain = 0.0; // most negative per-iteration change observed
    bool converged = false;
    bool has_reference = false;
};

// Iterative maximum-likelihood reconstruction with the completeness
// constraint folded in through the lambda normalization:
//   R_j = sum_i (f_ij / p_ij) rho_i
//   lambda = sum_j R_j Pi_j R_j
//   Pi_j <- lambda^{-1/2} R_j Pi_j R_j lambda^{-1/2}
// starting from Pi_j = I/4, stopping when the log-likelihood gain drops
// below `tol` or after `max_iters` (non-convergence is flagged, not fatal).
// A negative `tol` disables early stopping and runs the full budget; the
// zero eigenvalues of projective targets converge like 1/k, well past the
// point where the likelihood itself is flat to double precision.
// When `reference` is given, per-element fidelities are scored against it
// and its guesses are attached to the reconstruction. `initial` warm-starts
// the iteration (bootstrap reps restart from a previous fixed point).
TomographyResult reconstruct_ml(const CountsMatrix& counts, const ProbeSet& probes,
                                int max_iters = 5000, double tol = 1e-10,
                                const Povm* reference = nullptr,
                                const Povm* initial = nullptr);

// Uhlmann fidelity of trace-normalized operators,
// F = [Tr sqrt(sqrt(A) B sqrt(A))]^2 with A = a/Tr a, B = b/Tr b.
// Reduces to |<psi|phi>|^2 for rank-1 projectors.
double povm_fidelity(const CMat& a, const CMat& b);

// Built-in schedule in plate encoding with every plate angle jittered by an
// independent Gaussian of width sigma. Plates stay plates, so every coin
// remains exactly unitary.
CoinSchedule perturbed_schedule(SchemeId scheme, const NoiseModel& noise);

} // namespace orienteer
