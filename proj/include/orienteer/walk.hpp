#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "orienteer/bases.hpp"

namespace orienteer {

// Walker/coin amplitudes as a sparse map position -> (amp_H, amp_V).
// The conditional translation moves H to x+1 and V to x-1. Five steps
// starting from positions +-1 stay inside [-6, 6]; anything outside is a
// schedule bug, not a runtime condition, so it throws.
struct WalkState {
    static constexpr int kMinPos = -6;
    static constexpr int kMaxPos = 6;

    std::map<int, std::array<cplx, 2>> amplitudes;

    double total_probability() const;
    void prune(double tol = 1e-300);
};

// Amplitudes of the embedded two-qubit system: the walker restricted to
// positions +1/-1 is the first qubit, the coin the second.
//   a|+1,H> + b|+1,V> + c|-1,H> + d|-1,V>  <->  (a, b, c, d)
struct EmbeddedTwoQubit {
    cplx a, b, c, d;

    static EmbeddedTwoQubit from_ket(const CVec& k);
    CVec to_ket() const;
    WalkState to_walk_state() const;
    double norm_sq() const;
};

enum class DetectorPol { H, V, Both };

// Absorbing detector: after the translation of `step`, the amplitude at
// `position` (restricted to `pol`) is removed and credited to `outcome`.
struct Detector {
    int position;
    int step;    // 1-based
    int outcome; // 1..4
    DetectorPol pol = DetectorPol::Both;
};

// Coin given either as an explicit 2x2 unitary or as a wave-plate stack.
struct CoinSpec {
    std::optional<CMat> matrix;
    std::vector<WavePlateSetting> plates;

    CMat unitary() const;
};

// Per-step, per-position coin table plus the detector map. Positions not
// listed get the identity coin.
struct CoinSchedule {
    std::vector<std::map<int, CoinSpec>> steps;
    std::vector<Detector> detectors;
    std::optional<SchemeId> label;

    // Coins unitary, outcomes 1..4 exactly once, detector steps in range.
    void validate(double tol = 1e-10) const;
};

// One application of the conditional translation operator.
WalkState translate(const WalkState& s);

// Site-dependent 2x2 coin action; positions absent from the map are
// untouched. Throws on a non-unitary coin.
WalkState apply_coins(const WalkState& s, const std::map<int, CoinSpec>& coins,
                      double unitarity_tol = 1e-10);

struct RunResult {
    WalkState final_state;
    std::array<double, 4> outcome_probs;
};

// Evolve an embedded two-qubit state through the schedule, absorbing at the
// detectors. Throws if more than `leakage_tol` probability survives past
// the last step.
RunResult run(const EmbeddedTwoQubit& s0, const CoinSchedule& sched,
              double leakage_tol = 1e-9);

// Effective two-qubit POVM realized by the schedule's detectors, with the
// guess dictionary of the schedule's scheme attached (when labeled).
Povm extract_povm(const CoinSchedule& sched, double leakage_tol = 1e-9);

enum class CoinEncoding { ExactMatrix, Plates };

// The five built-in five-step schedules. Coins come either as the exact
// matrices or as the equivalent wave-plate stacks; the two encodings agree
// entrywise and validate_plate_encoding checks that.
CoinSchedule builtin_schedule(SchemeId scheme, CoinEncoding enc = CoinEncoding::ExactMatrix);

// Largest entrywise deviation between the exact-matrix and plate encodings
// of a built-in schedule.
double validate_plate_encoding(SchemeId scheme);

// Schedule config file, versioned JSON. See docs/formats.md.
std::string schedule_to_json(const CoinSchedule& sched);
CoinSchedule schedule_from_json(const std::string& text);

// Largest entrywise deviation between the schedule's extracted POVM and the
// analytic basis of `scheme`.
double povm_deviation(const CoinSchedule& sched, SchemeId scheme);

} // namespace orienteer
