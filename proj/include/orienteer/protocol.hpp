#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "orienteer/walk.hpp"

namespace orienteer {

// Closed-form mean fidelity constants averaged over any inversion-symmetric
// direction distribution.
inline constexpr double kParallelAverage = 0.75;
double antiparallel_average(); // (3 + sqrt 3) / 6
double locc_average();         // (3 + sqrt 2) / 6

// F = (1 + n.g) / 2
double fidelity(const Direction& n, const Direction& guess);

// Mean fidelity of a scheme's protocol for a fixed encoded direction:
// the entangling schemes' cubic polynomials, or the local-pair form
// (2 + sqrt2 (n.a)^2 + sqrt2 (n.b)^2) / 4 with the scheme's axes (or an
// explicit orthogonal pair).
double analytic_mean_fidelity(const Direction& n, SchemeId scheme,
                              std::optional<std::pair<Direction, Direction>> locc_axes = {});

enum class Engine { AnalyticPovm, Walk };

const char* engine_name(Engine e);
const char* encoding_name(Encoding e);

// How Alice draws directions. `seed` is the master seed of the whole run;
// every shot derives its own substream from it, so reports do not depend on
// evaluation order.
struct DirectionSampler {
    enum class Kind { UniformSphere, OctahedronVertices, FixedList, XZPlaneSweep };

    Kind kind = Kind::UniformSphere;
    std::vector<Direction> directions; // FixedList
    std::vector<double> thetas;        // XZPlaneSweep, direction (sin t, 0, cos t)
    std::uint64_t seed = 1;

    static DirectionSampler uniform_sphere(std::uint64_t seed);
    static DirectionSampler octahedron(std::uint64_t seed);
    static DirectionSampler fixed(std::vector<Direction> dirs, std::uint64_t seed);
    static DirectionSampler xz_sweep(std::vector<double> thetas, std::uint64_t seed);

    // The six octahedron vertices in the order +x, -x, +y, -y, +z, -z.
    static const std::vector<Direction>& octahedron_vertices();
};

struct DirectionStats {
    Direction direction;
    std::optional<double> theta; // set for sweep groups
    std::array<std::uint64_t, 4> outcome_counts{0, 0, 0, 0};
    std::uint64_t shots = 0;
    double mean_fidelity = 0.0;
    double std_dev = 0.0; // standard error of the per-direction mean
};

struct RunReport {
    SchemeId scheme = SchemeId::Parallel;
    Encoding encoding = Encoding::Parallel;
    Engine engine = Engine::AnalyticPovm;
    std::vector<DirectionStats> per_direction; // empty for the sphere sampler
    double overall_mean = 0.0;
    double overall_std_error = 0.0;
    std::uint64_t shots = 0;
    std::uint64_t seed = 0;
};

// Monte-Carlo protocol run: sample a direction, encode, measure (Born rule
// on the analytic basis or an actual walk run), guess, score. Deterministic
// given the sampler seed. Throws on an encoding/scheme pair the protocol
// does not define (only the antiparallel scheme reads antiparallel spins;
// everything else expects parallel spins).
RunReport simulate(const DirectionSampler& sampler, Encoding encoding, SchemeId scheme,
                   std::uint64_t shots, Engine engine = Engine::AnalyticPovm);

struct SweepRow {
    double theta;
    double simulated;
    double sim_std;
    double analytic;
    double pair_avg_sim;      // (theta, theta+pi) average
    double pair_avg_analytic;
};

struct SweepTable {
    SchemeId scheme;
    Encoding encoding;
    Engine engine;
    std::vector<SweepRow> rows;
    std::uint64_t shots_per_theta;
    std::uint64_t seed;
};

// Mean fidelity along the xz-plane family (sin t, 0, cos t), with the
// antipodal-pair average columns. When theta+pi is not on the grid the
// partner point is simulated internally.
SweepTable theta_sweep(const std::vector<double>& thetas, Encoding encoding, SchemeId scheme,
                       std::uint64_t shots_per_theta, std::uint64_t seed,
                       Engine engine = Engine::AnalyticPovm);

struct BootstrapResult {
    std::vector<double> per_direction_std; // one per report row
    double overall_std;
};

// Poisson bootstrap of a finished run: resample every outcome count as
// Poisson with the observed mean, recompute the fidelities, and report the
// standard deviation over `repetitions` resamples.
BootstrapResult poisson_error_bars(const RunReport& report, int repetitions, std::uint64_t seed);

} // namespace orienteer
