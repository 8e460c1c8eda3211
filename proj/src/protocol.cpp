#include "orienteer/protocol.hpp"

#include <cmath>
#include <numeric>

#include "orienteer/rng.hpp"

namespace orienteer {

namespace {

constexpr double kTwoPi = 6.28318530717958647692529;

double entangling_polynomial(const Direction& n) {
    const double x = n.x, y = n.y, z = n.z;
    return std::sqrt(2.0) * x * x * x - 3.0 * std::sqrt(2.0) * x * y * y -
           3.0 * x * x * z - 3.0 * y * y * z + 2.0 * z * z * z;
}

bool pair_allowed(Encoding encoding, SchemeId scheme) {
    if (scheme == SchemeId::Antiparallel) return encoding == Encoding::Antiparallel;
    return encoding == Encoding::Parallel;
}

} // namespace

double antiparallel_average() { return (3.0 + std::sqrt(3.0)) / 6.0; }
double locc_average() { return (3.0 + std::sqrt(2.0)) / 6.0; }

double fidelity(const Direction& n, const Direction& guess) {
    return 0.5 * (1.0 + n.dot(guess));
}

double analytic_mean_fidelity(const Direction& n, SchemeId scheme,
                              std::optional<std::pair<Direction, Direction>> locc_axes) {
    switch (scheme) {
        case SchemeId::Parallel:
            return (18.0 + entangling_polynomial(n)) / 24.0;
        case SchemeId::Antiparallel:
            return (6.0 + 2.0 * std::sqrt(3.0) + entangling_polynomial(n)) / 12.0;
        case SchemeId::XY:
        case SchemeId::ZX:
        case SchemeId::ZY: {
            auto axes = locc_axes;
            if (!axes) {
                const LocalPair pair = scheme == SchemeId::XY  ? LocalPair::XY
                                       : scheme == SchemeId::ZX ? LocalPair::ZX
                                                                : LocalPair::ZY;
                axes = local_axes(pair);
            }
            const double na = n.dot(axes->first);
            const double nb = n.dot(axes->second);
            return (2.0 + std::sqrt(2.0) * (na * na + nb * nb)) / 4.0;
        }
    }
    throw std::logic_error("analytic_mean_fidelity: bad scheme");
}

const char* engine_name(Engine e) { return e == Engine::AnalyticPovm ? "analytic-povm" : "walk"; }
const char* encoding_name(Encoding e) {
    return e == Encoding::Parallel ? "parallel" : "antiparallel";
}

DirectionSampler DirectionSampler::uniform_sphere(std::uint64_t seed) {
    return {Kind::UniformSphere, {}, {}, seed};
}

DirectionSampler DirectionSampler::octahedron(std::uint64_t seed) {
    return {Kind::OctahedronVertices, {}, {}, seed};
}

DirectionSampler DirectionSampler::fixed(std::vector<Direction> dirs, std::uint64_t seed) {
    if (dirs.empty()) throw std::invalid_argument("DirectionSampler: empty direction list");
    return {Kind::FixedList, std::move(dirs), {}, seed};
}

DirectionSampler DirectionSampler::xz_sweep(std::vector<double> thetas, std::uint64_t seed) {
    if (thetas.empty()) throw std::invalid_argument("DirectionSampler: empty theta list");
    for (double t : thetas)
        if (!std::isfinite(t)) throw std::invalid_argument("DirectionSampler: theta not finite");
    return {Kind::XZPlaneSweep, {}, std::move(thetas), seed};
}

const std::vector<Direction>& DirectionSampler::octahedron_vertices() {
    static const std::vector<Direction> v = {{1, 0, 0},  {-1, 0, 0}, {0, 1, 0},
                                             {0, -1, 0}, {0, 0, 1},  {0, 0, -1}};
    return v;
}

namespace {

Direction direction_for_theta(double theta) {
    return Direction{std::sin(theta), 0.0, std::cos(theta)};
}

// One sampled shot: the direction plus the group slot it belongs to.
struct Draw {
    Direction n;
    std::optional<std::size_t> group;
};

Draw draw_direction(const DirectionSampler& sampler, std::uint64_t shot, Rng& rng) {
    switch (sampler.kind) {
        case DirectionSampler::Kind::UniformSphere: {
            const double z = rng.uniform(-1.0, 1.0);
            const double phi = rng.uniform(0.0, kTwoPi);
            const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
            return {Direction{r * std::cos(phi), r * std::sin(phi), z}, std::nullopt};
        }
        case DirectionSampler::Kind::OctahedronVertices: {
            const auto& verts = DirectionSampler::octahedron_vertices();
            auto idx = static_cast<std::size_t>(rng.uniform(0.0, 1.0) * 6.0);
            if (idx > 5) idx = 5;
            return {verts[idx], idx};
        }
        case DirectionSampler::Kind::FixedList: {
            const std::size_t idx = shot % sampler.directions.size();
            return {sampler.directions[idx], idx};
        }
        case DirectionSampler::Kind::XZPlaneSweep: {
            const std::size_t idx = shot % sampler.thetas.size();
            return {direction_for_theta(sampler.thetas[idx]), idx};
        }
    }
    throw std::logic_error("draw_direction: bad sampler kind");
}

std::size_t group_count(const DirectionSampler& sampler) {
    switch (sampler.kind) {
        case DirectionSampler::Kind::UniformSphere: return 0;
        case DirectionSampler::Kind::OctahedronVertices: return 6;
        case DirectionSampler::Kind::FixedList: return sampler.directions.size();
        case DirectionSampler::Kind::XZPlaneSweep: return sampler.thetas.size();
    }
    return 0;
}

Direction group_direction(const DirectionSampler& sampler, std::size_t g) {
    switch (sampler.kind) {
        case DirectionSampler::Kind::OctahedronVertices:
            return DirectionSampler::octahedron_vertices()[g];
        case DirectionSampler::Kind::FixedList: return sampler.directions[g];
        case DirectionSampler::Kind::XZPlaneSweep:
            return direction_for_theta(sampler.thetas[g]);
        default: throw std::logic_error("group_direction: sampler has no groups");
    }
}

} // namespace

RunReport simulate(const DirectionSampler& sampler, Encoding encoding, SchemeId scheme,
                   std::uint64_t shots, Engine engine) {
    if (shots < 1) throw std::invalid_argument("simulate: shots must be >= 1");
    if (!pair_allowed(encoding, scheme))
        throw std::invalid_argument(
            std::string("simulate: the ") + scheme_name(scheme) +
            " scheme is not defined for " + encoding_name(encoding) + " encoding");

    const Povm basis = scheme_basis(scheme);
    const CoinSchedule sched =
        engine == Engine::Walk ? builtin_schedule(scheme) : CoinSchedule{};

    RunReport report;
    report.scheme = scheme;
    report.encoding = encoding;
    report.engine = engine;
    report.shots = shots;
    report.seed = sampler.seed;

    const std::size_t groups = group_count(sampler);
    report.per_direction.resize(groups);
    for (std::size_t g = 0; g < groups; ++g) {
        report.per_direction[g].direction = group_direction(sampler, g);
        if (sampler.kind == DirectionSampler::Kind::XZPlaneSweep)
            report.per_direction[g].theta = sampler.thetas[g];
    }

    double sum_f = 0.0, sum_f2 = 0.0;
    for (std::uint64_t shot = 0; shot < shots; ++shot) {
        Rng rng(Rng::substream(sampler.seed, shot));
        const Draw draw = draw_direction(sampler, shot, rng);

        const CVec psi = encode(draw.n, encoding);
        std::array<double, 4> probs{};
        if (engine == Engine::AnalyticPovm) {
            probs = born_probabilities(basis, psi);
        } else {
            probs = run(EmbeddedTwoQubit::from_ket(psi), sched).outcome_probs;
        }
        const std::size_t outcome = rng.categorical(probs);
        const double f = fidelity(draw.n, basis.guesses[outcome]);

        sum_f += f;
        sum_f2 += f * f;
        if (draw.group) {
            DirectionStats& st = report.per_direction[*draw.group];
            st.outcome_counts[outcome]++;
            st.shots++;
        }
    }

    const double ns = static_cast<double>(shots);
    report.overall_mean = sum_f / ns;
    const double var = std::max(0.0, sum_f2 / ns - report.overall_mean * report.overall_mean);
    report.overall_std_error = std::sqrt(var / ns);

    for (auto& st : report.per_direction) {
        if (st.shots == 0) continue;
        double m = 0.0, m2 = 0.0;
        for (std::size_t j = 0; j < 4; ++j) {
            const double f = fidelity(st.direction, basis.guesses[j]);
            const double w = static_cast<double>(st.outcome_counts[j]);
            m += w * f;
            m2 += w * f * f;
        }
        const double n = static_cast<double>(st.shots);
        st.mean_fidelity = m / n;
        const double v = std::max(0.0, m2 / n - st.mean_fidelity * st.mean_fidelity);
        st.std_dev = std::sqrt(v / n);
    }
    return report;
}

SweepTable theta_sweep(const std::vector<double>& thetas, Encoding encoding, SchemeId scheme,
                       std::uint64_t shots_per_theta, std::uint64_t seed, Engine engine) {
    if (thetas.empty()) throw std::invalid_argument("theta_sweep: empty theta grid");

    SweepTable table;
    table.scheme = scheme;
    table.encoding = encoding;
    table.engine = engine;
    table.shots_per_theta = shots_per_theta;
    table.seed = seed;

    auto simulate_theta = [&](double theta, std::uint64_t sub) {
        const DirectionSampler s = DirectionSampler::fixed({direction_for_theta(theta)},
                                                           Rng::substream(seed, sub));
        return simulate(s, encoding, scheme, shots_per_theta, engine);
    };

    std::vector<RunReport> reports(thetas.size());
    for (std::size_t k = 0; k < thetas.size(); ++k) reports[k] = simulate_theta(thetas[k], k);

    auto partner_index = [&](double theta) -> std::optional<std::size_t> {
        const double target = theta + 3.14159265358979323846;
        for (std::size_t k = 0; k < thetas.size(); ++k) {
            double diff = std::remainder(thetas[k] - target, kTwoPi);
            if (std::abs(diff) < 1e-9) return k;
        }
        return std::nullopt;
    };

    for (std::size_t k = 0; k < thetas.size(); ++k) {
        SweepRow row{};
        row.theta = thetas[k];
        row.simulated = reports[k].overall_mean;
        row.sim_std = reports[k].overall_std_error;
        row.analytic = analytic_mean_fidelity(direction_for_theta(thetas[k]), scheme);

        const auto partner = partner_index(thetas[k]);
        double partner_sim, partner_an;
        if (partner) {
            partner_sim = reports[*partner].overall_mean;
            partner_an = analytic_mean_fidelity(direction_for_theta(thetas[*partner]), scheme);
        } else {
            const double t2 = thetas[k] + 3.14159265358979323846;
            partner_sim = simulate_theta(t2, thetas.size() + k).overall_mean;
            partner_an = analytic_mean_fidelity(direction_for_theta(t2), scheme);
        }
        row.pair_avg_sim = 0.5 * (row.simulated + partner_sim);
        row.pair_avg_analytic = 0.5 * (row.analytic + partner_an);
        table.rows.push_back(row);
    }
    return table;
}

BootstrapResult poisson_error_bars(const RunReport& report, int repetitions, std::uint64_t seed) {
    if (repetitions < 2) throw std::invalid_argument("poisson_error_bars: repetitions must be >= 2");
    if (report.per_direction.empty())
        throw std::invalid_argument("poisson_error_bars: report has no per-direction counts");

    const Povm basis = scheme_basis(report.scheme);
    const std::size_t cells = report.per_direction.size();

    std::vector<double> sum(cells, 0.0), sum2(cells, 0.0);
    double osum = 0.0, osum2 = 0.0;
    for (int rep = 0; rep < repetitions; ++rep) {
        Rng rng(Rng::substream(seed, static_cast<std::uint64_t>(rep)));
        double overall_num = 0.0, overall_den = 0.0;
        for (std::size_t g = 0; g < cells; ++g) {
            const DirectionStats& st = report.per_direction[g];
            double num = 0.0, den = 0.0;
            for (std::size_t j = 0; j < 4; ++j) {
                const double resampled =
                    static_cast<double>(rng.poisson(static_cast<double>(st.outcome_counts[j])));
                num += resampled * fidelity(st.direction, basis.guesses[j]);
                den += resampled;
            }
            const double mean = den > 0.0 ? num / den : st.mean_fidelity;
            sum[g] += mean;
            sum2[g] += mean * mean;
            overall_num += mean;
            overall_den += 1.0;
        }
        const double omean = overall_num / overall_den;
        osum += omean;
        osum2 += omean * omean;
    }

    BootstrapResult out;
    out.per_direction_std.resize(cells);
    const double r = static_cast<double>(repetitions);
    for (std::size_t g = 0; g < cells; ++g) {
        const double mean = sum[g] / r;
        out.per_direction_std[g] = std::sqrt(std::max(0.0, sum2[g] / r - mean * mean));
    }
    const double omean = osum / r;
    out.overall_std = std::sqrt(std::max(0.0, osum2 / r - omean * omean));
    return out;
}

} // namespace orienteer
