// Acceptance suite: one line per criterion, nonzero exit if any fails.
// Statistical gates run at the pinned seed below; every tolerance is fixed
// here in code.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "orienteer/io.hpp"
#include "orienteer/rng.hpp"

using namespace orienteer;

namespace {

constexpr std::uint64_t kSeed = 20250808;
constexpr std::uint64_t kShots = 50000;
constexpr double kPi = 3.14159265358979323846;

int g_failures = 0;

void report(int id, const std::string& name, bool pass, const std::string& detail) {
    std::printf("%s criterion %2d: %-28s %s\n", pass ? "PASS" : "FAIL", id, name.c_str(),
                detail.c_str());
    if (!pass) ++g_failures;
}

std::string run_command(const std::string& args, int& exit_code) {
    const std::string cmd = std::string(ORIENTEER_CLI) + " " + args + " 2>&1";
    std::array<char, 4096> buf{};
    std::string output;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) {
        exit_code = -1;
        return output;
    }
    while (std::fgets(buf.data(), buf.size(), pipe)) output += buf.data();
    exit_code = WEXITSTATUS(pclose(pipe));
    return output;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

char fmt_buffer[256];
template <typename... Args>
std::string fmt(const char* f, Args... args) {
    std::snprintf(fmt_buffer, sizeof(fmt_buffer), f, args...);
    return fmt_buffer;
}

// The mean-fidelity polynomials, written out independently of the library.
double eq_parallel(double x, double y, double z) {
    return (18.0 + std::sqrt(2.0) * x * x * x - 3.0 * std::sqrt(2.0) * x * y * y -
            3.0 * x * x * z - 3.0 * y * y * z + 2.0 * z * z * z) /
           24.0;
}
double eq_antiparallel(double x, double y, double z) {
    return (6.0 + 2.0 * std::sqrt(3.0) + std::sqrt(2.0) * x * x * x -
            3.0 * std::sqrt(2.0) * x * y * y - 3.0 * x * x * z - 3.0 * y * y * z +
            2.0 * z * z * z) /
           12.0;
}

Encoding matched_encoding(SchemeId s) {
    return s == SchemeId::Antiparallel ? Encoding::Antiparallel : Encoding::Parallel;
}

// Per-shot fidelity standard deviation of the outcome distribution at n.
double multinomial_sigma(SchemeId scheme, const Direction& n) {
    const Povm basis = scheme_basis(scheme);
    const auto probs = born_probabilities(basis, encode(n, matched_encoding(scheme)));
    double m = 0.0, m2 = 0.0;
    for (std::size_t j = 0; j < 4; ++j) {
        const double f = fidelity(n, basis.guesses[j]);
        m += probs[j] * f;
        m2 += probs[j] * f * f;
    }
    return std::sqrt(std::max(0.0, m2 - m * m));
}

// ---------------------------------------------------------------------------

void criterion_1_povm_oracle() {
    const auto t0 = std::chrono::steady_clock::now();
    double worst = 0.0;
    for (SchemeId s : all_schemes())
        worst = std::max(worst, povm_deviation(builtin_schedule(s), s));
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    int code = -1;
    run_command("verify all", code);
    const bool pass = worst <= 1e-9 && code == 0 && elapsed < 1.0;
    report(1, "walk POVM oracle", pass,
           fmt("max deviation %.2e, verify exit %d, %.2fs", worst, code, elapsed));
}

// Criteria 2-4 and 7 share the five octahedron runs.
struct SchemeRun {
    SchemeId scheme;
    RunReport report;
};

std::vector<SchemeRun> octahedron_runs() {
    std::vector<SchemeRun> runs;
    std::size_t idx = 0;
    for (SchemeId s : all_schemes()) {
        const auto sampler = DirectionSampler::octahedron(Rng::substream(kSeed, idx++));
        runs.push_back({s, simulate(sampler, matched_encoding(s), s, kShots)});
    }
    return runs;
}

void criterion_234_averages(const std::vector<SchemeRun>& runs) {
    const double tol = 0.006;
    const struct {
        int id;
        const char* name;
        double target;
    } expect[3] = {{2, "parallel average 0.750", 0.75},
                   {3, "antiparallel average 0.7887", antiparallel_average()},
                   {4, "local averages 0.7357", locc_average()}};

    for (const auto& e : expect) {
        bool pass = true;
        std::string detail;
        for (const auto& run : runs) {
            const double target = run.scheme == SchemeId::Parallel ? 0.75
                                  : run.scheme == SchemeId::Antiparallel
                                      ? antiparallel_average()
                                      : locc_average();
            if (std::abs(target - e.target) > 1e-12) continue;
            const double diff = std::abs(run.report.overall_mean - e.target);
            pass = pass && diff <= tol;
            detail += fmt("%s=%.4f ", scheme_name(run.scheme), run.report.overall_mean);
        }
        report(e.id, e.name, pass, detail + fmt("(tol %.3f)", tol));
    }
}

std::vector<SchemeRun> per_direction_runs() {
    // Table 2 style: every (scheme, vertex) cell at the full 50000 shots.
    std::vector<SchemeRun> runs;
    std::size_t idx = 0;
    for (SchemeId s : all_schemes()) {
        std::vector<RunReport> parts;
        for (const Direction& n : DirectionSampler::octahedron_vertices()) {
            const auto sampler =
                DirectionSampler::fixed({n}, Rng::substream(kSeed, 50 + idx++));
            parts.push_back(simulate(sampler, matched_encoding(s), s, kShots));
        }
        RunReport merged = parts.front();
        merged.per_direction.clear();
        for (auto& p : parts) merged.per_direction.push_back(p.per_direction[0]);
        runs.push_back({s, std::move(merged)});
    }
    return runs;
}

void criterion_5_per_direction(const std::vector<SchemeRun>& runs) {
    bool pass = true;
    double worst_pull = 0.0;
    for (const auto& run : runs) {
        for (const auto& st : run.report.per_direction) {
            const double analytic = analytic_mean_fidelity(st.direction, run.scheme);
            const double sigma =
                multinomial_sigma(run.scheme, st.direction) / std::sqrt(double(kShots));
            const double diff = std::abs(st.mean_fidelity - analytic);
            if (sigma < 1e-15) {
                // deterministic cells, e.g. the local schemes in their
                // orthogonal plane, must match exactly
                pass = pass && diff <= 1e-12;
            } else {
                pass = pass && diff <= 3.0 * sigma;
                worst_pull = std::max(worst_pull, diff / sigma);
            }
        }
    }
    const double xy_pole = analytic_mean_fidelity({0, 0, 1}, SchemeId::XY);
    pass = pass && std::abs(xy_pole - 0.5) <= 1e-15;
    pass = pass && std::abs(analytic_mean_fidelity({0, 0, 1}, SchemeId::Parallel) - 5.0 / 6.0) <=
                       1e-15;
    report(5, "per-direction Table 2 theory", pass,
           fmt("30 cells, worst pull %.2f sigma (gate 3)", worst_pull));
}

void criterion_6_fig2_shape() {
    std::vector<double> thetas;
    for (int k = 0; k < 24; ++k) thetas.push_back(2.0 * kPi * k / 24);

    bool pass = true;
    double worst_dev = 0.0, worst_analytic = 0.0;
    std::size_t idx = 0;
    for (SchemeId s : {SchemeId::Parallel, SchemeId::Antiparallel}) {
        const double constant = s == SchemeId::Parallel ? 0.75 : antiparallel_average();
        const SweepTable table = theta_sweep(thetas, matched_encoding(s), s, kShots,
                                             Rng::substream(kSeed, 80 + idx++));
        for (const auto& row : table.rows) {
            const double x = std::sin(row.theta), z = std::cos(row.theta);
            const double eq = s == SchemeId::Parallel ? eq_parallel(x, 0.0, z)
                                                      : eq_antiparallel(x, 0.0, z);
            worst_analytic = std::max(worst_analytic, std::abs(row.analytic - eq));

            // pair-averaged simulated value vs the scheme constant, gated at
            // 4.5 combined standard errors of the two averaged points; the
            // partner theta sits on the 24-point grid
            double partner_std = 0.0;
            for (const auto& other : table.rows) {
                const double d = std::remainder(other.theta - row.theta - kPi, 2.0 * kPi);
                if (std::abs(d) < 1e-9) partner_std = other.sim_std;
            }
            const double se = 0.5 * std::hypot(row.sim_std, partner_std);
            const double dev = std::abs(row.pair_avg_sim - constant);
            if (se < 1e-12) {
                pass = pass && dev <= 1e-12;
            } else {
                pass = pass && dev <= 4.5 * se;
                worst_dev = std::max(worst_dev, dev / (4.5 * se));
            }
        }
    }
    pass = pass && worst_analytic <= 1e-12;
    report(6, "Fig. 2 shape", pass,
           fmt("analytic dev %.1e, worst pair-avg pull %.2f of gate", worst_analytic,
               worst_dev));
}

void criterion_7_ordering(const std::vector<SchemeRun>& runs) {
    double par = 0, par_se = 0, anti = 0, anti_se = 0;
    double locc_worst = -1.0, locc_worst_se = 0.0, locc_best = -1.0, locc_best_se = 0.0;
    for (const auto& run : runs) {
        if (run.scheme == SchemeId::Parallel) {
            par = run.report.overall_mean;
            par_se = run.report.overall_std_error;
        } else if (run.scheme == SchemeId::Antiparallel) {
            anti = run.report.overall_mean;
            anti_se = run.report.overall_std_error;
        } else if (run.report.overall_mean > locc_worst) {
            locc_worst = run.report.overall_mean;
            locc_worst_se = run.report.overall_std_error;
        }
        if (run.scheme != SchemeId::Parallel && run.scheme != SchemeId::Antiparallel &&
            (locc_best < 0 || run.report.overall_mean > locc_best)) {
            locc_best = run.report.overall_mean;
            locc_best_se = run.report.overall_std_error;
        }
    }
    const double gap1 = (anti - par) / std::hypot(anti_se, par_se);
    const double gap2 = (par - locc_best) / std::hypot(par_se, locc_best_se);
    const bool pass = gap1 > 5.0 && gap2 > 5.0;
    report(7, "anti > par > LOCC at 5 sigma", pass,
           fmt("gaps %.1f sigma and %.1f sigma", gap1, gap2));
}

void criterion_8_tomography() {
    const ProbeSet exact = ProbeSet::standard(0);
    const ProbeSet budget = ProbeSet::standard(100000);

    bool pass = true;
    double min_exact = 1.0, min_element = 1.0, worst_gain = 0.0;
    std::size_t idx = 0;
    for (SchemeId s : all_schemes()) {
        const Povm basis = scheme_basis(s);
        const auto exact_res =
            reconstruct_ml(collect_statistics(basis, exact, 1), exact, 5000, 1e-10, &basis);
        min_exact = std::min(min_exact, exact_res.overall_fidelity);
        worst_gain = std::min(worst_gain, exact_res.min_ll_gain);

        const auto sampled = collect_statistics(basis, budget, Rng::substream(kSeed, 90 + idx++));
        const auto res = reconstruct_ml(sampled, budget, 5000, 1e-10, &basis);
        for (double f : res.element_fidelity) min_element = std::min(min_element, f);
        worst_gain = std::min(worst_gain, res.min_ll_gain);
    }
    pass = min_exact >= 0.9999 && min_element >= 0.99 && worst_gain >= -1e-9;
    report(8, "tomography fidelities", pass,
           fmt("exact min %.5f (>=0.9999), budget element min %.4f (>=0.99), min LL gain %.1e",
               min_exact, min_element, worst_gain));
}

void criterion_9_error_bars(const std::vector<SchemeRun>& per_direction) {
    // Cells whose outcome fidelities coincide are deterministic and print
    // as "(0)" in this kind of table; anything below 1e-6 is that case up
    // to rounding in the variance accumulation.
    bool pass = true;
    double largest = 0.0, smallest_nonzero = 1.0;
    int nonzero_cells = 0;
    std::size_t idx = 0;
    for (const auto& run : per_direction) {
        const auto bars =
            poisson_error_bars(run.report, 100, Rng::substream(kSeed, 120 + idx++));
        for (double s : bars.per_direction_std) {
            pass = pass && s <= 5e-3;
            if (s < 1e-6) continue;
            ++nonzero_cells;
            largest = std::max(largest, s);
            smallest_nonzero = std::min(smallest_nonzero, s);
            pass = pass && s >= 5e-5;
        }
    }
    // ideal theory leaves 11 cells stochastic: the parallel scheme at five
    // vertices (it is deterministic at -z) and the antiparallel at all six
    pass = pass && nonzero_cells == 11 && largest >= 1e-4 && largest <= 5e-3;
    report(9, "Poisson error bars O(1e-3)", pass,
           fmt("%d stochastic cells, std in [%.1e, %.1e]", nonzero_cells, smallest_nonzero,
               largest));
}

void criterion_10_determinism() {
    const std::string dir = "/tmp/orienteer_acceptance";
    if (std::system(("mkdir -p " + dir).c_str()) != 0) { report(10, "preset determinism", false, "cannot create temp dir"); return; }

    const struct {
        const char* name;
        std::string args;
        std::string out;
    } presets[] = {
        {"table2",
         "orienteer --preset table2 --seed 7 --format csv --out " + dir + "/table2_%d.csv",
         dir + "/table2_%d.csv"},
        {"fig2",
         "orienteer --preset fig2 --shots 10000 --seed 7 --format csv --out " + dir +
             "/fig2_%d.csv",
         dir + "/fig2_%d.csv"},
        {"tableS2",
         "tomography --preset tableS2 --seed 7 --format csv --out " + dir + "/tableS2_%d.csv",
         dir + "/tableS2_%d.csv"},
    };

    bool pass = true;
    std::string detail;
    for (const auto& p : presets) {
        std::string first, second;
        for (int rep = 0; rep < 2; ++rep) {
            std::string args = p.args;
            std::string out = p.out;
            const std::string tag = std::to_string(rep);
            args.replace(args.find("%d"), 2, tag);
            out.replace(out.find("%d"), 2, tag);
            int code = -1;
            run_command(args, code);
            if (code != 0) pass = false;
            (rep == 0 ? first : second) = slurp(out);
        }
        bool same = !first.empty() && first == second;
        // emitted CSV must also reparse losslessly
        if (same && !csv_is_canonical(first)) same = false;
        if (same && std::string(p.name) == "table2")
            same = reports_to_csv(reports_from_csv(first)) == first;
        if (same && std::string(p.name) == "fig2")
            same = sweeps_to_csv(sweeps_from_csv(first)) == first;
        pass = pass && same;
        detail += fmt("%s=%s ", p.name, same ? "identical" : "DIFFERS");
    }
    report(10, "preset determinism", pass, detail);
}

} // namespace

int main() {
    std::printf("acceptance suite, seed %llu, %llu shots per run\n",
                static_cast<unsigned long long>(kSeed),
                static_cast<unsigned long long>(kShots));

    criterion_1_povm_oracle();

    const auto runs = octahedron_runs();
    criterion_234_averages(runs);

    const auto table_runs = per_direction_runs();
    criterion_5_per_direction(table_runs);
    criterion_6_fig2_shape();
    criterion_7_ordering(runs);
    criterion_8_tomography();
    criterion_9_error_bars(table_runs);
    criterion_10_determinism();

    if (g_failures > 0) {
        std::printf("%d criterion(s) failed\n", g_failures);
        return 1;
    }
    std::printf("all criteria passed\n");
    return 0;
}
