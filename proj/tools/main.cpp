// orienteer: direction-communication simulator CLI.
//
//   orienteer verify [scheme|all] [--schedule FILE]
//   orienteer orienteer --scheme S [--preset table2|fig2] ...
//   orienteer tomography --scheme S [--preset tableS2] ...
//
// Exit codes: 0 success, 1 acceptance-check failure, 2 usage/validation
// error. Every command honors --seed; rerunning with the same seed writes
// byte-identical files.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "orienteer/io.hpp"
#include "orienteer/rng.hpp"

using namespace orienteer;

namespace {

constexpr double kPi = 3.14159265358979323846;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot read file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << content;
}

SchemeId parse_scheme(const std::string& name) {
    const auto id = scheme_from_name(name);
    if (!id)
        throw std::invalid_argument("unknown scheme '" + name +
                                    "' (expected parallel, antiparallel, xy, zx or zy)");
    return *id;
}

Encoding default_encoding(SchemeId scheme) {
    return scheme == SchemeId::Antiparallel ? Encoding::Antiparallel : Encoding::Parallel;
}

// ---------------------------------------------------------------- verify ---

int cmd_verify(const std::string& scheme_arg, const std::string& schedule_file, double tol) {
    struct Item {
        SchemeId scheme;
        CoinSchedule sched;
    };
    std::vector<Item> items;

    if (!schedule_file.empty()) {
        CoinSchedule sched = schedule_from_json(read_file(schedule_file));
        SchemeId scheme;
        if (scheme_arg != "all" && !scheme_arg.empty()) {
            scheme = parse_scheme(scheme_arg);
        } else if (sched.label) {
            scheme = *sched.label;
        } else {
            throw std::invalid_argument(
                "schedule file has no label; pass a scheme to verify against");
        }
        items.push_back({scheme, std::move(sched)});
    } else if (scheme_arg == "all" || scheme_arg.empty()) {
        for (SchemeId s : all_schemes()) items.push_back({s, builtin_schedule(s)});
    } else {
        const SchemeId s = parse_scheme(scheme_arg);
        items.push_back({s, builtin_schedule(s)});
    }

    bool all_pass = true;
    for (const auto& item : items) {
        double dev;
        try {
            dev = povm_deviation(item.sched, item.scheme);
        } catch (const std::exception& e) {
            std::printf("FAIL %-13s %s\n", scheme_name(item.scheme), e.what());
            all_pass = false;
            continue;
        }
        const bool pass = dev <= tol;
        std::printf("%s %-13s max_deviation=%.3e (tol %.1e)\n", pass ? "PASS" : "FAIL",
                    scheme_name(item.scheme), dev, tol);
        all_pass = all_pass && pass;
    }
    return all_pass ? 0 : 1;
}

// ------------------------------------------------------------- orienteer ---

void print_report(const RunReport& report) {
    std::printf("scheme=%s encoding=%s engine=%s shots=%llu seed=%llu\n",
                scheme_name(report.scheme), encoding_name(report.encoding),
                engine_name(report.engine), static_cast<unsigned long long>(report.shots),
                static_cast<unsigned long long>(report.seed));
    for (const auto& st : report.per_direction) {
        std::printf("  (%+.3f,%+.3f,%+.3f)  mean=%.4f  std=%.4f  analytic=%.4f\n",
                    st.direction.x, st.direction.y, st.direction.z, st.mean_fidelity, st.std_dev,
                    analytic_mean_fidelity(st.direction, report.scheme));
    }
    std::printf("  overall mean=%.4f std=%.4f\n", report.overall_mean, report.overall_std_error);
}

struct OrienteerOpts {
    std::string scheme = "parallel";
    std::string encoding; // empty: matched to scheme
    std::string sampler = "octahedron";
    std::string engine = "analytic-povm";
    std::string preset;
    std::uint64_t shots = 50000;
    int theta_points = 24;
    int bootstrap = 0;
    std::uint64_t seed = 1;
    std::string out;
    std::string format = "csv";
};

Engine parse_engine(const std::string& s) {
    if (s == "analytic-povm") return Engine::AnalyticPovm;
    if (s == "walk") return Engine::Walk;
    throw std::invalid_argument("unknown engine '" + s + "' (analytic-povm or walk)");
}

Encoding parse_encoding(const std::string& s, SchemeId scheme) {
    if (s.empty()) return default_encoding(scheme);
    if (s == "parallel") return Encoding::Parallel;
    if (s == "antiparallel") return Encoding::Antiparallel;
    throw std::invalid_argument("unknown encoding '" + s + "'");
}

// One report per octahedron vertex at the full shot budget, Table 2 style.
std::vector<RunReport> table_runs(SchemeId scheme, Encoding encoding, Engine engine,
                                  std::uint64_t shots, int bootstrap, std::uint64_t seed) {
    std::vector<RunReport> out;
    const auto& verts = DirectionSampler::octahedron_vertices();
    for (std::size_t d = 0; d < verts.size(); ++d) {
        const auto sampler = DirectionSampler::fixed({verts[d]}, Rng::substream(seed, 100 + d));
        out.push_back(simulate(sampler, encoding, scheme, shots, engine));
    }
    if (bootstrap > 0) {
        for (std::size_t d = 0; d < out.size(); ++d) {
            const auto bars =
                poisson_error_bars(out[d], bootstrap, Rng::substream(seed, 200 + d));
            out[d].per_direction[0].std_dev = bars.per_direction_std[0];
        }
    }
    return out;
}

// Collapse the per-vertex reports into one six-row report for emission.
RunReport merge_table_runs(const std::vector<RunReport>& runs, std::uint64_t seed) {
    RunReport merged = runs.front();
    merged.per_direction.clear();
    merged.shots = 0;
    double sum = 0.0, var = 0.0;
    for (const auto& r : runs) {
        merged.per_direction.push_back(r.per_direction[0]);
        merged.shots += r.shots;
        sum += r.overall_mean;
        var += r.overall_std_error * r.overall_std_error;
    }
    merged.overall_mean = sum / static_cast<double>(runs.size());
    merged.overall_std_error = std::sqrt(var) / static_cast<double>(runs.size());
    merged.seed = seed;
    return merged;
}

int cmd_orienteer(const OrienteerOpts& opts) {
    const Engine engine = parse_engine(opts.engine);

    if (opts.preset == "table2") {
        std::vector<RunReport> merged;
        std::size_t idx = 0;
        for (SchemeId scheme : all_schemes()) {
            const Encoding enc = default_encoding(scheme);
            const auto runs = table_runs(scheme, enc, engine, opts.shots,
                                         opts.bootstrap > 0 ? opts.bootstrap : 100,
                                         Rng::substream(opts.seed, idx++));
            merged.push_back(merge_table_runs(runs, opts.seed));
            print_report(merged.back());
        }
        if (!opts.out.empty()) {
            if (opts.format == "csv") {
                write_file(opts.out, reports_to_csv(merged));
            } else {
                std::string body = "[\n";
                for (std::size_t i = 0; i < merged.size(); ++i) {
                    std::string j = report_to_json(merged[i]);
                    j.pop_back();
                    body += j + (i + 1 < merged.size() ? ",\n" : "\n");
                }
                write_file(opts.out, body + "]\n");
            }
        }
        return 0;
    }

    if (opts.preset == "fig2") {
        std::vector<double> thetas;
        for (int k = 0; k < opts.theta_points; ++k)
            thetas.push_back(2.0 * kPi * k / opts.theta_points);
        std::vector<SweepTable> tables;
        std::string json_items;
        std::size_t idx = 0;
        for (SchemeId scheme : all_schemes()) {
            const Encoding enc = default_encoding(scheme);
            tables.push_back(theta_sweep(thetas, enc, scheme, opts.shots,
                                         Rng::substream(opts.seed, 300 + idx++), engine));
            std::printf("sweep scheme=%-13s pair-averaged simulated at theta=0: %.4f\n",
                        scheme_name(scheme), tables.back().rows[0].pair_avg_sim);
            std::string j = sweep_to_json(tables.back());
            j.pop_back();
            json_items += (json_items.empty() ? std::string() : std::string(",\n")) + j;
        }
        if (!opts.out.empty())
            write_file(opts.out, opts.format == "csv" ? sweeps_to_csv(tables)
                                                      : "[\n" + json_items + "\n]\n");
        return 0;
    }

    if (!opts.preset.empty())
        throw std::invalid_argument("unknown preset '" + opts.preset + "' (table2 or fig2)");

    const SchemeId scheme = parse_scheme(opts.scheme);
    const Encoding encoding = parse_encoding(opts.encoding, scheme);

    DirectionSampler sampler = DirectionSampler::octahedron(opts.seed);
    if (opts.sampler == "sphere")
        sampler = DirectionSampler::uniform_sphere(opts.seed);
    else if (opts.sampler != "octahedron")
        throw std::invalid_argument("unknown sampler '" + opts.sampler +
                                    "' (octahedron or sphere)");

    RunReport report = simulate(sampler, encoding, scheme, opts.shots, engine);
    if (opts.bootstrap > 0 && !report.per_direction.empty()) {
        const auto bars = poisson_error_bars(report, opts.bootstrap, Rng::substream(opts.seed, 400));
        for (std::size_t d = 0; d < report.per_direction.size(); ++d)
            report.per_direction[d].std_dev = bars.per_direction_std[d];
    }
    print_report(report);
    if (!opts.out.empty())
        write_file(opts.out,
                   opts.format == "csv" ? report_to_csv(report) : report_to_json(report));
    return 0;
}

// ------------------------------------------------------------ tomography ---

struct TomoOpts {
    std::string scheme = "parallel";
    std::string preset;
    std::uint64_t shots_per_state = 100000;
    bool exact = false;
    double noise_sigma_deg = 0.0;
    std::string counts_in, counts_out;
    int max_iters = 5000;
    double tol = 1e-10;
    int bootstrap = 0;
    std::uint64_t seed = 1;
    std::string out;
    std::string format = "json";
};

struct TomoRun {
    SchemeId scheme;
    TomographyResult result;
    std::array<double, 4> element_std{0, 0, 0, 0};
    double overall_std = 0.0;
};

TomoRun run_tomography(SchemeId scheme, const TomoOpts& opts, std::uint64_t seed) {
    const Povm reference = scheme_basis(scheme);
    const ProbeSet probes = ProbeSet::standard(opts.exact ? 0 : opts.shots_per_state);

    CountsMatrix counts;
    if (!opts.counts_in.empty()) {
        counts = counts_from_csv(read_file(opts.counts_in), probes);
    } else {
        const NoiseModel noise{opts.noise_sigma_deg * kPi / 180.0, Rng::substream(seed, 1)};
        // A jittered walk leaks a little probability past the detectors, so
        // the leakage guard is opened up; statistics are detection-conditional.
        const double leakage_tol = opts.noise_sigma_deg > 0.0 ? 1.0 : 1e-9;
        const Povm target = extract_povm(perturbed_schedule(scheme, noise), leakage_tol);
        counts = collect_statistics(target, probes, Rng::substream(seed, 2));
        if (!opts.counts_out.empty())
            write_file(opts.counts_out, counts_to_csv(counts, probes));
    }

    TomoRun run{scheme, reconstruct_ml(counts, probes, opts.max_iters, opts.tol, &reference),
                {0, 0, 0, 0}, 0.0};

    if (opts.bootstrap > 0 && !opts.exact) {
        std::array<double, 2> acc_overall{0, 0};
        std::array<std::array<double, 2>, 4> acc{};
        for (int rep = 0; rep < opts.bootstrap; ++rep) {
            Rng rng(Rng::substream(seed, 1000 + static_cast<std::uint64_t>(rep)));
            CountsMatrix resampled(counts.size());
            for (std::size_t i = 0; i < counts.size(); ++i)
                for (std::size_t j = 0; j < 4; ++j)
                    resampled[i][j] = static_cast<double>(rng.poisson(counts[i][j]));
            const auto r = reconstruct_ml(resampled, probes, opts.max_iters, opts.tol, &reference,
                                          &run.result.reconstructed);
            for (std::size_t j = 0; j < 4; ++j) {
                acc[j][0] += r.element_fidelity[j];
                acc[j][1] += r.element_fidelity[j] * r.element_fidelity[j];
            }
            acc_overall[0] += r.overall_fidelity;
            acc_overall[1] += r.overall_fidelity * r.overall_fidelity;
        }
        const double n = opts.bootstrap;
        for (std::size_t j = 0; j < 4; ++j) {
            const double m = acc[j][0] / n;
            run.element_std[j] = std::sqrt(std::max(0.0, acc[j][1] / n - m * m));
        }
        const double m = acc_overall[0] / n;
        run.overall_std = std::sqrt(std::max(0.0, acc_overall[1] / n - m * m));
    }
    return run;
}

std::string tomo_table_csv(const std::vector<TomoRun>& runs) {
    std::ostringstream out;
    out << "scheme,E1,E1_std,E2,E2_std,E3,E3_std,E4,E4_std,overall,overall_std\n";
    for (const auto& r : runs) {
        out << scheme_name(r.scheme);
        for (std::size_t j = 0; j < 4; ++j)
            out << "," << format_double(r.result.element_fidelity[j]) << ","
                << format_double(r.element_std[j]);
        out << "," << format_double(r.result.overall_fidelity) << ","
            << format_double(r.overall_std) << "\n";
    }
    return out.str();
}

int cmd_tomography(const TomoOpts& opts) {
    std::vector<SchemeId> schemes;
    if (opts.preset == "tableS2") {
        const auto every = all_schemes();
        schemes.assign(every.begin(), every.end());
    } else if (opts.preset.empty()) {
        schemes.push_back(parse_scheme(opts.scheme));
    } else {
        throw std::invalid_argument("unknown preset '" + opts.preset + "' (tableS2)");
    }

    TomoOpts effective = opts;
    if (opts.preset == "tableS2") {
        if (effective.bootstrap == 0) effective.bootstrap = 100;
        effective.exact = false;
    }

    std::vector<TomoRun> runs;
    std::size_t idx = 0;
    for (SchemeId s : schemes) {
        runs.push_back(run_tomography(s, effective, Rng::substream(opts.seed, 500 + idx++)));
        const auto& r = runs.back();
        std::printf("%-13s E=[%.4f %.4f %.4f %.4f] overall=%.4f iters=%d%s\n", scheme_name(s),
                    r.result.element_fidelity[0], r.result.element_fidelity[1],
                    r.result.element_fidelity[2], r.result.element_fidelity[3],
                    r.result.overall_fidelity, r.result.iterations,
                    r.result.converged ? "" : " (iteration cap reached)");
    }

    if (!opts.out.empty()) {
        if (opts.format == "csv") {
            write_file(opts.out, tomo_table_csv(runs));
        } else if (runs.size() == 1) {
            write_file(opts.out, tomography_result_to_json(runs.front().result));
        } else {
            std::string body = "[\n";
            for (std::size_t i = 0; i < runs.size(); ++i) {
                std::string j = tomography_result_to_json(runs[i].result);
                j.pop_back();
                body += j + (i + 1 < runs.size() ? ",\n" : "\n");
            }
            write_file(opts.out, body + "]\n");
        }
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Simulator for optimal direction communication with parallel and antiparallel "
                 "spins: analytic optimal measurements, their quantum-walk realizations, "
                 "protocol Monte Carlo and measurement tomography."};
    app.require_subcommand(1);

    std::string verify_scheme = "all";
    std::string verify_schedule;
    double verify_tol = 1e-9;
    auto* verify =
        app.add_subcommand("verify", "Check walk-extracted POVMs against the analytic bases");
    verify->add_option("scheme", verify_scheme, "Scheme name or 'all'");
    verify->add_option("--schedule", verify_schedule, "Schedule config file to verify");
    verify->add_option("--tol", verify_tol, "Max element-wise deviation")->capture_default_str();

    OrienteerOpts oopts;
    auto* orient = app.add_subcommand("orienteer", "Monte-Carlo protocol simulation");
    orient->add_option("--scheme", oopts.scheme, "parallel|antiparallel|xy|zx|zy")
        ->capture_default_str();
    orient->add_option("--encoding", oopts.encoding,
                       "parallel|antiparallel (default: match scheme)");
    orient->add_option("--sampler", oopts.sampler, "octahedron|sphere")->capture_default_str();
    orient->add_option("--engine", oopts.engine, "analytic-povm|walk")->capture_default_str();
    orient->add_option("--preset", oopts.preset, "table2|fig2");
    orient->add_option("--shots", oopts.shots,
                       "Shots (per direction for table2, per theta for fig2)")
        ->capture_default_str();
    orient->add_option("--theta-points", oopts.theta_points, "Grid size for fig2")
        ->capture_default_str();
    orient->add_option("--bootstrap", oopts.bootstrap,
                       "Poisson resamples for error bars (table2 default 100)");
    orient->add_option("--seed", oopts.seed, "Master seed")->capture_default_str();
    orient->add_option("--out", oopts.out, "Output file");
    orient->add_option("--format", oopts.format, "csv|json")->capture_default_str();

    TomoOpts topts;
    auto* tomo = app.add_subcommand("tomography", "Measurement tomography of a scheme");
    tomo->add_option("--scheme", topts.scheme, "Scheme to reconstruct")->capture_default_str();
    tomo->add_option("--preset", topts.preset, "tableS2");
    tomo->add_option("--shots-per-state", topts.shots_per_state, "Shots per probe state")
        ->capture_default_str();
    tomo->add_flag("--exact", topts.exact, "Use exact Born probabilities instead of sampling");
    tomo->add_option("--noise-sigma-deg", topts.noise_sigma_deg,
                     "Gaussian plate-angle jitter, degrees")
        ->capture_default_str();
    tomo->add_option("--counts-in", topts.counts_in, "Read a counts CSV instead of simulating");
    tomo->add_option("--counts-out", topts.counts_out, "Write the simulated counts CSV");
    tomo->add_option("--max-iters", topts.max_iters, "ML iteration cap")->capture_default_str();
    tomo->add_option("--tol", topts.tol, "ML log-likelihood gain tolerance")
        ->capture_default_str();
    tomo->add_option("--bootstrap", topts.bootstrap, "Poisson resamples for fidelity error bars");
    tomo->add_option("--seed", topts.seed, "Master seed")->capture_default_str();
    tomo->add_option("--out", topts.out, "Output file");
    tomo->add_option("--format", topts.format, "csv|json")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        app.exit(e);
        return 2;
    }

    try {
        if (verify->parsed()) return cmd_verify(verify_scheme, verify_schedule, verify_tol);
        if (orient->parsed()) return cmd_orienteer(oopts);
        if (tomo->parsed()) return cmd_tomography(topts);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
