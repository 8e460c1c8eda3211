#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "orienteer/io.hpp"
#include "orienteer/walk.hpp"

using namespace orienteer;

namespace {

struct CliResult {
    int exit_code;
    std::string output;
};

CliResult run_cli(const std::string& args) {
    const std::string cmd = std::string(ORIENTEER_CLI) + " " + args + " 2>&1";
    std::array<char, 4096> buf{};
    std::string output;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    while (std::fgets(buf.data(), buf.size(), pipe)) output += buf.data();
    const int status = pclose(pipe);
    return {WEXITSTATUS(status), output};
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("verify all passes on the builtin schedules") {
    const CliResult res = run_cli("verify all");
    CHECK(res.exit_code == 0);
    for (SchemeId s : all_schemes())
        CHECK(res.output.find(std::string("PASS ") + scheme_name(s)) != std::string::npos);
}

TEST_CASE("verify rejects unknown schemes with a usage error") {
    CHECK(run_cli("verify sideways").exit_code == 2);
    CHECK(run_cli("verify --schedule /nonexistent/file.json all").exit_code == 2);
}

TEST_CASE("verify fails on a detuned schedule file") {
    CoinSchedule sched = builtin_schedule(SchemeId::ZY, CoinEncoding::Plates);
    sched.steps[2].at(1).plates[0].angle += 1.0 * 3.14159265358979323846 / 180.0;
    const std::string path = "/tmp/orienteer_test_detuned.json";
    std::ofstream(path) << schedule_to_json(sched);

    const CliResult res = run_cli("verify --schedule " + path);
    CHECK(res.exit_code == 1);
    CHECK(res.output.find("FAIL") != std::string::npos);
}

TEST_CASE("orienteer run writes a parseable report and is seed-deterministic") {
    const std::string out1 = "/tmp/orienteer_test_run1.csv";
    const std::string out2 = "/tmp/orienteer_test_run2.csv";
    const std::string args = "orienteer --scheme zx --shots 4000 --seed 11 --out ";
    CHECK(run_cli(args + out1).exit_code == 0);
    CHECK(run_cli(args + out2).exit_code == 0);
    const std::string a = slurp(out1);
    CHECK(a == slurp(out2));

    const RunReport rep = report_from_csv(a);
    CHECK(rep.scheme == SchemeId::ZX);
    CHECK(rep.shots == 4000);
    CHECK(report_to_csv(rep) == a);

    // a different seed changes the bytes
    CHECK(run_cli("orienteer --scheme zx --shots 4000 --seed 12 --out " + out2).exit_code == 0);
    CHECK(a != slurp(out2));
}

TEST_CASE("orienteer rejects undefined encoding/scheme pairs") {
    CHECK(run_cli("orienteer --scheme parallel --encoding antiparallel --shots 10").exit_code ==
          2);
    CHECK(run_cli("orienteer --scheme nonsense --shots 10").exit_code == 2);
    CHECK(run_cli("orienteer --preset bogus").exit_code == 2);
}

TEST_CASE("tomography ingests counts and rejects negative entries") {
    const ProbeSet probes = ProbeSet::standard(300);
    const CountsMatrix counts = collect_statistics(scheme_basis(SchemeId::XY), probes, 21);
    const std::string path = "/tmp/orienteer_test_counts.csv";
    std::ofstream(path) << counts_to_csv(counts, probes);

    const CliResult good =
        run_cli("tomography --scheme xy --counts-in " + path + " --shots-per-state 300");
    CHECK(good.exit_code == 0);

    std::string broken = counts_to_csv(counts, probes);
    broken.replace(broken.find("\n+x+x,") + 6, 0, "-");
    std::ofstream(path) << broken;
    CHECK(run_cli("tomography --scheme xy --counts-in " + path).exit_code == 2);
}

TEST_CASE("tomography exact mode reports near-perfect fidelity") {
    const std::string out = "/tmp/orienteer_test_tomo.json";
    const CliResult res = run_cli("tomography --scheme zy --exact --seed 5 --out " + out);
    CHECK(res.exit_code == 0);
    const std::string text = slurp(out);
    CHECK(text.find("\"overall_fidelity\": 1.0") != std::string::npos);
}
