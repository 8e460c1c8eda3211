#include "orienteer/io.hpp"

#include <charconv>
#include <cmath>
#include <sstream>
#include <vector>

#include <json.hpp>

namespace orienteer {

using nlohmann::json;

std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

namespace {

double parse_double(const std::string& s) {
    double v = 0.0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
        throw std::invalid_argument("csv: bad number '" + s + "'");
    return v;
}

std::uint64_t parse_u64(const std::string& s) {
    std::uint64_t v = 0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
        throw std::invalid_argument("csv: bad integer '" + s + "'");
    return v;
}

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            fields.push_back(cur);
            cur.clear();
        } else if (ch != '\r') {
            cur += ch;
        }
    }
    fields.push_back(cur);
    return fields;
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text,
                                                const std::string& expected_header) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line))
        throw std::invalid_argument("csv: empty file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != expected_header)
        throw std::invalid_argument("csv: unexpected header '" + line + "'");
    std::vector<std::vector<std::string>> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        rows.push_back(split_line(line));
    }
    return rows;
}

json mat_to_json(const CMat& m) {
    json rows = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < m.cols(); ++c)
            row.push_back(json::array({m(r, c).real(), m(r, c).imag()}));
        rows.push_back(row);
    }
    return rows;
}

CMat mat_from_json(const json& j) {
    const std::size_t rows = j.size();
    const std::size_t cols = rows ? j.at(0).size() : 0;
    CMat m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c)
            m(r, c) = cplx{j.at(r).at(c).at(0).get<double>(), j.at(r).at(c).at(1).get<double>()};
    return m;
}

json direction_to_json(const Direction& d) { return json::array({d.x, d.y, d.z}); }

json povm_json(const Povm& povm) {
    json j;
    j["format"] = "orienteer-povm";
    j["version"] = 1;
    j["label"] = povm.label;
    json elements = json::array();
    for (const auto& e : povm.elements) elements.push_back(mat_to_json(e));
    j["elements"] = elements;
    json guesses = json::array();
    for (const auto& g : povm.guesses) guesses.push_back(direction_to_json(g));
    j["guesses"] = guesses;
    return j;
}

Povm povm_from(const json& j) {
    if (j.value("format", "") != "orienteer-povm" || j.value("version", 0) != 1)
        throw std::invalid_argument("povm json: wrong format or version");
    Povm p;
    p.label = j.value("label", "");
    for (const auto& e : j.at("elements")) p.elements.push_back(mat_from_json(e));
    for (const auto& g : j.at("guesses"))
        p.guesses.push_back(
            {g.at(0).get<double>(), g.at(1).get<double>(), g.at(2).get<double>()});
    return p;
}

Encoding encoding_from_name(const std::string& s) {
    if (s == "parallel") return Encoding::Parallel;
    if (s == "antiparallel") return Encoding::Antiparallel;
    throw std::invalid_argument("bad encoding name '" + s + "'");
}

SchemeId scheme_from_name_or_throw(const std::string& s) {
    const auto id = scheme_from_name(s);
    if (!id) throw std::invalid_argument("bad scheme name '" + s + "'");
    return *id;
}

} // namespace

std::string povm_to_json(const Povm& povm) { return povm_json(povm).dump(2) + "\n"; }

Povm povm_from_json(const std::string& text) { return povm_from(json::parse(text)); }

static const char* kReportHeader =
    "scheme,encoding,direction_x,direction_y,direction_z,mean_fidelity,std_dev,shots,seed";

std::string report_to_csv(const RunReport& report) {
    std::ostringstream out;
    out << kReportHeader << "\n";
    const std::string prefix =
        std::string(scheme_name(report.scheme)) + "," + encoding_name(report.encoding) + ",";
    for (const auto& st : report.per_direction) {
        out << prefix << format_double(st.direction.x) << "," << format_double(st.direction.y)
            << "," << format_double(st.direction.z) << "," << format_double(st.mean_fidelity)
            << "," << format_double(st.std_dev) << "," << st.shots << "," << report.seed << "\n";
    }
    out << prefix << ",,," << format_double(report.overall_mean) << ","
        << format_double(report.overall_std_error) << "," << report.shots << "," << report.seed
        << "\n";
    return out.str();
}

std::vector<RunReport> reports_from_csv(const std::string& text) {
    const auto rows = parse_csv(text, kReportHeader);
    if (rows.empty()) throw std::invalid_argument("report csv: no rows");
    std::vector<RunReport> reports;
    RunReport current;
    for (const auto& f : rows) {
        if (f.size() != 9) throw std::invalid_argument("report csv: wrong field count");
        current.scheme = scheme_from_name_or_throw(f[0]);
        current.encoding = encoding_from_name(f[1]);
        if (f[2].empty() && f[3].empty() && f[4].empty()) {
            current.overall_mean = parse_double(f[5]);
            current.overall_std_error = parse_double(f[6]);
            current.shots = parse_u64(f[7]);
            current.seed = parse_u64(f[8]);
            reports.push_back(std::move(current));
            current = RunReport{};
        } else {
            DirectionStats st;
            st.direction = {parse_double(f[2]), parse_double(f[3]), parse_double(f[4])};
            st.mean_fidelity = parse_double(f[5]);
            st.std_dev = parse_double(f[6]);
            st.shots = parse_u64(f[7]);
            current.per_direction.push_back(st);
        }
    }
    if (!current.per_direction.empty())
        throw std::invalid_argument("report csv: direction rows missing their overall row");
    if (reports.empty()) throw std::invalid_argument("report csv: no report blocks");
    return reports;
}

RunReport report_from_csv(const std::string& text) {
    auto reports = reports_from_csv(text);
    if (reports.size() != 1)
        throw std::invalid_argument("report csv: expected exactly one report block");
    return std::move(reports.front());
}

std::string reports_to_csv(const std::vector<RunReport>& reports) {
    std::string out;
    for (std::size_t i = 0; i < reports.size(); ++i) {
        std::string block = report_to_csv(reports[i]);
        if (i > 0) block.erase(0, block.find('\n') + 1); // keep one header
        out += block;
    }
    return out;
}

bool csv_is_canonical(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::getline(in, line); // header
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        for (const auto& field : split_line(line)) {
            if (field.empty()) continue;
            double v = 0.0;
            auto res = std::from_chars(field.data(), field.data() + field.size(), v);
            if (res.ec != std::errc{} || res.ptr != field.data() + field.size())
                continue; // not numeric, e.g. a label column
            // Integer-looking fields are written by the integer printers.
            if (field.find_first_of(".eE") == std::string::npos) continue;
            if (format_double(v) != field) return false;
        }
    }
    return true;
}

std::string report_to_json(const RunReport& report) {
    json j;
    j["format"] = "orienteer-report";
    j["version"] = 1;
    j["scheme"] = scheme_name(report.scheme);
    j["encoding"] = encoding_name(report.encoding);
    j["engine"] = engine_name(report.engine);
    j["shots"] = report.shots;
    j["seed"] = report.seed;
    j["overall"] = {{"mean_fidelity", report.overall_mean},
                    {"std_error", report.overall_std_error}};
    json dirs = json::array();
    for (const auto& st : report.per_direction) {
        json d;
        d["direction"] = direction_to_json(st.direction);
        if (st.theta) d["theta"] = *st.theta;
        d["mean_fidelity"] = st.mean_fidelity;
        d["std_dev"] = st.std_dev;
        d["shots"] = st.shots;
        d["outcome_counts"] = st.outcome_counts;
        dirs.push_back(d);
    }
    j["per_direction"] = dirs;
    return j.dump(2) + "\n";
}

static const char* kSweepHeader =
    "scheme,encoding,theta,mean_fidelity,std_dev,analytic,pair_avg_sim,pair_avg_analytic,shots,"
    "seed";

std::string sweep_to_csv(const SweepTable& table) {
    std::ostringstream out;
    out << kSweepHeader << "\n";
    const std::string prefix =
        std::string(scheme_name(table.scheme)) + "," + encoding_name(table.encoding) + ",";
    for (const auto& row : table.rows) {
        out << prefix << format_double(row.theta) << "," << format_double(row.simulated) << ","
            << format_double(row.sim_std) << "," << format_double(row.analytic) << ","
            << format_double(row.pair_avg_sim) << "," << format_double(row.pair_avg_analytic)
            << "," << table.shots_per_theta << "," << table.seed << "\n";
    }
    return out.str();
}

std::vector<SweepTable> sweeps_from_csv(const std::string& text) {
    const auto rows = parse_csv(text, kSweepHeader);
    if (rows.empty()) throw std::invalid_argument("sweep csv: no rows");
    std::vector<SweepTable> tables;
    for (const auto& f : rows) {
        if (f.size() != 10) throw std::invalid_argument("sweep csv: wrong field count");
        const SchemeId scheme = scheme_from_name_or_throw(f[0]);
        const Encoding encoding = encoding_from_name(f[1]);
        if (tables.empty() || tables.back().scheme != scheme ||
            tables.back().encoding != encoding) {
            SweepTable t;
            t.scheme = scheme;
            t.encoding = encoding;
            tables.push_back(t);
        }
        SweepTable& table = tables.back();
        SweepRow row{};
        row.theta = parse_double(f[2]);
        row.simulated = parse_double(f[3]);
        row.sim_std = parse_double(f[4]);
        row.analytic = parse_double(f[5]);
        row.pair_avg_sim = parse_double(f[6]);
        row.pair_avg_analytic = parse_double(f[7]);
        table.shots_per_theta = parse_u64(f[8]);
        table.seed = parse_u64(f[9]);
        table.rows.push_back(row);
    }
    return tables;
}

SweepTable sweep_from_csv(const std::string& text) {
    auto tables = sweeps_from_csv(text);
    if (tables.size() != 1)
        throw std::invalid_argument("sweep csv: expected exactly one sweep block");
    return std::move(tables.front());
}

std::string sweeps_to_csv(const std::vector<SweepTable>& tables) {
    std::string out;
    for (std::size_t i = 0; i < tables.size(); ++i) {
        std::string block = sweep_to_csv(tables[i]);
        if (i > 0) block.erase(0, block.find('\n') + 1); // keep one header
        out += block;
    }
    return out;
}

std::string sweep_to_json(const SweepTable& table) {
    json j;
    j["format"] = "orienteer-sweep";
    j["version"] = 1;
    j["scheme"] = scheme_name(table.scheme);
    j["encoding"] = encoding_name(table.encoding);
    j["engine"] = engine_name(table.engine);
    j["shots_per_theta"] = table.shots_per_theta;
    j["seed"] = table.seed;
    json rows = json::array();
    for (const auto& r : table.rows)
        rows.push_back({{"theta", r.theta},
                        {"simulated", r.simulated},
                        {"std_dev", r.sim_std},
                        {"analytic", r.analytic},
                        {"pair_avg_sim", r.pair_avg_sim},
                        {"pair_avg_analytic", r.pair_avg_analytic}});
    j["rows"] = rows;
    return j.dump(2) + "\n";
}

static const char* kCountsHeader = "probe,E1,E2,E3,E4";

std::string counts_to_csv(const CountsMatrix& counts, const ProbeSet& probes) {
    if (counts.size() != probes.labels.size())
        throw std::invalid_argument("counts csv: row count does not match probe set");
    std::ostringstream out;
    out << kCountsHeader << "\n";
    for (std::size_t i = 0; i < counts.size(); ++i) {
        out << probes.labels[i];
        for (double c : counts[i]) out << "," << format_double(c);
        out << "\n";
    }
    return out.str();
}

CountsMatrix counts_from_csv(const std::string& text, const ProbeSet& probes) {
    const auto rows = parse_csv(text, kCountsHeader);
    if (rows.size() != probes.labels.size())
        throw std::invalid_argument("counts csv: expected one row per probe state");
    CountsMatrix counts(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& f = rows[i];
        if (f.size() != 5) throw std::invalid_argument("counts csv: wrong field count");
        if (f[0] != probes.labels[i])
            throw std::invalid_argument("counts csv: probe label mismatch at row " +
                                        std::to_string(i) + " ('" + f[0] + "')");
        for (std::size_t j = 0; j < 4; ++j) {
            const double v = parse_double(f[j + 1]);
            if (v < 0.0 || !std::isfinite(v))
                throw std::invalid_argument("counts csv: counts must be finite and >= 0");
            counts[i][j] = v;
        }
    }
    return counts;
}

std::string tomography_result_to_json(const TomographyResult& result) {
    json j;
    j["format"] = "orienteer-tomography";
    j["version"] = 1;
    j["iterations"] = result.iterations;
    j["converged"] = result.converged;
    j["log_likelihood"] = result.final_log_likelihood;
    if (result.has_reference) {
        j["element_fidelity"] = result.element_fidelity;
        j["overall_fidelity"] = result.overall_fidelity;
    }
    j["reconstructed"] = povm_json(result.reconstructed);
    return j.dump(2) + "\n";
}

} // namespace orienteer
