#include "orienteer/walk.hpp"

#include <cmath>

#include <json.hpp>

namespace orienteer {

namespace {

const double kSqrt2 = std::sqrt(2.0);
const double kSqrt3 = std::sqrt(3.0);

constexpr double kDeg = 3.14159265358979323846 / 180.0;

CMat mat2(cplx m00, cplx m01, cplx m10, cplx m11) {
    return CMat(2, 2, {m00, m01, m10, m11});
}

} // namespace

double WalkState::total_probability() const {
    double p = 0.0;
    for (const auto& [pos, amp] : amplitudes) p += std::norm(amp[0]) + std::norm(amp[1]);
    return p;
}

void WalkState::prune(double tol) {
    for (auto it = amplitudes.begin(); it != amplitudes.end();) {
        if (std::norm(it->second[0]) + std::norm(it->second[1]) <= tol)
            it = amplitudes.erase(it);
        else
            ++it;
    }
}

EmbeddedTwoQubit EmbeddedTwoQubit::from_ket(const CVec& k) {
    if (k.dim() != 4) throw std::invalid_argument("EmbeddedTwoQubit: need a 4-component ket");
    return {k[0], k[1], k[2], k[3]};
}

CVec EmbeddedTwoQubit::to_ket() const { return CVec{a, b, c, d}; }

WalkState EmbeddedTwoQubit::to_walk_state() const {
    WalkState s;
    s.amplitudes[1] = {a, b};
    s.amplitudes[-1] = {c, d};
    s.prune();
    return s;
}

double EmbeddedTwoQubit::norm_sq() const {
    return std::norm(a) + std::norm(b) + std::norm(c) + std::norm(d);
}

CMat CoinSpec::unitary() const {
    if (matrix) return *matrix;
    return compose_plates(plates);
}

void CoinSchedule::validate(double tol) const {
    for (const auto& step : steps)
        for (const auto& [pos, coin] : step) {
            if (pos < WalkState::kMinPos || pos > WalkState::kMaxPos)
                throw std::invalid_argument("CoinSchedule: coin position out of range");
            if (!coin.unitary().is_unitary(tol))
                throw std::invalid_argument("CoinSchedule: coin is not unitary");
        }
    std::array<int, 4> seen{0, 0, 0, 0};
    for (const auto& det : detectors) {
        if (det.outcome < 1 || det.outcome > 4)
            throw std::invalid_argument("CoinSchedule: detector outcome must be 1..4");
        if (det.step < 1 || det.step > static_cast<int>(steps.size()))
            throw std::invalid_argument("CoinSchedule: detector step out of range");
        seen[static_cast<std::size_t>(det.outcome - 1)]++;
    }
    for (int c : seen)
        if (c != 1)
            throw std::invalid_argument("CoinSchedule: outcomes must cover 1..4 exactly once");
}

WalkState translate(const WalkState& s) {
    WalkState out;
    for (const auto& [pos, amp] : s.amplitudes) {
        if (amp[0] != cplx{0.0, 0.0}) {
            if (pos + 1 > WalkState::kMaxPos)
                throw std::out_of_range("translate: walker left the truncated lattice");
            out.amplitudes[pos + 1][0] += amp[0];
        }
        if (amp[1] != cplx{0.0, 0.0}) {
            if (pos - 1 < WalkState::kMinPos)
                throw std::out_of_range("translate: walker left the truncated lattice");
            out.amplitudes[pos - 1][1] += amp[1];
        }
    }
    out.prune();
    return out;
}

WalkState apply_coins(const WalkState& s, const std::map<int, CoinSpec>& coins,
                      double unitarity_tol) {
    WalkState out = s;
    for (const auto& [pos, coin] : coins) {
        auto it = out.amplitudes.find(pos);
        if (it == out.amplitudes.end()) continue;
        const CMat u = coin.unitary();
        if (!u.is_unitary(unitarity_tol))
            throw std::invalid_argument("apply_coins: coin is not unitary");
        const cplx h = it->second[0], v = it->second[1];
        it->second[0] = u(0, 0) * h + u(0, 1) * v;
        it->second[1] = u(1, 0) * h + u(1, 1) * v;
    }
    return out;
}

namespace {

// Amplitudes a detector removed, one slot per polarization.
struct Absorbed {
    cplx h{0.0, 0.0};
    cplx v{0.0, 0.0};
};

std::vector<Absorbed> run_absorbing(const EmbeddedTwoQubit& s0, const CoinSchedule& sched,
                                    WalkState& final_state, double leakage_tol) {
    sched.validate();
    if (std::abs(s0.norm_sq() - 1.0) > 1e-10)
        throw std::invalid_argument("walk run: embedded state is not normalized");
    WalkState state = s0.to_walk_state();
    std::vector<Absorbed> absorbed(sched.detectors.size());

    for (std::size_t t = 0; t < sched.steps.size(); ++t) {
        state = apply_coins(state, sched.steps[t]);
        state = translate(state);
        const int step = static_cast<int>(t) + 1;
        for (std::size_t d = 0; d < sched.detectors.size(); ++d) {
            const Detector& det = sched.detectors[d];
            if (det.step != step) continue;
            auto it = state.amplitudes.find(det.position);
            if (it == state.amplitudes.end()) continue;
            if (det.pol != DetectorPol::V) {
                absorbed[d].h += it->second[0];
                it->second[0] = 0.0;
            }
            if (det.pol != DetectorPol::H) {
                absorbed[d].v += it->second[1];
                it->second[1] = 0.0;
            }
        }
        state.prune();
    }

    const double leakage = state.total_probability();
    if (leakage > leakage_tol)
        throw std::runtime_error("walk run: detectors left " + std::to_string(leakage) +
                                 " probability unabsorbed");
    final_state = std::move(state);
    return absorbed;
}

} // namespace

RunResult run(const EmbeddedTwoQubit& s0, const CoinSchedule& sched, double leakage_tol) {
    RunResult res{};
    const auto absorbed = run_absorbing(s0, sched, res.final_state, leakage_tol);
    res.outcome_probs = {0.0, 0.0, 0.0, 0.0};
    for (std::size_t d = 0; d < sched.detectors.size(); ++d) {
        const int j = sched.detectors[d].outcome - 1;
        res.outcome_probs[static_cast<std::size_t>(j)] +=
            std::norm(absorbed[d].h) + std::norm(absorbed[d].v);
    }
    return res;
}

Povm extract_povm(const CoinSchedule& sched, double leakage_tol) {
    // Run the four basis embeddings and collect, per detector mode, the
    // absorbed amplitude row; each mode contributes a rank-1 term to its
    // outcome's element.
    constexpr std::size_t kDim = 4;
    std::array<std::vector<Absorbed>, kDim> rows;
    for (std::size_t k = 0; k < kDim; ++k) {
        CVec basis(kDim);
        basis[k] = 1.0;
        WalkState ignored;
        rows[k] = run_absorbing(EmbeddedTwoQubit::from_ket(basis), sched, ignored, leakage_tol);
    }

    Povm povm;
    povm.label = sched.label ? scheme_name(*sched.label) : "custom";
    povm.elements.assign(4, CMat(kDim, kDim));
    povm.guesses.assign(4, Direction{0.0, 0.0, 1.0});
    if (sched.label) {
        for (int j = 1; j <= 4; ++j)
            povm.guesses[static_cast<std::size_t>(j - 1)] = guess_for(*sched.label, j);
    }

    for (std::size_t d = 0; d < sched.detectors.size(); ++d) {
        CMat& el = povm.elements[static_cast<std::size_t>(sched.detectors[d].outcome - 1)];
        for (int mode = 0; mode < 2; ++mode) {
            for (std::size_t r = 0; r < kDim; ++r)
                for (std::size_t c = 0; c < kDim; ++c) {
                    const cplx ar = (mode == 0) ? rows[r][d].h : rows[r][d].v;
                    const cplx ac = (mode == 0) ? rows[c][d].h : rows[c][d].v;
                    el(r, c) += std::conj(ar) * ac;
                }
        }
    }
    return povm;
}

namespace {

// Plate stacks realizing each built-in coin; angles in degrees here since
// every one of them is a clean fraction of a degree.
std::vector<WavePlateSetting> hwp(double deg) {
    return {WavePlateSetting{PlateKind::HWP, deg * kDeg}};
}
std::vector<WavePlateSetting> qwp(double deg) {
    return {WavePlateSetting{PlateKind::QWP, deg * kDeg}};
}

// atan2 form of the H7 plate angle: cos(2H) = -sqrt(2/3), sin(2H) = 1/sqrt(3).
double h7_deg() {
    return 0.5 * std::atan2(1.0 / kSqrt3, -kSqrt2 / kSqrt3) / kDeg;
}

struct CoinEntry {
    int step; // 1-based
    int position;
    CMat matrix;
    std::vector<WavePlateSetting> plates;
};

CoinSpec pick(const CoinEntry& e, CoinEncoding enc) {
    CoinSpec spec;
    if (enc == CoinEncoding::ExactMatrix)
        spec.matrix = e.matrix;
    else
        spec.plates = e.plates;
    return spec;
}

std::vector<CoinEntry> builtin_coins(SchemeId scheme) {
    const cplx i{0.0, 1.0};
    const CMat sx = pauli_x();
    const CMat sz = pauli_z();
    const CMat hadamard = mat2(1.0 / kSqrt2, 1.0 / kSqrt2, 1.0 / kSqrt2, -1.0 / kSqrt2);
    const CMat nhadamard = mat2(-1.0 / kSqrt2, 1.0 / kSqrt2, 1.0 / kSqrt2, 1.0 / kSqrt2);
    const CMat h7 = mat2(-kSqrt2 / kSqrt3, 1.0 / kSqrt3, 1.0 / kSqrt3, kSqrt2 / kSqrt3);
    const CMat q45 = mat2(0.5 * cplx{1.0, 1.0}, 0.5 * cplx{1.0, 1.0} * (-i),
                          0.5 * cplx{1.0, 1.0} * (-i), 0.5 * cplx{1.0, 1.0});
    // C(Q2)C(H8)C(Q1) with Q1 = 45 deg, H8 = 45 deg, Q2 = 0 deg:
    // (1-i)/2 [[1, i], [-1, i]]
    const cplx f = 0.5 * cplx{1.0, -1.0};
    const CMat qhq = mat2(f, f * i, -f, f * i);
    const std::vector<WavePlateSetting> qhq_plates = {WavePlateSetting{PlateKind::QWP, 0.0},
                                                      WavePlateSetting{PlateKind::HWP, 45.0 * kDeg},
                                                      WavePlateSetting{PlateKind::QWP, 45.0 * kDeg}};

    switch (scheme) {
        case SchemeId::Parallel: {
            const CMat h5 = mat2(0.5, kSqrt3 / 2.0, kSqrt3 / 2.0, -0.5);
            return {
                {2, 2, sx, hwp(45.0)},
                {2, 0, nhadamard, hwp(67.5)},
                {2, -2, sx, hwp(45.0)},
                {3, 1, h5, hwp(30.0)},
                {3, -1, hadamard, hwp(22.5)},
                {4, 0, h7, hwp(h7_deg())},
                {4, -2, sx, hwp(45.0)},
                {5, -1, qhq, qhq_plates},
            };
        }
        case SchemeId::Antiparallel: {
            const double eta0 = (std::sqrt(6.0) - kSqrt2) / 4.0;
            const double eta1 = (std::sqrt(6.0) + kSqrt2) / 4.0;
            const CMat h2 = mat2(eta0, eta1, eta1, -eta0);
            return {
                {2, 2, sx, hwp(45.0)},
                {2, 0, h2, hwp(37.5)},
                {2, -2, sx, hwp(45.0)},
                {3, 1, sz, hwp(0.0)},
                {3, -1, nhadamard, hwp(67.5)},
                {4, 0, h7, hwp(h7_deg())},
                {4, -2, sx, hwp(45.0)},
                {5, -1, qhq, qhq_plates},
            };
        }
        case SchemeId::XY:
            return {
                {1, 1, q45, qwp(45.0)},
                {1, -1, q45, qwp(45.0)},
                {2, 2, sx, hwp(45.0)},
                {2, 0, sz, hwp(0.0)},
                {2, -2, sx, hwp(45.0)},
                {3, 1, hadamard, hwp(22.5)},
                {3, -1, hadamard, hwp(22.5)},
                {4, 0, sz, hwp(0.0)},
                {4, -2, sx, hwp(45.0)},
            };
        case SchemeId::ZX:
            return {
                {2, 2, sx, hwp(45.0)},
                {2, 0, sx, hwp(45.0)},
                {2, -2, sx, hwp(45.0)},
                {3, 1, hadamard, hwp(22.5)},
                {3, -1, sx, hwp(45.0)},
                {4, 0, sx, hwp(45.0)},
                {4, -2, sx, hwp(45.0)},
                {5, -1, hadamard, hwp(22.5)},
            };
        case SchemeId::ZY:
            return {
                {2, 2, sx, hwp(45.0)},
                {2, 0, sx, hwp(45.0)},
                {2, -2, sx, hwp(45.0)},
                {3, 1, q45, qwp(45.0)},
                {3, -1, sx, hwp(45.0)},
                {4, 0, sx, hwp(45.0)},
                {4, -2, sx, hwp(45.0)},
                {5, -1, q45, qwp(45.0)},
            };
    }
    throw std::logic_error("builtin_coins: bad scheme");
}

std::vector<Detector> builtin_detectors(SchemeId scheme) {
    // E1 fires early at position 2 after step 3 and E2 at position 1 after
    // step 4; the last two outcomes are read at step 5. The antiparallel
    // walk delivers outcome 3 at position -2 and outcome 4 at position 0,
    // swapped relative to the other schemes.
    const bool swap34 = (scheme == SchemeId::Antiparallel);
    return {
        Detector{2, 3, 1},
        Detector{1, 4, 2},
        Detector{0, 5, swap34 ? 4 : 3},
        Detector{-2, 5, swap34 ? 3 : 4},
    };
}

} // namespace

CoinSchedule builtin_schedule(SchemeId scheme, CoinEncoding enc) {
    CoinSchedule sched;
    sched.label = scheme;
    sched.steps.resize(5);
    for (const auto& entry : builtin_coins(scheme))
        sched.steps[static_cast<std::size_t>(entry.step - 1)][entry.position] = pick(entry, enc);
    sched.detectors = builtin_detectors(scheme);
    return sched;
}

double validate_plate_encoding(SchemeId scheme) {
    double dev = 0.0;
    for (const auto& entry : builtin_coins(scheme)) {
        CoinSpec plates;
        plates.plates = entry.plates;
        dev = std::max(dev, entry.matrix.max_abs_diff(plates.unitary()));
    }
    return dev;
}

double povm_deviation(const CoinSchedule& sched, SchemeId scheme) {
    const Povm walked = extract_povm(sched);
    const Povm analytic = scheme_basis(scheme);
    double dev = 0.0;
    for (std::size_t j = 0; j < 4; ++j)
        dev = std::max(dev, walked.elements[j].max_abs_diff(analytic.elements[j]));
    return dev;
}

// ---------------------------------------------------------------------------
// Schedule config file (versioned JSON)

namespace {

using nlohmann::json;

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
    if (rows == 0) throw std::invalid_argument("schedule json: empty matrix");
    const std::size_t cols = j.at(0).size();
    CMat m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) {
            const auto& e = j.at(r).at(c);
            m(r, c) = cplx{e.at(0).get<double>(), e.at(1).get<double>()};
        }
    return m;
}

const char* pol_name(DetectorPol p) {
    switch (p) {
        case DetectorPol::H: return "h";
        case DetectorPol::V: return "v";
        case DetectorPol::Both: return "both";
    }
    return "both";
}

DetectorPol pol_from_name(const std::string& s) {
    if (s == "h") return DetectorPol::H;
    if (s == "v") return DetectorPol::V;
    if (s == "both") return DetectorPol::Both;
    throw std::invalid_argument("schedule json: bad polarization '" + s + "'");
}

} // namespace

std::string schedule_to_json(const CoinSchedule& sched) {
    json j;
    j["format"] = "orienteer-schedule";
    j["version"] = 1;
    if (sched.label) j["label"] = scheme_name(*sched.label);
    json steps = json::array();
    for (const auto& step : sched.steps) {
        json entries = json::array();
        for (const auto& [pos, coin] : step) {
            json e;
            e["position"] = pos;
            if (coin.matrix) {
                e["coin"]["matrix"] = mat_to_json(*coin.matrix);
            } else {
                json plates = json::array();
                for (const auto& p : coin.plates)
                    plates.push_back({{"kind", p.kind == PlateKind::HWP ? "hwp" : "qwp"},
                                      {"angle_deg", p.angle / kDeg}});
                e["coin"]["plates"] = plates;
            }
            entries.push_back(e);
        }
        steps.push_back(entries);
    }
    j["steps"] = steps;
    json dets = json::array();
    for (const auto& det : sched.detectors)
        dets.push_back({{"position", det.position},
                        {"step", det.step},
                        {"outcome", det.outcome},
                        {"polarization", pol_name(det.pol)}});
    j["detectors"] = dets;
    return j.dump(2) + "\n";
}

CoinSchedule schedule_from_json(const std::string& text) {
    const json j = json::parse(text);
    if (j.value("format", "") != "orienteer-schedule")
        throw std::invalid_argument("schedule json: not an orienteer-schedule file");
    if (j.value("version", 0) != 1)
        throw std::invalid_argument("schedule json: unsupported version");

    CoinSchedule sched;
    if (j.contains("label")) {
        const auto id = scheme_from_name(j.at("label").get<std::string>());
        if (!id) throw std::invalid_argument("schedule json: unknown label");
        sched.label = id;
    }
    for (const auto& step : j.at("steps")) {
        std::map<int, CoinSpec> coins;
        for (const auto& e : step) {
            CoinSpec spec;
            const auto& coin = e.at("coin");
            if (coin.contains("matrix")) {
                spec.matrix = mat_from_json(coin.at("matrix"));
            } else {
                for (const auto& p : coin.at("plates")) {
                    const std::string kind = p.at("kind").get<std::string>();
                    if (kind != "hwp" && kind != "qwp")
                        throw std::invalid_argument("schedule json: bad plate kind");
                    spec.plates.push_back(WavePlateSetting{
                        kind == "hwp" ? PlateKind::HWP : PlateKind::QWP,
                        p.at("angle_deg").get<double>() * kDeg});
                }
            }
            coins[e.at("position").get<int>()] = std::move(spec);
        }
        sched.steps.push_back(std::move(coins));
    }
    for (const auto& d : j.at("detectors")) {
        Detector det{d.at("position").get<int>(), d.at("step").get<int>(),
                     d.at("outcome").get<int>(),
                     pol_from_name(d.value("polarization", "both"))};
        sched.detectors.push_back(det);
    }
    sched.validate();
    return sched;
}

} // namespace orienteer
