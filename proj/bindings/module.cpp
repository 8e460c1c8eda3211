// Python bindings for the core operations: state encodings, the analytic
// bases, walk schedules and their extracted POVMs, protocol Monte Carlo and
// measurement tomography. Matrices cross the boundary as nested lists of
// complex numbers; reports and results as dicts.

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "orienteer/io.hpp"
#include "orienteer/rng.hpp"

namespace py = pybind11;
using namespace orienteer;

namespace {

using PyMat = std::vector<std::vector<cplx>>;

PyMat mat_out(const CMat& m) {
    PyMat rows(m.rows(), std::vector<cplx>(m.cols()));
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) rows[r][c] = m(r, c);
    return rows;
}

CMat mat_in(const PyMat& rows) {
    if (rows.empty()) throw std::invalid_argument("empty matrix");
    CMat m(rows.size(), rows[0].size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != rows[0].size()) throw std::invalid_argument("ragged matrix");
        for (std::size_t c = 0; c < rows[r].size(); ++c) m(r, c) = rows[r][c];
    }
    return m;
}

std::vector<cplx> vec_out(const CVec& v) { return v.data(); }

CVec vec_in(const std::vector<cplx>& entries) {
    CVec v(entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) v[i] = entries[i];
    return v;
}

SchemeId scheme_in(const std::string& name) {
    const auto id = scheme_from_name(name);
    if (!id) throw std::invalid_argument("unknown scheme '" + name + "'");
    return *id;
}

Encoding encoding_in(const std::string& name) {
    if (name == "parallel") return Encoding::Parallel;
    if (name == "antiparallel") return Encoding::Antiparallel;
    throw std::invalid_argument("unknown encoding '" + name + "'");
}

Direction direction_in(const std::array<double, 3>& d) { return {d[0], d[1], d[2]}; }

std::array<double, 3> direction_out(const Direction& d) { return {d.x, d.y, d.z}; }

py::dict povm_out(const Povm& p) {
    py::dict out;
    out["label"] = p.label;
    std::vector<PyMat> elements;
    for (const auto& e : p.elements) elements.push_back(mat_out(e));
    out["elements"] = elements;
    std::vector<std::array<double, 3>> guesses;
    for (const auto& g : p.guesses) guesses.push_back(direction_out(g));
    out["guesses"] = guesses;
    return out;
}

py::dict report_out(const RunReport& r) {
    py::dict out;
    out["scheme"] = scheme_name(r.scheme);
    out["encoding"] = encoding_name(r.encoding);
    out["engine"] = engine_name(r.engine);
    out["overall_mean"] = r.overall_mean;
    out["overall_std_error"] = r.overall_std_error;
    out["shots"] = r.shots;
    out["seed"] = r.seed;
    py::list dirs;
    for (const auto& st : r.per_direction) {
        py::dict d;
        d["direction"] = direction_out(st.direction);
        d["mean_fidelity"] = st.mean_fidelity;
        d["std_dev"] = st.std_dev;
        d["shots"] = st.shots;
        d["outcome_counts"] = st.outcome_counts;
        dirs.append(d);
    }
    out["per_direction"] = dirs;
    return out;
}

} // namespace

PYBIND11_MODULE(orienteer_core, m) {
    m.doc() = "Optimal direction communication with parallel and antiparallel spins: "
              "analytic measurements, quantum-walk realizations, protocol Monte Carlo "
              "and measurement tomography.";

    // states
    m.def("bloch_to_ket",
          [](const std::array<double, 3>& n) { return vec_out(bloch_to_ket(direction_in(n))); },
          py::arg("direction"));
    m.def("ket_to_bloch",
          [](const std::vector<cplx>& k) { return direction_out(ket_to_bloch(vec_in(k))); },
          py::arg("ket"));
    m.def("sic_states", [] {
        std::vector<std::vector<cplx>> out;
        for (const auto& k : sic_states()) out.push_back(vec_out(k));
        return out;
    });
    m.def("sic_antipodes", [] {
        std::vector<std::vector<cplx>> out;
        for (const auto& k : sic_antipodes()) out.push_back(vec_out(k));
        return out;
    });
    m.def("encode",
          [](const std::array<double, 3>& n, const std::string& encoding) {
              return vec_out(encode(direction_in(n), encoding_in(encoding)));
          },
          py::arg("direction"), py::arg("encoding"));

    // bases and the guess dictionary
    m.def("scheme_basis", [](const std::string& s) { return povm_out(scheme_basis(scheme_in(s))); },
          py::arg("scheme"));
    m.def("guess_for",
          [](const std::string& s, int outcome) {
              return direction_out(guess_for(scheme_in(s), outcome));
          },
          py::arg("scheme"), py::arg("outcome"));
    m.def("born_probabilities",
          [](const std::string& scheme, const std::vector<cplx>& psi) {
              return born_probabilities(scheme_basis(scheme_in(scheme)), vec_in(psi));
          },
          py::arg("scheme"), py::arg("ket"));

    // walk
    m.def("walk_run",
          [](const std::string& scheme, const std::vector<cplx>& psi) {
              const auto res =
                  run(EmbeddedTwoQubit::from_ket(vec_in(psi)), builtin_schedule(scheme_in(scheme)));
              return res.outcome_probs;
          },
          py::arg("scheme"), py::arg("ket"),
          "Outcome probabilities of a five-step walk run on an embedded two-qubit ket.");
    m.def("walk_povm",
          [](const std::string& scheme) {
              return povm_out(extract_povm(builtin_schedule(scheme_in(scheme))));
          },
          py::arg("scheme"));
    m.def("walk_deviation",
          [](const std::string& scheme) {
              const SchemeId id = scheme_in(scheme);
              return povm_deviation(builtin_schedule(id), id);
          },
          py::arg("scheme"),
          "Largest entrywise gap between the walk-extracted and analytic POVM.");
    m.def("schedule_json",
          [](const std::string& scheme, bool plates) {
              return schedule_to_json(builtin_schedule(
                  scheme_in(scheme), plates ? CoinEncoding::Plates : CoinEncoding::ExactMatrix));
          },
          py::arg("scheme"), py::arg("plates") = false);

    // protocol
    m.def("fidelity",
          [](const std::array<double, 3>& n, const std::array<double, 3>& g) {
              return fidelity(direction_in(n), direction_in(g));
          },
          py::arg("direction"), py::arg("guess"));
    m.def("analytic_mean_fidelity",
          [](const std::array<double, 3>& n, const std::string& scheme) {
              return analytic_mean_fidelity(direction_in(n), scheme_in(scheme));
          },
          py::arg("direction"), py::arg("scheme"));
    m.def("simulate",
          [](const std::string& scheme, const std::string& encoding, std::uint64_t shots,
             std::uint64_t seed, const std::string& sampler, const std::string& engine) {
              DirectionSampler ds = sampler == "sphere" ? DirectionSampler::uniform_sphere(seed)
                                                        : DirectionSampler::octahedron(seed);
              if (sampler != "sphere" && sampler != "octahedron")
                  throw std::invalid_argument("sampler must be 'octahedron' or 'sphere'");
              const Engine eng = engine == "walk" ? Engine::Walk : Engine::AnalyticPovm;
              return report_out(simulate(ds, encoding_in(encoding), scheme_in(scheme), shots, eng));
          },
          py::arg("scheme"), py::arg("encoding"), py::arg("shots"), py::arg("seed") = 1,
          py::arg("sampler") = "octahedron", py::arg("engine") = "analytic-povm");
    m.def("theta_sweep",
          [](const std::vector<double>& thetas, const std::string& scheme,
             const std::string& encoding, std::uint64_t shots, std::uint64_t seed) {
              const SweepTable t =
                  theta_sweep(thetas, encoding_in(encoding), scheme_in(scheme), shots, seed);
              py::list rows;
              for (const auto& r : t.rows) {
                  py::dict d;
                  d["theta"] = r.theta;
                  d["simulated"] = r.simulated;
                  d["analytic"] = r.analytic;
                  d["pair_avg_sim"] = r.pair_avg_sim;
                  d["pair_avg_analytic"] = r.pair_avg_analytic;
                  rows.append(d);
              }
              return rows;
          },
          py::arg("thetas"), py::arg("scheme"), py::arg("encoding"), py::arg("shots"),
          py::arg("seed") = 1);

    // tomography
    m.def("collect_statistics",
          [](const std::string& scheme, std::uint64_t shots_per_state, std::uint64_t seed,
             double noise_sigma) {
              const SchemeId id = scheme_in(scheme);
              const Povm target =
                  noise_sigma > 0.0
                      ? extract_povm(perturbed_schedule(id, NoiseModel{noise_sigma, seed}), 1.0)
                      : scheme_basis(id);
              return collect_statistics(target, ProbeSet::standard(shots_per_state), seed);
          },
          py::arg("scheme"), py::arg("shots_per_state"), py::arg("seed") = 1,
          py::arg("noise_sigma") = 0.0,
          "36x4 probe-state statistics; shots_per_state=0 gives exact probabilities.");
    m.def("reconstruct_ml",
          [](const CountsMatrix& counts, std::uint64_t shots_per_state, const std::string& scheme,
             int max_iters, double tol) {
              const Povm reference = scheme_basis(scheme_in(scheme));
              const auto res = reconstruct_ml(counts, ProbeSet::standard(shots_per_state),
                                              max_iters, tol, &reference);
              py::dict out;
              out["reconstructed"] = povm_out(res.reconstructed);
              out["element_fidelity"] = res.element_fidelity;
              out["overall_fidelity"] = res.overall_fidelity;
              out["iterations"] = res.iterations;
              out["converged"] = res.converged;
              out["log_likelihood"] = res.final_log_likelihood;
              return out;
          },
          py::arg("counts"), py::arg("shots_per_state"), py::arg("scheme"),
          py::arg("max_iters") = 5000, py::arg("tol") = 1e-10);
    m.def("povm_fidelity",
          [](const PyMat& a, const PyMat& b) { return povm_fidelity(mat_in(a), mat_in(b)); },
          py::arg("a"), py::arg("b"));

    m.attr("schemes") = std::vector<std::string>{"parallel", "antiparallel", "xy", "zx", "zy"};
    m.attr("parallel_average") = 0.75;
    m.attr("antiparallel_average") = antiparallel_average();
    m.attr("locc_average") = locc_average();
}
