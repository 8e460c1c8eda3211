#pragma once

#include <string>

#include "orienteer/tomography.hpp"

namespace orienteer {

// Number formatting shared by every emitter: shortest decimal text that
// parses back to the identical double, so emit -> parse -> emit is the
// identity on bytes.
std::string format_double(double v);

// --- POVM (JSON) -----------------------------------------------------------
std::string povm_to_json(const Povm& povm);
Povm povm_from_json(const std::string& text);

// --- Protocol run reports --------------------------------------------------
// CSV columns: scheme,encoding,direction_x,direction_y,direction_z,
// mean_fidelity,std_dev,shots,seed. One row per direction plus a final
// overall row with blank direction fields.
std::string report_to_csv(const RunReport& report);
RunReport report_from_csv(const std::string& text);
std::string report_to_json(const RunReport& report);

// Several reports concatenated under one header (the table presets); each
// block is a run of direction rows closed by its overall row.
std::string reports_to_csv(const std::vector<RunReport>& reports);
std::vector<RunReport> reports_from_csv(const std::string& text);

// True when every numeric field of the CSV text is in the canonical
// shortest round-trip form format_double produces; emitted files satisfy
// this, which is what makes parse -> re-emit the identity.
bool csv_is_canonical(const std::string& text);

// Theta-sweep tables. CSV columns: scheme,encoding,theta,mean_fidelity,
// std_dev,analytic,pair_avg_sim,pair_avg_analytic,shots,seed.
std::string sweep_to_csv(const SweepTable& table);
SweepTable sweep_from_csv(const std::string& text);
std::string sweep_to_json(const SweepTable& table);

// Several sweep tables under one header (the fig2 preset); blocks split
// where the scheme or encoding changes between consecutive rows.
std::string sweeps_to_csv(const std::vector<SweepTable>& tables);
std::vector<SweepTable> sweeps_from_csv(const std::string& text);

// --- Tomography ------------------------------------------------------------
// Counts CSV: header "probe,E1,E2,E3,E4", 36 rows labeled like "+x+y".
std::string counts_to_csv(const CountsMatrix& counts, const ProbeSet& probes);
CountsMatrix counts_from_csv(const std::string& text, const ProbeSet& probes);

std::string tomography_result_to_json(const TomographyResult& result);

} // namespace orienteer
