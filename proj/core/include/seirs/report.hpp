#pragma once

#include "seirs/analysis.hpp"
#include "seirs/diagnostics.hpp"
#include "seirs/incidence.hpp"
#include "seirs/simulator.hpp"

#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace seirs {

using KeyValues = std::vector<std::pair<std::string, std::string>>;

/// Flat key-value form of an analysis report.
///
/// Always present: dfe.S dfe.E dfe.I dfe.R r0_star r0_random espr
/// inverse_r0_star h_at_zero existence_condition v1 regime lambda endemic
/// permanence. `lambda` is `none` outside the extinction regimes. When
/// `endemic = present` the keys endemic.S .. endemic.R, endemic.h_residual
/// and endemic.iterations follow; when `permanence = present` so do
/// permanence.v1 v2 q_bar q rho s_triangle h. Notes are note.0, note.1, ...
KeyValues analysis_key_values(const AnalysisReport& r);

/// Human-readable report with the same content.
std::string analysis_text(const AnalysisReport& r);

/// check.<name>.{pass,target,observed,tolerance,window_begin,window_end,detail}
/// for every entry, then `checks.all_pass`.
KeyValues checks_key_values(const TheoremCheckReport& r);

/// Incidence axiom report: axiom.A1 .. axiom.A6 status and detail,
/// derivative_at_zero and all_pass.
KeyValues axioms_key_values(const AxiomReport& r);

/// `key = value` lines.
void write_key_values(std::ostream& out, const KeyValues& kv);

/// CSV with header t,S,E,I,R,N, one row per recorded sample.
void write_trajectory_csv(std::ostream& out, const Trajectory& traj);

struct SweepRow {
    int index = 0;
    double value = 0.0;
    std::optional<AnalysisReport> report;
    std::string error; // set when the point failed
};

/// Columns: index,key,value,r0_star,espr,regime,lambda,I_star,error.
/// Empty cells for fields that do not apply.
void write_sweep_csv(std::ostream& out, const std::string& key, const std::vector<SweepRow>& rows);

} // namespace seirs
