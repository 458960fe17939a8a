#pragma once

#include "seirs/analysis.hpp"
#include "seirs/config.hpp"
#include "seirs/diagnostics.hpp"
#include "seirs/incidence.hpp"
#include "seirs/report.hpp"
#include "seirs/simulator.hpp"

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace seirs::cli {

enum class Mode { Analyze, Simulate, Validate, Sweep };

struct SweepAxis {
    std::string key; // canonical config key
    double lo = 0.0;
    double hi = 0.0;
    int count = 1;

    /// Evenly spaced values from lo to hi inclusive; a single point is lo.
    std::vector<double> values() const;
};

/// Parses `key:lo:hi:n`. The key must name a numeric configuration key.
SweepAxis parse_sweep_axis(const std::string& spec);

struct RunConfig {
    Mode mode = Mode::Analyze;
    std::optional<std::string> config_path;
    std::vector<std::string> overrides; // key=value, applied after the file
    std::string out_dir = ".";
    std::optional<double> dt;
    std::optional<double> t_end;
    std::optional<int> stride;
    std::optional<SweepAxis> sweep;
};

/// Configuration file plus overrides plus the --dt/--t-end/--stride flags.
KeyValueConfig resolve_config(const RunConfig& run);

/// Writes report.txt and report.kv.
AnalysisReport run_analyze(const RunConfig& run);

struct SimulationResult {
    AnalysisReport analysis;
    Trajectory trajectory;
    TheoremCheckReport checks;
    Outcome outcome = Outcome::Undetermined;
};

/// Runs analysis, simulation and diagnostics on an already resolved model.
/// Writes nothing.
SimulationResult simulate_model(const ModelConfig& model);

/// Writes trajectory.csv, checks.kv, report.txt, report.kv and events.log.
SimulationResult run_simulate(const RunConfig& run);

/// Writes report.txt and report.kv with the axiom results.
AxiomReport run_validate(const RunConfig& run);

/// One analysis per axis value; failures are recorded in the row.
/// Points run concurrently on up to `threads` workers (0 = hardware).
std::vector<SweepRow> sweep_points(const KeyValueConfig& base, const SweepAxis& axis,
                                   unsigned threads = 0);

/// Writes sweep.csv.
std::vector<SweepRow> run_sweep(const RunConfig& run);

/// Command-line entry point. Returns the process exit code.
int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err);

} // namespace seirs::cli
