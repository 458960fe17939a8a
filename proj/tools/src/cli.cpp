#include "seirs_cli/cli.hpp"

#include "seirs/errors.hpp"
#include "seirs/format.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

namespace seirs::cli {

namespace fs = std::filesystem;

std::vector<double> SweepAxis::values() const
{
    std::vector<double> v;
    v.reserve(static_cast<std::size_t>(count));
    if (count == 1) return {lo};
    for (int i = 0; i < count; ++i) {
        // endpoints exact, interior points by linear interpolation
        const double f = static_cast<double>(i) / (count - 1);
        v.push_back(i == count - 1 ? hi : lo + (hi - lo) * f);
    }
    return v;
}

SweepAxis parse_sweep_axis(const std::string& spec)
{
    std::vector<std::string> parts;
    std::stringstream in(spec);
    for (std::string p; std::getline(in, p, ':');) parts.push_back(p);
    if (parts.size() != 4) throw ConfigError("--sweep expects key:lo:hi:n, got `" + spec + "`");

    SweepAxis axis;
    axis.key = canonical_key(parts[0]);
    if (!is_numeric_key(axis.key)) {
        throw ConfigError("--sweep: `" + parts[0] + "` is not a numeric configuration key");
    }
    const auto lo = parse_number(parts[1]);
    const auto hi = parse_number(parts[2]);
    const auto n = parse_number(parts[3]);
    if (!lo || !hi || !std::isfinite(*lo) || !std::isfinite(*hi)) {
        throw ConfigError("--sweep: bounds must be finite numbers");
    }
    if (!n || *n < 1 || *n != std::floor(*n) || *n > 1e6) {
        throw ConfigError("--sweep: count must be an integer in [1, 1e6]");
    }
    axis.lo = *lo;
    axis.hi = *hi;
    axis.count = static_cast<int>(*n);
    return axis;
}

KeyValueConfig resolve_config(const RunConfig& run)
{
    KeyValueConfig cfg = run.config_path ? KeyValueConfig::parse_file(*run.config_path)
                                         : KeyValueConfig{};
    for (const auto& o : run.overrides) cfg.set_assignment(o);
    if (run.dt) cfg.set("sim.dt", format_number(*run.dt));
    if (run.t_end) cfg.set("sim.t_end", format_number(*run.t_end));
    if (run.stride) cfg.set("sim.stride", std::to_string(*run.stride));
    return cfg;
}

namespace {

fs::path prepare_out_dir(const std::string& dir)
{
    const fs::path p(dir);
    std::error_code ec;
    fs::create_directories(p, ec);
    if (ec || !fs::is_directory(p)) {
        throw ConfigError("cannot create output directory " + dir);
    }
    return p;
}

std::ofstream open_output(const fs::path& path)
{
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write " + path.string());
    return out;
}

void write_file(const fs::path& path, const std::string& content)
{
    auto out = open_output(path);
    out << content;
    if (!out) throw ConfigError("failed writing " + path.string());
}

std::string kv_text(const KeyValues& kv)
{
    std::ostringstream out;
    write_key_values(out, kv);
    return out.str();
}

} // namespace

AnalysisReport run_analyze(const RunConfig& run)
{
    const ModelConfig model = load_model(resolve_config(run));
    AnalysisReport report = analyze(model.params, model.incidence, model.delays, model.permanence);
    const fs::path dir = prepare_out_dir(run.out_dir);
    write_file(dir / "report.txt", analysis_text(report));
    write_file(dir / "report.kv", kv_text(analysis_key_values(report)));
    return report;
}

SimulationResult simulate_model(const ModelConfig& model)
{
    SimulationResult res;
    res.analysis = analyze(model.params, model.incidence, model.delays, model.permanence);
    res.trajectory = simulate(model.params, model.incidence, model.delays, model.sim);
    res.checks = run_checks(res.trajectory, model.params, res.analysis, model.sim.dt, model.checks);
    std::optional<double> floor;
    if (res.analysis.permanence) floor = res.analysis.permanence->v2;
    res.outcome = classify_outcome(res.trajectory, model.checks.epsilon_extinct, floor,
                                   model.checks.tail_fraction);
    return res;
}

SimulationResult run_simulate(const RunConfig& run)
{
    const ModelConfig model = load_model(resolve_config(run));
    const fs::path dir = prepare_out_dir(run.out_dir);
    SimulationResult res = simulate_model(model);

    {
        auto out = open_output(dir / "trajectory.csv");
        write_trajectory_csv(out, res.trajectory);
    }
    write_file(dir / "checks.kv", kv_text(checks_key_values(res.checks)));

    KeyValues kv = analysis_key_values(res.analysis);
    kv.emplace_back("classification", to_string(res.outcome));
    kv.emplace_back("checks.all_pass", res.checks.all_pass() ? "true" : "false");
    kv.emplace_back("clamp_count", std::to_string(res.trajectory.clamp_count));
    write_file(dir / "report.kv", kv_text(kv));

    std::ostringstream text;
    text << analysis_text(res.analysis) << "\nSimulation\n"
         << "  dt " << format_number(model.sim.dt) << ", t_end " << format_number(model.sim.t_end)
         << ", " << res.trajectory.size() << " samples\n"
         << "  classification " << to_string(res.outcome) << "\n\nTheorem checks\n";
    for (const auto& c : res.checks.entries) {
        text << "  [" << (c.pass ? "pass" : "FAIL") << "] " << c.name << ": observed "
             << format_number(c.observed) << ", target " << format_number(c.target);
        if (c.tolerance != 0.0) text << ", tolerance " << format_number(c.tolerance);
        if (!c.detail.empty()) text << " (" << c.detail << ")";
        text << "\n";
    }
    write_file(dir / "report.txt", text.str());

    std::ostringstream events;
    for (const auto& e : res.trajectory.events) events << e << "\n";
    write_file(dir / "events.log", events.str());
    return res;
}

AxiomReport run_validate(const RunConfig& run)
{
    const IncidenceModel g = load_incidence(resolve_config(run));
    const auto grid = standard_grid();
    AxiomReport report = validate_incidence(g, grid);
    const fs::path dir = prepare_out_dir(run.out_dir);

    std::ostringstream text;
    text << "Incidence axioms for " << report.incidence << "\n";
    for (const auto& a : report.results) {
        text << "  " << a.axiom << " " << to_string(a.status) << ": " << a.detail << "\n";
    }
    text << "  G'(0) = " << format_number(report.derivative_at_zero) << "\n";
    write_file(dir / "report.txt", text.str());
    write_file(dir / "report.kv", kv_text(axioms_key_values(report)));
    return report;
}

std::vector<SweepRow> sweep_points(const KeyValueConfig& base, const SweepAxis& axis,
                                   unsigned threads)
{
    const std::vector<double> values = axis.values();
    std::vector<SweepRow> rows(values.size());

    auto evaluate = [&](std::size_t i) {
        SweepRow& row = rows[i];
        row.index = static_cast<int>(i);
        row.value = values[i];
        try {
            KeyValueConfig cfg = base;
            cfg.set(axis.key, format_number(values[i]));
            const ModelConfig model = load_model(cfg);
            row.report = analyze(model.params, model.incidence, model.delays, model.permanence);
        } catch (const std::exception& e) {
            row.report.reset();
            row.error = e.what();
        }
    };

    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, values.size()));
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < values.size(); i = next++) evaluate(i);
    };
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    return rows;
}

std::vector<SweepRow> run_sweep(const RunConfig& run)
{
    if (!run.sweep) throw ConfigError("sweep needs --sweep key:lo:hi:n");
    const KeyValueConfig base = resolve_config(run);
    const fs::path dir = prepare_out_dir(run.out_dir);
    std::vector<SweepRow> rows = sweep_points(base, *run.sweep);
    auto out = open_output(dir / "sweep.csv");
    write_sweep_csv(out, run.sweep->key, rows);
    return rows;
}

namespace {

void add_common(CLI::App* cmd, RunConfig& run, bool simulation_flags)
{
    cmd->add_option_function<std::string>(
           "--config", [&run](const std::string& p) { run.config_path = p; },
           "Configuration file (key = value lines)")
        ->check(CLI::ExistingFile);
    cmd->add_option("--set", run.overrides, "Override a configuration key (key=value)")
        ->take_all()
        ->allow_extra_args(false);
    cmd->add_option("--out", run.out_dir, "Output directory")->capture_default_str();
    if (simulation_flags) {
        cmd->add_option_function<double>(
            "--dt", [&run](double v) { run.dt = v; }, "Time step");
        cmd->add_option_function<double>(
            "--t-end", [&run](double v) { run.t_end = v; }, "Final time");
        cmd->add_option_function<int>(
            "--stride", [&run](int v) { run.stride = v; }, "Record every n-th step");
    }
}

} // namespace

int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Delayed SEIRS mosquito-human model: analysis, simulation and checks", "seirs"};
    app.require_subcommand(1);

    RunConfig run;
    std::string sweep_spec;
    auto* analyze_cmd = app.add_subcommand("analyze", "Threshold and equilibrium analysis");
    auto* simulate_cmd = app.add_subcommand("simulate", "Simulate and run the theorem checks");
    auto* validate_cmd = app.add_subcommand("validate", "Check the incidence axioms A1-A6");
    auto* sweep_cmd = app.add_subcommand("sweep", "Analysis over a range of one parameter");
    add_common(analyze_cmd, run, false);
    add_common(simulate_cmd, run, true);
    add_common(validate_cmd, run, false);
    add_common(sweep_cmd, run, false);
    sweep_cmd->add_option("--sweep", sweep_spec, "Axis as key:lo:hi:n")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }

    try {
        if (*analyze_cmd) {
            run.mode = Mode::Analyze;
            const AnalysisReport r = run_analyze(run);
            out << "regime " << to_string(r.regime) << ", r0_star " << format_number(r.r0_star)
                << "\n";
        } else if (*simulate_cmd) {
            run.mode = Mode::Simulate;
            const SimulationResult r = run_simulate(run);
            out << "classification " << to_string(r.outcome) << ", checks "
                << (r.checks.all_pass() ? "pass" : "have failures") << "\n";
        } else if (*validate_cmd) {
            run.mode = Mode::Validate;
            const AxiomReport r = run_validate(run);
            out << r.incidence << ": " << (r.all_pass() ? "all axioms pass" : "axiom failures")
                << "\n";
        } else {
            run.mode = Mode::Sweep;
            run.sweep = parse_sweep_axis(sweep_spec);
            const auto rows = run_sweep(run);
            const auto failed = std::count_if(rows.begin(), rows.end(),
                                              [](const SweepRow& r) { return !r.error.empty(); });
            out << rows.size() << " points, " << failed << " failed\n";
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

} // namespace seirs::cli
