// Acceptance suite: one PASS/FAIL line per criterion.
//
// Usage: seirs_acceptance [criterion...]   (default: all)
// Exit status is nonzero when any selected criterion fails.

#include "seirs/analysis.hpp"
#include "seirs/diagnostics.hpp"
#include "seirs/incidence.hpp"
#include "seirs/params.hpp"
#include "seirs/simulator.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace seirs;

namespace {

// Tolerances, all pinned here.
constexpr double tol_r0_low = 1e-6;       // relative
constexpr double tol_r0_high = 1e-5;      // relative
constexpr double tol_lambda = 1e-6;       // relative
constexpr double tol_espr = 1e-6;         // relative
constexpr double tol_inv_r0 = 1e-5;       // relative
constexpr double tol_equilibrium = 1e-5;  // relative, per component
constexpr double tol_residual = 1e-10;    // absolute
constexpr double tol_v1 = 1e-6;           // relative
constexpr double tol_v2 = 1e-9;           // relative
constexpr double tol_printed_exponent = 5e-9; // half a unit in the last printed digit
constexpr double extinct_level = 1e-3;
constexpr double mean_lo = 0.9;
constexpr double mean_hi = 1.0;
constexpr double lyapunov_margin = 0.02;
constexpr double halving_tol = 1e-3;
constexpr double n_identity_tol = 1e-12;
constexpr double runtime_extinction_s = 60.0;
constexpr double runtime_persistence_s = 120.0;
constexpr double runtime_equilibrium_s = 1.0;

constexpr double beta_low = 0.02146383;
constexpr double beta_high = 7.941616;

DimensionlessParams table1(double beta)
{
    DimensionlessParams p;
    p.B = 8.476678e-06;
    p.mu = 8.476678e-06;
    p.alpha = 0.08571429;
    p.d = 0.0001761252;
    p.mu_v = 42.85714;
    p.beta = beta;
    return p;
}

DelaySet table1_delays()
{
    return {DelaySpec::point_mass(0.105), DelaySpec::point_mass(0.175),
            DelaySpec::point_mass(2.129167)};
}

const IncidenceModel g_table1 = IncidenceModel::holling2(0.05);

double rel_err(double a, double b) { return std::abs(a - b) / std::abs(b); }

double seconds_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct Result {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what)
    {
        if (!ok) pass = false;
        if (detail.tellp() > 0) detail << "; ";
        detail << (ok ? "" : "FAILED ") << what;
    }
};

std::string fmt(double x)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", x);
    return buf;
}

Result criterion_1()
{
    Result r;
    const double low = brn_constant_delays(table1(beta_low));
    const double high = brn_constant_delays(table1(beta_high));
    r.require(rel_err(low, 0.2498732) <= tol_r0_low,
              "r0_star(beta=0.02146383)=" + fmt(low) + " vs 0.2498732 rel<=1e-6");
    r.require(rel_err(high, 92.45307) <= tol_r0_high,
              "r0_star(beta=7.941616)=" + fmt(high) + " vs 92.45307 rel<=1e-5");
    return r;
}

Result criterion_2()
{
    Result r;
    const auto p = table1(beta_low);
    const DelaySet d = table1_delays();
    const ExtinctionResult e = extinction_check(p, espr(p, d.t1, d.t2));
    const bool has = e.lambda.has_value();
    r.require(e.regime == Regime::ExtinctionByR0, "regime=" + to_string(e.regime));
    r.require(has && rel_err(*e.lambda, 0.06443506) <= tol_lambda,
              "lambda=" + (has ? fmt(*e.lambda) : std::string("none")) +
                  " vs 0.06443506 rel<=1e-6");
    return r;
}

Result criterion_3()
{
    Result r;
    const auto p = table1(beta_high);
    const double e = espr(p, DelaySpec::point_mass(0.105), DelaySpec::point_mass(0.175));
    const double inv = 1.0 / brn_constant_delays(p);
    r.require(rel_err(e, 0.01110898) <= tol_espr, "espr=" + fmt(e) + " vs 0.01110898 rel<=1e-6");
    r.require(rel_err(inv, 0.0108163) <= tol_inv_r0,
              "1/r0_star=" + fmt(inv) + " vs 0.0108163 rel<=1e-5");
    return r;
}

Result criterion_4()
{
    Result r;
    const auto p = table1(beta_high);
    const DelaySet d = table1_delays();
    const auto t0 = std::chrono::steady_clock::now();
    const auto eq = endemic_equilibrium(p, g_table1, d);
    const double elapsed = seconds_since(t0);
    const SurvivalFactors f = survival_factors(p, d);
    if (!eq) {
        r.require(false, "no endemic root: H(0)=" + fmt(equilibrium_h(p, g_table1, f, 0.0)) +
                             " <= 0, so (6.281296e-06, 0.0006840553, 0.04550565) is not reached");
        const State paper{6.281296e-06, 0.0006840553, 0.04550565, 0.0};
        const auto res = equilibrium_residuals(p, g_table1, f, paper);
        r.require(false, "residuals of the reference point: S " + fmt(res[0]) + ", E " +
                             fmt(res[1]) + ", I " + fmt(res[2]));
    } else {
        const State& x = eq->state;
        r.require(rel_err(x.S, 6.281296e-06) <= tol_equilibrium, "S1*=" + fmt(x.S));
        r.require(rel_err(x.E, 0.0006840553) <= tol_equilibrium, "E1*=" + fmt(x.E));
        r.require(rel_err(x.I, 0.04550565) <= tol_equilibrium, "I1*=" + fmt(x.I));
        double worst = 0.0;
        for (double v : equilibrium_residuals(p, g_table1, f, x)) worst = std::max(worst, std::abs(v));
        r.require(worst < tol_residual, "max residual=" + fmt(worst) + " < 1e-10");
    }
    r.require(elapsed < runtime_equilibrium_s, "runtime " + fmt(elapsed) + " s < 1 s");
    return r;
}

Result criterion_5()
{
    Result r;
    const auto p = table1(beta_high);
    const double v1 = susceptible_floor(p, g_table1);
    r.require(rel_err(v1, 4.269316e-05) <= tol_v1, "v1=" + fmt(v1) + " vs 4.269316e-05 rel<=1e-6");

    const double h = 0.105 + 0.175;
    const double exponent = p.infectious_exit_rate() * h;
    r.require(std::abs(exponent - 0.02405169) <= tol_printed_exponent,
              "(mu+d+alpha)h=" + fmt(exponent) + " vs printed 0.02405169");

    const double i_star = 0.04550565;
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<> uq(1e-3, 1.0);
    std::uniform_real_distribution<> urho(0.0, 10.0);
    double worst = 0.0;
    for (int k = 0; k < 1000; ++k) {
        const double q = uq(rng);
        const double rho = urho(rng);
        const double v2 = infectious_floor(p, i_star, q, rho, h);
        const double symbolic = i_star * q * std::exp(-exponent * (1.0 + rho));
        worst = std::max(worst, rel_err(v2, symbolic));
    }
    r.require(worst <= tol_v2, "v2 vs 0.04550565 q exp(-0.02405169(1+rho)) over 1000 (q,rho): "
                               "max rel " + fmt(worst) + " <= 1e-9");
    return r;
}

Trajectory run_scenario(double beta, double dt, int stride)
{
    SimulationConfig cfg;
    cfg.dt = dt;
    cfg.t_end = 1000.0;
    cfg.record_stride = stride;
    return simulate(table1(beta), g_table1, table1_delays(), cfg);
}

Result criterion_6()
{
    Result r;
    const auto p = table1(beta_low);
    const auto t0 = std::chrono::steady_clock::now();
    const Trajectory tr = run_scenario(beta_low, 1e-3, 1);
    const double elapsed = seconds_since(t0);
    const AnalysisReport a = analyze(p, g_table1, table1_delays());

    r.require(tr.I.back() < extinct_level, "I(1000)=" + fmt(tr.I.back()) + " < 1e-3");
    const double mean = time_average(tr, Component::S, {0.0, 1000.0}).tail;
    r.require(mean >= mean_lo && mean <= mean_hi,
              "S running average=" + fmt(mean) + " in [0.9, 1]");
    const double tail = lyapunov_estimate(tr, {1000.0, 1000.0}).tail;
    r.require(a.lambda && tail <= -*a.lambda + lyapunov_margin,
              "Lyapunov tail=" + fmt(tail) + " <= -lambda+0.02=" +
                  fmt(a.lambda ? -*a.lambda + lyapunov_margin : NAN));
    const TheoremCheck region = verify_feasible_region(tr, p, 1e-3);
    r.require(region.pass, "feasible region (" + region.detail + ")");
    r.require(elapsed < runtime_extinction_s, "runtime " + fmt(elapsed) + " s < 60 s");
    return r;
}

Result criterion_7()
{
    Result r;
    const auto p = table1(beta_high);
    const auto t0 = std::chrono::steady_clock::now();
    const Trajectory tr = run_scenario(beta_high, 1e-3, 10);
    const Trajectory half = run_scenario(beta_high, 5e-4, 20);
    const double elapsed = seconds_since(t0);
    const AnalysisReport a = analyze(p, g_table1, table1_delays());

    const Window tail = tail_window(tr);
    double min_i = INFINITY;
    for (std::size_t k = 0; k < tr.size(); ++k) {
        if (tr.t[k] >= tail.begin) min_i = std::min(min_i, tr.I[k]);
    }
    if (a.permanence) {
        r.require(min_i >= a.permanence->v2,
                  "min tail I=" + fmt(min_i) + " >= v2=" + fmt(a.permanence->v2));
    } else {
        r.require(false, "v2 unavailable (no endemic equilibrium, H(0)=" + fmt(a.h_at_zero) +
                             "); min tail I=" + fmt(min_i));
    }
    const std::optional<double> floor =
        a.permanence ? std::optional<double>(a.permanence->v2) : std::nullopt;
    const Outcome o = classify_outcome(tr, extinct_level, floor);
    r.require(o == Outcome::PermanentFloor, "classification=" + to_string(o));
    const double diff = sup_norm_difference(tr, half);
    r.require(diff <= halving_tol, "dt-halved sup-norm=" + fmt(diff) + " <= 1e-3");
    r.require(elapsed < runtime_persistence_s, "runtime " + fmt(elapsed) + " s < 120 s");
    return r;
}

Result criterion_8()
{
    Result r;
    const auto p = table1(0.0);
    SimulationConfig cfg;
    cfg.dt = 1e-3;
    cfg.t_end = 100.0;
    const Trajectory tr = simulate(p, g_table1, table1_delays(), cfg);
    const double rate = p.infectious_exit_rate();
    double worst = 0.0;
    for (std::size_t k = 0; k < tr.size(); ++k) {
        const double exact = cfg.initial.I * std::exp(-rate * tr.t[k]);
        worst = std::max(worst, std::abs(tr.I[k] - exact) / exact);
    }
    const double bound = 5.0 * cfg.dt * rate * cfg.t_end;
    r.require(worst < bound, "max rel error=" + fmt(worst) + " < " + fmt(bound));
    return r;
}

Result criterion_9()
{
    Result r;
    const auto grid = standard_grid();
    for (const IncidenceModel& g :
         {IncidenceModel::holling2(0.05), IncidenceModel::saturating(0.5),
          IncidenceModel::saturating(1.0), IncidenceModel::saturating(5.0)}) {
        r.require(validate_incidence(g, grid).all_pass(), "A1-A6 " + g.name());
    }

    bool monotone = true;
    for (double beta : {beta_low, beta_high}) {
        const auto p = table1(beta);
        const SurvivalFactors f = survival_factors(p, table1_delays());
        double prev = equilibrium_h(p, g_table1, f, 0.0);
        for (int k = 1; k <= 1000; ++k) {
            const double h = equilibrium_h(p, g_table1, f, p.dfe_susceptible() * k / 1000.0);
            monotone = monotone && h < prev;
            prev = h;
        }
    }
    r.require(monotone, "H strictly decreasing on 1000-point grids");

    bool normalised = true;
    for (int nodes : {2, 17, 257, 1025}) {
        DensityShape s;
        s.family = DensityFamily::Gamma;
        s.shape = 2.0;
        s.scale = 0.3;
        const DelaySpec d = DelaySpec::from_shape(s, 0.0, INFINITY, nodes);
        const double total = std::accumulate(d.weights().begin(), d.weights().end(), 0.0);
        normalised = normalised && std::abs(total - 1.0) < 1e-12;
    }
    r.require(normalised, "delay weights sum to 1");

    const double exact = (1.0 - std::exp(-42.85714 * 0.21)) / (42.85714 * 0.21);
    const auto err = [&](int n) {
        const DelaySpec d = DelaySpec::from_shape({DensityFamily::Uniform}, 0.0, 0.21, n);
        return std::abs(survival_expectation(d, 42.85714) - exact);
    };
    const double ratio = err(129) / err(257);
    r.require(std::abs(ratio - 4.0) < 0.2, "trapezoid convergence ratio=" + fmt(ratio));

    SimulationConfig cfg;
    cfg.t_end = 50.0;
    const auto p = table1(beta_high);
    const Trajectory tr = simulate(p, g_table1, table1_delays(), cfg);
    double worst = 0.0;
    for (std::size_t k = 0; k + 1 < tr.size(); ++k) {
        const double expected = cfg.dt * (p.B - p.mu * tr.N[k] - p.d * tr.I[k]);
        worst = std::max(worst, std::abs(tr.N[k + 1] - tr.N[k] - expected));
    }
    r.require(worst <= n_identity_tol, "N identity max per-step error=" + fmt(worst));
    return r;
}

struct Criterion {
    int id;
    const char* title;
    std::function<Result()> run;
};

} // namespace

int main(int argc, char** argv)
{
    const std::vector<Criterion> all{
        {1, "R0* reproduction", criterion_1},
        {2, "extinction rate", criterion_2},
        {3, "survival probability", criterion_3},
        {4, "endemic equilibrium", criterion_4},
        {5, "permanence bounds", criterion_5},
        {6, "extinction simulation", criterion_6},
        {7, "persistence simulation", criterion_7},
        {8, "analytic decay", criterion_8},
        {9, "invariant suites", criterion_9},
    };

    std::vector<int> selected;
    for (int i = 1; i < argc; ++i) selected.push_back(std::atoi(argv[i]));
    if (selected.empty()) {
        for (const auto& c : all) selected.push_back(c.id);
    }

    int failures = 0;
    for (int id : selected) {
        const Criterion* c = nullptr;
        for (const auto& x : all) {
            if (x.id == id) c = &x;
        }
        if (!c) {
            std::printf("criterion %d: unknown\n", id);
            ++failures;
            continue;
        }
        Result r;
        try {
            r = c->run();
        } catch (const std::exception& e) {
            r.require(false, std::string("exception: ") + e.what());
        }
        std::printf("criterion %d %s: %s | %s\n", c->id, r.pass ? "PASS" : "FAIL", c->title,
                    r.detail.str().c_str());
        std::fflush(stdout);
        if (!r.pass) ++failures;
    }
    return failures == 0 ? 0 : 1;
}
