#pragma once

#include "seirs/analysis.hpp"
#include "seirs/params.hpp"
#include "seirs/simulator.hpp"
#include "seirs/state.hpp"

#include <optional>
#include <string>
#include <vector>

namespace seirs {

struct Window {
    double begin = 0.0;
    double end = 0.0;
};

/// Last `fraction` of the trajectory span.
Window tail_window(const Trajectory& traj, double fraction = 0.25);

struct LyapunovEstimate {
    std::vector<double> t;
    std::vector<double> value; // (1/t) log I(t)
    double tail = 0.0;         // value at the last sample inside the window
};

/// (1/t) log I(t) on the window. Requires t > 0 and I > 0 on the window;
/// throws NumericalError otherwise.
LyapunovEstimate lyapunov_estimate(const Trajectory& traj, Window window);

struct RunningMean {
    std::vector<double> t;
    std::vector<double> value; // (1/t) int_0^t x(s) ds
    double tail = 0.0;
};

/// Trapezoid running mean from t = 0, reported on the window.
RunningMean time_average(const Trajectory& traj, Component c, Window window);

struct TheoremCheck {
    std::string name;
    std::string theorem;
    double target = 0.0;
    double observed = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    Window window;
    std::string detail;
};

struct TheoremCheckReport {
    std::vector<TheoremCheck> entries;

    bool all_pass() const;
    const TheoremCheck* find(const std::string& name) const;
};

/// Non-negativity, N <= B/mu + 10 dt, and one-way entry into
/// N >= B/(mu+d) (up to 10 dt).
TheoremCheck verify_feasible_region(const Trajectory& traj, const DimensionlessParams& p,
                                    double sim_dt);

enum class Outcome { Extinct, WeaklyPermanentInMean, StronglyPermanentInMean, PermanentFloor,
                     Undetermined };

std::string to_string(Outcome o);

/// Classifies the tail of the trajectory. liminf/limsup are approximated
/// by min/max over the tail window.
Outcome classify_outcome(const Trajectory& traj, double epsilon_extinct,
                         std::optional<double> floor, double tail_fraction = 0.25);

struct CheckSettings {
    double epsilon_extinct = 1e-3;
    double lyapunov_margin = 0.02;
    double mean_band = 0.1;
    double tail_fraction = 0.25;
};

/// Runs every check that the analysis regime makes applicable.
TheoremCheckReport run_checks(const Trajectory& traj, const DimensionlessParams& p,
                              const AnalysisReport& analysis, double sim_dt,
                              const CheckSettings& settings = {});

/// Largest |a(t) - b(t)| over a's sample times, all four compartments,
/// with b linearly interpolated.
double sup_norm_difference(const Trajectory& a, const Trajectory& b);

} // namespace seirs
