#pragma once

#include "seirs/delay.hpp"
#include "seirs/history.hpp"
#include "seirs/incidence.hpp"
#include "seirs/params.hpp"
#include "seirs/state.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace seirs {

/// Distributed-delay incidence at time t:
/// sum over T1 nodes of w * exp(-mu_v s) * G(I(t - s)).
double kernel_single(const HistoryBuffer& history, const DelaySpec& t1, const IncidenceModel& g,
                     double mu_v, double t);

/// Tensor-product rule for
/// int int f2(u) f1(s) exp(-mu_v s - mu u) S(t - u) G(I(t - s - u)) ds du.
double kernel_double(const HistoryBuffer& history, const DelaySpec& t1, const DelaySpec& t2,
                     const IncidenceModel& g, double mu_v, double mu, double t);

/// Immunity-loss term int f3(r) exp(-mu r) I(t - r) dr.
double kernel_immunity(const HistoryBuffer& history, const DelaySpec& t3, double mu, double t);

struct Derivatives {
    double dS = 0.0;
    double dE = 0.0;
    double dI = 0.0;
    double dR = 0.0;

    double dN() const { return dS + dE + dI + dR; }
};

/// Right-hand side of the four-compartment system given the three delay
/// integrals k1 (vector incidence), k2 (incubated incidence), k3 (immunity).
Derivatives model_rhs(const DimensionlessParams& p, const State& x, double k1, double k2,
                      double k3);

enum class NegativityPolicy { Error, ClampWithWarning };

struct SimulationConfig {
    double dt = 1e-3;
    double t_end = 1000.0;
    int record_stride = 1;
    NegativityPolicy negativity = NegativityPolicy::Error;
    /// Constant initial fractions on [-T_max, 0] unless `history` is set.
    State initial{10.0 / 23.0, 5.0 / 23.0, 6.0 / 23.0, 2.0 / 23.0};
    std::function<State(double)> history;

    void validate() const;
};

struct Trajectory {
    double dt = 0.0;          // spacing of the recorded samples
    std::vector<double> t;
    std::vector<double> S, E, I, R, N;
    std::vector<std::string> events;
    long clamp_count = 0;

    std::size_t size() const { return t.size(); }
    State state(std::size_t k) const { return {S[k], E[k], I[k], R[k]}; }
    const std::vector<double>& series(Component c) const;
};

/// Explicit Euler integration of the delay system from t = 0 to t_end.
/// Aborts with SimulationError on non-finite values, or on negative values
/// under NegativityPolicy::Error.
Trajectory simulate(const DimensionlessParams& p, const IncidenceModel& g, const DelaySet& delays,
                    const SimulationConfig& cfg);

/// Above this many T1 x T2 node pairs the incubated-incidence term is
/// computed from the cached single kernel instead of the tensor rule.
inline constexpr int tensor_kernel_limit = 256;

} // namespace seirs
