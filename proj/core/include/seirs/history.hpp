#pragma once

#include "seirs/delay.hpp"
#include "seirs/state.hpp"

#include <functional>
#include <vector>

namespace seirs {

/// Uniformly sampled (S, E, I, R) on [t_begin, t_current], growing forward
/// one step at a time. Values between grid points are linearly
/// interpolated.
class HistoryBuffer {
public:
    HistoryBuffer(double dt, double t_begin);

    /// Tabulate `phi` on t_begin, t_begin + dt, ... up to and including t_end.
    static HistoryBuffer tabulate(double dt, double t_begin, double t_end,
                                  const std::function<State(double)>& phi);

    double dt() const noexcept { return dt_; }
    double start_time() const noexcept { return t_begin_; }
    double current_time() const noexcept { return time_at(size() - 1); }
    long size() const noexcept { return static_cast<long>(s_.size()); }
    double time_at(long index) const noexcept { return t_begin_ + static_cast<double>(index) * dt_; }

    void push(const State& x);
    void reserve(long n);

    State at(long index) const { return {s_[index], e_[index], i_[index], r_[index]}; }

    /// Component value at time t. Throws ConfigError when t lies
    /// outside the buffer, naming the horizon that would be required.
    double sample(Component c, double t) const;
    State sample(double t) const;

    const std::vector<double>& series(Component c) const;

private:
    double dt_;
    double t_begin_;
    std::vector<double> s_, e_, i_, r_;
};

/// Constant history on [-T_max, 0] where T_max = max(h1 + h2, h3) plus a
/// few guard steps. Fractions must be positive with sum <= 1.
HistoryBuffer init_history_constant(const State& fractions, const DelaySet& delays, double dt);

/// General history phi(t), t in [-T_max, 0]. Values must be non-negative
/// and phi_S(0) > 0; zero compartments are allowed so that disease-free
/// histories can be expressed.
HistoryBuffer init_history(const std::function<State(double)>& phi, const DelaySet& delays,
                           double dt);

/// Number of grid steps kept before t = 0 for the given delays.
long history_steps(const DelaySet& delays, double dt);

} // namespace seirs
