#pragma once

#include "seirs/delay.hpp"

#include <string>
#include <vector>

namespace seirs {

/// Human and vector rates in physical units (per day, per human per day).
struct DimensionalParams {
    double birth_rate = 0.0;          // B^, humans/day
    double contact_rate = 0.0;        // beta^, effective contacts per vector per day
    double death_rate = 0.0;          // mu^, 1/day
    double disease_death_rate = 0.0;  // d^, 1/day
    double recovery_rate = 0.0;       // alpha^, 1/day
    double vector_turnover = 0.0;     // mu_v^, 1/day
    double vector_transmission = 0.0; // Lambda, 1/(human day)
    double vector_count = 0.0;        // V0
    DelaySet delays;                  // in days

    /// Throws ValidationError naming the first offending field.
    void validate() const;
};

/// Rate constants of the slow-timescale (dimensionless) system.
struct DimensionlessParams {
    double B = 0.0;
    double beta = 0.0;
    double mu = 0.0;
    double mu_v = 0.0;
    double d = 0.0;
    double alpha = 0.0;

    /// All rates strictly positive (beta and alpha may be zero for
    /// degenerate what-if runs when `allow_zero_transmission` is set).
    void validate(bool allow_zero_transmission = false) const;

    /// Disease-free susceptible level B/mu.
    double dfe_susceptible() const { return B / mu; }

    /// mu + d + alpha, the total exit rate from I.
    double infectious_exit_rate() const { return mu + d + alpha; }

    /// Warnings for invariants that hold for nondimensionalized sets but may
    /// be broken by hand-written ones (currently: B/mu != 1).
    std::vector<std::string> flags() const;
};

struct NondimensionalModel {
    DimensionlessParams params;
    DelaySet delays;
    double time_scale = 0.0; // (B^/mu^) * Lambda, multiplies physical time
};

/// Maps physical rates to the dimensionless system; delays are rescaled by
/// the same time factor.
NondimensionalModel nondimensionalize(const DimensionalParams& p);

} // namespace seirs
