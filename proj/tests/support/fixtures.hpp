#pragma once

#include "seirs/analysis.hpp"
#include "seirs/delay.hpp"
#include "seirs/incidence.hpp"
#include "seirs/params.hpp"

#include <cmath>
#include <random>

namespace fixtures {

inline constexpr double beta_extinction = 0.02146383;
inline constexpr double beta_persistence = 7.941616;

// Table 1 rates of the worked examples.
inline seirs::DimensionlessParams table1(double beta)
{
    seirs::DimensionlessParams p;
    p.B = 8.476678e-06;
    p.mu = 8.476678e-06;
    p.alpha = 0.08571429;
    p.d = 0.0001761252;
    p.mu_v = 42.85714;
    p.beta = beta;
    return p;
}

inline seirs::DelaySet table1_delays()
{
    return {seirs::DelaySpec::point_mass(0.105), seirs::DelaySpec::point_mass(0.175),
            seirs::DelaySpec::point_mass(2.129167)};
}

inline seirs::IncidenceModel table1_incidence() { return seirs::IncidenceModel::holling2(0.05); }

inline bool rel_close(double a, double b, double tol)
{
    return std::abs(a - b) <= tol * std::abs(b);
}

// Seeded source for the property tests.
class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<>(lo, hi)(rng_); }
    double log_uniform(double lo, double hi)
    {
        return std::exp(uniform(std::log(lo), std::log(hi)));
    }
    int integer(int lo, int hi) { return std::uniform_int_distribution<>(lo, hi)(rng_); }

    seirs::DimensionlessParams params()
    {
        seirs::DimensionlessParams p;
        p.mu = log_uniform(1e-6, 1e-2);
        p.B = p.mu;
        p.beta = log_uniform(1e-3, 1e2);
        p.mu_v = log_uniform(1.0, 1e2);
        p.d = log_uniform(1e-5, 1e-2);
        p.alpha = log_uniform(1e-3, 1.0);
        return p;
    }

    std::mt19937_64& engine() { return rng_; }

private:
    std::mt19937_64 rng_;
};

} // namespace fixtures
