#pragma once

#include "seirs/delay.hpp"
#include "seirs/incidence.hpp"
#include "seirs/params.hpp"
#include "seirs/state.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace seirs {

/// R0* = beta / (mu + d + alpha), the reproduction number for fixed delays.
double brn_constant_delays(const DimensionlessParams& p);

/// beta/(mu+d+alpha) + alpha/(mu+d+alpha). For random delays the
/// reproduction number is only known to be proportional to this value.
double brn_random_delays(const DimensionlessParams& p);

/// Expected survival probability of the parasite over its two-host cycle,
/// E(exp(-mu_v T1 - mu T2)), with T1 and T2 independent.
double espr(const DimensionlessParams& p, const DelaySpec& t1, const DelaySpec& t2);

/// Delay expectations that enter the equilibrium and permanence formulas.
struct SurvivalFactors {
    double vector_t1 = 1.0; // E(exp(-mu_v T1))
    double host_t1 = 1.0;   // E(exp(-mu T1))
    double host_t2 = 1.0;   // E(exp(-mu T2))
    double host_t3 = 1.0;   // E(exp(-mu T3))
    double espr = 1.0;      // E(exp(-mu_v T1 - mu T2))
};

SurvivalFactors survival_factors(const DimensionlessParams& p, const DelaySet& delays);

/// H(I): substituting the steady-state S from the I-equation into the
/// S-equation. Its positive root is I1*. Defined for I > 0; at I = 0 the
/// limit B - mu (mu+d+alpha) / (beta G'(0) espr) is returned.
double equilibrium_h(const DimensionlessParams& p, const IncidenceModel& g,
                     const SurvivalFactors& f, double infected);
double equilibrium_h_derivative(const DimensionlessParams& p, const IncidenceModel& g,
                                const SurvivalFactors& f, double infected);

/// Residuals of the four steady-state equations at `x`:
/// S-, E-, I- and R-equation, in that order.
std::array<double, 4> equilibrium_residuals(const DimensionlessParams& p, const IncidenceModel& g,
                                            const SurvivalFactors& f, const State& x);

struct EndemicEquilibrium {
    State state;
    double h_residual = 0.0;
    int iterations = 0;
};

/// Nonzero steady state, or nullopt when H(0) <= 0 (no positive root).
/// Throws NumericalError when the root cannot be bracketed from above or the
/// iteration does not converge.
std::optional<EndemicEquilibrium> endemic_equilibrium(const DimensionlessParams& p,
                                                      const IncidenceModel& g,
                                                      const DelaySet& delays);

/// True when the sufficient existence condition on the ESPR holds:
/// espr >= R0 / ((R0 - alpha/(mu+d+alpha)) G'(0)).
bool endemic_existence_condition(const DimensionlessParams& p, const IncidenceModel& g,
                                 double espr_value);

enum class Regime { ExtinctionByR0, ExtinctionBySurvival, EndemicCandidate, Indeterminate };

std::string to_string(Regime r);

struct ExtinctionResult {
    Regime regime = Regime::Indeterminate;
    std::optional<double> lambda; // exponential extinction rate, > 0
};

ExtinctionResult extinction_check(const DimensionlessParams& p, double espr_value);

/// v1 = B / (mu + beta G(B/mu)), the asymptotic floor for S.
double susceptible_floor(const DimensionlessParams& p, const IncidenceModel& g);

/// v2 = q I1* exp(-(mu+d+alpha)(rho+1) h), the asymptotic floor for I.
double infectious_floor(const DimensionlessParams& p, double i_star, double q, double rho,
                        double h);

/// Upper bound q_bar for the fraction q in the permanence lemma.
double permanence_q_bar(const DimensionlessParams& p, const IncidenceModel& g,
                        const SurvivalFactors& f, double i_star);

struct PermanenceBounds {
    double v1 = 0.0;
    double v2 = 0.0;
    double q_bar = 0.0;
    double q = 0.0;
    double rho = 0.0;
    double s_triangle = 0.0;
    double h = 0.0;
};

struct PermanenceChoice {
    std::optional<double> q;   // default q_bar/2 (or 1/2 if q_bar >= 1)
    std::optional<double> rho; // default: smallest 2^k with S_tri > S1* (1 + 1e-6)
};

/// Throws ValidationError when q is outside (0, q_bar) or S_tri <= S1*.
PermanenceBounds permanence_bounds(const DimensionlessParams& p, const IncidenceModel& g,
                                   const EndemicEquilibrium& eq, const DelaySet& delays,
                                   const PermanenceChoice& choice = {});

struct AnalysisReport {
    State dfe;
    double r0_star = 0.0;
    double r0_random = 0.0;
    double espr = 0.0;
    double inverse_r0_star = 0.0;
    double h_at_zero = 0.0;
    bool existence_condition = false;
    double v1 = 0.0;
    Regime regime = Regime::Indeterminate;
    std::optional<double> lambda;
    std::optional<EndemicEquilibrium> endemic;
    std::optional<PermanenceBounds> permanence;
    std::vector<std::string> notes;
};

/// Full threshold and equilibrium analysis for one parameter set.
AnalysisReport analyze(const DimensionlessParams& p, const IncidenceModel& g,
                       const DelaySet& delays, const PermanenceChoice& choice = {});

} // namespace seirs
