#include "seirs/analysis.hpp"

#include "seirs/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace seirs {

double brn_constant_delays(const DimensionlessParams& p)
{
    return p.beta / p.infectious_exit_rate();
}

double brn_random_delays(const DimensionlessParams& p)
{
    const double exit = p.infectious_exit_rate();
    return p.beta / exit + p.alpha / exit;
}

double espr(const DimensionlessParams& p, const DelaySpec& t1, const DelaySpec& t2)
{
    return survival_expectation(t1, p.mu_v) * survival_expectation(t2, p.mu);
}

SurvivalFactors survival_factors(const DimensionlessParams& p, const DelaySet& delays)
{
    SurvivalFactors f;
    f.vector_t1 = survival_expectation(delays.t1, p.mu_v);
    f.host_t1 = survival_expectation(delays.t1, p.mu);
    f.host_t2 = survival_expectation(delays.t2, p.mu);
    f.host_t3 = survival_expectation(delays.t3, p.mu);
    f.espr = f.vector_t1 * f.host_t2;
    return f;
}

namespace {

// (mu+d) E1v + alpha E1v (1 - E2 E3): the part of H that is linear in I.
double linear_coefficient(const DimensionlessParams& p, const SurvivalFactors& f)
{
    return (p.mu + p.d) * f.vector_t1 + p.alpha * f.vector_t1 * (1.0 - f.host_t2 * f.host_t3);
}

} // namespace

double equilibrium_h(const DimensionlessParams& p, const IncidenceModel& g,
                     const SurvivalFactors& f, double infected)
{
    const double exit = p.infectious_exit_rate();
    if (infected == 0.0) {
        return p.B - p.mu * exit / (p.beta * g.derivative_at_zero() * f.espr);
    }
    const double bracket = exit * p.mu / (p.beta * g(infected)) + linear_coefficient(p, f);
    return p.B - infected / f.espr * bracket;
}

double equilibrium_h_derivative(const DimensionlessParams& p, const IncidenceModel& g,
                                const SurvivalFactors& f, double infected)
{
    const double exit = p.infectious_exit_rate();
    const double lin = linear_coefficient(p, f) / f.espr;
    if (infected == 0.0) {
        // (G - I G') / G^2 -> -G''(0) / (2 G'(0)^2) as I -> 0
        const double g1 = g.derivative_at_zero();
        const double limit = -g.second_derivative(0.0) / (2.0 * g1 * g1);
        return -exit * p.mu / (p.beta * f.espr) * limit - lin;
    }
    const double gi = g(infected);
    const double concavity = (gi - infected * g.derivative(infected)) / (gi * gi);
    return -exit * p.mu / (p.beta * f.espr) * concavity - lin;
}

std::array<double, 4> equilibrium_residuals(const DimensionlessParams& p, const IncidenceModel& g,
                                            const SurvivalFactors& f, const State& x)
{
    const double force = p.beta * x.S * g(x.I);
    return {
        p.B - f.vector_t1 * force - p.mu * x.S + p.alpha * f.host_t3 * x.I,
        f.vector_t1 * force - p.mu * x.E - f.espr * force,
        f.espr * force - p.infectious_exit_rate() * x.I,
        p.alpha * x.I - p.mu * x.R - p.alpha * f.host_t3 * x.I,
    };
}

std::optional<EndemicEquilibrium> endemic_equilibrium(const DimensionlessParams& p,
                                                      const IncidenceModel& g,
                                                      const DelaySet& delays)
{
    if (!(p.beta > 0.0)) return std::nullopt;

    const SurvivalFactors f = survival_factors(p, delays);
    auto h = [&](double i) { return equilibrium_h(p, g, f, i); };

    double lo = 1e-14;
    double hi = p.dfe_susceptible();
    if (!(h(0.0) > 0.0) || !(h(lo) > 0.0)) return std::nullopt;

    int widen = 0;
    while (!(h(hi) < 0.0)) {
        if (++widen > 60 || !std::isfinite(hi)) {
            throw NumericalError("equilibrium: H stays positive up to I=" + std::to_string(hi));
        }
        hi *= 2.0;
    }

    constexpr int max_iterations = 400;
    int it = 0;
    while (hi - lo > 1e-14) {
        if (++it > max_iterations) {
            std::ostringstream msg;
            msg << "equilibrium bisection did not converge, residual " << h(0.5 * (lo + hi));
            throw NumericalError(msg.str());
        }
        const double mid = 0.5 * (lo + hi);
        if (h(mid) > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }

    double root = 0.5 * (lo + hi);
    for (int k = 0; k < 5; ++k) {
        const double dh = equilibrium_h_derivative(p, g, f, root);
        if (!(dh < 0.0) || !std::isfinite(dh)) break;
        const double next = root - h(root) / dh;
        if (!(next > 0.0) || !std::isfinite(next)) break;
        if (std::abs(h(next)) > std::abs(h(root))) break;
        root = next;
        ++it;
    }

    const double gi = g(root);
    EndemicEquilibrium eq;
    eq.state.I = root;
    eq.state.S = p.infectious_exit_rate() * root / (p.beta * f.espr * gi);
    eq.state.E = p.beta * eq.state.S * gi * (f.vector_t1 - f.espr) / p.mu;
    eq.state.R = p.alpha * root * (1.0 - f.host_t3) / p.mu;
    eq.h_residual = h(root);
    eq.iterations = it;
    return eq;
}

bool endemic_existence_condition(const DimensionlessParams& p, const IncidenceModel& g,
                                 double espr_value)
{
    const double r0 = brn_random_delays(p);
    const double shifted = r0 - p.alpha / p.infectious_exit_rate();
    const double threshold = r0 / (shifted * g.derivative_at_zero());
    return r0 > 1.0 && espr_value >= threshold;
}

std::string to_string(Regime r)
{
    switch (r) {
    case Regime::ExtinctionByR0: return "ExtinctionByR0";
    case Regime::ExtinctionBySurvival: return "ExtinctionBySurvival";
    case Regime::EndemicCandidate: return "EndemicCandidate";
    case Regime::Indeterminate: return "Indeterminate";
    }
    return "Indeterminate";
}

ExtinctionResult extinction_check(const DimensionlessParams& p, double espr_value)
{
    if (!(espr_value > 0.0) || espr_value > 1.0) {
        throw ValidationError("espr", "must lie in (0, 1]");
    }
    const double r0 = brn_constant_delays(p);
    if (!std::isfinite(r0)) return {};
    if (r0 < 1.0) {
        return {Regime::ExtinctionByR0, (1.0 - r0) * p.infectious_exit_rate()};
    }
    if (espr_value < 1.0 / r0) {
        return {Regime::ExtinctionBySurvival,
                p.beta * p.dfe_susceptible() * (1.0 / r0 - espr_value)};
    }
    return {Regime::EndemicCandidate, std::nullopt};
}

double susceptible_floor(const DimensionlessParams& p, const IncidenceModel& g)
{
    return p.B / (p.mu + p.beta * g(p.dfe_susceptible()));
}

double infectious_floor(const DimensionlessParams& p, double i_star, double q, double rho,
                        double h)
{
    return q * i_star * std::exp(-p.infectious_exit_rate() * (rho + 1.0) * h);
}

double permanence_q_bar(const DimensionlessParams& p, const IncidenceModel& g,
                        const SurvivalFactors& f, double i_star)
{
    const double num =
        p.B * p.beta * f.host_t1 * g(i_star) - p.mu * p.alpha * f.host_t3 * i_star;
    const double den = (p.B + p.alpha * f.host_t3 * i_star) * p.beta * i_star;
    return num / den;
}

namespace {

double s_triangle(const DimensionlessParams& p, const IncidenceModel& g, double q, double i_star,
                  double rho, double h)
{
    const double k = p.mu + p.beta * g(q * i_star);
    return p.B / k * (1.0 - std::exp(-k * rho * h));
}

} // namespace

PermanenceBounds permanence_bounds(const DimensionlessParams& p, const IncidenceModel& g,
                                   const EndemicEquilibrium& eq, const DelaySet& delays,
                                   const PermanenceChoice& choice)
{
    const SurvivalFactors f = survival_factors(p, delays);
    const double i_star = eq.state.I;
    const double s_star = eq.state.S;

    PermanenceBounds b;
    b.h = delays.t1.hi() + delays.t2.hi();
    b.q_bar = permanence_q_bar(p, g, f, i_star);
    b.v1 = susceptible_floor(p, g);

    if (!(b.q_bar > 0.0)) {
        std::ostringstream msg;
        msg << "q_bar = " << b.q_bar << " leaves no admissible fraction q";
        throw ValidationError("q", msg.str());
    }
    const double q_cap = std::min(b.q_bar, 1.0);
    b.q = choice.q.value_or(0.5 * q_cap);
    if (!(b.q > 0.0) || !(b.q < q_cap)) {
        std::ostringstream msg;
        msg << "q = " << b.q << " must lie in (0, " << q_cap << ")";
        throw ValidationError("q", msg.str());
    }

    if (choice.rho) {
        b.rho = *choice.rho;
        if (!(b.rho > 0.0)) throw ValidationError("rho", "must be > 0");
        b.s_triangle = s_triangle(p, g, b.q, i_star, b.rho, b.h);
        if (!(b.s_triangle > s_star)) {
            std::ostringstream msg;
            msg << "S_tri = " << b.s_triangle << " does not exceed S1* = " << s_star
                << "; choose a larger rho";
            throw ValidationError("rho", msg.str());
        }
    } else {
        bool found = false;
        for (int k = 0; k <= 60 && !found; ++k) {
            b.rho = std::ldexp(1.0, k);
            b.s_triangle = s_triangle(p, g, b.q, i_star, b.rho, b.h);
            found = b.s_triangle > s_star * (1.0 + 1e-6);
        }
        if (!found) {
            std::ostringstream msg;
            msg << "no rho <= 2^60 gives S_tri > S1* = " << s_star
                << " (S_tri saturates at B/k)";
            throw ValidationError("rho", msg.str());
        }
    }
    b.v2 = infectious_floor(p, i_star, b.q, b.rho, b.h);
    return b;
}

AnalysisReport analyze(const DimensionlessParams& p, const IncidenceModel& g,
                       const DelaySet& delays, const PermanenceChoice& choice)
{
    p.validate(true);

    AnalysisReport r;
    r.notes = p.flags();
    r.dfe = {p.dfe_susceptible(), 0.0, 0.0, 0.0};
    r.r0_star = brn_constant_delays(p);
    r.r0_random = brn_random_delays(p);
    r.espr = espr(p, delays.t1, delays.t2);
    r.inverse_r0_star = r.r0_star > 0.0 ? 1.0 / r.r0_star : INFINITY;
    r.v1 = susceptible_floor(p, g);

    const SurvivalFactors f = survival_factors(p, delays);
    r.h_at_zero = p.beta > 0.0 ? equilibrium_h(p, g, f, 0.0) : -INFINITY;
    r.existence_condition = endemic_existence_condition(p, g, r.espr);

    const ExtinctionResult ext = extinction_check(p, r.espr);
    r.regime = ext.regime;
    r.lambda = ext.lambda;

    r.endemic = endemic_equilibrium(p, g, delays);
    if (!r.endemic) {
        if (r.regime == Regime::EndemicCandidate) {
            r.notes.push_back("H(0) <= 0: no positive root of H, endemic equilibrium absent");
        }
        return r;
    }
    if (!r.existence_condition) {
        r.notes.push_back(
            "endemic equilibrium found although the sufficient ESPR existence condition fails");
    }
    try {
        r.permanence = permanence_bounds(p, g, *r.endemic, delays, choice);
    } catch (const ValidationError& e) {
        r.notes.push_back(std::string("permanence bounds unavailable: ") + e.what());
    }
    return r;
}

} // namespace seirs
