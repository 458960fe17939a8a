#include "seirs/params.hpp"

#include "seirs/errors.hpp"

#include <cmath>
#include <sstream>

namespace seirs {

namespace {

void require_positive(const char* field, double v)
{
    if (!std::isfinite(v) || !(v > 0.0)) {
        std::ostringstream msg;
        msg << "must be finite and > 0 (got " << v << ")";
        throw ValidationError(field, msg.str());
    }
}

void require_non_negative(const char* field, double v)
{
    if (!std::isfinite(v) || v < 0.0) {
        std::ostringstream msg;
        msg << "must be finite and >= 0 (got " << v << ")";
        throw ValidationError(field, msg.str());
    }
}

} // namespace

void DimensionalParams::validate() const
{
    require_positive("Bhat", birth_rate);
    require_positive("betahat", contact_rate);
    require_positive("muhat", death_rate);
    require_positive("dhat", disease_death_rate);
    require_positive("alphahat", recovery_rate);
    require_positive("muvhat", vector_turnover);
    require_positive("Lambda", vector_transmission);
    if (!std::isfinite(vector_count) || vector_count < 1.0) {
        throw ValidationError("V0", "vector count must be >= 1");
    }
    if (!(vector_turnover > death_rate)) {
        throw ValidationError("muvhat", "vector turnover must exceed the human death rate");
    }
}

void DimensionlessParams::validate(bool allow_zero_transmission) const
{
    require_positive("B", B);
    require_positive("mu", mu);
    require_positive("mu_v", mu_v);
    require_positive("d", d);
    if (allow_zero_transmission) {
        require_non_negative("beta", beta);
        require_non_negative("alpha", alpha);
    } else {
        require_positive("beta", beta);
        require_positive("alpha", alpha);
    }
}

std::vector<std::string> DimensionlessParams::flags() const
{
    std::vector<std::string> out;
    const double ratio = B / mu;
    if (std::abs(ratio - 1.0) > 1e-9) {
        std::ostringstream msg;
        msg << "B/mu = " << ratio << " differs from 1; population fractions are not normalised";
        out.push_back(msg.str());
    }
    return out;
}

NondimensionalModel nondimensionalize(const DimensionalParams& p)
{
    p.validate();

    const double n0 = p.birth_rate / p.death_rate; // B^/mu^
    const double k = n0 * p.vector_transmission;   // (B^/mu^) Lambda

    NondimensionalModel m;
    m.time_scale = k;
    m.params.B = p.birth_rate / (n0 * k);
    m.params.beta = p.contact_rate * p.vector_count / p.vector_turnover;
    m.params.mu = p.death_rate / k;
    m.params.alpha = p.recovery_rate / k;
    m.params.mu_v = p.vector_turnover / k;
    m.params.d = p.disease_death_rate / k;

    m.delays = {p.delays.t1.scaled(k), p.delays.t2.scaled(k), p.delays.t3.scaled(k)};
    return m;
}

} // namespace seirs
