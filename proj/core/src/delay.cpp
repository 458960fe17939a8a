#include "seirs/delay.hpp"

#include "seirs/errors.hpp"

#include <boost/math/distributions/gamma.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace seirs {

std::string to_string(DensityFamily f)
{
    switch (f) {
    case DensityFamily::Custom: return "custom";
    case DensityFamily::Uniform: return "uniform";
    case DensityFamily::Exponential: return "exponential";
    case DensityFamily::Gamma: return "gamma";
    case DensityFamily::Triangular: return "triangular";
    }
    return "custom";
}

DensityFamily density_family_from_string(const std::string& name)
{
    if (name == "uniform") return DensityFamily::Uniform;
    if (name == "exponential") return DensityFamily::Exponential;
    if (name == "gamma") return DensityFamily::Gamma;
    if (name == "triangular") return DensityFamily::Triangular;
    throw ValidationError("density", "unknown density family '" + name + "'");
}

DelaySpec DelaySpec::point_mass(double value)
{
    if (!std::isfinite(value) || value < 0.0) {
        throw ValidationError("delay.value", "point-mass delay must be finite and >= 0");
    }
    DelaySpec d;
    d.point_ = true;
    d.lo_ = d.hi_ = value;
    d.nodes_ = {value};
    d.weights_ = {1.0};
    return d;
}

DelaySpec DelaySpec::density(std::function<double(double)> pdf, double lo, double hi, int nodes)
{
    if (!std::isfinite(lo) || lo < 0.0) {
        throw ValidationError("delay.lo", "support must start at a finite value >= 0");
    }
    if (!std::isfinite(hi) || !(hi > lo)) {
        throw ValidationError("delay.hi", "support must satisfy hi > lo and be finite");
    }
    if (nodes < 2) {
        throw ValidationError("delay.nodes", "density quadrature needs at least 2 nodes");
    }

    DelaySpec d;
    d.point_ = false;
    d.lo_ = lo;
    d.hi_ = hi;
    d.nodes_.resize(static_cast<std::size_t>(nodes));
    d.weights_.resize(static_cast<std::size_t>(nodes));

    const double h = (hi - lo) / (nodes - 1);
    double total = 0.0;
    for (int i = 0; i < nodes; ++i) {
        const double s = (i == nodes - 1) ? hi : lo + i * h;
        const double f = pdf(s);
        if (!std::isfinite(f) || f < 0.0) {
            std::ostringstream msg;
            msg << "density is negative or non-finite at s=" << s;
            throw NumericalError(msg.str());
        }
        const double w = (i == 0 || i == nodes - 1) ? 0.5 * h * f : h * f;
        d.nodes_[i] = s;
        d.weights_[i] = w;
        total += w;
    }
    if (!(total > 0.0)) {
        throw ValidationError("delay.density", "density has zero mass on the support");
    }
    for (double& w : d.weights_) w /= total;
    return d;
}

namespace {

double upper_quantile(const DensityShape& s, double tail)
{
    switch (s.family) {
    case DensityFamily::Exponential:
        return -std::log(tail) / s.rate;
    case DensityFamily::Gamma: {
        boost::math::gamma_distribution<double> g(s.shape, s.scale);
        return boost::math::quantile(boost::math::complement(g, tail));
    }
    default:
        return std::numeric_limits<double>::quiet_NaN();
    }
}

} // namespace

DelaySpec DelaySpec::from_shape(const DensityShape& shape, double lo, double hi, int nodes)
{
    DensityShape s = shape;
    std::function<double(double)> pdf;

    switch (s.family) {
    case DensityFamily::Uniform:
        if (!std::isfinite(hi)) {
            throw ValidationError("delay.hi", "uniform density needs a finite upper bound");
        }
        pdf = [](double) { return 1.0; };
        break;
    case DensityFamily::Exponential:
        if (!(s.rate > 0.0)) throw ValidationError("delay.rate", "must be > 0");
        pdf = [lo, rate = s.rate](double x) { return rate * std::exp(-rate * (x - lo)); };
        break;
    case DensityFamily::Gamma: {
        if (!(s.shape > 0.0)) throw ValidationError("delay.shape", "must be > 0");
        if (!(s.scale > 0.0)) throw ValidationError("delay.scale", "must be > 0");
        boost::math::gamma_distribution<double> g(s.shape, s.scale);
        pdf = [g, lo](double x) {
            const double y = x - lo;
            if (y <= 0.0) {
                // singular at 0 for shape < 1: the endpoint node gets no weight
                return g.shape() > 1.0 ? 0.0 : (g.shape() == 1.0 ? 1.0 / g.scale() : 0.0);
            }
            return boost::math::pdf(g, y);
        };
        break;
    }
    case DensityFamily::Triangular:
        if (!std::isfinite(hi)) {
            throw ValidationError("delay.hi", "triangular density needs a finite upper bound");
        }
        if (s.mode < lo || s.mode > hi) {
            throw ValidationError("delay.mode", "mode must lie inside [lo, hi]");
        }
        pdf = [lo, hi, m = s.mode](double x) {
            if (x < m) return m > lo ? (x - lo) / (m - lo) : 1.0;
            return hi > m ? (hi - x) / (hi - m) : 1.0;
        };
        break;
    case DensityFamily::Custom:
        throw ValidationError("delay.density", "custom densities need a callable");
    }

    if (!std::isfinite(hi)) {
        hi = lo + upper_quantile(s, truncation_mass);
    }
    DelaySpec d = density(std::move(pdf), lo, hi, nodes);
    d.shape_ = s;
    return d;
}

double DelaySpec::mean() const
{
    double m = 0.0;
    for (std::size_t i = 0; i < nodes_.size(); ++i) m += weights_[i] * nodes_[i];
    return m;
}

DelaySpec DelaySpec::scaled(double factor) const
{
    if (!(factor > 0.0) || !std::isfinite(factor)) {
        throw ValidationError("delay.scale_factor", "must be finite and > 0");
    }
    DelaySpec d = *this;
    d.lo_ *= factor;
    d.hi_ *= factor;
    for (double& s : d.nodes_) s *= factor;
    d.shape_.rate /= factor;
    d.shape_.scale *= factor;
    d.shape_.mode *= factor;
    return d;
}

double delay_expectation(const DelaySpec& spec, const std::function<double(double)>& weight)
{
    const auto nodes = spec.nodes();
    const auto weights = spec.weights();
    if (spec.is_point_mass()) {
        const double v = weight(nodes.front());
        if (!std::isfinite(v)) {
            std::ostringstream msg;
            msg << "weight is non-finite at node s=" << nodes.front();
            throw NumericalError(msg.str());
        }
        return v;
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const double v = weight(nodes[i]);
        if (!std::isfinite(v)) {
            std::ostringstream msg;
            msg << "weight is non-finite at node " << i << " (s=" << nodes[i] << ")";
            throw NumericalError(msg.str());
        }
        acc += weights[i] * v;
    }
    return acc;
}

double survival_expectation(const DelaySpec& spec, double rate)
{
    return delay_expectation(spec, [rate](double s) { return std::exp(-rate * s); });
}

} // namespace seirs
