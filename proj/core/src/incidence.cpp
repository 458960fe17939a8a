#include "seirs/incidence.hpp"

#include "seirs/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace seirs {

std::string to_string(IncidenceFamily f)
{
    switch (f) {
    case IncidenceFamily::Holling2: return "holling2";
    case IncidenceFamily::Saturating: return "saturating";
    case IncidenceFamily::QuadraticSaturating: return "quadratic";
    case IncidenceFamily::Linear: return "linear";
    }
    return "linear";
}

IncidenceFamily incidence_family_from_string(const std::string& name)
{
    if (name == "holling2") return IncidenceFamily::Holling2;
    if (name == "saturating") return IncidenceFamily::Saturating;
    if (name == "quadratic" || name == "quadratic_saturating") {
        return IncidenceFamily::QuadraticSaturating;
    }
    if (name == "linear") return IncidenceFamily::Linear;
    throw ValidationError("incidence.family", "unknown incidence family '" + name + "'");
}

IncidenceModel IncidenceModel::holling2(double a1)
{
    if (!std::isfinite(a1) || !(a1 > 0.0)) {
        throw ValidationError("incidence.a1", "must be finite and > 0");
    }
    return {IncidenceFamily::Holling2, a1};
}

IncidenceModel IncidenceModel::saturating(double theta)
{
    if (!std::isfinite(theta) || !(theta > 0.0)) {
        throw ValidationError("incidence.theta", "must be finite and > 0");
    }
    return {IncidenceFamily::Saturating, theta};
}

IncidenceModel IncidenceModel::quadratic_saturating(double theta)
{
    if (!std::isfinite(theta) || !(theta > 0.0)) {
        throw ValidationError("incidence.theta", "must be finite and > 0");
    }
    return {IncidenceFamily::QuadraticSaturating, theta};
}

IncidenceModel IncidenceModel::linear()
{
    return {IncidenceFamily::Linear, 0.0};
}

std::string IncidenceModel::name() const
{
    std::ostringstream os;
    switch (family_) {
    case IncidenceFamily::Holling2: os << "holling2(a1=" << param_ << ")"; break;
    case IncidenceFamily::Saturating: os << "saturating(theta=" << param_ << ")"; break;
    case IncidenceFamily::QuadraticSaturating: os << "quadratic(theta=" << param_ << ")"; break;
    case IncidenceFamily::Linear: os << "linear"; break;
    }
    return os.str();
}

double IncidenceModel::value(double x) const
{
    switch (family_) {
    case IncidenceFamily::Holling2: return param_ * x / (1.0 + x);
    case IncidenceFamily::Saturating: return x / (1.0 + param_ * x);
    case IncidenceFamily::QuadraticSaturating: return x / (1.0 + param_ * x * x);
    case IncidenceFamily::Linear: return x;
    }
    return x;
}

double IncidenceModel::derivative(double x) const
{
    switch (family_) {
    case IncidenceFamily::Holling2: {
        const double u = 1.0 + x;
        return param_ / (u * u);
    }
    case IncidenceFamily::Saturating: {
        const double u = 1.0 + param_ * x;
        return 1.0 / (u * u);
    }
    case IncidenceFamily::QuadraticSaturating: {
        const double u = 1.0 + param_ * x * x;
        return (1.0 - param_ * x * x) / (u * u);
    }
    case IncidenceFamily::Linear: return 1.0;
    }
    return 1.0;
}

double IncidenceModel::second_derivative(double x) const
{
    switch (family_) {
    case IncidenceFamily::Holling2: {
        const double u = 1.0 + x;
        return -2.0 * param_ / (u * u * u);
    }
    case IncidenceFamily::Saturating: {
        const double u = 1.0 + param_ * x;
        return -2.0 * param_ / (u * u * u);
    }
    case IncidenceFamily::QuadraticSaturating: {
        const double t = param_;
        const double u = 1.0 + t * x * x;
        return 2.0 * t * x * (t * x * x - 3.0) / (u * u * u);
    }
    case IncidenceFamily::Linear: return 0.0;
    }
    return 0.0;
}

std::string to_string(AxiomStatus s)
{
    switch (s) {
    case AxiomStatus::Pass: return "pass";
    case AxiomStatus::Fail: return "fail";
    case AxiomStatus::Boundary: return "boundary";
    }
    return "fail";
}

bool AxiomReport::all_pass() const
{
    return std::all_of(results.begin(), results.end(),
                       [](const AxiomResult& r) { return r.status == AxiomStatus::Pass; });
}

const AxiomResult& AxiomReport::at(const std::string& axiom) const
{
    for (const auto& r : results) {
        if (r.axiom == axiom) return r;
    }
    throw ValidationError("axiom", "no result for " + axiom);
}

std::vector<double> standard_grid(int points, double lo, double hi)
{
    std::vector<double> g(static_cast<std::size_t>(points));
    const double a = std::log(lo);
    const double b = std::log(hi);
    for (int i = 0; i < points; ++i) {
        g[i] = std::exp(a + (b - a) * i / (points - 1));
    }
    g.front() = lo;
    g.back() = hi;
    return g;
}

namespace {

std::string at_point(const char* what, double x)
{
    std::ostringstream os;
    os << what << " at x=" << x;
    return os.str();
}

std::string at_pair(double x, double y, double v)
{
    std::ostringstream os;
    os << "inequality violated for (x, y)=(" << x << ", " << y << "), value " << v;
    return os.str();
}

} // namespace

AxiomReport validate_incidence(const IncidenceModel& g, std::span<const double> grid)
{
    if (grid.size() < 50) {
        throw ValidationError("grid", "at least 50 points are required");
    }
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!(grid[i] > 0.0) || (i > 0 && !(grid[i] > grid[i - 1]))) {
            throw ValidationError("grid", "points must be positive and strictly increasing");
        }
    }
    if (grid.front() > 1e-6 || grid.back() < 10.0) {
        throw ValidationError("grid", "grid must span at least [1e-6, 10]");
    }

    const std::size_t n = grid.size();
    std::vector<double> gv(n);
    for (std::size_t i = 0; i < n; ++i) gv[i] = g(grid[i]);

    AxiomReport rep;
    rep.incidence = g.name();
    rep.derivative_at_zero = g.derivative_at_zero();

    // A1
    {
        const double g0 = g(0.0);
        rep.results.push_back({"A1", g0 == 0.0 ? AxiomStatus::Pass : AxiomStatus::Fail,
                               g0 == 0.0 ? "G(0) = 0" : at_point("G(0) != 0", 0.0)});
    }

    // A2: strictly increasing, including the step from 0 to the first node
    {
        AxiomResult r{"A2", AxiomStatus::Pass, "first differences positive"};
        double prev = g(0.0);
        for (std::size_t i = 0; i < n; ++i) {
            if (!(gv[i] > prev)) {
                r.status = AxiomStatus::Fail;
                r.detail = at_point("G not increasing", grid[i]);
                break;
            }
            prev = gv[i];
        }
        rep.results.push_back(r);
    }

    // A3: concavity from second divided differences on a non-uniform grid.
    // Differences within rounding noise of zero count as "boundary".
    {
        AxiomResult r{"A3", AxiomStatus::Pass, "second differences negative"};
        bool any_zero = false;
        for (std::size_t i = 1; i + 1 < n; ++i) {
            const double h0 = grid[i] - grid[i - 1];
            const double h1 = grid[i + 1] - grid[i];
            const double s0 = (gv[i] - gv[i - 1]) / h0;
            const double s1 = (gv[i + 1] - gv[i]) / h1;
            const double dd = 2.0 * (s1 - s0) / (h0 + h1);
            // rounding in the three G values, amplified by the divided differences
            const double mag = std::abs(gv[i - 1]) + std::abs(gv[i]) + std::abs(gv[i + 1]);
            const double noise = 64.0 * std::numeric_limits<double>::epsilon() * mag /
                                     (std::min(h0, h1) * (h0 + h1)) + 1e-300;
            if (dd > noise) {
                r.status = AxiomStatus::Fail;
                r.detail = at_point("G'' > 0", grid[i]);
                break;
            }
            if (!(dd < -noise)) any_zero = true;
        }
        if (r.status == AxiomStatus::Pass && any_zero) {
            r.status = AxiomStatus::Boundary;
            r.detail = "G'' vanishes (not strictly concave)";
        }
        rep.results.push_back(r);
    }

    // A4: bounded limit. Probe far beyond the grid and require the
    // elasticity x G'(x) / G(x) to have flattened out.
    {
        const double far = grid.back() * 1e6;
        const double h = far * 1e-4;
        const double slope = (g(far + h) - g(far - h)) / (2.0 * h);
        const double gf = g(far);
        const double elasticity = gf != 0.0 ? std::abs(far * slope / gf) : 0.0;
        const bool ok = std::isfinite(gf) && elasticity < 1e-2;
        std::ostringstream os;
        os << "tail elasticity " << elasticity << " at x=" << far << ", G=" << gf;
        rep.results.push_back({"A4", ok ? AxiomStatus::Pass : AxiomStatus::Fail, os.str()});
    }

    // A5: G(x) <= x
    {
        AxiomResult r{"A5", AxiomStatus::Pass, "G(x) <= x on grid"};
        for (std::size_t i = 0; i < n; ++i) {
            if (gv[i] > grid[i] * (1.0 + 1e-12)) {
                r.status = AxiomStatus::Fail;
                r.detail = at_point("G(x) > x", grid[i]);
                break;
            }
        }
        rep.results.push_back(r);
    }

    // A6 on every pair of grid points
    {
        AxiomResult r{"A6", AxiomStatus::Pass, ""};
        std::size_t pairs = 0;
        for (std::size_t i = 0; i < n && r.status == AxiomStatus::Pass; ++i) {
            const double ri = gv[i] / grid[i];
            for (std::size_t j = i + 1; j < n; ++j) {
                const double rj = gv[j] / grid[j];
                const double v = (ri - rj) * (gv[i] - gv[j]);
                const double tol = 1e-12 * std::abs(ri + rj) * std::abs(gv[i] + gv[j]);
                ++pairs;
                if (v > tol) {
                    r.status = AxiomStatus::Fail;
                    r.detail = at_pair(grid[i], grid[j], v);
                    break;
                }
            }
        }
        if (r.status == AxiomStatus::Pass) {
            r.detail = std::to_string(pairs) + " pairs checked";
        }
        rep.results.push_back(r);
    }

    return rep;
}

} // namespace seirs
