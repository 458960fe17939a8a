#include "seirs/diagnostics.hpp"

#include "seirs/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace seirs {

Window tail_window(const Trajectory& traj, double fraction)
{
    if (traj.t.empty()) return {};
    const double t0 = traj.t.front();
    const double t1 = traj.t.back();
    return {t1 - fraction * (t1 - t0), t1};
}

namespace {

void check_window(const Trajectory& traj, Window w)
{
    if (traj.t.empty()) throw ValidationError("trajectory", "empty trajectory");
    const double slack = 1e-9 * std::max(1.0, std::abs(traj.t.back()));
    if (w.begin > w.end || w.begin < traj.t.front() - slack || w.end > traj.t.back() + slack) {
        std::ostringstream msg;
        msg << "window [" << w.begin << ", " << w.end << "] is not inside the trajectory span ["
            << traj.t.front() << ", " << traj.t.back() << "]";
        throw ValidationError("window", msg.str());
    }
}

bool inside(double t, Window w)
{
    const double slack = 1e-9 * std::max(1.0, std::abs(w.end));
    return t >= w.begin - slack && t <= w.end + slack;
}

} // namespace

LyapunovEstimate lyapunov_estimate(const Trajectory& traj, Window window)
{
    check_window(traj, window);
    LyapunovEstimate out;
    for (std::size_t k = 0; k < traj.size(); ++k) {
        const double t = traj.t[k];
        if (!inside(t, window) || !(t > 0.0)) continue;
        const double x = traj.I[k];
        if (!(x > 0.0)) {
            std::ostringstream msg;
            msg << "log I undefined: I(" << t << ") = " << x;
            throw NumericalError(msg.str());
        }
        out.t.push_back(t);
        out.value.push_back(std::log(x) / t);
    }
    if (out.value.empty()) {
        throw ValidationError("window", "no samples with t > 0 inside the window");
    }
    out.tail = out.value.back();
    return out;
}

RunningMean time_average(const Trajectory& traj, Component c, Window window)
{
    check_window(traj, window);
    const auto& x = traj.series(c);
    RunningMean out;
    double integral = 0.0;
    for (std::size_t k = 0; k < traj.size(); ++k) {
        if (k > 0) integral += 0.5 * (x[k] + x[k - 1]) * (traj.t[k] - traj.t[k - 1]);
        const double t = traj.t[k];
        if (!inside(t, window)) continue;
        const double span = t - traj.t.front();
        out.t.push_back(t);
        out.value.push_back(span > 0.0 ? integral / span : x[k]);
    }
    if (!out.value.empty()) out.tail = out.value.back();
    return out;
}

bool TheoremCheckReport::all_pass() const
{
    return std::all_of(entries.begin(), entries.end(), [](const auto& e) { return e.pass; });
}

const TheoremCheck* TheoremCheckReport::find(const std::string& name) const
{
    for (const auto& e : entries) {
        if (e.name == name) return &e;
    }
    return nullptr;
}

TheoremCheck verify_feasible_region(const Trajectory& traj, const DimensionlessParams& p,
                                    double sim_dt)
{
    TheoremCheck c;
    c.name = "feasible_region";
    c.theorem = "Theorem 3.2 feasible region B/(mu+d) <= N <= B/mu";
    c.target = p.dfe_susceptible();
    c.tolerance = 10.0 * sim_dt;
    c.window = {traj.t.empty() ? 0.0 : traj.t.front(), traj.t.empty() ? 0.0 : traj.t.back()};
    c.pass = true;

    const double upper = p.dfe_susceptible() + c.tolerance;
    const double lower = p.B / (p.mu + p.d);
    bool entered = false;
    double max_n = -std::numeric_limits<double>::infinity();
    std::ostringstream detail;

    for (std::size_t k = 0; k < traj.size() && c.pass; ++k) {
        const State x = traj.state(k);
        const double n = traj.N[k];
        max_n = std::max(max_n, n);
        if (x.S < 0.0 || x.E < 0.0 || x.I < 0.0 || x.R < 0.0) {
            c.pass = false;
            detail << "negative component at index " << k << " (t=" << traj.t[k] << ")";
        } else if (n > upper) {
            c.pass = false;
            detail << "N=" << n << " exceeds B/mu + 10 dt at index " << k << " (t=" << traj.t[k]
                   << ")";
        } else if (entered && n < lower - c.tolerance) {
            c.pass = false;
            detail << "N=" << n << " left [B/(mu+d), B/mu] at index " << k << " (t=" << traj.t[k]
                   << ")";
        }
        if (n >= lower) entered = true;
    }
    c.observed = max_n;
    if (c.pass) {
        detail << "max N = " << max_n << (entered ? ", entered lower band" : ", below lower band");
    }
    c.detail = detail.str();
    return c;
}

std::string to_string(Outcome o)
{
    switch (o) {
    case Outcome::Extinct: return "Extinct";
    case Outcome::WeaklyPermanentInMean: return "WeaklyPermanentInMean";
    case Outcome::StronglyPermanentInMean: return "StronglyPermanentInMean";
    case Outcome::PermanentFloor: return "PermanentFloor";
    case Outcome::Undetermined: return "Undetermined";
    }
    return "Undetermined";
}

Outcome classify_outcome(const Trajectory& traj, double epsilon_extinct,
                         std::optional<double> floor, double tail_fraction)
{
    if (traj.t.empty()) return Outcome::Undetermined;
    const Window w = tail_window(traj, tail_fraction);

    double max_i = -std::numeric_limits<double>::infinity();
    double min_i = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < traj.size(); ++k) {
        if (!inside(traj.t[k], w)) continue;
        max_i = std::max(max_i, traj.I[k]);
        min_i = std::min(min_i, traj.I[k]);
    }
    if (max_i < epsilon_extinct) return Outcome::Extinct;
    if (floor && *floor > 0.0 && min_i >= *floor) return Outcome::PermanentFloor;

    const RunningMean mean = time_average(traj, Component::I, w);
    const auto [lo, hi] = std::minmax_element(mean.value.begin(), mean.value.end());
    if (*lo >= epsilon_extinct) return Outcome::StronglyPermanentInMean;
    if (*hi >= epsilon_extinct) return Outcome::WeaklyPermanentInMean;
    return Outcome::Undetermined;
}

namespace {

double tail_min(const Trajectory& traj, const std::vector<double>& x, Window w)
{
    double m = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < traj.size(); ++k) {
        if (inside(traj.t[k], w)) m = std::min(m, x[k]);
    }
    return m;
}

} // namespace

TheoremCheckReport run_checks(const Trajectory& traj, const DimensionlessParams& p,
                              const AnalysisReport& analysis, double sim_dt,
                              const CheckSettings& settings)
{
    TheoremCheckReport rep;
    rep.entries.push_back(verify_feasible_region(traj, p, sim_dt));
    if (traj.t.empty()) return rep;

    const Window whole{traj.t.front(), traj.t.back()};
    const Window tail = tail_window(traj, settings.tail_fraction);
    const bool extinction = analysis.regime == Regime::ExtinctionByR0 ||
                            analysis.regime == Regime::ExtinctionBySurvival;

    if (extinction && analysis.lambda) {
        TheoremCheck c;
        c.name = "lyapunov_tail";
        c.theorem = "Theorem 5.2 limsup (1/t) log I <= -lambda";
        c.target = -*analysis.lambda;
        c.tolerance = settings.lyapunov_margin;
        c.window = {traj.t.back(), traj.t.back()};
        try {
            c.observed = lyapunov_estimate(traj, c.window).tail;
            c.pass = c.observed <= c.target + c.tolerance;
        } catch (const NumericalError& e) {
            c.observed = -std::numeric_limits<double>::infinity();
            c.pass = true;
            c.detail = std::string("I reached zero: ") + e.what();
        }
        rep.entries.push_back(c);

        TheoremCheck m;
        m.name = "susceptible_mean";
        m.theorem = "Theorem 6.1 (1/t) int S -> B/mu";
        m.target = p.dfe_susceptible();
        m.tolerance = settings.mean_band;
        m.window = whole;
        m.observed = time_average(traj, Component::S, whole).tail;
        m.pass = m.observed >= m.target - m.tolerance && m.observed <= m.target + 10.0 * sim_dt;
        rep.entries.push_back(m);

        TheoremCheck x;
        x.name = "extinction";
        x.theorem = "Theorem 5.2 I(t) -> 0";
        x.target = settings.epsilon_extinct;
        x.tolerance = 0.0;
        x.window = tail;
        const Outcome o = classify_outcome(traj, settings.epsilon_extinct, std::nullopt,
                                           settings.tail_fraction);
        x.observed = *std::max_element(traj.I.begin() + static_cast<long>(
                                           std::lower_bound(traj.t.begin(), traj.t.end(),
                                                            tail.begin) - traj.t.begin()),
                                       traj.I.end());
        x.pass = o == Outcome::Extinct;
        x.detail = "classification " + to_string(o);
        rep.entries.push_back(x);
    }

    if (analysis.permanence) {
        const PermanenceBounds& b = *analysis.permanence;

        TheoremCheck s;
        s.name = "susceptible_floor";
        s.theorem = "Lemma 7.1 liminf S >= v1";
        s.target = b.v1;
        s.window = tail;
        s.observed = tail_min(traj, traj.S, tail);
        s.pass = s.observed >= s.target;
        rep.entries.push_back(s);

        TheoremCheck i;
        i.name = "infectious_floor";
        i.theorem = "Lemma 7.1 / Theorem 7.2 liminf I >= v2";
        i.target = b.v2;
        i.window = tail;
        i.observed = tail_min(traj, traj.I, tail);
        i.pass = i.observed >= i.target;
        rep.entries.push_back(i);

        TheoremCheck c;
        c.name = "permanence";
        c.theorem = "Theorem 7.2 strong permanence";
        c.target = b.v2;
        c.window = tail;
        const Outcome o = classify_outcome(traj, settings.epsilon_extinct, b.v2,
                                           settings.tail_fraction);
        c.observed = c.pass = o == Outcome::PermanentFloor;
        c.detail = "classification " + to_string(o);
        rep.entries.push_back(c);
    }
    return rep;
}

double sup_norm_difference(const Trajectory& a, const Trajectory& b)
{
    if (a.t.empty() || b.t.empty()) return std::numeric_limits<double>::infinity();
    double worst = 0.0;
    std::size_t j = 0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        const double t = a.t[k];
        if (t < b.t.front() || t > b.t.back() + 1e-12) continue;
        while (j + 1 < b.size() && b.t[j + 1] <= t) ++j;
        double frac = 0.0;
        if (j + 1 < b.size() && b.t[j + 1] > b.t[j]) frac = (t - b.t[j]) / (b.t[j + 1] - b.t[j]);
        frac = std::clamp(frac, 0.0, 1.0);
        const std::size_t j1 = std::min(j + 1, b.size() - 1);
        for (Component c : {Component::S, Component::E, Component::I, Component::R}) {
            const auto& xa = a.series(c);
            const auto& xb = b.series(c);
            const double v = xb[j] * (1.0 - frac) + xb[j1] * frac;
            worst = std::max(worst, std::abs(xa[k] - v));
        }
    }
    return worst;
}

} // namespace seirs
