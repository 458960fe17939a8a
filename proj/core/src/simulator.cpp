#include "seirs/simulator.hpp"

#include "seirs/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace seirs {

double kernel_single(const HistoryBuffer& history, const DelaySpec& t1, const IncidenceModel& g,
                     double mu_v, double t)
{
    const auto nodes = t1.nodes();
    const auto weights = t1.weights();
    double acc = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const double s = nodes[i];
        acc += weights[i] * std::exp(-mu_v * s) * g(history.sample(Component::I, t - s));
    }
    return acc;
}

double kernel_double(const HistoryBuffer& history, const DelaySpec& t1, const DelaySpec& t2,
                     const IncidenceModel& g, double mu_v, double mu, double t)
{
    const auto n1 = t1.nodes();
    const auto w1 = t1.weights();
    const auto n2 = t2.nodes();
    const auto w2 = t2.weights();
    double acc = 0.0;
    for (std::size_t j = 0; j < n2.size(); ++j) {
        const double u = n2[j];
        const double su = history.sample(Component::S, t - u);
        double inner = 0.0;
        for (std::size_t i = 0; i < n1.size(); ++i) {
            const double s = n1[i];
            inner += w1[i] * std::exp(-mu_v * s) * g(history.sample(Component::I, t - s - u));
        }
        acc += w2[j] * std::exp(-mu * u) * su * inner;
    }
    return acc;
}

double kernel_immunity(const HistoryBuffer& history, const DelaySpec& t3, double mu, double t)
{
    const auto nodes = t3.nodes();
    const auto weights = t3.weights();
    double acc = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const double r = nodes[i];
        acc += weights[i] * std::exp(-mu * r) * history.sample(Component::I, t - r);
    }
    return acc;
}

Derivatives model_rhs(const DimensionlessParams& p, const State& x, double k1, double k2,
                      double k3)
{
    const double incidence = p.beta * x.S * k1;
    const double matured = p.beta * k2;
    const double immunity_loss = p.alpha * k3;
    return {
        p.B - incidence - p.mu * x.S + immunity_loss,
        incidence - p.mu * x.E - matured,
        matured - p.infectious_exit_rate() * x.I,
        p.alpha * x.I - p.mu * x.R - immunity_loss,
    };
}

void SimulationConfig::validate() const
{
    if (!(dt > 0.0) || !std::isfinite(dt)) throw ValidationError("dt", "must be finite and > 0");
    if (!(t_end > 0.0) || !std::isfinite(t_end)) {
        throw ValidationError("t_end", "must be finite and > t0 = 0");
    }
    if (record_stride < 1) throw ValidationError("stride", "must be >= 1");
    if (t_end / dt > 2e9) throw ValidationError("dt", "too many steps for the horizon");
}

const std::vector<double>& Trajectory::series(Component c) const
{
    switch (c) {
    case Component::S: return S;
    case Component::E: return E;
    case Component::I: return I;
    case Component::R: return R;
    case Component::N: return N;
    }
    return N;
}

namespace {

// Lookup of x(t_k - lag) on the simulation grid: lag/dt = shift + frac.
struct Tap {
    long shift = 0;
    double frac = 0.0;
    double coef = 0.0;

    double read(const std::vector<double>& x, long k) const
    {
        const double a = x[static_cast<std::size_t>(k - shift)];
        if (frac == 0.0) return a;
        return a * (1.0 - frac) + x[static_cast<std::size_t>(k - shift - 1)] * frac;
    }
};

Tap make_tap(double lag, double dt, double coef)
{
    const double q = lag / dt;
    Tap t;
    t.shift = static_cast<long>(std::floor(q + 1e-9));
    t.frac = q - static_cast<double>(t.shift);
    if (t.frac < 1e-9) t.frac = 0.0;
    t.coef = coef;
    return t;
}

std::vector<Tap> make_taps(const DelaySpec& spec, double rate, double dt)
{
    std::vector<Tap> taps;
    const auto nodes = spec.nodes();
    const auto weights = spec.weights();
    taps.reserve(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        taps.push_back(make_tap(nodes[i], dt, weights[i] * std::exp(-rate * nodes[i])));
    }
    return taps;
}

long max_shift(const std::vector<Tap>& taps)
{
    long m = 0;
    for (const auto& t : taps) m = std::max(m, t.shift + 1);
    return m;
}

struct PairTaps {
    Tap s_tap;                // S(t - u_j), coef = w2_j exp(-mu u_j)
    std::vector<Tap> i_taps;  // I(t - u_j - s_i), coef = w1_i exp(-mu_v s_i)
};

const char* component_name(int c)
{
    static const char* names[] = {"S", "E", "I", "R"};
    return names[c];
}

} // namespace

Trajectory simulate(const DimensionlessParams& p, const IncidenceModel& g, const DelaySet& delays,
                    const SimulationConfig& cfg)
{
    p.validate(true);
    cfg.validate();

    const double dt = cfg.dt;
    const HistoryBuffer init = cfg.history ? init_history(cfg.history, delays, dt)
                                           : init_history_constant(cfg.initial, delays, dt);
    const long offset = init.size() - 1; // index of t = 0
    const long steps = static_cast<long>(std::llround(cfg.t_end / dt));
    const long total = offset + steps + 1;

    std::vector<double> S(init.series(Component::S));
    std::vector<double> E(init.series(Component::E));
    std::vector<double> I(init.series(Component::I));
    std::vector<double> R(init.series(Component::R));
    for (auto* v : {&S, &E, &I, &R}) v->resize(static_cast<std::size_t>(total));

    const std::vector<Tap> t1_taps = make_taps(delays.t1, p.mu_v, dt);
    const std::vector<Tap> t2_taps = make_taps(delays.t2, p.mu, dt);
    const std::vector<Tap> t3_taps = make_taps(delays.t3, p.mu, dt);

    const bool tensor = static_cast<long>(t1_taps.size() * t2_taps.size()) <= tensor_kernel_limit;

    std::vector<PairTaps> pairs;
    std::vector<double> k1_cache;
    long k1_first = 0;
    if (tensor) {
        const auto n1 = delays.t1.nodes();
        const auto w1 = delays.t1.weights();
        const auto n2 = delays.t2.nodes();
        for (std::size_t j = 0; j < n2.size(); ++j) {
            PairTaps pt;
            pt.s_tap = t2_taps[j];
            for (std::size_t i = 0; i < n1.size(); ++i) {
                pt.i_taps.push_back(make_tap(n2[j] + n1[i], dt, w1[i] * std::exp(-p.mu_v * n1[i])));
            }
            pairs.push_back(std::move(pt));
        }
    } else {
        k1_cache.assign(static_cast<std::size_t>(total), std::numeric_limits<double>::quiet_NaN());
        k1_first = max_shift(t1_taps);
    }

    auto single = [&](long k) {
        double acc = 0.0;
        for (const auto& tap : t1_taps) acc += tap.coef * g(tap.read(I, k));
        return acc;
    };
    auto immunity = [&](long k) {
        double acc = 0.0;
        for (const auto& tap : t3_taps) acc += tap.coef * tap.read(I, k);
        return acc;
    };
    auto matured = [&](long k) {
        double acc = 0.0;
        if (tensor) {
            for (const auto& pt : pairs) {
                double inner = 0.0;
                for (const auto& tap : pt.i_taps) inner += tap.coef * g(tap.read(I, k));
                acc += pt.s_tap.coef * pt.s_tap.read(S, k) * inner;
            }
        } else {
            for (const auto& tap : t2_taps) {
                acc += tap.coef * tap.read(S, k) * tap.read(k1_cache, k);
            }
        }
        return acc;
    };

    if (!tensor) {
        for (long k = k1_first; k < offset; ++k) k1_cache[static_cast<std::size_t>(k)] = single(k);
    }

    Trajectory traj;
    traj.dt = dt * cfg.record_stride;
    const std::size_t expected = static_cast<std::size_t>(steps / cfg.record_stride + 2);
    for (auto* v : {&traj.t, &traj.S, &traj.E, &traj.I, &traj.R, &traj.N}) v->reserve(expected);

    auto record = [&](long k) {
        const auto u = static_cast<std::size_t>(k);
        traj.t.push_back(static_cast<double>(k - offset) * dt);
        traj.S.push_back(S[u]);
        traj.E.push_back(E[u]);
        traj.I.push_back(I[u]);
        traj.R.push_back(R[u]);
        traj.N.push_back(S[u] + E[u] + I[u] + R[u]);
    };

    constexpr long max_logged = 20;
    record(offset);
    for (long k = offset; k < offset + steps; ++k) {
        const auto u = static_cast<std::size_t>(k);
        const double k1 = single(k);
        if (!tensor) k1_cache[u] = k1;
        const double k2 = matured(k);
        const double k3 = immunity(k);
        const State x{S[u], E[u], I[u], R[u]};
        const Derivatives d = model_rhs(p, x, k1, k2, k3);

        double next[4] = {x.S + dt * d.dS, x.E + dt * d.dE, x.I + dt * d.dI, x.R + dt * d.dR};
        const long step = k - offset + 1;
        for (int c = 0; c < 4; ++c) {
            if (!std::isfinite(next[c])) {
                std::ostringstream msg;
                msg << "non-finite " << component_name(c) << " at step " << step
                    << " (t=" << static_cast<double>(step) * dt << ")";
                throw SimulationError(msg.str(), step);
            }
            if (next[c] < 0.0) {
                std::ostringstream msg;
                msg << component_name(c) << " = " << next[c] << " < 0 at step " << step
                    << " (t=" << static_cast<double>(step) * dt << ")";
                if (cfg.negativity == NegativityPolicy::Error) {
                    msg << "; reduce dt (currently " << dt << ")";
                    throw SimulationError(msg.str(), step);
                }
                if (traj.clamp_count < max_logged) traj.events.push_back("clamp: " + msg.str());
                ++traj.clamp_count;
                next[c] = 0.0;
            }
        }
        S[u + 1] = next[0];
        E[u + 1] = next[1];
        I[u + 1] = next[2];
        R[u + 1] = next[3];

        if (step % cfg.record_stride == 0 || step == steps) record(k + 1);
    }
    if (traj.clamp_count > max_logged) {
        traj.events.push_back("clamp: " + std::to_string(traj.clamp_count - max_logged) +
                              " further clamp events not shown");
    }
    return traj;
}

} // namespace seirs
