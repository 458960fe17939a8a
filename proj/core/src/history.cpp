#include "seirs/history.hpp"

#include "seirs/errors.hpp"

#include <cmath>
#include <sstream>

namespace seirs {

HistoryBuffer::HistoryBuffer(double dt, double t_begin) : dt_(dt), t_begin_(t_begin)
{
    if (!(dt > 0.0) || !std::isfinite(dt)) {
        throw ValidationError("dt", "must be finite and > 0");
    }
}

HistoryBuffer HistoryBuffer::tabulate(double dt, double t_begin, double t_end,
                                      const std::function<State(double)>& phi)
{
    HistoryBuffer h(dt, t_begin);
    const long n = static_cast<long>(std::llround((t_end - t_begin) / dt));
    h.reserve(n + 1);
    for (long k = 0; k <= n; ++k) h.push(phi(h.time_at(k)));
    return h;
}

void HistoryBuffer::push(const State& x)
{
    s_.push_back(x.S);
    e_.push_back(x.E);
    i_.push_back(x.I);
    r_.push_back(x.R);
}

void HistoryBuffer::reserve(long n)
{
    const auto m = static_cast<std::size_t>(n);
    s_.reserve(m);
    e_.reserve(m);
    i_.reserve(m);
    r_.reserve(m);
}

const std::vector<double>& HistoryBuffer::series(Component c) const
{
    switch (c) {
    case Component::S: return s_;
    case Component::E: return e_;
    case Component::I: return i_;
    case Component::R: return r_;
    case Component::N: break;
    }
    throw ValidationError("component", "N is not stored in the history buffer");
}

double HistoryBuffer::sample(Component c, double t) const
{
    if (c == Component::N) {
        const State x = sample(t);
        return x.total();
    }
    const auto& v = series(c);
    const double pos = (t - t_begin_) / dt_;
    const double last = static_cast<double>(v.size() - 1);
    constexpr double slack = 1e-9;
    if (v.empty() || pos < -slack || pos > last + slack) {
        std::ostringstream msg;
        msg << "history lookup at t=" << t << " outside [" << t_begin_ << ", "
            << current_time() << "]; the history must reach back to t=" << t;
        throw ConfigError(msg.str());
    }
    if (pos <= 0.0) return v.front();
    if (pos >= last) return v.back();
    const auto j = static_cast<std::size_t>(pos);
    const double frac = pos - static_cast<double>(j);
    return frac == 0.0 ? v[j] : v[j] * (1.0 - frac) + v[j + 1] * frac;
}

State HistoryBuffer::sample(double t) const
{
    return {sample(Component::S, t), sample(Component::E, t), sample(Component::I, t),
            sample(Component::R, t)};
}

long history_steps(const DelaySet& delays, double dt)
{
    return static_cast<long>(std::ceil(delays.max_horizon() / dt - 1e-9)) + 3;
}

HistoryBuffer init_history(const std::function<State(double)>& phi, const DelaySet& delays,
                           double dt)
{
    const State x0 = phi(0.0);
    if (!(x0.S > 0.0)) throw ValidationError("history", "phi_S(0) must be > 0");
    const long steps = history_steps(delays, dt);
    HistoryBuffer h(dt, -static_cast<double>(steps) * dt);
    h.reserve(steps + 1);
    for (long k = 0; k <= steps; ++k) {
        const double t = static_cast<double>(k - steps) * dt;
        const State x = phi(t);
        if (!(x.S >= 0.0) || !(x.E >= 0.0) || !(x.I >= 0.0) || !(x.R >= 0.0)) {
            std::ostringstream msg;
            msg << "history must be non-negative and finite (t=" << t << ")";
            throw ValidationError("history", msg.str());
        }
        h.push(x);
    }
    return h;
}

HistoryBuffer init_history_constant(const State& fractions, const DelaySet& delays, double dt)
{
    const std::pair<const char*, double> parts[] = {
        {"initial.S", fractions.S}, {"initial.E", fractions.E},
        {"initial.I", fractions.I}, {"initial.R", fractions.R}};
    for (const auto& [name, v] : parts) {
        if (!std::isfinite(v) || !(v > 0.0)) throw ValidationError(name, "must be > 0");
    }
    if (fractions.total() > 1.0 + 1e-12) {
        throw ValidationError("initial", "fractions must sum to at most 1");
    }
    return init_history([fractions](double) { return fractions; }, delays, dt);
}

} // namespace seirs
