#pragma once

namespace seirs {

/// Population fractions relative to B^/mu^.
struct State {
    double S = 0.0;
    double E = 0.0;
    double I = 0.0;
    double R = 0.0;

    double total() const { return S + E + I + R; }
};

enum class Component { S, E, I, R, N };

inline double component_of(const State& x, Component c)
{
    switch (c) {
    case Component::S: return x.S;
    case Component::E: return x.E;
    case Component::I: return x.I;
    case Component::R: return x.R;
    case Component::N: return x.total();
    }
    return 0.0;
}

} // namespace seirs
