#include "seirs/config.hpp"

#include "seirs/errors.hpp"
#include "seirs/format.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

namespace seirs {

namespace {

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

bool starts_with(const std::string& s, const std::string& prefix)
{
    return s.rfind(prefix, 0) == 0;
}

constexpr std::array<const char*, 6> rate_names{"B", "beta", "mu", "mu_v", "d", "alpha"};
constexpr std::array<const char*, 8> dimensional_names{"Bhat",     "betahat", "muhat",  "dhat",
                                                       "alphahat", "muvhat",  "Lambda", "V0"};
constexpr std::array<const char*, 10> delay_fields{"kind", "value", "density", "lo",    "hi",
                                                   "nodes", "rate", "shape",   "scale", "mode"};
constexpr std::array<const char*, 3> delay_names{"T1", "T2", "T3"};

const std::set<std::string>& known_keys()
{
    static const std::set<std::string> keys = [] {
        std::set<std::string> k;
        for (const char* r : rate_names) k.insert(std::string("params.") + r);
        for (const char* r : dimensional_names) k.insert(std::string("dimensional.") + r);
        for (const char* t : delay_names) {
            for (const char* f : delay_fields) k.insert(std::string("delays.") + t + "." + f);
        }
        for (const char* c : {"S", "E", "I", "R"}) k.insert(std::string("initial.") + c);
        for (const char* s : {"family", "a1", "theta"}) k.insert(std::string("incidence.") + s);
        for (const char* s : {"dt", "t_end", "stride", "negativity"}) {
            k.insert(std::string("sim.") + s);
        }
        for (const char* s : {"epsilon_extinct", "lyapunov_margin", "mean_band", "tail_fraction"}) {
            k.insert(std::string("checks.") + s);
        }
        k.insert("permanence.q");
        k.insert("permanence.rho");
        return k;
    }();
    return keys;
}

const std::set<std::string>& text_keys()
{
    static const std::set<std::string> keys = [] {
        std::set<std::string> k{"incidence.family", "sim.negativity"};
        for (const char* t : delay_names) {
            k.insert(std::string("delays.") + t + ".kind");
            k.insert(std::string("delays.") + t + ".density");
        }
        return k;
    }();
    return keys;
}

[[noreturn]] void fail(const std::string& key, const KeyValueConfig::Entry* e,
                       const std::string& msg)
{
    throw ConfigError(key + ": " + msg, e ? e->line : 0);
}

} // namespace

std::optional<double> parse_number(const std::string& text)
{
    const std::string s = trim(text);
    if (s == "inf" || s == "+inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s.empty()) return std::nullopt;
    const char* first = s.data();
    if (*first == '+') ++first;
    double v = 0.0;
    const auto res = std::from_chars(first, s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size() || !std::isfinite(v)) {
        return std::nullopt;
    }
    return v;
}

std::string canonical_key(const std::string& raw)
{
    const std::string key = trim(raw);
    for (const char* r : rate_names) {
        if (key == r) return std::string("params.") + r;
    }
    for (const char* t : delay_names) {
        if (starts_with(key, std::string(t) + ".")) return "delays." + key;
    }
    return key;
}

bool is_known_key(const std::string& key)
{
    return known_keys().count(canonical_key(key)) > 0;
}

bool is_numeric_key(const std::string& key)
{
    const std::string k = canonical_key(key);
    return is_known_key(k) && text_keys().count(k) == 0;
}

KeyValueConfig KeyValueConfig::parse(const std::string& text)
{
    KeyValueConfig cfg;
    std::istringstream in(text);
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
        ++number;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError("expected `key = value`", number);
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw ConfigError("empty key", number);
        if (value.empty()) throw ConfigError(key + ": empty value", number);
        cfg.set(key, value, number);
    }
    return cfg;
}

KeyValueConfig KeyValueConfig::parse_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

void KeyValueConfig::set(const std::string& key, const std::string& value, int line)
{
    const std::string k = canonical_key(key);
    if (!is_known_key(k)) throw ConfigError("unknown key `" + trim(key) + "`", line);
    entries_[k] = Entry{trim(value), line};
}

void KeyValueConfig::set_assignment(const std::string& spec)
{
    const auto eq = spec.find('=');
    if (eq == std::string::npos) throw ConfigError("override `" + spec + "` is not key=value");
    set(spec.substr(0, eq), spec.substr(eq + 1));
}

bool KeyValueConfig::has(const std::string& key) const
{
    return entries_.count(canonical_key(key)) > 0;
}

const KeyValueConfig::Entry* KeyValueConfig::find(const std::string& key) const
{
    const auto it = entries_.find(canonical_key(key));
    return it == entries_.end() ? nullptr : &it->second;
}

double KeyValueConfig::number(const std::string& key) const
{
    const Entry* e = find(key);
    if (!e) throw ConfigError("missing required key `" + canonical_key(key) + "`");
    const auto v = parse_number(e->value);
    if (!v) fail(canonical_key(key), e, "`" + e->value + "` is not a number");
    return *v;
}

double KeyValueConfig::number_or(const std::string& key, double fallback) const
{
    return has(key) ? number(key) : fallback;
}

std::string KeyValueConfig::text(const std::string& key) const
{
    const Entry* e = find(key);
    if (!e) throw ConfigError("missing required key `" + canonical_key(key) + "`");
    return e->value;
}

std::string KeyValueConfig::text_or(const std::string& key, const std::string& fallback) const
{
    return has(key) ? text(key) : fallback;
}

namespace {

// Re-throws model validation errors as configuration errors tied to the key.
template <class F>
auto with_key(const KeyValueConfig& cfg, const std::string& key, F&& f)
{
    try {
        return f();
    } catch (const ValidationError& e) {
        fail(key, cfg.find(key), e.what());
    }
}

int integer(const KeyValueConfig& cfg, const std::string& key, int fallback)
{
    if (!cfg.has(key)) return fallback;
    const double v = cfg.number(key);
    if (v != std::floor(v) || std::abs(v) > 2e9) fail(key, cfg.find(key), "must be an integer");
    return static_cast<int>(v);
}

DelaySpec load_delay(const KeyValueConfig& cfg, const std::string& name)
{
    const std::string base = "delays." + name + ".";
    const std::string kind = cfg.text(base + "kind");
    if (kind == "point") {
        const double v = cfg.number(base + "value");
        if (!(v >= 0.0) || !std::isfinite(v)) {
            fail(base + "value", cfg.find(base + "value"), "must be finite and >= 0");
        }
        return DelaySpec::point_mass(v);
    }
    if (kind != "density") fail(base + "kind", cfg.find(base + "kind"), "must be point or density");

    DensityShape shape;
    const std::string family = cfg.text(base + "density");
    shape.family = with_key(cfg, base + "density",
                            [&] { return density_family_from_string(family); });
    if (shape.family == DensityFamily::Custom) {
        fail(base + "density", cfg.find(base + "density"), "custom densities need the library API");
    }
    shape.rate = cfg.number_or(base + "rate", shape.rate);
    shape.shape = cfg.number_or(base + "shape", shape.shape);
    shape.scale = cfg.number_or(base + "scale", shape.scale);
    const double lo = cfg.number_or(base + "lo", 0.0);
    const double hi = cfg.number_or(base + "hi", std::numeric_limits<double>::infinity());
    shape.mode = cfg.number_or(base + "mode", 0.5 * (lo + hi));
    const int nodes = integer(cfg, base + "nodes", DelaySpec::default_nodes);
    return with_key(cfg, base + "kind",
                    [&] { return DelaySpec::from_shape(shape, lo, hi, nodes); });
}

bool any_with_prefix(const KeyValueConfig& cfg, const std::string& prefix)
{
    for (const auto& [k, e] : cfg.entries()) {
        if (starts_with(k, prefix)) return true;
    }
    return false;
}

} // namespace

IncidenceModel load_incidence(const KeyValueConfig& cfg)
{
    const std::string key = "incidence.family";
    const IncidenceFamily f = with_key(cfg, key, [&] {
        return incidence_family_from_string(cfg.text(key));
    });
    switch (f) {
    case IncidenceFamily::Holling2: {
        const double a1 = cfg.number("incidence.a1");
        return with_key(cfg, "incidence.a1", [&] { return IncidenceModel::holling2(a1); });
    }
    case IncidenceFamily::Saturating: {
        const double th = cfg.number("incidence.theta");
        return with_key(cfg, "incidence.theta", [&] { return IncidenceModel::saturating(th); });
    }
    case IncidenceFamily::QuadraticSaturating: {
        const double th = cfg.number("incidence.theta");
        return with_key(cfg, "incidence.theta",
                        [&] { return IncidenceModel::quadratic_saturating(th); });
    }
    case IncidenceFamily::Linear: return IncidenceModel::linear();
    }
    return IncidenceModel::linear();
}

ModelConfig load_model(const KeyValueConfig& cfg)
{
    ModelConfig m;
    m.incidence = load_incidence(cfg);

    DelaySet delays{load_delay(cfg, "T1"), load_delay(cfg, "T2"), load_delay(cfg, "T3")};

    const bool dimensional = any_with_prefix(cfg, "dimensional.");
    if (dimensional && any_with_prefix(cfg, "params.")) {
        throw ConfigError("give either params.* or dimensional.* rates, not both");
    }
    if (dimensional) {
        DimensionalParams d;
        d.birth_rate = cfg.number("dimensional.Bhat");
        d.contact_rate = cfg.number("dimensional.betahat");
        d.death_rate = cfg.number("dimensional.muhat");
        d.disease_death_rate = cfg.number("dimensional.dhat");
        d.recovery_rate = cfg.number("dimensional.alphahat");
        d.vector_turnover = cfg.number("dimensional.muvhat");
        d.vector_transmission = cfg.number("dimensional.Lambda");
        d.vector_count = cfg.number("dimensional.V0");
        d.delays = delays;
        try {
            const NondimensionalModel nd = nondimensionalize(d);
            m.params = nd.params;
            m.delays = nd.delays;
            m.time_scale = nd.time_scale;
        } catch (const ValidationError& e) {
            throw ConfigError("dimensional." + e.field() + ": " + e.what());
        }
    } else {
        m.params.B = cfg.number("params.B");
        m.params.beta = cfg.number("params.beta");
        m.params.mu = cfg.number("params.mu");
        m.params.mu_v = cfg.number("params.mu_v");
        m.params.d = cfg.number("params.d");
        m.params.alpha = cfg.number("params.alpha");
        m.delays = delays;
        try {
            m.params.validate(true);
        } catch (const ValidationError& e) {
            const std::string key = "params." + e.field();
            fail(key, cfg.find(key), e.what());
        }
    }

    State init = m.sim.initial;
    init.S = cfg.number_or("initial.S", init.S);
    init.E = cfg.number_or("initial.E", init.E);
    init.I = cfg.number_or("initial.I", init.I);
    init.R = cfg.number_or("initial.R", init.R);
    m.sim.initial = init;

    m.sim.dt = cfg.number_or("sim.dt", m.sim.dt);
    m.sim.t_end = cfg.number_or("sim.t_end", m.sim.t_end);
    m.sim.record_stride = integer(cfg, "sim.stride", m.sim.record_stride);
    const std::string neg = cfg.text_or("sim.negativity", "error");
    if (neg == "error") {
        m.sim.negativity = NegativityPolicy::Error;
    } else if (neg == "clamp") {
        m.sim.negativity = NegativityPolicy::ClampWithWarning;
    } else {
        fail("sim.negativity", cfg.find("sim.negativity"), "must be error or clamp");
    }

    m.checks.epsilon_extinct = cfg.number_or("checks.epsilon_extinct", m.checks.epsilon_extinct);
    m.checks.lyapunov_margin = cfg.number_or("checks.lyapunov_margin", m.checks.lyapunov_margin);
    m.checks.mean_band = cfg.number_or("checks.mean_band", m.checks.mean_band);
    m.checks.tail_fraction = cfg.number_or("checks.tail_fraction", m.checks.tail_fraction);
    if (!(m.checks.tail_fraction > 0.0 && m.checks.tail_fraction <= 1.0)) {
        fail("checks.tail_fraction", cfg.find("checks.tail_fraction"), "must lie in (0, 1]");
    }

    if (cfg.has("permanence.q")) m.permanence.q = cfg.number("permanence.q");
    if (cfg.has("permanence.rho")) m.permanence.rho = cfg.number("permanence.rho");
    return m;
}

namespace {

void put(std::ostringstream& out, const std::string& key, double v)
{
    out << key << " = " << format_number(v) << "\n";
}

void put_delay(std::ostringstream& out, const std::string& name, const DelaySpec& d)
{
    const std::string base = "delays." + name + ".";
    if (d.is_point_mass()) {
        out << base << "kind = point\n";
        put(out, base + "value", d.value());
        return;
    }
    const DensityShape& s = d.shape();
    if (s.family == DensityFamily::Custom) {
        throw ValidationError(base + "density", "custom densities cannot be serialised");
    }
    out << base << "kind = density\n";
    out << base << "density = " << to_string(s.family) << "\n";
    put(out, base + "lo", d.lo());
    put(out, base + "hi", d.hi());
    out << base << "nodes = " << d.node_count() << "\n";
    switch (s.family) {
    case DensityFamily::Exponential: put(out, base + "rate", s.rate); break;
    case DensityFamily::Gamma:
        put(out, base + "shape", s.shape);
        put(out, base + "scale", s.scale);
        break;
    case DensityFamily::Triangular: put(out, base + "mode", s.mode); break;
    default: break;
    }
}

} // namespace

std::string serialize_model(const ModelConfig& m)
{
    std::ostringstream out;
    put(out, "params.B", m.params.B);
    put(out, "params.beta", m.params.beta);
    put(out, "params.mu", m.params.mu);
    put(out, "params.mu_v", m.params.mu_v);
    put(out, "params.d", m.params.d);
    put(out, "params.alpha", m.params.alpha);

    out << "incidence.family = " << to_string(m.incidence.family()) << "\n";
    if (m.incidence.family() == IncidenceFamily::Holling2) {
        put(out, "incidence.a1", m.incidence.parameter());
    } else if (m.incidence.family() != IncidenceFamily::Linear) {
        put(out, "incidence.theta", m.incidence.parameter());
    }

    put_delay(out, "T1", m.delays.t1);
    put_delay(out, "T2", m.delays.t2);
    put_delay(out, "T3", m.delays.t3);

    put(out, "initial.S", m.sim.initial.S);
    put(out, "initial.E", m.sim.initial.E);
    put(out, "initial.I", m.sim.initial.I);
    put(out, "initial.R", m.sim.initial.R);
    put(out, "sim.dt", m.sim.dt);
    put(out, "sim.t_end", m.sim.t_end);
    out << "sim.stride = " << m.sim.record_stride << "\n";
    out << "sim.negativity = "
        << (m.sim.negativity == NegativityPolicy::Error ? "error" : "clamp") << "\n";
    put(out, "checks.epsilon_extinct", m.checks.epsilon_extinct);
    put(out, "checks.lyapunov_margin", m.checks.lyapunov_margin);
    put(out, "checks.mean_band", m.checks.mean_band);
    put(out, "checks.tail_fraction", m.checks.tail_fraction);
    if (m.permanence.q) put(out, "permanence.q", *m.permanence.q);
    if (m.permanence.rho) put(out, "permanence.rho", *m.permanence.rho);
    return out.str();
}

} // namespace seirs
