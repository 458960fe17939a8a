#pragma once

#include "seirs/analysis.hpp"
#include "seirs/delay.hpp"
#include "seirs/diagnostics.hpp"
#include "seirs/incidence.hpp"
#include "seirs/params.hpp"
#include "seirs/simulator.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace seirs {

/// Flat `key = value` file. `#` starts a comment, blank lines are ignored,
/// later keys override earlier ones. Keys are canonicalised on insertion:
/// `T1.value` is stored as `delays.T1.value` and bare rate names such as
/// `beta` as `params.beta`.
class KeyValueConfig {
public:
    struct Entry {
        std::string value;
        int line = 0; // 0 for overrides that did not come from a file
    };

    /// Throws ConfigError carrying the offending line number.
    static KeyValueConfig parse(const std::string& text);
    static KeyValueConfig parse_file(const std::string& path);

    /// Override or add one key. `spec` has the form `key=value`.
    void set(const std::string& key, const std::string& value, int line = 0);
    void set_assignment(const std::string& spec);

    bool has(const std::string& key) const;
    const Entry* find(const std::string& key) const;
    const std::map<std::string, Entry>& entries() const noexcept { return entries_; }

    /// Required numeric value. Throws ConfigError naming the key when it is
    /// missing or does not parse.
    double number(const std::string& key) const;
    double number_or(const std::string& key, double fallback) const;
    std::string text(const std::string& key) const;
    std::string text_or(const std::string& key, const std::string& fallback) const;

private:
    std::map<std::string, Entry> entries_;
};

/// Maps aliases onto the stored key names described above.
std::string canonical_key(const std::string& key);

/// True for every key that load_model understands.
bool is_known_key(const std::string& key);

/// Keys that take a plain number and may serve as a sweep axis.
bool is_numeric_key(const std::string& key);

/// Everything a run needs, resolved from a KeyValueConfig.
struct ModelConfig {
    DimensionlessParams params;
    IncidenceModel incidence = IncidenceModel::holling2(0.05);
    DelaySet delays;
    SimulationConfig sim;
    CheckSettings checks;
    PermanenceChoice permanence;
    /// Set when the rates were given in physical units.
    std::optional<double> time_scale;
};

/// Incidence model from the incidence.* keys alone.
IncidenceModel load_incidence(const KeyValueConfig& cfg);

/// Builds and validates the model. Unknown keys and missing required keys
/// throw ConfigError naming the key (and its line when it has one).
ModelConfig load_model(const KeyValueConfig& cfg);

/// Writes a configuration that load_model maps back to the same model
/// (dimensionless rates, explicit delay specs).
std::string serialize_model(const ModelConfig& model);

/// Parses a number the way the configuration does: decimal or scientific,
/// plus `inf` and `-inf`. Returns nullopt for anything else.
std::optional<double> parse_number(const std::string& text);

} // namespace seirs
