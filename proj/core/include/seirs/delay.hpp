#pragma once

#include <algorithm>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace seirs {

/// Named density families understood by the configuration layer.
enum class DensityFamily { Custom, Uniform, Exponential, Gamma, Triangular };

std::string to_string(DensityFamily f);
DensityFamily density_family_from_string(const std::string& name);

/// Parameters of a named density family. Unused fields are ignored.
struct DensityShape {
    DensityFamily family = DensityFamily::Uniform;
    double rate = 1.0;   // exponential
    double shape = 1.0;  // gamma
    double scale = 1.0;  // gamma
    double mode = 0.0;   // triangular; must lie in [lo, hi]
};

/// Distribution of one random delay, reduced to a fixed quadrature rule.
///
/// A point mass is a single node of weight one. A density is sampled on an
/// equally spaced grid over its (possibly truncated) support and carries
/// composite-trapezoid weights that already include f(s) and the
/// renormalisation constant, so that sum(weights) == 1 up to rounding.
/// Every expectation the model needs is then sum_i w_i * g(s_i).
class DelaySpec {
public:
    static constexpr int default_nodes = 257;
    static constexpr double truncation_mass = 1e-8;

    static DelaySpec point_mass(double value);

    /// Density given as a callable on [lo, hi]. The callable need not be
    /// normalised; it is renormalised on the node set.
    static DelaySpec density(std::function<double(double)> pdf, double lo, double hi,
                             int nodes = default_nodes);

    /// Named family. When `hi` is not finite the support is truncated at the
    /// (1 - truncation_mass) quantile.
    static DelaySpec from_shape(const DensityShape& shape, double lo, double hi,
                                int nodes = default_nodes);

    bool is_point_mass() const noexcept { return point_; }
    double value() const noexcept { return point_ ? nodes_.front() : mean(); }
    double lo() const noexcept { return lo_; }
    double hi() const noexcept { return hi_; }
    int node_count() const noexcept { return static_cast<int>(nodes_.size()); }
    const DensityShape& shape() const noexcept { return shape_; }

    std::span<const double> nodes() const noexcept { return nodes_; }
    std::span<const double> weights() const noexcept { return weights_; }

    double mean() const;

    /// Same distribution for the delay c*T (c > 0): support and nodes are
    /// multiplied by c, the density becomes f(s/c)/c, weights are unchanged.
    DelaySpec scaled(double factor) const;

private:
    DelaySpec() = default;

    bool point_ = true;
    double lo_ = 0.0;
    double hi_ = 0.0;
    DensityShape shape_{DensityFamily::Custom};
    std::vector<double> nodes_;
    std::vector<double> weights_;
};

/// Integral of f_T(s) * weight(s) over the support using the spec's rule.
/// Point masses evaluate weight(value) exactly.
double delay_expectation(const DelaySpec& spec, const std::function<double(double)>& weight);

/// E(exp(-rate * T)).
double survival_expectation(const DelaySpec& spec, double rate);

/// The three model delays: vector incubation, host incubation, immunity.
struct DelaySet {
    DelaySpec t1 = DelaySpec::point_mass(0.0);
    DelaySpec t2 = DelaySpec::point_mass(0.0);
    DelaySpec t3 = DelaySpec::point_mass(0.0);

    /// max(h1 + h2, h3): how far back the history must reach.
    double max_horizon() const { return std::max(t1.hi() + t2.hi(), t3.hi()); }
};

} // namespace seirs
