#pragma once

#include <span>
#include <string>
#include <vector>

namespace seirs {

enum class IncidenceFamily {
    Holling2,            // a1 x / (1 + x)
    Saturating,          // x / (1 + theta x)
    QuadraticSaturating, // x / (1 + theta x^2)
    Linear,              // x
};

std::string to_string(IncidenceFamily f);
IncidenceFamily incidence_family_from_string(const std::string& name);

/// Nonlinear incidence function G with closed-form derivatives.
class IncidenceModel {
public:
    static IncidenceModel holling2(double a1);
    static IncidenceModel saturating(double theta);
    static IncidenceModel quadratic_saturating(double theta);
    static IncidenceModel linear();

    IncidenceFamily family() const noexcept { return family_; }
    /// a1 for holling2, theta for the saturating families, unused for linear.
    double parameter() const noexcept { return param_; }
    std::string name() const;

    double operator()(double x) const { return value(x); }
    double value(double x) const;
    double derivative(double x) const;
    double second_derivative(double x) const;
    double derivative_at_zero() const { return derivative(0.0); }

private:
    IncidenceModel(IncidenceFamily f, double p) : family_(f), param_(p) {}

    IncidenceFamily family_;
    double param_;
};

enum class AxiomStatus { Pass, Fail, Boundary };

std::string to_string(AxiomStatus s);

struct AxiomResult {
    std::string axiom;   // "A1" .. "A6"
    AxiomStatus status = AxiomStatus::Pass;
    std::string detail;  // first violation or summary
};

struct AxiomReport {
    std::string incidence;
    std::vector<AxiomResult> results; // always A1..A6 in order
    double derivative_at_zero = 0.0;

    /// All axioms Pass (Boundary counts as not passing).
    bool all_pass() const;
    const AxiomResult& at(const std::string& axiom) const;
};

/// Default validation grid: 200 log-spaced points on [1e-6, 10].
std::vector<double> standard_grid(int points = 200, double lo = 1e-6, double hi = 10.0);

/// Empirical check of the incidence axioms A1-A6 on `grid`.
/// The grid must be strictly increasing, positive, have at least 50 points
/// and cover [1e-6, 10]; a ValidationError is thrown otherwise.
AxiomReport validate_incidence(const IncidenceModel& g, std::span<const double> grid);

} // namespace seirs
