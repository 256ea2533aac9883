#pragma once

#include <string>
#include <string_view>

namespace allee {

/// Positive constants of the predator-prey model with additive Allee effect
/// and Holling type IV predation.
struct ModelParams {
    double r = 1.0;      // intrinsic prey growth rate
    double K = 1.0;      // prey carrying capacity
    double w = 0.3;      // population at which prey fitness is half maximal
    double h = 0.2;      // Allee severity
    double a = 0.6;      // predation rate
    double b = 0.7;      // half-saturation of predation (group defense)
    double c = 0.3;      // predator conversion rate
    double delta = 0.1;  // predator death rate

    bool operator==(const ModelParams&) const = default;

    /// Throws ValidationError naming the first non-positive (or non-finite) field.
    void validate() const;

    /// True when w >= K; the model is usually studied with w < K.
    bool allee_scale_warning() const { return w >= K; }

    /// Access by field name ("r", "K"/"k", "w", "h", "a", "b", "c", "delta").
    double get(std::string_view name) const;
    void set(std::string_view name, double value);
    static bool is_field(std::string_view name);
};

struct State {
    double N = 0.0;
    double P = 0.0;

    bool operator==(const State&) const = default;
};

struct Matrix2 {
    double a11 = 0.0, a12 = 0.0;
    double a21 = 0.0, a22 = 0.0;

    double trace() const { return a11 + a22; }
    double det() const { return a11 * a22 - a12 * a21; }
};

enum class AlleeRegime { Weak, Strong, Boundary };

std::string_view to_string(AlleeRegime regime);

/// Right-hand side (dN/dt, dP/dt).
State vector_field(const ModelParams& p, const State& s);

/// Analytic Jacobian of the vector field.
Matrix2 jacobian(const ModelParams& p, const State& s);

/// Weak when h < w, strong when h > w, Boundary on exact equality.
AlleeRegime allee_regime(const ModelParams& p);

/// The canonical parameter sets used throughout the tests and examples.
namespace scenarios {
/// Predation-conversion study: r=1, K=1, w=0.3, a=0.6, b=0.7, delta=0.1.
ModelParams conversion_rate(double c, double h);
/// Group-defense study: r=1, K=1, w=0.3, a=0.6, c=0.2, delta=0.1.
ModelParams protection_rate(double b, double h);
}  // namespace scenarios

}  // namespace allee
