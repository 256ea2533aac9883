#pragma once

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "allee/equilibria.hpp"
#include "allee/errors.hpp"
#include "allee/model.hpp"

namespace allee {

/// Components in (-clamp_band, 0) are rounded up to zero after each step;
/// anything more negative rejects the step.
inline constexpr double clamp_band = 1e-12;

struct IntegratorConfig {
    double rel_tol = 1e-8;
    double abs_tol = 1e-10;
    double h_init = 1e-3;
    double h_min = 1e-12;
    double h_max = 1.0;
    double t_end = 2000.0;
    std::size_t max_steps = 2'000'000;

    bool operator==(const IntegratorConfig&) const = default;
    void validate() const;
};

/// Tail-window attractor classification thresholds.
struct ClassifierConfig {
    double tail_frac = 0.25;
    double fp_tol = 1e-3;
    double cycle_amp_tol = 1e-2;

    bool operator==(const ClassifierConfig&) const = default;
    void validate() const;
};

class IntegrationError : public NumericalError {
public:
    enum class Kind { StepSizeUnderflow, MaxStepsExceeded };

    IntegrationError(Kind kind, const std::string& what) : NumericalError(what), kind_(kind) {}
    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

struct Trajectory {
    std::vector<double> times;
    std::vector<State> states;
    ModelParams params;
    std::size_t accepted_steps = 0;
    std::size_t rejected_steps = 0;
};

/// Dormand-Prince 5(4) with per-component error control
/// |err_i| <= abs_tol + rel_tol * |y_i|.
Trajectory integrate(const ModelParams& p, const State& s0, const IntegratorConfig& cfg);

struct FixedPoint {
    EquilibriumLabel label;
    State state;
};

struct LimitCycle {
    double N_min, N_max, P_min, P_max;
    double period_estimate;  // 0 when fewer than two upward crossings were seen
};

struct Undetermined {};

using AttractorId = std::variant<FixedPoint, LimitCycle, Undetermined>;

/// "E0".."E6", "LC" or "Undetermined".
std::string attractor_label(const AttractorId& id);
bool same_attractor(const AttractorId& x, const AttractorId& y);
bool is_fixed_point(const AttractorId& id, EquilibriumLabel label);
bool is_limit_cycle(const AttractorId& id);

struct TailExtrema {
    double N_min, N_max, P_min, P_max;
};

/// Index of the first sample in the last tail_frac of the time span.
std::size_t tail_begin(const Trajectory& traj, double tail_frac);
TailExtrema tail_extrema(const Trajectory& traj, double tail_frac);

AttractorId classify_attractor(const ModelParams& p, const Trajectory& traj, const ExistenceReport& eqs,
                               const ClassifierConfig& cls = {});

}  // namespace allee
