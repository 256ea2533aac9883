#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "allee/dynamics.hpp"
#include "allee/equilibria.hpp"
#include "allee/stability.hpp"

namespace allee {

struct EquilibriumSummary {
    EquilibriumLabel label;
    State state;
    StabilityClass classification;
};

struct SweepRecord {
    std::string param_name;
    double param_value = 0.0;
    std::vector<EquilibriumSummary> equilibria_summary;
    AttractorId attractor = Undetermined{};
    /// Extent of the attractor: the equilibrium itself for a fixed point,
    /// tail extrema otherwise.
    double N_min = 0.0, N_max = 0.0, P_min = 0.0, P_max = 0.0;
    /// Raw tail extrema of the probe trajectory.
    TailExtrema tail{};
    /// Non-empty when the probe integration failed.
    std::string error;

    const EquilibriumSummary* find(EquilibriumLabel label) const;
};

enum class CriticalKind { Transcritical, Hopf, CoexistenceFold, AxialDegenerate };
enum class CriticalMethod { Analytic, RootFind, SweepDetect };

std::string_view to_string(CriticalKind kind);
std::string_view to_string(CriticalMethod method);

struct CriticalPoint {
    CriticalKind kind;
    std::string param_name;
    double value;
    CriticalMethod method;
};

class HopfError : public NumericalError {
public:
    enum class Kind { NoSignChange, E5Vanished, NotHopf };

    HopfError(Kind kind, const std::string& what) : NumericalError(what), kind_(kind) {}
    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

/// Floor applied to each component of a warm-start state, so that a probe
/// parked on an invariant axis can leave it after a stability change.
inline constexpr double warm_start_floor = 1e-3;

std::vector<EquilibriumSummary> summarize_equilibria(const ModelParams& p);

/// Evenly spaced parameter values lo..hi (inclusive).
std::vector<double> sweep_values(double lo, double hi, std::size_t steps);

/// One-parameter continuation of the attractor with warm-started probe trajectories.
std::vector<SweepRecord> sweep(const ModelParams& p, std::string_view param_name, double lo, double hi,
                               std::size_t steps, const State& probe_s0, const IntegratorConfig& cfg = {},
                               const ClassifierConfig& cls = {});

/// Equilibria and local stability along a parameter range, without integration.
std::vector<SweepRecord> stability_scan(const ModelParams& p, std::string_view param_name, double lo, double hi,
                                        std::size_t steps);

/// Midpoints between consecutive records where the named equilibrium changes
/// between stable and not stable.
std::vector<CriticalPoint> sweep_detect(const std::vector<SweepRecord>& records, EquilibriumLabel label,
                                        CriticalKind kind);

/// E1 exchange of stability; param_name is "c" or "b".
CriticalPoint transcritical_point(const ModelParams& p, std::string_view param_name);

/// Root of tr(J_E5) in [lo, hi] by bisection.
CriticalPoint hopf_point(const ModelParams& p, std::string_view param_name, double lo, double hi);

/// Parameter values where D2 = 0 or D1 = 0, when they are positive.
std::vector<CriticalPoint> fold_points(const ModelParams& p, std::string_view param_name);

void diagram_export(std::ostream& os, const std::vector<SweepRecord>& records,
                    const std::vector<CriticalPoint>& critical_points);

}  // namespace allee
