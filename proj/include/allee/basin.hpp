#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "allee/dynamics.hpp"

namespace allee {

struct GridSpec {
    double N_lo = 0.0, N_hi = 1.0;
    double P_lo = 0.0, P_hi = 1.0;
    std::size_t nN = 41, nP = 41;

    bool operator==(const GridSpec&) const = default;
    void validate() const;

    /// Cell-center sampling.
    State cell_center(std::size_t iN, std::size_t iP) const;
};

struct BasinGrid {
    GridSpec spec;
    ModelParams params;
    /// Row-major in P: cells[iP * nN + iN].
    std::vector<AttractorId> cells;

    const AttractorId& at(std::size_t iN, std::size_t iP) const { return cells[iP * spec.nN + iN]; }
};

/// Attractor reached from one initial state. States on the P axis (N = 0)
/// collapse to E0 without integration; integrator failures give Undetermined.
AttractorId classify_initial_state(const ModelParams& p, const ExistenceReport& eqs, const State& s0,
                                   const IntegratorConfig& cfg, const ClassifierConfig& cls);

/// OpenMP-parallel over cells. Each cell depends only on its own initial
/// state, so the result equals compute_basin_serial exactly.
BasinGrid compute_basin(const ModelParams& p, const GridSpec& grid, const IntegratorConfig& cfg = {},
                        const ClassifierConfig& cls = {});

/// Single-threaded reference.
BasinGrid compute_basin_serial(const ModelParams& p, const GridSpec& grid, const IntegratorConfig& cfg = {},
                               const ClassifierConfig& cls = {});

struct AttractorShare {
    std::string label;
    AttractorId attractor;
    std::size_t cells = 0;
    double fraction = 0.0;
};

struct BasinSummary {
    std::vector<AttractorShare> attractors;  // sorted by label
    /// (iN, iP) cells with a differently classified 4-neighbour.
    std::vector<std::pair<std::size_t, std::size_t>> boundary_cells;

    /// 0 when the label is absent.
    double share(const std::string& label) const;
};

BasinSummary bistability_report(const BasinGrid& g);

/// CSV `N0,P0,attractor_label`, one row per cell.
void basin_export(std::ostream& os, const BasinGrid& g);

}  // namespace allee
