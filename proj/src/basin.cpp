#include "allee/basin.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>

#include "allee/format.hpp"

namespace allee {

void GridSpec::validate() const
{
    if (!(std::isfinite(N_lo) && std::isfinite(N_hi) && N_lo < N_hi)) throw ValidationError("grid requires N_lo < N_hi");
    if (!(std::isfinite(P_lo) && std::isfinite(P_hi) && P_lo < P_hi)) throw ValidationError("grid requires P_lo < P_hi");
    if (N_lo < 0.0 || P_lo < 0.0) throw ValidationError("grid must lie in the first quadrant");
    if (nN < 2 || nP < 2) throw ValidationError("grid resolution must be at least 2x2");
}

State GridSpec::cell_center(std::size_t iN, std::size_t iP) const
{
    return {N_lo + (static_cast<double>(iN) + 0.5) * (N_hi - N_lo) / static_cast<double>(nN),
            P_lo + (static_cast<double>(iP) + 0.5) * (P_hi - P_lo) / static_cast<double>(nP)};
}

AttractorId classify_initial_state(const ModelParams& p, const ExistenceReport& eqs, const State& s0,
                                   const IntegratorConfig& cfg, const ClassifierConfig& cls)
{
    if (s0.N == 0.0) return FixedPoint{EquilibriumLabel::E0, {0.0, 0.0}};
    try {
        return classify_attractor(p, integrate(p, s0, cfg), eqs, cls);
    } catch (const NumericalError&) {
        return Undetermined{};
    }
}

namespace {

BasinGrid prepare(const ModelParams& p, const GridSpec& grid, const IntegratorConfig& cfg,
                  const ClassifierConfig& cls)
{
    p.validate();
    grid.validate();
    cfg.validate();
    cls.validate();
    BasinGrid g;
    g.spec = grid;
    g.params = p;
    g.cells.assign(grid.nN * grid.nP, Undetermined{});
    return g;
}

}  // namespace

BasinGrid compute_basin(const ModelParams& p, const GridSpec& grid, const IntegratorConfig& cfg,
                        const ClassifierConfig& cls)
{
    BasinGrid g = prepare(p, grid, cfg, cls);
    const ExistenceReport eqs = all_equilibria(p);
    const auto n = static_cast<std::ptrdiff_t>(g.cells.size());

#pragma omp parallel for schedule(dynamic, 4)
    for (std::ptrdiff_t k = 0; k < n; ++k) {
        const auto idx = static_cast<std::size_t>(k);
        const State s0 = grid.cell_center(idx % grid.nN, idx / grid.nN);
        g.cells[idx] = classify_initial_state(p, eqs, s0, cfg, cls);
    }
    return g;
}

BasinGrid compute_basin_serial(const ModelParams& p, const GridSpec& grid, const IntegratorConfig& cfg,
                               const ClassifierConfig& cls)
{
    BasinGrid g = prepare(p, grid, cfg, cls);
    const ExistenceReport eqs = all_equilibria(p);
    for (std::size_t iP = 0; iP < grid.nP; ++iP) {
        for (std::size_t iN = 0; iN < grid.nN; ++iN) {
            g.cells[iP * grid.nN + iN] = classify_initial_state(p, eqs, grid.cell_center(iN, iP), cfg, cls);
        }
    }
    return g;
}

double BasinSummary::share(const std::string& label) const
{
    for (const auto& a : attractors) {
        if (a.label == label) return a.fraction;
    }
    return 0.0;
}

BasinSummary bistability_report(const BasinGrid& g)
{
    BasinSummary out;
    std::map<std::string, AttractorShare> by_label;
    for (const auto& cell : g.cells) {
        auto label = attractor_label(cell);
        auto [it, inserted] = by_label.try_emplace(label, AttractorShare{label, cell, 0, 0.0});
        ++it->second.cells;
    }
    for (auto& [label, share] : by_label) {
        share.fraction = static_cast<double>(share.cells) / static_cast<double>(g.cells.size());
        out.attractors.push_back(share);
    }

    const std::size_t nN = g.spec.nN;
    const std::size_t nP = g.spec.nP;
    for (std::size_t iP = 0; iP < nP; ++iP) {
        for (std::size_t iN = 0; iN < nN; ++iN) {
            const AttractorId& here = g.at(iN, iP);
            const bool differs = (iN > 0 && !same_attractor(here, g.at(iN - 1, iP))) ||
                                 (iN + 1 < nN && !same_attractor(here, g.at(iN + 1, iP))) ||
                                 (iP > 0 && !same_attractor(here, g.at(iN, iP - 1))) ||
                                 (iP + 1 < nP && !same_attractor(here, g.at(iN, iP + 1)));
            if (differs) out.boundary_cells.emplace_back(iN, iP);
        }
    }
    return out;
}

void basin_export(std::ostream& os, const BasinGrid& g)
{
    os << "N0,P0,attractor_label\n";
    for (std::size_t iP = 0; iP < g.spec.nP; ++iP) {
        for (std::size_t iN = 0; iN < g.spec.nN; ++iN) {
            const State s0 = g.spec.cell_center(iN, iP);
            os << format_double(s0.N) << ',' << format_double(s0.P) << ',' << attractor_label(g.at(iN, iP)) << '\n';
        }
    }
    if (!os) throw std::ios_base::failure("failed to write basin grid");
}

}  // namespace allee
