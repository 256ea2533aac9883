#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "allee/model.hpp"

namespace allee {

enum class EquilibriumLabel { E0, E1, E2, E3, E4, E5, E6 };
enum class EquilibriumKind { Trivial, Axial, Coexistence };

std::string_view to_string(EquilibriumLabel label);
std::string_view to_string(EquilibriumKind kind);

struct Equilibrium {
    EquilibriumLabel label = EquilibriumLabel::E0;
    EquilibriumKind kind = EquilibriumKind::Trivial;
    State state;
};

struct AxialRoot {
    EquilibriumLabel label;
    double N;
};

struct ExistenceReport {
    double D1 = 0.0;  // (K-w)^2 - 4K(h-w)
    double D2 = 0.0;  // c^2 - 4 b delta^2
    std::vector<Equilibrium> equilibria;
    std::vector<std::string> notes;

    /// nullptr when the label is absent.
    const Equilibrium* find(EquilibriumLabel label) const;
};

/// Absolute tolerance on scaled discriminants deciding the double-root branches.
inline constexpr double root_tol = 1e-10;
/// Coexistence candidates with |P| at or below this are degenerate, not existing.
inline constexpr double coexistence_p_tol = 1e-10;

double axial_discriminant(const ModelParams& p);
double coexistence_discriminant(const ModelParams& p);

/// Strictly positive roots of N^2 - (K-w)N + K(h-w) = 0. E1 is the larger root,
/// E2 the smaller, E3 the double root.
std::vector<AxialRoot> axial_roots(const ModelParams& p);

/// Predator level on the prey nullcline at N, sign included.
double prey_nullcline_P(const ModelParams& p, double N);

/// Coexistence points with strictly positive predator level.
std::vector<Equilibrium> coexistence_points(const ModelParams& p);

ExistenceReport all_equilibria(const ModelParams& p);

}  // namespace allee
