#pragma once

#include <complex>
#include <optional>
#include <string>
#include <string_view>

#include "allee/equilibria.hpp"
#include "allee/model.hpp"

namespace allee {

/// Real parts within this distance of zero are treated as non-hyperbolic.
inline constexpr double hyp_tol = 1e-8;
/// An equilibrium must annihilate the vector field to this level before it is classified.
inline constexpr double classify_residual_tol = 1e-6;

struct EigenPair {
    std::complex<double> lambda1;
    std::complex<double> lambda2;
};

enum class StabilityClass { StableNode, StableFocus, UnstableNode, UnstableFocus, Saddle, NonHyperbolic };

std::string_view to_string(StabilityClass cls);
bool is_stable(StabilityClass cls);

/// What the analytic existence/stability theorems predict, when their hypotheses hold.
enum class Prediction { Stable, Unstable, NonHyperbolic };

struct StabilityReport {
    Equilibrium equilibrium;
    EigenPair eigen;
    double trace = 0.0;
    double det = 0.0;
    StabilityClass classification = StabilityClass::NonHyperbolic;
    std::string theorem_note;
    std::optional<Prediction> predicted;
};

/// Roots of l^2 - tr l + det = 0 without cancellation between tr and the square root.
EigenPair eigenvalues_2x2(const Matrix2& m);

StabilityClass classify_eigen(const EigenPair& eig, double det);

StabilityReport classify(const ModelParams& p, const Equilibrium& e);

/// c at which E1 exchanges stability: delta (b + N1^2) / N1.
double e1_transcritical_c(const ModelParams& p);

/// Trace of the Jacobian at E5, evaluated in the reduced coexistence form.
double coexistence_trace(const ModelParams& p);

/// Determinant of the Jacobian at E5.
double coexistence_det(const ModelParams& p);

}  // namespace allee
