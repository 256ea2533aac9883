#include "allee/stability.hpp"

#include <cmath>
#include <sstream>

#include "allee/errors.hpp"

namespace allee {

namespace {

std::string fmt(double x)
{
    std::ostringstream os;
    os.precision(6);
    os << x;
    return os.str();
}

double residual(const ModelParams& p, const State& s)
{
    const State f = vector_field(p, s);
    return std::max(std::abs(f.N), std::abs(f.P));
}

/// Sign of lambda2 = (cN - delta(b+N^2)) / (b+N^2) on the prey axis.
double axial_predator_rate(const ModelParams& p, double N)
{
    return (p.c * N - p.delta * (p.b + N * N)) / (p.b + N * N);
}

void annotate(const ModelParams& p, StabilityReport& rep)
{
    const Equilibrium& e = rep.equilibrium;
    const AlleeRegime regime = allee_regime(p);

    switch (e.label) {
    case EquilibriumLabel::E0: {
        const double lambda1 = p.r * (p.w - p.h) / p.w;
        if (regime == AlleeRegime::Strong) {
            rep.theorem_note = "Theorem 7: strong Allee effect (h > w), E0 locally asymptotically stable";
            if (std::abs(lambda1) > hyp_tol) rep.predicted = Prediction::Stable;
        } else if (regime == AlleeRegime::Weak) {
            rep.theorem_note = "Theorem 7: weak Allee effect (h < w), E0 unstable (saddle)";
            if (std::abs(lambda1) > hyp_tol) rep.predicted = Prediction::Unstable;
        } else {
            rep.theorem_note = "h = w: eigenvalue r(w-h)/w vanishes, E0 non-hyperbolic";
            rep.predicted = Prediction::NonHyperbolic;
        }
        return;
    }
    case EquilibriumLabel::E1:
    case EquilibriumLabel::E2:
    case EquilibriumLabel::E3: {
        const double N = e.state.N;
        const double threshold = p.delta * (p.b + N * N) / N;
        // Triangular on the prey axis: eigenvalues are a11 and a22.
        const double lambda1 = jacobian(p, e.state).a11;
        const double lambda2 = axial_predator_rate(p, N);
        const bool margin = std::abs(lambda1) > hyp_tol && std::abs(lambda2) > hyp_tol;
        if (regime != AlleeRegime::Strong && e.label == EquilibriumLabel::E1) {
            if (p.c < threshold) {
                rep.theorem_note = "Theorem 8: weak Allee effect, c = " + fmt(p.c) + " < c* = " + fmt(threshold) +
                                   ", E1 locally asymptotically stable";
                if (margin) rep.predicted = Prediction::Stable;
            } else {
                rep.theorem_note = "Theorem 8: weak Allee effect, c = " + fmt(p.c) + " > c* = " + fmt(threshold) +
                                   ", E1 unstable (saddle)";
                if (margin) rep.predicted = Prediction::Unstable;
            }
            return;
        }
        if (p.K <= p.w) {
            rep.theorem_note = "K <= w: outside Theorem 9 hypothesis; classified from eigenvalues only";
            return;
        }
        if (!(p.c < threshold)) {
            rep.theorem_note = "Theorem 9 hypothesis c < delta(b+N^2)/N = " + fmt(threshold) + " not met; predator invades";
            if (e.label == EquilibriumLabel::E3) rep.predicted = Prediction::NonHyperbolic;
            else if (margin) rep.predicted = Prediction::Unstable;
            return;
        }
        if (e.label == EquilibriumLabel::E3) {
            rep.theorem_note = "Theorem 9(i): h = (K+w)^2/4K, E3 non-hyperbolic";
            rep.predicted = Prediction::NonHyperbolic;
        } else if (e.label == EquilibriumLabel::E1) {
            rep.theorem_note = "Theorem 9(ii): h < (K+w)^2/4K, E1 locally asymptotically stable";
            if (margin) rep.predicted = Prediction::Stable;
        } else {
            rep.theorem_note = "Theorem 9(ii): h < (K+w)^2/4K, E2 unstable (saddle)";
            if (margin) rep.predicted = Prediction::Unstable;
        }
        return;
    }
    case EquilibriumLabel::E4:
        rep.theorem_note = "Theorem 10(ii): det(J_E4) = " + fmt(rep.det) + " < 0, E4 unstable";
        if (std::abs(rep.det) > hyp_tol) rep.predicted = Prediction::Unstable;
        return;
    case EquilibriumLabel::E5: {
        // det > 0 here; the slower real eigenvalue is roughly det/|tr|.
        const bool margin = std::abs(rep.trace) > 2.0 * hyp_tol && rep.det > 2.0 * hyp_tol * std::max(1.0, std::abs(rep.trace));
        if (rep.trace < 0.0) {
            rep.theorem_note = "Theorem 10(ii): det > 0 and tr(J_E5) = " + fmt(rep.trace) +
                               " < 0, E5 locally asymptotically stable";
            if (margin) rep.predicted = Prediction::Stable;
        } else {
            rep.theorem_note = "det > 0 but tr(J_E5) = " + fmt(rep.trace) +
                               " >= 0: Theorem 10(ii) stability condition fails, E5 unstable";
            if (margin) rep.predicted = Prediction::Unstable;
        }
        return;
    }
    case EquilibriumLabel::E6:
        rep.theorem_note = "Theorem 10(i): b = (c/2delta)^2, E6 non-hyperbolic";
        rep.predicted = Prediction::NonHyperbolic;
        return;
    }
}

const Equilibrium& require_e5(const ModelParams& p, std::vector<Equilibrium>& storage)
{
    storage = coexistence_points(p);
    for (const auto& e : storage) {
        if (e.label == EquilibriumLabel::E5) return e;
    }
    throw NumericalError("E5 does not exist for these parameters (D2 = " + fmt(coexistence_discriminant(p)) + ")");
}

}  // namespace

std::string_view to_string(StabilityClass cls)
{
    switch (cls) {
    case StabilityClass::StableNode: return "StableNode";
    case StabilityClass::StableFocus: return "StableFocus";
    case StabilityClass::UnstableNode: return "UnstableNode";
    case StabilityClass::UnstableFocus: return "UnstableFocus";
    case StabilityClass::Saddle: return "Saddle";
    case StabilityClass::NonHyperbolic: return "NonHyperbolic";
    }
    return "?";
}

bool is_stable(StabilityClass cls)
{
    return cls == StabilityClass::StableNode || cls == StabilityClass::StableFocus;
}

EigenPair eigenvalues_2x2(const Matrix2& m)
{
    const double tr = m.trace();
    const double det = m.det();
    const double disc = tr * tr - 4.0 * det;
    if (disc < 0.0) {
        const double re = tr / 2.0;
        const double im = std::sqrt(-disc) / 2.0;
        return {{re, im}, {re, -im}};
    }
    const double q = (tr + std::copysign(std::sqrt(disc), tr)) / 2.0;
    if (q == 0.0) return {{0.0, 0.0}, {0.0, 0.0}};
    return {{q, 0.0}, {det / q, 0.0}};
}

StabilityClass classify_eigen(const EigenPair& eig, double det)
{
    const double re1 = eig.lambda1.real();
    const double re2 = eig.lambda2.real();
    if (std::abs(re1) <= hyp_tol || std::abs(re2) <= hyp_tol) return StabilityClass::NonHyperbolic;
    if (det < -hyp_tol || (re1 > 0.0) != (re2 > 0.0)) return StabilityClass::Saddle;
    const bool focus = std::abs(eig.lambda1.imag()) > hyp_tol;
    if (re1 < 0.0) return focus ? StabilityClass::StableFocus : StabilityClass::StableNode;
    return focus ? StabilityClass::UnstableFocus : StabilityClass::UnstableNode;
}

StabilityReport classify(const ModelParams& p, const Equilibrium& e)
{
    const double res = residual(p, e.state);
    if (!(res <= classify_residual_tol)) {
        throw NumericalError(std::string(to_string(e.label)) + " residual " + fmt(res) +
                             " exceeds tolerance; equilibrium does not belong to these parameters");
    }
    StabilityReport rep;
    rep.equilibrium = e;
    const Matrix2 J = jacobian(p, e.state);
    rep.trace = J.trace();
    rep.det = J.det();
    rep.eigen = eigenvalues_2x2(J);
    rep.classification = classify_eigen(rep.eigen, rep.det);
    annotate(p, rep);
    return rep;
}

double e1_transcritical_c(const ModelParams& p)
{
    if (allee_regime(p) == AlleeRegime::Strong) {
        throw NumericalError("transcritical threshold requires a weak Allee effect (h <= w)");
    }
    const auto roots = axial_roots(p);
    if (roots.size() != 1 || roots.front().label != EquilibriumLabel::E1) {
        throw NumericalError("transcritical threshold requires a unique axial equilibrium E1");
    }
    const double N1 = roots.front().N;
    return p.delta * (p.b + N1 * N1) / N1;
}

double coexistence_trace(const ModelParams& p)
{
    std::vector<Equilibrium> storage;
    const State s = require_e5(p, storage).state;
    const double N = s.N;
    const double P = s.P;
    const double wn = p.w + N;
    const double den = p.b + N * N;
    return p.h * p.r * N / (wn * wn) + 2.0 * p.a * N * N * P / (den * den) - p.r * N / p.K;
}

double coexistence_det(const ModelParams& p)
{
    std::vector<Equilibrium> storage;
    return jacobian(p, require_e5(p, storage).state).det();
}

}  // namespace allee
