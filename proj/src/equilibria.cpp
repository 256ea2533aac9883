#include "allee/equilibria.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace allee {

namespace {

std::string fmt(double x)
{
    std::ostringstream os;
    os.precision(6);
    os << x;
    return os.str();
}

bool degenerate(double disc, double scale)
{
    return std::abs(disc) <= root_tol * std::max(1.0, scale);
}

struct CoexistenceCandidate {
    EquilibriumLabel label;
    double N;
};

std::vector<CoexistenceCandidate> coexistence_candidates(const ModelParams& p)
{
    const double D2 = coexistence_discriminant(p);
    const double scale = std::max(p.c * p.c, 4.0 * p.b * p.delta * p.delta);
    if (degenerate(D2, scale)) {
        return {{EquilibriumLabel::E6, p.c / (2.0 * p.delta)}};
    }
    if (D2 < 0.0) return {};
    // N4 * N5 = b, so the smaller root avoids cancellation.
    const double N4 = (p.c + std::sqrt(D2)) / (2.0 * p.delta);
    const double N5 = p.b / N4;
    return {{EquilibriumLabel::E4, N4}, {EquilibriumLabel::E5, N5}};
}

}  // namespace

std::string_view to_string(EquilibriumLabel label)
{
    static constexpr std::string_view names[] = {"E0", "E1", "E2", "E3", "E4", "E5", "E6"};
    return names[static_cast<int>(label)];
}

std::string_view to_string(EquilibriumKind kind)
{
    switch (kind) {
    case EquilibriumKind::Trivial: return "Trivial";
    case EquilibriumKind::Axial: return "Axial";
    case EquilibriumKind::Coexistence: return "Coexistence";
    }
    return "?";
}

const Equilibrium* ExistenceReport::find(EquilibriumLabel label) const
{
    for (const auto& e : equilibria) {
        if (e.label == label) return &e;
    }
    return nullptr;
}

double axial_discriminant(const ModelParams& p)
{
    return (p.K - p.w) * (p.K - p.w) - 4.0 * p.K * (p.h - p.w);
}

double coexistence_discriminant(const ModelParams& p)
{
    return p.c * p.c - 4.0 * p.b * p.delta * p.delta;
}

std::vector<AxialRoot> axial_roots(const ModelParams& p)
{
    const double B = p.K - p.w;          // sum of roots
    const double C = p.K * (p.h - p.w);  // product of roots
    const double D1 = axial_discriminant(p);
    std::vector<AxialRoot> roots;

    if (degenerate(D1, std::max(B * B, 4.0 * std::abs(C)))) {
        const double N3 = B / 2.0;
        if (N3 > 0.0) roots.push_back({EquilibriumLabel::E3, N3});
        return roots;
    }
    if (D1 < 0.0) return roots;

    const double sq = std::sqrt(D1);
    double N1, N2;
    if (B >= 0.0) {
        N1 = (B + sq) / 2.0;
        N2 = N1 != 0.0 ? C / N1 : 0.0;
    } else {
        N2 = (B - sq) / 2.0;
        N1 = N2 != 0.0 ? C / N2 : 0.0;
    }
    if (N1 > 0.0) roots.push_back({EquilibriumLabel::E1, N1});
    if (N2 > 0.0) roots.push_back({EquilibriumLabel::E2, N2});
    return roots;
}

double prey_nullcline_P(const ModelParams& p, double N)
{
    const double bracket = (p.K - p.w) * N - p.K * (p.h - p.w) - N * N;
    return p.r * (p.b + N * N) * bracket / (p.K * p.a * (p.w + N));
}

std::vector<Equilibrium> coexistence_points(const ModelParams& p)
{
    std::vector<Equilibrium> out;
    for (const auto& cand : coexistence_candidates(p)) {
        const double P = prey_nullcline_P(p, cand.N);
        if (P > coexistence_p_tol) {
            out.push_back({cand.label, EquilibriumKind::Coexistence, {cand.N, P}});
        }
    }
    return out;
}

ExistenceReport all_equilibria(const ModelParams& p)
{
    ExistenceReport rep;
    rep.D1 = axial_discriminant(p);
    rep.D2 = coexistence_discriminant(p);
    rep.equilibria.push_back({EquilibriumLabel::E0, EquilibriumKind::Trivial, {0.0, 0.0}});
    rep.notes.push_back("E0 = (0,0) always exists");

    const AlleeRegime regime = allee_regime(p);
    const double h_fold = (p.K + p.w) * (p.K + p.w) / (4.0 * p.K);
    const auto axial = axial_roots(p);

    if (regime == AlleeRegime::Weak) {
        rep.notes.push_back("weak Allee effect (h < w): Theorem 4, E1 exists and is unique");
    } else if (regime == AlleeRegime::Boundary) {
        rep.notes.push_back("boundary Allee case (h = w): the zero root coincides with E0");
    } else if (p.K <= p.w) {
        rep.notes.push_back("strong Allee effect with K <= w: outside Theorem 5 hypothesis (K > w); no positive axial roots");
    } else if (axial.size() == 1 && axial.front().label == EquilibriumLabel::E3) {
        rep.notes.push_back("strong Allee effect, h = (K+w)^2/4K = " + fmt(h_fold) + ": Theorem 5(ii), single axial point E3");
    } else if (axial.empty()) {
        rep.notes.push_back("strong Allee effect, h > (K+w)^2/4K = " + fmt(h_fold) + ": Theorem 5(i), no axial points");
    } else {
        rep.notes.push_back("strong Allee effect, h < (K+w)^2/4K = " + fmt(h_fold) + ": Theorem 5(iii), axial points E1 and E2");
    }
    for (const auto& root : axial) {
        rep.equilibria.push_back({root.label, EquilibriumKind::Axial, {root.N, 0.0}});
    }

    const auto candidates = coexistence_candidates(p);
    if (candidates.empty()) {
        rep.notes.push_back("D2 = " + fmt(rep.D2) + " < 0 (b > (c/2delta)^2): Theorem 6(i), no coexistence points");
    } else if (candidates.size() == 1) {
        rep.notes.push_back("D2 = 0 (b = (c/2delta)^2): Theorem 6(ii), single candidate N6 = c/2delta");
    } else {
        rep.notes.push_back("D2 = " + fmt(rep.D2) + " > 0 (b < (c/2delta)^2): Theorem 6(iii), candidates N4 and N5");
    }
    for (const auto& cand : candidates) {
        const double P = prey_nullcline_P(p, cand.N);
        const std::string where = std::string(to_string(cand.label)) + " at N = " + fmt(cand.N);
        if (P > coexistence_p_tol) {
            rep.equilibria.push_back({cand.label, EquilibriumKind::Coexistence, {cand.N, P}});
            rep.notes.push_back(where + ": P = " + fmt(P) + " > 0, exists");
        } else if (std::abs(P) <= coexistence_p_tol) {
            rep.notes.push_back(where + ": P = " + fmt(P) + " is zero within tolerance, boundary-degenerate (meets the prey axis), not reported");
        } else {
            rep.notes.push_back(where + ": P = " + fmt(P) + " < 0, rejected");
        }
    }
    return rep;
}

}  // namespace allee
