#include <doctest.h>

#include <cmath>
#include <random>

#include "allee/errors.hpp"
#include "allee/stability.hpp"
#include "oracles.hpp"

using namespace allee;

namespace {

Equilibrium require(const ModelParams& p, EquilibriumLabel label)
{
    const auto rep = all_equilibria(p);
    const Equilibrium* e = rep.find(label);
    REQUIRE(e != nullptr);
    return *e;
}

bool note_has(const StabilityReport& rep, const std::string& needle)
{
    return rep.theorem_note.find(needle) != std::string::npos;
}

/// Trace of the finite-difference Jacobian at the brute-force E5.
double fd_trace_at_e5(const ModelParams& p)
{
    const auto roots = oracle::coexistence_N(p);
    REQUIRE(roots.size() == 2);
    const double N5 = roots.front();
    const State s{N5, oracle::nullcline_P(p, N5)};
    return oracle::fd_jacobian(p, s, 1e-7).trace();
}

}  // namespace

TEST_CASE("eigenvalues_2x2: diagonal matrix")
{
    const auto eig = eigenvalues_2x2({1.0 / 3.0, 0.0, 0.0, -0.1});
    CHECK(eig.lambda1.real() == doctest::Approx(1.0 / 3.0));
    CHECK(eig.lambda2.real() == doctest::Approx(-0.1));
    CHECK(eig.lambda1.imag() == 0.0);
    CHECK(eig.lambda2.imag() == 0.0);
}

TEST_CASE("eigenvalues_2x2: rotation")
{
    const auto eig = eigenvalues_2x2({0.0, -1.0, 1.0, 0.0});
    CHECK(eig.lambda1.real() == 0.0);
    CHECK(std::abs(eig.lambda1.imag()) == doctest::Approx(1.0));
    CHECK(eig.lambda1.imag() == -eig.lambda2.imag());
    CHECK(classify_eigen(eig, 1.0) == StabilityClass::NonHyperbolic);
}

TEST_CASE("eigenvalues_2x2: Jacobian at E5 of the predation study")
{
    const ModelParams p = scenarios::conversion_rate(0.3, 0.2);
    const Matrix2 J = jacobian(p, require(p, EquilibriumLabel::E5).state);
    const auto eig = eigenvalues_2x2(J);
    CHECK(eig.lambda1.imag() != 0.0);
    CHECK(std::abs(eig.lambda1.real() - (-0.0120)) < 5e-4);
    // The reduced coexistence Jacobian is [[tr, -a delta/c], [(c - 2 delta N) P/(b+N^2), 0]];
    // without the factor a its determinant would be 0.0532.
    CHECK(std::abs(J.det() / p.a - 0.0532) < 5e-4);
    CHECK(std::abs(J.det() - 0.0319) < 5e-4);
    const Matrix2 F = oracle::fd_jacobian(p, require(p, EquilibriumLabel::E5).state);
    CHECK(std::abs(F.det() - J.det()) < 1e-8);
}

TEST_CASE("property: eigenvalue sum and product reproduce trace and determinant")
{
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int i = 0; i < 2000; ++i) {
        const Matrix2 m{u(rng), u(rng), u(rng), u(rng)};
        const auto eig = eigenvalues_2x2(m);
        const auto sum = eig.lambda1 + eig.lambda2;
        const auto prod = eig.lambda1 * eig.lambda2;
        CHECK(std::abs(sum.real() - m.trace()) < 1e-10);
        CHECK(std::abs(sum.imag()) < 1e-10);
        CHECK(std::abs(prod.real() - m.det()) < 1e-10);
        CHECK(std::abs(prod.imag()) < 1e-10);
    }
}

TEST_CASE("eigenvalues_2x2 avoids cancellation")
{
    // tr = 1e8, det = 1: small root is 1e-8, naive formula loses it entirely.
    const auto eig = eigenvalues_2x2({1e8, 0.0, 0.0, 1e-8});
    CHECK(eig.lambda2.real() == doctest::Approx(1e-8).epsilon(1e-12));
}

TEST_CASE("classify E0, strong Allee: stable node")
{
    const ModelParams p = scenarios::conversion_rate(0.3, 0.4);
    const auto rep = classify(p, require(p, EquilibriumLabel::E0));
    CHECK(rep.classification == StabilityClass::StableNode);
    CHECK(rep.trace == doctest::Approx(-1.0 / 3.0 - 0.1));
    CHECK(rep.det == doctest::Approx(0.1 / 3.0));
    CHECK(note_has(rep, "Theorem 7"));
    CHECK(rep.predicted == Prediction::Stable);
}

TEST_CASE("classify E1, weak Allee below threshold")
{
    const ModelParams p = scenarios::conversion_rate(0.1, 0.2);
    const auto rep = classify(p, require(p, EquilibriumLabel::E1));
    CHECK(rep.classification == StabilityClass::StableNode);
    CHECK(note_has(rep, "Theorem 8"));
    CHECK(note_has(rep, "0.167359"));
}

TEST_CASE("classify E5, predation study: stable focus")
{
    const ModelParams p = scenarios::conversion_rate(0.3, 0.2);
    const auto rep = classify(p, require(p, EquilibriumLabel::E5));
    CHECK(rep.classification == StabilityClass::StableFocus);
    CHECK(std::abs(rep.trace - (-0.0240)) < 1e-3);
    CHECK(rep.det > 0.0);
    CHECK(rep.trace * rep.trace < 4.0 * rep.det);
    CHECK(note_has(rep, "Theorem 10(ii)"));
}

TEST_CASE("classify E4 whenever it exists: saddle")
{
    // N4 + N5 = c/delta = 0.8 and N4 N5 = b = 0.12: N4 = 0.6 lies below the axial root 0.82.
    ModelParams p = scenarios::conversion_rate(0.08, 0.2);
    p.b = 0.12;
    const auto rep = all_equilibria(p);
    const Equilibrium* e4 = rep.find(EquilibriumLabel::E4);
    REQUIRE(e4 != nullptr);
    const auto s = classify(p, *e4);
    CHECK(s.det < 0.0);
    CHECK(s.classification == StabilityClass::Saddle);
    CHECK(note_has(s, "Theorem 10(ii)"));
}

TEST_CASE("classify rejects an equilibrium from other parameters")
{
    const ModelParams p = scenarios::conversion_rate(0.3, 0.2);
    const Equilibrium e5 = require(p, EquilibriumLabel::E5);
    CHECK_THROWS_AS(classify(scenarios::conversion_rate(0.4, 0.2), e5), NumericalError);
}

TEST_CASE("e1_transcritical_c")
{
    const ModelParams p = scenarios::conversion_rate(0.3, 0.2);
    const double c_star = e1_transcritical_c(p);
    CHECK(std::abs(c_star - 0.16736) < 1e-4);

    ModelParams at = p;
    at.c = c_star;
    const double N1 = axial_roots(at).front().N;
    CHECK(std::abs(at.c * N1 / (at.b + N1 * N1) - at.delta) < 1e-15);

    // Solved for b instead of c in the group-defense study.
    const ModelParams q = scenarios::protection_rate(0.7, 0.2);
    const double N1q = axial_roots(q).front().N;
    CHECK(std::abs(q.c * N1q / q.delta - N1q * N1q - 0.9682) < 1e-4);

    CHECK_THROWS_AS(e1_transcritical_c(scenarios::conversion_rate(0.3, 0.4)), NumericalError);
}

TEST_CASE("coexistence_trace")
{
    CHECK(std::abs(coexistence_trace(scenarios::conversion_rate(0.3, 0.2)) - (-0.0240)) < 1e-3);
    CHECK(std::abs(coexistence_trace(scenarios::conversion_rate(0.359, 0.2))) < 1e-3);
    CHECK(std::abs(coexistence_trace(scenarios::protection_rate(0.465, 0.2))) < 1e-3);
    CHECK_THROWS_AS(coexistence_trace(scenarios::conversion_rate(0.1, 0.2)), NumericalError);

    // The reduced trace equals the trace of the full Jacobian, checked against finite differences.
    for (double c : {0.2, 0.3, 0.4, 0.5}) {
        const ModelParams p = scenarios::conversion_rate(c, 0.2);
        CHECK(std::abs(coexistence_trace(p) - fd_trace_at_e5(p)) < 1e-6);
    }
}

TEST_CASE("E5 trace root by brute-force scan of the finite-difference trace")
{
    const auto roots = oracle::scan_roots(
        [](double c) { return fd_trace_at_e5(scenarios::conversion_rate(c, 0.2)); }, 0.3, 0.4, 400);
    REQUIRE(roots.size() == 1);
    CHECK(std::abs(roots[0] - 0.3588) < 1e-4);
}

TEST_CASE("non-hyperbolic detection at degenerate relations")
{
    SUBCASE("E3 at h = (K+w)^2/4K")
    {
        ModelParams p = scenarios::conversion_rate(0.1, 0.0);
        p.h = (p.K + p.w) * (p.K + p.w) / (4.0 * p.K);
        const auto rep = classify(p, require(p, EquilibriumLabel::E3));
        CHECK(std::abs(jacobian(p, rep.equilibrium.state).a11) < 1e-8);
        CHECK(rep.classification == StabilityClass::NonHyperbolic);
        CHECK(note_has(rep, "Theorem 9(i)"));
    }
    SUBCASE("E6 at b = (c/2delta)^2")
    {
        ModelParams p = scenarios::conversion_rate(0.08, 0.2);  // N6 = 0.4
        p.b = (p.c / (2.0 * p.delta)) * (p.c / (2.0 * p.delta));
        const auto rep = classify(p, require(p, EquilibriumLabel::E6));
        CHECK(std::abs(rep.det) < 1e-8);
        CHECK(rep.classification == StabilityClass::NonHyperbolic);
        CHECK(note_has(rep, "Theorem 10(i)"));
    }
    SUBCASE("E0 at h = w")
    {
        const ModelParams p = scenarios::conversion_rate(0.3, 0.3);
        CHECK(classify(p, require(p, EquilibriumLabel::E0)).classification == StabilityClass::NonHyperbolic);
    }
}

TEST_CASE("property: theorem predictions never contradict the eigenvalue class")
{
    std::mt19937_64 rng(1234);
    int checked = 0;
    for (int i = 0; i < 3000; ++i) {
        const ModelParams p = oracle::random_params(rng);
        for (const auto& e : all_equilibria(p).equilibria) {
            const auto rep = classify(p, e);
            if (!rep.predicted) continue;
            ++checked;
            switch (*rep.predicted) {
            case Prediction::Stable: REQUIRE(is_stable(rep.classification)); break;
            case Prediction::Unstable:
                REQUIRE(!is_stable(rep.classification));
                REQUIRE(rep.classification != StabilityClass::NonHyperbolic);
                break;
            case Prediction::NonHyperbolic: REQUIRE(rep.classification == StabilityClass::NonHyperbolic); break;
            }
        }
    }
    CHECK(checked > 5000);
}

TEST_CASE("property: det(J_E4) < 0 < det(J_E5) whenever both exist")
{
    std::mt19937_64 rng(77);
    int both = 0;
    for (int i = 0; i < 20000 && both < 200; ++i) {
        const ModelParams p = oracle::random_params(rng);
        const auto rep = all_equilibria(p);
        const Equilibrium* e4 = rep.find(EquilibriumLabel::E4);
        const Equilibrium* e5 = rep.find(EquilibriumLabel::E5);
        if (e4 == nullptr || e5 == nullptr) continue;
        ++both;
        CHECK(jacobian(p, e4->state).det() < 0.0);
        CHECK(jacobian(p, e5->state).det() > 0.0);
    }
    CHECK(both >= 50);
}
