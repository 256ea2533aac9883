#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "allee/bifurcation.hpp"

using namespace allee;

namespace {

const State standard_s0{0.5, 0.3};

/// Attractor labels in sweep order with Undetermined records dropped and repeats collapsed.
std::vector<std::string> branch_sequence(const std::vector<SweepRecord>& records)
{
    std::vector<std::string> seq;
    for (const auto& r : records) {
        const std::string l = attractor_label(r.attractor);
        if (l == "Undetermined") continue;
        if (seq.empty() || seq.back() != l) seq.push_back(l);
    }
    return seq;
}

std::size_t count_lines(const std::string& s)
{
    return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
}

}  // namespace

TEST_CASE("sweep values are evenly spaced and hit both ends")
{
    const auto v = sweep_values(0.1, 0.5, 81);
    REQUIRE(v.size() == 81);
    CHECK(v.front() == 0.1);
    CHECK(v.back() == 0.5);
    CHECK(std::abs(v[40] - 0.3) < 1e-15);
}

TEST_CASE("sweep in c: E1, then E5, then a limit cycle")
{
    const auto records = sweep(scenarios::conversion_rate(0.3, 0.2), "c", 0.1, 0.5, 81, standard_s0);
    REQUIRE(records.size() == 81);
    CHECK(branch_sequence(records) == std::vector<std::string>{"E1", "E5", "LC"});
    for (const auto& r : records) {
        CHECK(r.param_name == "c");
        CHECK(r.N_min <= r.N_max);
        CHECK(r.P_min <= r.P_max);
        CHECK(r.error.empty());
    }
}

TEST_CASE("sweep in b: limit cycle, then E5, then E1")
{
    const auto records = sweep(scenarios::protection_rate(0.7, 0.2), "b", 0.1, 1.2, 111, standard_s0);
    REQUIRE(records.size() == 111);
    CHECK(branch_sequence(records) == std::vector<std::string>{"LC", "E5", "E1"});
}

TEST_CASE("two-step sweep inside one regime")
{
    const auto records = sweep(scenarios::conversion_rate(0.3, 0.2), "c", 0.25, 0.3, 2, standard_s0);
    REQUIRE(records.size() == 2);
    CHECK(same_attractor(records[0].attractor, records[1].attractor));
    CHECK(is_fixed_point(records[0].attractor, EquilibriumLabel::E5));
}

TEST_CASE("sweep equilibria summary matches direct classification")
{
    const ModelParams p = scenarios::conversion_rate(0.3, 0.2);
    const auto records = stability_scan(p, "c", 0.2, 0.4, 5);
    for (const auto& r : records) {
        ModelParams q = p;
        q.c = r.param_value;
        const auto eqs = all_equilibria(q).equilibria;
        REQUIRE(eqs.size() == r.equilibria_summary.size());
        for (std::size_t i = 0; i < eqs.size(); ++i) {
            CHECK(eqs[i].label == r.equilibria_summary[i].label);
            CHECK(classify(q, eqs[i]).classification == r.equilibria_summary[i].classification);
        }
    }
}

TEST_CASE("sweep argument validation")
{
    const ModelParams p = scenarios::conversion_rate(0.3, 0.2);
    CHECK_THROWS_AS(sweep(p, "c", 0.5, 0.1, 10, standard_s0), ValidationError);
    CHECK_THROWS_AS(sweep(p, "c", 0.1, 0.5, 1, standard_s0), ValidationError);
    CHECK_THROWS_AS(sweep(p, "c", -0.1, 0.5, 10, standard_s0), ValidationError);
    CHECK_THROWS_AS(sweep(p, "zeta", 0.1, 0.5, 10, standard_s0), ValidationError);
}

TEST_CASE("integrator failure marks a record without aborting the sweep")
{
    IntegratorConfig cfg;
    cfg.max_steps = 50;
    const auto records = sweep(scenarios::conversion_rate(0.3, 0.2), "c", 0.2, 0.3, 3, standard_s0, cfg);
    REQUIRE(records.size() == 3);
    for (const auto& r : records) {
        CHECK(std::holds_alternative<Undetermined>(r.attractor));
        CHECK_FALSE(r.error.empty());
    }
}

TEST_CASE("transcritical points")
{
    const auto tc = transcritical_point(scenarios::conversion_rate(0.3, 0.2), "c");
    CHECK(tc.kind == CriticalKind::Transcritical);
    CHECK(tc.method == CriticalMethod::Analytic);
    CHECK(std::abs(tc.value - 0.16736) < 1e-5);

    const auto tb = transcritical_point(scenarios::protection_rate(0.7, 0.2), "b");
    CHECK(std::abs(tb.value - 0.96821) < 1e-5);

    for (const auto& [p, cp] : {std::pair{scenarios::conversion_rate(tc.value, 0.2), tc},
                                std::pair{scenarios::protection_rate(tb.value, 0.2), tb}}) {
        const auto rep = all_equilibria(p);
        CHECK(std::abs(jacobian(p, rep.find(EquilibriumLabel::E1)->state).det()) < 1e-8);
    }

    CHECK_THROWS_AS(transcritical_point(scenarios::conversion_rate(0.3, 0.4), "c"), NumericalError);
    CHECK_THROWS_AS(transcritical_point(scenarios::conversion_rate(0.3, 0.2), "r"), ValidationError);
}

TEST_CASE("transcritical point is where the coexistence branch meets the axial branch")
{
    const auto tc = transcritical_point(scenarios::conversion_rate(0.3, 0.2), "c");
    const ModelParams p = scenarios::conversion_rate(tc.value, 0.2);
    const double N1 = axial_roots(p).front().N;
    const double N5 = (p.c - std::sqrt(coexistence_discriminant(p))) / (2.0 * p.delta);
    CHECK(std::abs(N5 - N1) < 1e-6);

    const auto tb = transcritical_point(scenarios::protection_rate(0.7, 0.2), "b");
    const ModelParams q = scenarios::protection_rate(tb.value, 0.2);
    const double N5b = (q.c - std::sqrt(coexistence_discriminant(q))) / (2.0 * q.delta);
    CHECK(std::abs(N5b - axial_roots(q).front().N) < 1e-6);
}

TEST_CASE("Hopf points")
{
    const auto hc = hopf_point(scenarios::conversion_rate(0.3, 0.2), "c", 0.3, 0.4);
    CHECK(hc.kind == CriticalKind::Hopf);
    CHECK(hc.method == CriticalMethod::RootFind);
    CHECK(std::abs(hc.value - 0.359) < 2e-3);

    const auto hb = hopf_point(scenarios::protection_rate(0.7, 0.2), "b", 0.3, 0.6);
    CHECK(std::abs(hb.value - 0.465) < 2e-3);

    try {
        (void)hopf_point(scenarios::conversion_rate(0.3, 0.2), "c", 0.15, 0.2);
        FAIL("expected HopfError");
    } catch (const HopfError& ex) {
        // E5 does not exist below the coexistence fold at c = 0.1673.
        CHECK(ex.kind() == HopfError::Kind::E5Vanished);
    }
    try {
        (void)hopf_point(scenarios::conversion_rate(0.3, 0.2), "c", 0.2, 0.3);
        FAIL("expected HopfError");
    } catch (const HopfError& ex) {
        CHECK(ex.kind() == HopfError::Kind::NoSignChange);
    }
}

TEST_CASE("Hopf root: trace changes sign across it with positive determinant on both sides")
{
    for (const auto& [p, name, lo, hi] : {std::tuple{scenarios::conversion_rate(0.3, 0.2), "c", 0.3, 0.4},
                                          std::tuple{scenarios::protection_rate(0.7, 0.2), "b", 0.3, 0.6}}) {
        const double root = hopf_point(p, name, lo, hi).value;
        ModelParams below = p, above = p;
        below.set(name, root - 1e-4);
        above.set(name, root + 1e-4);
        CHECK(coexistence_trace(below) * coexistence_trace(above) < 0.0);
        CHECK(coexistence_det(below) > 0.0);
        CHECK(coexistence_det(above) > 0.0);
    }
}

TEST_CASE("fold points")
{
    const auto fc = fold_points(scenarios::conversion_rate(0.3, 0.2), "c");
    REQUIRE(fc.size() == 1);
    CHECK(fc[0].kind == CriticalKind::CoexistenceFold);
    CHECK(std::abs(fc[0].value - 0.2 * std::sqrt(0.7)) < 1e-12);
    CHECK(std::abs(fc[0].value - 0.167332) < 1e-6);
    CHECK(std::abs(coexistence_discriminant(scenarios::conversion_rate(fc[0].value, 0.2))) < 1e-15);

    const auto fb = fold_points(scenarios::protection_rate(0.7, 0.2), "b");
    REQUIRE(fb.size() == 1);
    CHECK(std::abs(fb[0].value - 1.0) < 1e-12);

    const auto fh = fold_points(scenarios::conversion_rate(0.3, 0.2), "h");
    REQUIRE(fh.size() == 1);
    CHECK(fh[0].kind == CriticalKind::AxialDegenerate);
    CHECK(std::abs(fh[0].value - 0.4225) < 1e-12);

    CHECK(fold_points(scenarios::conversion_rate(0.3, 0.2), "r").empty());

    // D1 = 0 solved for K and w lands back on the same degenerate relation.
    const ModelParams p = scenarios::conversion_rate(0.3, 0.4);
    for (const char* name : {"k", "w"}) {
        for (const auto& cp : fold_points(p, name)) {
            ModelParams q = p;
            q.set(name, cp.value);
            CHECK(std::abs(axial_discriminant(q)) < 1e-12);
        }
    }
}

TEST_CASE("sweep-detected stability changes bracket the analytic values")
{
    const ModelParams p = scenarios::conversion_rate(0.3, 0.2);
    const auto scan = stability_scan(p, "c", 0.1, 0.5, 201);
    const double step = 0.4 / 200;
    const auto tc = sweep_detect(scan, EquilibriumLabel::E1, CriticalKind::Transcritical);
    REQUIRE(tc.size() == 1);
    CHECK(tc[0].method == CriticalMethod::SweepDetect);
    CHECK(std::abs(tc[0].value - transcritical_point(p, "c").value) <= step);
    const auto hopf = sweep_detect(scan, EquilibriumLabel::E5, CriticalKind::Hopf);
    REQUIRE(hopf.size() == 1);
    CHECK(std::abs(hopf[0].value - hopf_point(p, "c", 0.3, 0.4).value) <= step);
}

TEST_CASE("cycle amplitude: negligible before the Hopf point, growing past it")
{
    const ModelParams base = scenarios::conversion_rate(0.3, 0.2);
    ClassifierConfig cls;
    for (double c : {0.30, 0.32, 0.33}) {
        const auto r = sweep(base, "c", c, c + 1e-9, 2, standard_s0).front();
        CHECK(r.tail.N_max - r.tail.N_min < cls.fp_tol);
    }
    double prev = 0.0;
    for (double c : {0.37, 0.39, 0.41, 0.43, 0.45}) {
        const auto r = sweep(base, "c", c, c + 1e-9, 2, standard_s0).front();
        REQUIRE(is_limit_cycle(r.attractor));
        const double amp = r.tail.N_max - r.tail.N_min;
        CHECK(amp > prev);
        prev = amp;
    }
}

TEST_CASE("diagram export")
{
    const ModelParams p = scenarios::conversion_rate(0.3, 0.2);
    const auto records = sweep(p, "c", 0.1, 0.5, 81, standard_s0);
    const std::vector<CriticalPoint> critical = {transcritical_point(p, "c"), hopf_point(p, "c", 0.3, 0.4)};

    std::ostringstream with_critical;
    diagram_export(with_critical, records, critical);
    const std::string csv = with_critical.str();
    CHECK(csv.rfind("param,value,N_min,N_max,P_min,P_max,attractor,labels\n", 0) == 0);
    CHECK(count_lines(csv) == 1 + 81 + 2);
    CHECK(csv.find(",critical,Transcritical:Analytic") != std::string::npos);
    CHECK(csv.find(",critical,Hopf:RootFind") != std::string::npos);

    std::ostringstream plain;
    diagram_export(plain, records, {});
    CHECK(count_lines(plain.str()) == 1 + 81);
    CHECK(plain.str().find("critical") == std::string::npos);

    std::ostringstream empty;
    CHECK_THROWS_AS(diagram_export(empty, {}, {}), ValidationError);
}

TEST_CASE("fixed-point branch of the b diagram has collapsed extrema")
{
    const ModelParams p = scenarios::protection_rate(0.7, 0.2);
    const double hopf = hopf_point(p, "b", 0.3, 0.6).value;
    const auto records = sweep(p, "b", 0.1, 1.2, 111, standard_s0);
    int fixed = 0, past_hopf = 0;
    for (const auto& r : records) {
        if (r.param_value <= hopf) continue;
        ++past_hopf;
        if (!std::holds_alternative<FixedPoint>(r.attractor)) continue;
        ++fixed;
        CHECK(r.N_min == r.N_max);
        CHECK(r.P_min == r.P_max);
    }
    // Only records next to the Hopf and transcritical points decay too slowly to settle.
    CHECK(past_hopf == 74);
    CHECK(fixed >= past_hopf - 6);
}
