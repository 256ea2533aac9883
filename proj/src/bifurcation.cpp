#include "allee/bifurcation.hpp"

#include <cmath>
#include <ostream>

#include "allee/format.hpp"

namespace allee {

const EquilibriumSummary* SweepRecord::find(EquilibriumLabel label) const
{
    for (const auto& s : equilibria_summary) {
        if (s.label == label) return &s;
    }
    return nullptr;
}

std::string_view to_string(CriticalKind kind)
{
    switch (kind) {
    case CriticalKind::Transcritical: return "Transcritical";
    case CriticalKind::Hopf: return "Hopf";
    case CriticalKind::CoexistenceFold: return "CoexistenceFold";
    case CriticalKind::AxialDegenerate: return "AxialDegenerate";
    }
    return "?";
}

std::string_view to_string(CriticalMethod method)
{
    switch (method) {
    case CriticalMethod::Analytic: return "Analytic";
    case CriticalMethod::RootFind: return "RootFind";
    case CriticalMethod::SweepDetect: return "SweepDetect";
    }
    return "?";
}

std::vector<EquilibriumSummary> summarize_equilibria(const ModelParams& p)
{
    std::vector<EquilibriumSummary> out;
    for (const auto& e : all_equilibria(p).equilibria) {
        out.push_back({e.label, e.state, classify(p, e).classification});
    }
    return out;
}

std::vector<double> sweep_values(double lo, double hi, std::size_t steps)
{
    std::vector<double> values(steps);
    for (std::size_t i = 0; i < steps; ++i) {
        values[i] = i + 1 == steps ? hi : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(steps - 1);
    }
    return values;
}

namespace {

void check_range(const ModelParams& p, std::string_view param_name, double lo, double hi, std::size_t steps)
{
    if (!ModelParams::is_field(param_name)) {
        throw ValidationError("unknown sweep parameter '" + std::string(param_name) + "'");
    }
    if (!(lo < hi)) throw ValidationError("sweep range requires lo < hi");
    if (!(lo > 0.0)) throw ValidationError("sweep range must keep '" + std::string(param_name) + "' positive");
    if (steps < 2) throw ValidationError("sweep requires at least 2 steps");
    p.validate();
}

ModelParams with(const ModelParams& p, std::string_view name, double value)
{
    ModelParams q = p;
    q.set(name, value);
    return q;
}

}  // namespace

std::vector<SweepRecord> stability_scan(const ModelParams& p, std::string_view param_name, double lo, double hi,
                                        std::size_t steps)
{
    check_range(p, param_name, lo, hi, steps);
    std::vector<SweepRecord> records;
    records.reserve(steps);
    for (double v : sweep_values(lo, hi, steps)) {
        SweepRecord rec;
        rec.param_name = std::string(param_name);
        rec.param_value = v;
        rec.equilibria_summary = summarize_equilibria(with(p, param_name, v));
        records.push_back(std::move(rec));
    }
    return records;
}

std::vector<SweepRecord> sweep(const ModelParams& p, std::string_view param_name, double lo, double hi,
                               std::size_t steps, const State& probe_s0, const IntegratorConfig& cfg,
                               const ClassifierConfig& cls)
{
    cfg.validate();
    cls.validate();
    std::vector<SweepRecord> records = stability_scan(p, param_name, lo, hi, steps);

    State s0 = probe_s0;
    for (auto& rec : records) {
        const ModelParams q = with(p, param_name, rec.param_value);
        try {
            const Trajectory traj = integrate(q, s0, cfg);
            rec.attractor = classify_attractor(q, traj, all_equilibria(q), cls);
            rec.tail = tail_extrema(traj, cls.tail_frac);
            if (const auto* fp = std::get_if<FixedPoint>(&rec.attractor)) {
                rec.N_min = rec.N_max = fp->state.N;
                rec.P_min = rec.P_max = fp->state.P;
            } else {
                rec.N_min = rec.tail.N_min;
                rec.N_max = rec.tail.N_max;
                rec.P_min = rec.tail.P_min;
                rec.P_max = rec.tail.P_max;
            }
            const State last = traj.states.back();
            s0 = {std::max(last.N, warm_start_floor), std::max(last.P, warm_start_floor)};
        } catch (const NumericalError& ex) {
            rec.attractor = Undetermined{};
            rec.error = ex.what();
            rec.N_min = rec.N_max = rec.P_min = rec.P_max = std::nan("");
            s0 = probe_s0;
        }
    }
    return records;
}

std::vector<CriticalPoint> sweep_detect(const std::vector<SweepRecord>& records, EquilibriumLabel label,
                                        CriticalKind kind)
{
    std::vector<CriticalPoint> out;
    for (std::size_t i = 1; i < records.size(); ++i) {
        const auto* prev = records[i - 1].find(label);
        const auto* cur = records[i].find(label);
        if (prev == nullptr || cur == nullptr) continue;
        if (is_stable(prev->classification) != is_stable(cur->classification)) {
            out.push_back({kind, records[i].param_name,
                           0.5 * (records[i - 1].param_value + records[i].param_value), CriticalMethod::SweepDetect});
        }
    }
    return out;
}

CriticalPoint transcritical_point(const ModelParams& p, std::string_view param_name)
{
    const double c_star = e1_transcritical_c(p);
    if (param_name == "c") return {CriticalKind::Transcritical, "c", c_star, CriticalMethod::Analytic};
    if (param_name == "b") {
        const double N1 = axial_roots(p).front().N;
        const double b_star = p.c * N1 / p.delta - N1 * N1;
        if (!(b_star > 0.0)) throw NumericalError("no positive b gives an E1 exchange of stability");
        return {CriticalKind::Transcritical, "b", b_star, CriticalMethod::Analytic};
    }
    throw ValidationError("transcritical point is available for parameters 'c' and 'b' only");
}

CriticalPoint hopf_point(const ModelParams& p, std::string_view param_name, double lo, double hi)
{
    check_range(p, param_name, lo, hi, 2);
    auto trace_at = [&](double v) {
        try {
            return coexistence_trace(with(p, param_name, v));
        } catch (const NumericalError&) {
            throw HopfError(HopfError::Kind::E5Vanished,
                            "E5 does not exist at " + std::string(param_name) + " = " + format_double(v));
        }
    };
    double t_lo = trace_at(lo);
    const double t_hi = trace_at(hi);
    if (t_lo == 0.0) hi = lo;
    else if (t_hi == 0.0) lo = hi;
    else if ((t_lo > 0.0) == (t_hi > 0.0)) {
        throw HopfError(HopfError::Kind::NoSignChange, "tr(J_E5) has the same sign at both ends of the bracket");
    }

    double mid = 0.5 * (lo + hi);
    while (hi - lo > 1e-10) {
        mid = 0.5 * (lo + hi);
        const double t_mid = trace_at(mid);
        if (std::abs(t_mid) < 1e-10) break;
        if ((t_mid > 0.0) == (t_lo > 0.0)) {
            lo = mid;
            t_lo = t_mid;
        } else {
            hi = mid;
        }
    }
    if (!(coexistence_det(with(p, param_name, mid)) > 0.0)) {
        throw HopfError(HopfError::Kind::NotHopf, "det(J_E5) is not positive at the trace root");
    }
    return {CriticalKind::Hopf, std::string(param_name), mid, CriticalMethod::RootFind};
}

std::vector<CriticalPoint> fold_points(const ModelParams& p, std::string_view param_name)
{
    std::vector<CriticalPoint> out;
    const std::string name(param_name);
    auto add = [&](CriticalKind kind, double v) {
        if (std::isfinite(v) && v > 0.0) out.push_back({kind, name, v, CriticalMethod::Analytic});
    };

    // c^2 = 4 b delta^2
    if (name == "c") add(CriticalKind::CoexistenceFold, 2.0 * p.delta * std::sqrt(p.b));
    else if (name == "b") add(CriticalKind::CoexistenceFold, (p.c / (2.0 * p.delta)) * (p.c / (2.0 * p.delta)));
    else if (name == "delta") add(CriticalKind::CoexistenceFold, p.c / (2.0 * std::sqrt(p.b)));

    // (K+w)^2 = 4 K h
    if (name == "h") {
        add(CriticalKind::AxialDegenerate, (p.K + p.w) * (p.K + p.w) / (4.0 * p.K));
    } else if (name == "w") {
        add(CriticalKind::AxialDegenerate, 2.0 * std::sqrt(p.K * p.h) - p.K);
    } else if (name == "K" || name == "k") {
        // K^2 + (2w - 4h) K + w^2 = 0
        const double B = 2.0 * p.w - 4.0 * p.h;
        const double disc = B * B - 4.0 * p.w * p.w;
        if (disc >= 0.0) {
            const double sq = std::sqrt(disc);
            add(CriticalKind::AxialDegenerate, (-B - sq) / 2.0);
            if (sq > 0.0) add(CriticalKind::AxialDegenerate, (-B + sq) / 2.0);
        }
    }
    return out;
}

void diagram_export(std::ostream& os, const std::vector<SweepRecord>& records,
                    const std::vector<CriticalPoint>& critical_points)
{
    if (records.empty()) throw ValidationError("diagram export needs at least one sweep record");
    os << "param,value,N_min,N_max,P_min,P_max,attractor,labels\n";
    for (const auto& rec : records) {
        os << rec.param_name << ',' << format_double(rec.param_value) << ',' << format_double(rec.N_min) << ','
           << format_double(rec.N_max) << ',' << format_double(rec.P_min) << ',' << format_double(rec.P_max) << ','
           << attractor_label(rec.attractor) << ',';
        for (std::size_t i = 0; i < rec.equilibria_summary.size(); ++i) {
            const auto& s = rec.equilibria_summary[i];
            os << (i ? ";" : "") << to_string(s.label) << ':' << to_string(s.classification);
        }
        os << '\n';
    }
    for (const auto& cp : critical_points) {
        os << cp.param_name << ',' << format_double(cp.value) << ",,,,,critical," << to_string(cp.kind) << ':'
           << to_string(cp.method) << '\n';
    }
    if (!os) throw std::ios_base::failure("failed to write bifurcation diagram");
}

}  // namespace allee
