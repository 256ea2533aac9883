#include "allee/dynamics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace allee {

void IntegratorConfig::validate() const
{
    auto finite_pos = [](double x) { return std::isfinite(x) && x > 0.0; };
    if (!finite_pos(rel_tol)) throw ValidationError("integrator 'rel_tol' must be positive");
    if (!finite_pos(abs_tol)) throw ValidationError("integrator 'abs_tol' must be positive");
    if (!finite_pos(h_min)) throw ValidationError("integrator 'h_min' must be positive");
    if (!finite_pos(h_init) || h_init < h_min) throw ValidationError("integrator 'h_init' must satisfy h_min <= h_init");
    if (!finite_pos(h_max) || h_max < h_init) throw ValidationError("integrator 'h_max' must satisfy h_init <= h_max");
    if (!finite_pos(t_end)) throw ValidationError("integrator 't_end' must be positive");
    if (max_steps == 0) throw ValidationError("integrator 'max_steps' must be at least 1");
}

void ClassifierConfig::validate() const
{
    if (!(tail_frac > 0.0 && tail_frac <= 1.0)) throw ValidationError("'tail_frac' must lie in (0, 1]");
    if (!(std::isfinite(fp_tol) && fp_tol > 0.0)) throw ValidationError("'fp_tol' must be positive");
    if (!(std::isfinite(cycle_amp_tol) && cycle_amp_tol > 0.0)) throw ValidationError("'cycle_amp_tol' must be positive");
}

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
// b - b* (fifth-order weights minus fourth-order weights)
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

State axpy(const State& y, double h, std::initializer_list<std::pair<double, const State*>> terms)
{
    State out = y;
    for (const auto& [coef, k] : terms) {
        out.N += h * coef * k->N;
        out.P += h * coef * k->P;
    }
    return out;
}

}  // namespace

Trajectory integrate(const ModelParams& p, const State& s0, const IntegratorConfig& cfg)
{
    p.validate();
    cfg.validate();
    if (!(s0.N >= 0.0 && s0.P >= 0.0)) throw ValidationError("initial state must lie in the first quadrant");

    Trajectory traj;
    traj.params = p;
    traj.times.push_back(0.0);
    traj.states.push_back(s0);

    double t = 0.0;
    State y = s0;
    State k1 = vector_field(p, y);
    double h = std::min(cfg.h_init, cfg.t_end);
    std::size_t attempts = 0;

    while (t < cfg.t_end) {
        if (++attempts > cfg.max_steps) {
            throw IntegrationError(IntegrationError::Kind::MaxStepsExceeded,
                                   "integration exceeded max_steps before reaching t_end (t = " + std::to_string(t) + ")");
        }
        const double remaining = cfg.t_end - t;
        const bool last = h >= remaining;
        const double step = last ? remaining : h;

        const State k2 = vector_field(p, axpy(y, step, {{a21, &k1}}));
        const State k3 = vector_field(p, axpy(y, step, {{a31, &k1}, {a32, &k2}}));
        const State k4 = vector_field(p, axpy(y, step, {{a41, &k1}, {a42, &k2}, {a43, &k3}}));
        const State k5 = vector_field(p, axpy(y, step, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}));
        const State k6 = vector_field(p, axpy(y, step, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}));
        State y_new = axpy(y, step, {{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}});
        const State k7 = vector_field(p, y_new);

        const double errN = step * (e1 * k1.N + e3 * k3.N + e4 * k4.N + e5 * k5.N + e6 * k6.N + e7 * k7.N);
        const double errP = step * (e1 * k1.P + e3 * k3.P + e4 * k4.P + e5 * k5.P + e6 * k6.P + e7 * k7.P);
        const double scN = cfg.abs_tol + cfg.rel_tol * std::max(std::abs(y.N), std::abs(y_new.N));
        const double scP = cfg.abs_tol + cfg.rel_tol * std::max(std::abs(y.P), std::abs(y_new.P));
        double err = std::max(std::abs(errN) / scN, std::abs(errP) / scP);

        // Quadrant guard: roundoff-sized excursions are clamped, real ones rejected.
        bool left_quadrant = false;
        bool clamped = false;
        for (double* comp : {&y_new.N, &y_new.P}) {
            if (*comp < 0.0) {
                if (*comp > -clamp_band) {
                    *comp = 0.0;
                    clamped = true;
                } else {
                    left_quadrant = true;
                }
            }
        }
        if (!std::isfinite(err) || !std::isfinite(y_new.N) || !std::isfinite(y_new.P)) {
            err = std::numeric_limits<double>::infinity();
        }

        if (err <= 1.0 && !left_quadrant) {
            t = last ? cfg.t_end : t + step;
            y = y_new;
            traj.times.push_back(t);
            traj.states.push_back(y);
            ++traj.accepted_steps;
            k1 = clamped ? vector_field(p, y) : k7;
            const double factor = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
            if (!last) h = std::min(cfg.h_max, step * factor);
        } else {
            ++traj.rejected_steps;
            const double factor =
                std::isfinite(err) && !left_quadrant ? std::clamp(0.9 * std::pow(err, -0.2), 0.2, 1.0) : 0.5;
            h = step * factor;
            if (h < cfg.h_min) {
                throw IntegrationError(IntegrationError::Kind::StepSizeUnderflow,
                                       "required step size fell below h_min at t = " + std::to_string(t));
            }
        }
    }
    return traj;
}

std::string attractor_label(const AttractorId& id)
{
    if (const auto* fp = std::get_if<FixedPoint>(&id)) return std::string(to_string(fp->label));
    if (std::holds_alternative<LimitCycle>(id)) return "LC";
    return "Undetermined";
}

bool same_attractor(const AttractorId& x, const AttractorId& y)
{
    if (x.index() != y.index()) return false;
    if (const auto* fx = std::get_if<FixedPoint>(&x)) return fx->label == std::get<FixedPoint>(y).label;
    return true;
}

bool is_fixed_point(const AttractorId& id, EquilibriumLabel label)
{
    const auto* fp = std::get_if<FixedPoint>(&id);
    return fp != nullptr && fp->label == label;
}

bool is_limit_cycle(const AttractorId& id)
{
    return std::holds_alternative<LimitCycle>(id);
}

std::size_t tail_begin(const Trajectory& traj, double tail_frac)
{
    const double t0 = traj.times.front();
    const double t1 = traj.times.back();
    const double cut = t1 - tail_frac * (t1 - t0);
    const auto it = std::lower_bound(traj.times.begin(), traj.times.end(), cut);
    const auto idx = static_cast<std::size_t>(it - traj.times.begin());
    return std::min(idx, traj.times.size() - 1);
}

TailExtrema tail_extrema(const Trajectory& traj, double tail_frac)
{
    TailExtrema ex{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity(),
                   std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
    for (std::size_t i = tail_begin(traj, tail_frac); i < traj.states.size(); ++i) {
        const State& s = traj.states[i];
        ex.N_min = std::min(ex.N_min, s.N);
        ex.N_max = std::max(ex.N_max, s.N);
        ex.P_min = std::min(ex.P_min, s.P);
        ex.P_max = std::max(ex.P_max, s.P);
    }
    return ex;
}

namespace {

/// Time-weighted (trapezoidal) mean of one component over [first, end).
template <typename Get>
double tail_mean(const Trajectory& traj, std::size_t first, Get get)
{
    const std::size_t n = traj.states.size();
    if (n - first < 2) return get(traj.states.back());
    double area = 0.0;
    for (std::size_t i = first + 1; i < n; ++i) {
        area += 0.5 * (get(traj.states[i]) + get(traj.states[i - 1])) * (traj.times[i] - traj.times[i - 1]);
    }
    return area / (traj.times.back() - traj.times[first]);
}

}  // namespace

AttractorId classify_attractor(const ModelParams& p, const Trajectory& traj, const ExistenceReport& eqs,
                               const ClassifierConfig& cls)
{
    (void)p;
    if (traj.states.empty()) return Undetermined{};
    const std::size_t first = tail_begin(traj, cls.tail_frac);
    const std::size_t n = traj.states.size();

    const Equilibrium* best = nullptr;
    double best_dist = std::numeric_limits<double>::infinity();
    for (const auto& e : eqs.equilibria) {
        double worst = 0.0;
        for (std::size_t i = first; i < n; ++i) {
            worst = std::max(worst, std::hypot(traj.states[i].N - e.state.N, traj.states[i].P - e.state.P));
            if (worst > best_dist) break;
        }
        if (worst < best_dist) {
            best_dist = worst;
            best = &e;
        }
    }
    if (best != nullptr && best_dist <= cls.fp_tol) return FixedPoint{best->label, best->state};

    const TailExtrema ex = tail_extrema(traj, cls.tail_frac);
    if (!std::isfinite(ex.N_max) || !std::isfinite(ex.P_max)) return Undetermined{};
    const double mean_N = tail_mean(traj, first, [](const State& s) { return s.N; });
    const double mean_P = tail_mean(traj, first, [](const State& s) { return s.P; });
    if (!(mean_N > 0.0 && mean_P > 0.0)) return Undetermined{};
    const bool oscillating_N = (ex.N_max - ex.N_min) / mean_N > cls.cycle_amp_tol;
    const bool oscillating_P = (ex.P_max - ex.P_min) / mean_P > cls.cycle_amp_tol;
    if (!oscillating_N || !oscillating_P) return Undetermined{};

    // Upward crossings of N - mean(N), linearly interpolated in time.
    std::vector<double> crossings;
    for (std::size_t i = first + 1; i < n; ++i) {
        const double d0 = traj.states[i - 1].N - mean_N;
        const double d1 = traj.states[i].N - mean_N;
        if (d0 < 0.0 && d1 >= 0.0) {
            const double frac = -d0 / (d1 - d0);
            crossings.push_back(traj.times[i - 1] + frac * (traj.times[i] - traj.times[i - 1]));
        }
    }
    if (crossings.size() < 2) return Undetermined{};
    const double period = (crossings.back() - crossings.front()) / static_cast<double>(crossings.size() - 1);
    return LimitCycle{ex.N_min, ex.N_max, ex.P_min, ex.P_max, period};
}

}  // namespace allee
