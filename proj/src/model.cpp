#include "allee/model.hpp"

#include <cmath>

#include "allee/errors.hpp"

namespace allee {

namespace {

void require_positive(double value, const char* name)
{
    if (!std::isfinite(value) || !(value > 0.0)) {
        throw ValidationError(std::string("parameter '") + name + "' must be a positive finite number");
    }
}

}  // namespace

void ModelParams::validate() const
{
    require_positive(r, "r");
    require_positive(K, "K");
    require_positive(w, "w");
    require_positive(h, "h");
    require_positive(a, "a");
    require_positive(b, "b");
    require_positive(c, "c");
    require_positive(delta, "delta");
}

bool ModelParams::is_field(std::string_view name)
{
    return name == "r" || name == "K" || name == "k" || name == "w" || name == "h" || name == "a" ||
           name == "b" || name == "c" || name == "delta";
}

double ModelParams::get(std::string_view name) const
{
    if (name == "r") return r;
    if (name == "K" || name == "k") return K;
    if (name == "w") return w;
    if (name == "h") return h;
    if (name == "a") return a;
    if (name == "b") return b;
    if (name == "c") return c;
    if (name == "delta") return delta;
    throw ValidationError("unknown model parameter '" + std::string(name) + "'");
}

void ModelParams::set(std::string_view name, double value)
{
    if (name == "r") r = value;
    else if (name == "K" || name == "k") K = value;
    else if (name == "w") w = value;
    else if (name == "h") h = value;
    else if (name == "a") a = value;
    else if (name == "b") b = value;
    else if (name == "c") c = value;
    else if (name == "delta") delta = value;
    else throw ValidationError("unknown model parameter '" + std::string(name) + "'");
}

std::string_view to_string(AlleeRegime regime)
{
    switch (regime) {
    case AlleeRegime::Weak: return "Weak";
    case AlleeRegime::Strong: return "Strong";
    case AlleeRegime::Boundary: return "Boundary";
    }
    return "?";
}

State vector_field(const ModelParams& p, const State& s)
{
    const double N = s.N;
    const double P = s.P;
    const double response = 1.0 / (p.b + N * N);
    return {
        p.r * N * (1.0 - N / p.K - p.h / (p.w + N)) - p.a * N * P * response,
        p.c * N * P * response - p.delta * P,
    };
}

Matrix2 jacobian(const ModelParams& p, const State& s)
{
    const double N = s.N;
    const double P = s.P;
    const double den = p.b + N * N;
    const double den2 = den * den;
    const double wn = p.w + N;

    Matrix2 J;
    J.a11 = p.r - 2.0 * p.r * N / p.K - p.r * p.h * p.w / (wn * wn) - p.a * P * (p.b - N * N) / den2;
    J.a12 = -p.a * N / den;
    J.a21 = p.c * P / den - 2.0 * p.c * N * N * P / den2;
    J.a22 = p.c * N / den - p.delta;
    return J;
}

AlleeRegime allee_regime(const ModelParams& p)
{
    if (p.h < p.w) return AlleeRegime::Weak;
    if (p.h > p.w) return AlleeRegime::Strong;
    return AlleeRegime::Boundary;
}

namespace scenarios {

ModelParams conversion_rate(double c, double h)
{
    return ModelParams{.r = 1.0, .K = 1.0, .w = 0.3, .h = h, .a = 0.6, .b = 0.7, .c = c, .delta = 0.1};
}

ModelParams protection_rate(double b, double h)
{
    return ModelParams{.r = 1.0, .K = 1.0, .w = 0.3, .h = h, .a = 0.6, .b = b, .c = 0.2, .delta = 0.1};
}

}  // namespace scenarios

}  // namespace allee
