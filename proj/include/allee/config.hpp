#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "allee/basin.hpp"
#include "allee/dynamics.hpp"
#include "allee/model.hpp"

namespace allee {

/// A parse or validation failure; line() is 0 when the problem is not tied to a line.
class ConfigError : public ValidationError {
public:
    ConfigError(std::size_t line, const std::string& what)
        : ValidationError(line ? "line " + std::to_string(line) + ": " + what : what), line_(line)
    {
    }
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

struct SweepSpec {
    std::string param = "c";
    double lo = 0.1;
    double hi = 0.5;
    std::size_t steps = 201;
    std::optional<double> hopf_lo;
    std::optional<double> hopf_hi;

    bool operator==(const SweepSpec&) const = default;
};

struct RunConfig {
    ModelParams params;
    IntegratorConfig integrator;
    ClassifierConfig classifier;
    SweepSpec sweep;
    GridSpec grid;
    State initial{0.5, 0.3};

    bool operator==(const RunConfig&) const = default;
};

/// Section -> key -> (value text, source line; 0 for command-line overrides).
struct RawConfig {
    struct Entry {
        std::string value;
        std::size_t line = 0;
    };
    std::map<std::string, std::map<std::string, Entry>> sections;
};

/// Tokenizes `key = value` lines with `[section]` headers and `#` comments.
/// Keys before the first header belong to [model].
RawConfig parse_config_text(std::string_view text);

/// "section.key=value", or "key=value" for a model parameter. Replaces any file value.
void apply_override(RawConfig& raw, std::string_view assignment);

/// Validates every key and value; integrator, sweep, grid and initial keys fall back to defaults.
RunConfig build_config(const RawConfig& raw);

RunConfig parse_config(std::string_view text);

std::string serialize_config(const RunConfig& cfg);

}  // namespace allee
