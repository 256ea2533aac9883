#include "allee/config.hpp"

#include <charconv>
#include <cmath>
#include <set>
#include <sstream>

#include "allee/format.hpp"

namespace allee {

namespace {

const std::set<std::string, std::less<>> known_sections = {"model", "integrator", "sweep", "grid", "initial"};

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double to_number(const RawConfig::Entry& e, const std::string& key)
{
    double value = 0.0;
    const char* begin = e.value.data();
    const char* end = begin + e.value.size();
    const auto res = std::from_chars(begin, end, value);
    if (res.ec != std::errc{} || res.ptr != end) {
        throw ConfigError(e.line, "value of '" + key + "' is not a number: '" + e.value + "'");
    }
    return value;
}

std::size_t to_count(const RawConfig::Entry& e, const std::string& key)
{
    std::size_t value = 0;
    const char* begin = e.value.data();
    const char* end = begin + e.value.size();
    const auto res = std::from_chars(begin, end, value);
    if (res.ec != std::errc{} || res.ptr != end) {
        throw ConfigError(e.line, "value of '" + key + "' is not a non-negative integer: '" + e.value + "'");
    }
    return value;
}

std::string canonical_model_key(const std::string& key)
{
    return key == "K" ? "k" : key;
}

}  // namespace

RawConfig parse_config_text(std::string_view text)
{
    RawConfig raw;
    std::string section = "model";
    std::size_t line_no = 0;
    while (!text.empty()) {
        ++line_no;
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);

        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.back() != ']') throw ConfigError(line_no, "malformed section header");
            const auto name = trim(line.substr(1, line.size() - 2));
            if (!known_sections.contains(name)) {
                throw ConfigError(line_no, "unknown section [" + std::string(name) + "]");
            }
            section = std::string(name);
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) throw ConfigError(line_no, "expected 'key = value'");
        std::string key(trim(line.substr(0, eq)));
        const std::string value(trim(line.substr(eq + 1)));
        if (key.empty()) throw ConfigError(line_no, "missing key before '='");
        if (value.empty()) throw ConfigError(line_no, "missing value for '" + key + "'");
        if (section == "model") key = canonical_model_key(key);
        auto [it, inserted] = raw.sections[section].try_emplace(key, RawConfig::Entry{value, line_no});
        if (!inserted) throw ConfigError(line_no, "duplicate key '" + key + "' in [" + section + "]");
    }
    return raw;
}

void apply_override(RawConfig& raw, std::string_view assignment)
{
    const auto eq = assignment.find('=');
    if (eq == std::string_view::npos) {
        throw ConfigError(0, "override '" + std::string(assignment) + "' must look like section.key=value");
    }
    const auto lhs = trim(assignment.substr(0, eq));
    const std::string value(trim(assignment.substr(eq + 1)));
    std::string section = "model";
    std::string key(lhs);
    if (const auto dot = lhs.find('.'); dot != std::string_view::npos) {
        section = std::string(lhs.substr(0, dot));
        key = std::string(lhs.substr(dot + 1));
    }
    if (!known_sections.contains(section)) throw ConfigError(0, "unknown section '" + section + "' in override");
    if (key.empty() || value.empty()) throw ConfigError(0, "override '" + std::string(assignment) + "' is incomplete");
    if (section == "model") key = canonical_model_key(key);
    raw.sections[section][key] = RawConfig::Entry{value, 0};
}

RunConfig build_config(const RawConfig& raw)
{
    RunConfig cfg;
    auto section = [&](const std::string& name) -> const std::map<std::string, RawConfig::Entry>* {
        const auto it = raw.sections.find(name);
        return it == raw.sections.end() ? nullptr : &it->second;
    };

    // [model]: every parameter is required.
    static const char* model_keys[] = {"r", "k", "w", "h", "a", "b", "c", "delta"};
    const auto* model = section("model");
    for (const char* key : model_keys) {
        if (model == nullptr || !model->contains(key)) throw ConfigError(0, "missing model parameter '" + std::string(key) + "'");
    }
    for (const auto& [key, entry] : *model) {
        if (!ModelParams::is_field(key)) throw ConfigError(entry.line, "unknown key '" + key + "' in [model]");
        const double v = to_number(entry, key);
        if (!(std::isfinite(v) && v > 0.0)) throw ConfigError(entry.line, "model parameter '" + key + "' must be positive");
        cfg.params.set(key, v);
    }

    if (const auto* integ = section("integrator")) {
        for (const auto& [key, entry] : *integ) {
            if (key == "rel_tol") cfg.integrator.rel_tol = to_number(entry, key);
            else if (key == "abs_tol") cfg.integrator.abs_tol = to_number(entry, key);
            else if (key == "h_init") cfg.integrator.h_init = to_number(entry, key);
            else if (key == "h_min") cfg.integrator.h_min = to_number(entry, key);
            else if (key == "h_max") cfg.integrator.h_max = to_number(entry, key);
            else if (key == "t_end") cfg.integrator.t_end = to_number(entry, key);
            else if (key == "max_steps") cfg.integrator.max_steps = to_count(entry, key);
            else if (key == "tail_frac") cfg.classifier.tail_frac = to_number(entry, key);
            else if (key == "fp_tol") cfg.classifier.fp_tol = to_number(entry, key);
            else if (key == "cycle_amp_tol") cfg.classifier.cycle_amp_tol = to_number(entry, key);
            else throw ConfigError(entry.line, "unknown key '" + key + "' in [integrator]");
        }
    }
    if (const auto* sw = section("sweep")) {
        for (const auto& [key, entry] : *sw) {
            if (key == "param") {
                if (!ModelParams::is_field(entry.value)) {
                    throw ConfigError(entry.line, "sweep 'param' must name a model parameter, got '" + entry.value + "'");
                }
                cfg.sweep.param = canonical_model_key(entry.value);
            } else if (key == "lo") cfg.sweep.lo = to_number(entry, key);
            else if (key == "hi") cfg.sweep.hi = to_number(entry, key);
            else if (key == "steps") cfg.sweep.steps = to_count(entry, key);
            else if (key == "hopf_lo") cfg.sweep.hopf_lo = to_number(entry, key);
            else if (key == "hopf_hi") cfg.sweep.hopf_hi = to_number(entry, key);
            else throw ConfigError(entry.line, "unknown key '" + key + "' in [sweep]");
        }
    }
    if (const auto* gr = section("grid")) {
        for (const auto& [key, entry] : *gr) {
            if (key == "n_lo") cfg.grid.N_lo = to_number(entry, key);
            else if (key == "n_hi") cfg.grid.N_hi = to_number(entry, key);
            else if (key == "p_lo") cfg.grid.P_lo = to_number(entry, key);
            else if (key == "p_hi") cfg.grid.P_hi = to_number(entry, key);
            else if (key == "n_res") cfg.grid.nN = to_count(entry, key);
            else if (key == "p_res") cfg.grid.nP = to_count(entry, key);
            else throw ConfigError(entry.line, "unknown key '" + key + "' in [grid]");
        }
    }
    if (const auto* init = section("initial")) {
        for (const auto& [key, entry] : *init) {
            if (key == "n") cfg.initial.N = to_number(entry, key);
            else if (key == "p") cfg.initial.P = to_number(entry, key);
            else throw ConfigError(entry.line, "unknown key '" + key + "' in [initial]");
        }
    }

    try {
        cfg.params.validate();
        cfg.integrator.validate();
        cfg.classifier.validate();
        cfg.grid.validate();
    } catch (const ValidationError& ex) {
        throw ConfigError(0, ex.what());
    }
    const SweepSpec& sw = cfg.sweep;
    if (!(sw.lo > 0.0 && sw.lo < sw.hi && std::isfinite(sw.hi))) throw ConfigError(0, "sweep requires 0 < lo < hi");
    if (sw.steps < 2) throw ConfigError(0, "sweep 'steps' must be at least 2");
    if (sw.hopf_lo.has_value() != sw.hopf_hi.has_value()) {
        throw ConfigError(0, "sweep 'hopf_lo' and 'hopf_hi' must be given together");
    }
    if (sw.hopf_lo && !(*sw.hopf_lo > 0.0 && *sw.hopf_lo < *sw.hopf_hi)) {
        throw ConfigError(0, "sweep requires 0 < hopf_lo < hopf_hi");
    }
    if (!(cfg.initial.N >= 0.0 && cfg.initial.P >= 0.0)) {
        throw ConfigError(0, "initial state 'n', 'p' must be non-negative");
    }
    return cfg;
}

RunConfig parse_config(std::string_view text)
{
    return build_config(parse_config_text(text));
}

std::string serialize_config(const RunConfig& cfg)
{
    std::ostringstream os;
    const auto& p = cfg.params;
    os << "[model]\n"
       << "r = " << format_double(p.r) << "\n"
       << "k = " << format_double(p.K) << "\n"
       << "w = " << format_double(p.w) << "\n"
       << "h = " << format_double(p.h) << "\n"
       << "a = " << format_double(p.a) << "\n"
       << "b = " << format_double(p.b) << "\n"
       << "c = " << format_double(p.c) << "\n"
       << "delta = " << format_double(p.delta) << "\n";
    const auto& in = cfg.integrator;
    const auto& cl = cfg.classifier;
    os << "\n[integrator]\n"
       << "rel_tol = " << format_double(in.rel_tol) << "\n"
       << "abs_tol = " << format_double(in.abs_tol) << "\n"
       << "h_init = " << format_double(in.h_init) << "\n"
       << "h_min = " << format_double(in.h_min) << "\n"
       << "h_max = " << format_double(in.h_max) << "\n"
       << "t_end = " << format_double(in.t_end) << "\n"
       << "max_steps = " << in.max_steps << "\n"
       << "tail_frac = " << format_double(cl.tail_frac) << "\n"
       << "fp_tol = " << format_double(cl.fp_tol) << "\n"
       << "cycle_amp_tol = " << format_double(cl.cycle_amp_tol) << "\n";
    const auto& sw = cfg.sweep;
    os << "\n[sweep]\n"
       << "param = " << sw.param << "\n"
       << "lo = " << format_double(sw.lo) << "\n"
       << "hi = " << format_double(sw.hi) << "\n"
       << "steps = " << sw.steps << "\n";
    if (sw.hopf_lo) os << "hopf_lo = " << format_double(*sw.hopf_lo) << "\n";
    if (sw.hopf_hi) os << "hopf_hi = " << format_double(*sw.hopf_hi) << "\n";
    const auto& g = cfg.grid;
    os << "\n[grid]\n"
       << "n_lo = " << format_double(g.N_lo) << "\n"
       << "n_hi = " << format_double(g.N_hi) << "\n"
       << "p_lo = " << format_double(g.P_lo) << "\n"
       << "p_hi = " << format_double(g.P_hi) << "\n"
       << "n_res = " << g.nN << "\n"
       << "p_res = " << g.nP << "\n";
    os << "\n[initial]\n"
       << "n = " << format_double(cfg.initial.N) << "\n"
       << "p = " << format_double(cfg.initial.P) << "\n";
    return os.str();
}

}  // namespace allee
