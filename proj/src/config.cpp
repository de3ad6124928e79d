#include "toroton/config.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>

#include "toroton/medium.hpp"

namespace toroton {

namespace {

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

struct Entry {
    const char* section;
    const char* key;
    enum Kind { Double, Size, Bool, String, DoubleList } kind;
    std::function<void(RunConfig&, const std::string&, std::vector<std::string>&, int)> set;
    std::function<std::string(const RunConfig&)> get;
};

bool parse_double(const std::string& s, double& out) {
    try {
        std::size_t pos = 0;
        out = std::stod(s, &pos);
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
        return pos == s.size() && std::isfinite(out);
    } catch (...) {
        return false;
    }
}

bool parse_size(const std::string& s, std::size_t& out) {
    try {
        std::size_t pos = 0;
        const long long v = std::stoll(s, &pos);
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos != s.size() || v < 0) return false;
        out = static_cast<std::size_t>(v);
        return true;
    } catch (...) {
        return false;
    }
}

bool parse_bool(const std::string& s, bool& out) {
    if (s == "true" || s == "1" || s == "yes") {
        out = true;
        return true;
    }
    if (s == "false" || s == "0" || s == "no") {
        out = false;
        return true;
    }
    return false;
}

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

#define DOUBLE_ENTRY(sec, name, field)                                                \
    Entry {                                                                           \
        sec, name, Entry::Double,                                                     \
            [](RunConfig& c, const std::string& v, std::vector<std::string>& errs,    \
               int line) {                                                            \
                double d;                                                             \
                if (!parse_double(v, d))                                              \
                    errs.push_back("line " + std::to_string(line) + ": " sec "." name \
                                   " expects a number, got '" + v + "'");             \
                else                                                                  \
                    c.field = d;                                                      \
            },                                                                        \
            [](const RunConfig& c) { return fmt_double(c.field); }                    \
    }

#define SIZE_ENTRY(sec, name, field)                                                  \
    Entry {                                                                           \
        sec, name, Entry::Size,                                                       \
            [](RunConfig& c, const std::string& v, std::vector<std::string>& errs,    \
               int line) {                                                            \
                std::size_t d;                                                        \
                if (!parse_size(v, d))                                                \
                    errs.push_back("line " + std::to_string(line) + ": " sec "." name \
                                   " expects a nonnegative integer, got '" + v + "'");\
                else                                                                  \
                    c.field = d;                                                      \
            },                                                                        \
            [](const RunConfig& c) { return std::to_string(c.field); }                \
    }

#define BOOL_ENTRY(sec, name, field)                                                  \
    Entry {                                                                           \
        sec, name, Entry::Bool,                                                       \
            [](RunConfig& c, const std::string& v, std::vector<std::string>& errs,    \
               int line) {                                                            \
                bool d;                                                               \
                if (!parse_bool(v, d))                                                \
                    errs.push_back("line " + std::to_string(line) + ": " sec "." name \
                                   " expects true/false, got '" + v + "'");           \
                else                                                                  \
                    c.field = d;                                                      \
            },                                                                        \
            [](const RunConfig& c) { return c.field ? "true" : "false"; }             \
    }

#define STRING_ENTRY(sec, name, field)                                                \
    Entry {                                                                           \
        sec, name, Entry::String,                                                     \
            [](RunConfig& c, const std::string& v, std::vector<std::string>&, int) {  \
                c.field = v;                                                          \
            },                                                                        \
            [](const RunConfig& c) { return c.field; }                                \
    }

#define LIST_ENTRY(sec, name, field)                                                  \
    Entry {                                                                           \
        sec, name, Entry::DoubleList,                                                 \
            [](RunConfig& c, const std::string& v, std::vector<std::string>& errs,    \
               int line) {                                                            \
                std::vector<double> vals;                                             \
                std::stringstream ss(v);                                              \
                std::string tok;                                                      \
                bool ok = true;                                                       \
                while (std::getline(ss, tok, ',')) {                                  \
                    tok = trim(tok);                                                  \
                    if (tok.empty()) continue;                                        \
                    double d;                                                         \
                    if (!parse_double(tok, d)) {                                      \
                        ok = false;                                                   \
                        break;                                                        \
                    }                                                                 \
                    vals.push_back(d);                                                \
                }                                                                     \
                if (!ok)                                                              \
                    errs.push_back("line " + std::to_string(line) + ": " sec "." name \
                                   " expects a comma-separated number list");         \
                else                                                                  \
                    c.field = std::move(vals);                                        \
            },                                                                        \
            [](const RunConfig& c) {                                                  \
                std::string out;                                                      \
                for (std::size_t i = 0; i < c.field.size(); ++i) {                    \
                    if (i) out += ", ";                                               \
                    out += fmt_double(c.field[i]);                                    \
                }                                                                     \
                return out;                                                           \
            }                                                                         \
    }

const std::vector<Entry>& schema() {
    static const std::vector<Entry> s = {
        DOUBLE_ENTRY("medium", "eps_lin", medium.eps_lin),
        DOUBLE_ENTRY("medium", "d_eps", medium.d_eps),
        DOUBLE_ENTRY("medium", "i_sat", medium.i_sat),
        DOUBLE_ENTRY("medium", "mu1", medium.mu1),
        DOUBLE_ENTRY("medium", "u_sat", medium.u_sat),
        DOUBLE_ENTRY("wave", "k0", wave.k0),
        SIZE_ENTRY("grid", "nx", grid.nx),
        SIZE_ENTRY("grid", "ny", grid.ny),
        DOUBLE_ENTRY("grid", "dx", grid.dx),
        DOUBLE_ENTRY("grid", "dy", grid.dy),
        BOOL_ENTRY("grid", "absorber", grid.absorber),
        DOUBLE_ENTRY("run", "e0", run.e0),
        DOUBLE_ENTRY("run", "dz", run.dz),
        DOUBLE_ENTRY("run", "z_end", run.z_end),
        SIZE_ENTRY("run", "trace_every", run.trace_every),
        DOUBLE_ENTRY("run", "diffraction_lengths", run.diffraction_lengths),
        DOUBLE_ENTRY("run", "steps_per_length", run.steps_per_length),
        STRING_ENTRY("run", "perturb_kind", run.perturb_kind),
        DOUBLE_ENTRY("run", "perturb_level", run.perturb_level),
        DOUBLE_ENTRY("run", "separation", run.separation),
        DOUBLE_ENTRY("run", "separation_cores", run.separation_cores),
        DOUBLE_ENTRY("run", "relative_phase", run.relative_phase),
        DOUBLE_ENTRY("run", "significance", run.significance),
        SIZE_ENTRY("run", "seed", run.seed),
        BOOL_ENTRY("run", "randomize_second_hole", run.randomize_second_hole),
        BOOL_ENTRY("run", "young_2d", run.young_2d),
        DOUBLE_ENTRY("run", "slit_width_cores", run.slit_width_cores),
        DOUBLE_ENTRY("run", "hole1_offset_cores", run.hole1_offset_cores),
        DOUBLE_ENTRY("run", "hole_offset_cores", run.hole_offset_cores),
        DOUBLE_ENTRY("run", "hole2_phase", run.hole2_phase),
        STRING_ENTRY("mask", "kind", mask.kind),
        DOUBLE_ENTRY("mask", "width", mask.width),
        DOUBLE_ENTRY("mask", "separation", mask.separation),
        DOUBLE_ENTRY("mask", "offset", mask.offset),
        DOUBLE_ENTRY("mask", "z_position", mask.z_position),
        DOUBLE_ENTRY("scan", "c_min", scan.c_min),
        DOUBLE_ENTRY("scan", "c_max", scan.c_max),
        SIZE_ENTRY("scan", "n_c", scan.n_c),
        DOUBLE_ENTRY("scan", "amp_min", scan.amp_min),
        DOUBLE_ENTRY("scan", "amp_max", scan.amp_max),
        SIZE_ENTRY("scan", "n_amp", scan.n_amp),
        LIST_ENTRY("scan", "mu1_values", scan.mu1_values),
        LIST_ENTRY("scan", "u_sat_values", scan.u_sat_values),
        STRING_ENTRY("scan", "m_policy", scan.m_policy),
        DOUBLE_ENTRY("scan", "m_delta", scan.m_delta),
    };
    return s;
}

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

void validate(const RunConfig& c, std::vector<std::string>& errs) {
    auto require = [&](bool ok, const std::string& msg) {
        if (!ok) errs.push_back("constraint violation: " + msg);
    };
    require(c.medium.eps_lin >= 1.0, "medium.eps_lin must be >= 1");
    require(c.medium.d_eps >= 0.0, "medium.d_eps must be >= 0");
    require(c.medium.i_sat > 0.0, "medium.i_sat must be > 0");
    require(c.medium.mu1 >= 0.0, "medium.mu1 must be >= 0");
    require(c.medium.u_sat > 0.0, "medium.u_sat must be > 0");
    require(c.wave.k0 > 0.0, "wave.k0 must be > 0");
    require(is_pow2(c.grid.nx) && is_pow2(c.grid.ny), "grid.nx and grid.ny must be powers of two");
    require(c.grid.dx >= 0.0 && c.grid.dy >= 0.0, "grid.dx, grid.dy must be >= 0");
    require(c.run.e0 > 0.0, "run.e0 must be > 0");
    require(c.run.trace_every >= 1, "run.trace_every must be >= 1");
    require(c.run.perturb_kind == "symmetric-ring" || c.run.perturb_kind == "asymmetric-tilt" ||
                c.run.perturb_kind == "noise",
            "run.perturb_kind must be symmetric-ring, asymmetric-tilt or noise");
    require(c.mask.kind == "none" || c.mask.kind == "single-hole" ||
                c.mask.kind == "double-hole" || c.mask.kind == "absorber",
            "mask.kind must be none, single-hole, double-hole or absorber");
    require(c.scan.c_min > 0.0 && c.scan.c_max > c.scan.c_min,
            "scan range must satisfy 0 < c_min < c_max");
    require(c.scan.n_c >= 2, "scan.n_c must be >= 2");
    require(c.scan.m_policy == "nearest" || c.scan.m_policy == "all-within",
            "scan.m_policy must be nearest or all-within");
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> msgs)
    : std::runtime_error(msgs.empty() ? "config error"
                                      : "config error: " + msgs.front() +
                                            (msgs.size() > 1
                                                 ? " (+" + std::to_string(msgs.size() - 1) +
                                                       " more)"
                                                 : "")),
      messages(std::move(msgs)) {}

RunConfig parse_config(const std::string& text) {
    RunConfig cfg;
    std::vector<std::string> errs;
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#' || t[0] == ';') continue;
        if (t.front() == '[') {
            if (t.back() != ']') {
                errs.push_back("line " + std::to_string(lineno) + ": malformed section header");
                continue;
            }
            section = trim(t.substr(1, t.size() - 2));
            bool known = false;
            for (const auto& e : schema())
                if (section == e.section) known = true;
            if (!known)
                errs.push_back("line " + std::to_string(lineno) + ": unknown section [" +
                               section + "]");
            continue;
        }
        const auto eq = t.find('=');
        if (eq == std::string::npos) {
            errs.push_back("line " + std::to_string(lineno) + ": expected key = value");
            continue;
        }
        const std::string key = trim(t.substr(0, eq));
        const std::string value = trim(t.substr(eq + 1));
        bool found = false;
        for (const auto& e : schema()) {
            if (section == e.section && key == e.key) {
                e.set(cfg, value, errs, lineno);
                found = true;
                break;
            }
        }
        if (!found)
            errs.push_back("line " + std::to_string(lineno) + ": unknown key " +
                           (section.empty() ? key : section + "." + key));
    }
    validate(cfg, errs);
    if (!errs.empty()) throw ConfigError(std::move(errs));
    return cfg;
}

std::string serialize_config(const RunConfig& cfg) {
    std::string out;
    std::string current;
    for (const auto& e : schema()) {
        if (current != e.section) {
            if (!out.empty()) out += "\n";
            current = e.section;
            out += "[" + current + "]\n";
        }
        out += std::string(e.key) + " = " + e.get(cfg) + "\n";
    }
    return out;
}

void apply_override(RunConfig& cfg, const std::string& assignment) {
    const auto eq = assignment.find('=');
    const auto dot = assignment.find('.');
    if (eq == std::string::npos || dot == std::string::npos || dot > eq)
        throw ConfigError({"override must look like section.key=value: '" + assignment + "'"});
    const std::string section = trim(assignment.substr(0, dot));
    const std::string key = trim(assignment.substr(dot + 1, eq - dot - 1));
    const std::string value = trim(assignment.substr(eq + 1));
    std::vector<std::string> errs;
    for (const auto& e : schema()) {
        if (section == e.section && key == e.key) {
            e.set(cfg, value, errs, 0);
            validate(cfg, errs);
            if (!errs.empty()) throw ConfigError(std::move(errs));
            return;
        }
    }
    throw ConfigError({"unknown key " + section + "." + key});
}

}  // namespace toroton
