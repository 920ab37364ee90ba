#pragma once

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "types.hpp"

namespace igusa {

enum class Mode { multivariate, rational };
enum class Format { text, json };

/// One run: the polynomials, the prime and the options.
/// Text syntax, one `key = value` per line, `#` starts a comment:
///
///   variables = x, y
///   mode = rational            # or multivariate
///   f = x^2 - y                # rational mode: exactly one f and one g
///   g = x^2*y
///   h = ...                    # multivariate mode: one line per component, in order
///   prime = 5
///   fan_seed = 0
///   oracle_level = 4           # 0 disables the oracle
///   oracle_s = 1/4             # one value per component (multivariate) or one (rational)
///   override_degenerate = false
///   format = text              # or json
struct ProblemSpec {
    std::vector<std::string> variables;
    Mode mode = Mode::multivariate;
    std::vector<std::string> polynomials;
    std::uint64_t prime = 0;
    std::uint64_t fan_seed = 0;
    unsigned oracle_level = 0;
    std::vector<Rational> oracle_s;  // empty: default point
    bool override_degenerate = false;
    Format format = Format::text;
};

inline std::string to_string(Mode m) { return m == Mode::rational ? "rational" : "multivariate"; }

namespace detail {

inline std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    const auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
}

inline std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, ',')) {
        out.push_back(trim(item));
    }
    return out;
}

inline std::uint64_t parse_unsigned(const std::string& key, const std::string& v) {
    if (v.empty() || v.find_first_not_of("0123456789") != std::string::npos || v.size() > 18) {
        throw InputError(key + " must be a nonnegative integer, got '" + v + "'");
    }
    return std::stoull(v);
}

inline bool parse_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "yes" || v == "1") {
        return true;
    }
    if (v == "false" || v == "no" || v == "0") {
        return false;
    }
    throw InputError(key + " must be true or false, got '" + v + "'");
}

inline bool is_identifier(const std::string& s) {
    if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) {
        return false;
    }
    return std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

} // namespace detail

inline Format parse_format(const std::string& v) {
    if (v == "text") {
        return Format::text;
    }
    if (v == "json") {
        return Format::json;
    }
    throw InputError("format must be text or json, got '" + v + "'");
}

/// Checks the cross-field rules; parse_problem calls it.
inline void validate(const ProblemSpec& spec) {
    if (spec.variables.empty()) {
        throw InputError("missing 'variables'");
    }
    std::set<std::string> seen;
    for (const auto& v : spec.variables) {
        if (!detail::is_identifier(v)) {
            throw InputError("bad variable name '" + v + "'");
        }
        if (v == "q" || v == "t" || v == "s") {
            throw InputError("variable name '" + v + "' is reserved for the report");
        }
        if (!seen.insert(v).second) {
            throw InputError("variable '" + v + "' listed twice");
        }
    }
    if (spec.prime == 0) {
        throw InputError("missing 'prime'");
    }
    if (spec.mode == Mode::rational && spec.polynomials.size() != 2) {
        throw InputError("rational mode needs exactly one 'f' and one 'g'");
    }
    if (spec.mode == Mode::multivariate && spec.polynomials.empty()) {
        throw InputError("multivariate mode needs at least one 'h'");
    }
    if (!spec.oracle_s.empty()) {
        const auto want = spec.mode == Mode::rational ? 1 : spec.polynomials.size();
        if (spec.oracle_s.size() != want) {
            throw InputError("oracle_s needs " + std::to_string(want) + " value(s)");
        }
    }
}

inline ProblemSpec parse_problem(std::istream& in) {
    ProblemSpec spec;
    std::string f, g;
    std::vector<std::string> hs;
    bool have_mode = false;
    std::string line;
    for (std::size_t lineno = 1; std::getline(in, line); ++lineno) {
        if (const auto hash = line.find('#'); hash != std::string::npos) {
            line.resize(hash);
        }
        line = detail::trim(line);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        const auto where = "line " + std::to_string(lineno) + ": ";
        if (eq == std::string::npos) {
            throw InputError(where + "expected 'key = value'");
        }
        const auto key = detail::trim(line.substr(0, eq));
        const auto value = detail::trim(line.substr(eq + 1));
        try {
            if (key == "variables") {
                spec.variables = detail::split_list(value);
            } else if (key == "mode") {
                if (value != "rational" && value != "multivariate") {
                    throw InputError("mode must be rational or multivariate");
                }
                spec.mode = value == "rational" ? Mode::rational : Mode::multivariate;
                have_mode = true;
            } else if (key == "f" || key == "g") {
                auto& slot = key == "f" ? f : g;
                if (!slot.empty()) {
                    throw InputError("'" + key + "' given twice");
                }
                slot = value.empty() ? " " : value;
            } else if (key == "h") {
                hs.push_back(value);
            } else if (key == "prime") {
                spec.prime = detail::parse_unsigned(key, value);
            } else if (key == "fan_seed") {
                spec.fan_seed = detail::parse_unsigned(key, value);
            } else if (key == "oracle_level") {
                spec.oracle_level = static_cast<unsigned>(detail::parse_unsigned(key, value));
            } else if (key == "oracle_s") {
                spec.oracle_s.clear();
                for (const auto& v : detail::split_list(value)) {
                    spec.oracle_s.push_back(parse_rational(v));
                }
            } else if (key == "override_degenerate") {
                spec.override_degenerate = detail::parse_bool(key, value);
            } else if (key == "format") {
                spec.format = parse_format(value);
            } else {
                throw InputError("unknown key '" + key + "'");
            }
        } catch (const InputError& e) {
            throw InputError(where + e.what());
        }
    }
    if (!have_mode) {
        spec.mode = (!f.empty() || !g.empty()) ? Mode::rational : Mode::multivariate;
    }
    if (spec.mode == Mode::rational) {
        if (!hs.empty()) {
            throw InputError("rational mode takes 'f' and 'g', not 'h'");
        }
        if (f.empty() || g.empty()) {
            throw InputError("rational mode needs both 'f' and 'g'");
        }
        spec.polynomials = {f, g};
    } else {
        if (!f.empty() || !g.empty()) {
            throw InputError("multivariate mode takes 'h' lines, not 'f'/'g'");
        }
        spec.polynomials = hs;
    }
    validate(spec);
    return spec;
}

inline ProblemSpec parse_problem(const std::string& text) {
    std::istringstream in(text);
    return parse_problem(in);
}

inline ProblemSpec load_problem(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw InputError("cannot open problem file '" + path + "'");
    }
    return parse_problem(in);
}

} // namespace igusa
