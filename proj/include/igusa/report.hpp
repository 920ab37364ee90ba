#pragma once

#include <iomanip>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "oracle.hpp"
#include "parser.hpp"
#include "poles.hpp"
#include "problem.hpp"
#include "zeta.hpp"

namespace igusa {

inline constexpr const char* report_schema = "igusa-report/1";

struct PoleReport {
    NormalClassification classes;
    BandReport band;
    std::vector<PoleCandidate> candidates;
};

struct OracleReport {
    std::vector<Rational> s0;
    HighFloat symbolic = 0;
    std::vector<TruncationEstimate> rows;  // levels 1..M

    bool agrees() const { return !rows.empty() && rows.back().contains(symbolic); }
};

/// Everything computed for one problem.
struct RunReport {
    ProblemSpec spec;
    std::vector<IntegerPolynomial> polynomials;
    std::vector<NewtonPolyhedron> polyhedra;  // one per polynomial, then their Minkowski sum
    SubordinateFan fan;
    StrataSurvey survey;
    ZetaAssembly assembly;
    std::optional<PoleReport> poles;  // rational mode only
    std::optional<OracleReport> oracle;
};

namespace detail {

inline std::string high_string(const HighFloat& x) {
    if (x == std::numeric_limits<HighFloat>::infinity()) {
        return "inf";
    }
    return x.str(24, std::ios_base::scientific);
}

inline std::vector<std::string> polynomial_labels(const ProblemSpec& spec) {
    if (spec.mode == Mode::rational) {
        return {"f", "g"};
    }
    std::vector<std::string> out;
    for (std::size_t i = 0; i < spec.polynomials.size(); ++i) {
        out.push_back("h" + std::to_string(i + 1));
    }
    return out;
}

inline std::string degenerate_message(const NondegeneracyReport& rep, const std::vector<std::string>& labels) {
    std::string msg = "input is degenerate over F_p (" + std::to_string(rep.failures) + " failing torus points)";
    if (!rep.witnesses.empty()) {
        const auto& w = rep.witnesses.front();
        msg += "; e.g. cone " + std::to_string(w.cone_id) + ", face functions {";
        bool first = true;
        for (std::size_t i = 0; i < labels.size(); ++i) {
            if (w.mask >> i & 1) {
                msg += (first ? "" : ",") + labels[i];
                first = false;
            }
        }
        msg += "} vanish at z = (";
        for (std::size_t i = 0; i < w.point.size(); ++i) {
            msg += (i ? "," : "") + std::to_string(w.point[i]);
        }
        msg += ") with Jacobian rank " + std::to_string(w.rank);
    }
    return msg + "; set override_degenerate = true to compute the formula anyway";
}

/// The default evaluation point: the middle of the positive part of the holomorphy band, or s_i = 1.
/// A positive s0 keeps |f|^s bounded on the unresolved cosets, so the oracle bracket stays finite.
inline std::vector<Rational> default_s0(const RunReport& r) {
    if (r.poles) {
        const auto& b = r.poles->band;
        const Rational lo = b.alpha_tilde > 0 ? std::max(Rational(0), b.beta_tilde) : b.beta_tilde;
        return {(lo + b.alpha_tilde) / 2};
    }
    return std::vector<Rational>(r.polynomials.size(), Rational(1));
}

inline void check_s0(const RunReport& r, const std::vector<Rational>& s0) {
    if (r.poles) {
        const auto& b = r.poles->band;
        if (!(b.beta_tilde < s0[0] && s0[0] < b.alpha_tilde)) {
            throw InputError("oracle_s = " + to_string(s0[0]) + " is outside the band (" + to_string(b.beta_tilde) +
                             ", " + to_string(b.alpha_tilde) + ")");
        }
        return;
    }
    for (const auto& s : s0) {
        if (s <= 0) {
            throw InputError("oracle_s values must be positive in multivariate mode");
        }
    }
}

} // namespace detail

/// Runs the whole pipeline. Throws InputError, DegenerateInput or BudgetExceeded.
inline RunReport run(const ProblemSpec& spec) {
    validate(spec);
    const BaseField field(spec.prime);
    const auto labels = detail::polynomial_labels(spec);
    std::vector<IntegerPolynomial> polys;
    for (std::size_t i = 0; i < spec.polynomials.size(); ++i) {
        try {
            polys.push_back(parse_polynomial(spec.polynomials[i], spec.variables));
        } catch (const ParseError& e) {
            throw InputError(labels[i] + ": " + e.what());
        }
    }
    const PolyMapping h(polys, field, true);
    std::vector<NewtonPolyhedron> polyhedra;
    for (const auto& p : polys) {
        polyhedra.push_back(newton_polyhedron(p));
    }
    auto gamma = minkowski_sum(std::span<const NewtonPolyhedron>(polyhedra));
    auto fan = subordinate_fan(gamma, {spec.fan_seed});
    auto survey = survey_strata(h, fan, field);
    if (!survey.report.verdict && !spec.override_degenerate) {
        throw DegenerateInput(detail::degenerate_message(survey.report, labels));
    }
    auto assembly = spec.mode == Mode::rational
                        ? assemble_Z_rational(polys[0], polys[1], fan, survey, field, spec.override_degenerate)
                        : assemble_Z(h, fan, survey, field, spec.override_degenerate);
    polyhedra.push_back(std::move(gamma));
    RunReport r{spec, polys, std::move(polyhedra), std::move(fan), std::move(survey), std::move(assembly), {}, {}};
    if (spec.mode == Mode::rational) {
        PoleReport pr;
        pr.classes = classify_normals(r.polyhedra.back().facet_normals(), r.polyhedra[0], r.polyhedra[1]);
        pr.band = band(pr.classes, r.fan);
        pr.candidates = certify_poles(r.assembly.Z, pole_candidates(pr.classes));
        r.poles = std::move(pr);
    }
    if (spec.oracle_level > 0) {
        OracleReport o;
        o.s0 = spec.oracle_s.empty() ? detail::default_s0(r) : spec.oracle_s;
        detail::check_s0(r, o.s0);
        std::vector<HighFloat> t;
        std::vector<Rational> exps = o.s0;
        for (const auto& s : o.s0) {
            t.push_back(detail::qpow(field.q(), detail::to_high(s)));
        }
        o.symbolic = r.assembly.Z.evaluate(t);
        if (spec.mode == Mode::rational) {
            exps = {o.s0[0], -o.s0[0]};
        }
        for (unsigned m = 1; m <= spec.oracle_level; ++m) {
            o.rows.push_back(truncated_zeta(polys, exps, field.p(), m));
        }
        r.oracle = std::move(o);
    }
    return r;
}

inline nlohmann::ordered_json to_json(const RunReport& r) {
    using json = nlohmann::ordered_json;
    const auto labels = detail::polynomial_labels(r.spec);
    const auto tnames = r.assembly.Z.default_names();
    json j;
    j["schema"] = report_schema;
    j["problem"] = {{"variables", r.spec.variables},
                    {"mode", to_string(r.spec.mode)},
                    {"polynomials", json::array()},
                    {"prime", r.spec.prime},
                    {"fan_seed", r.spec.fan_seed},
                    {"override_degenerate", r.spec.override_degenerate}};
    for (std::size_t i = 0; i < r.polynomials.size(); ++i) {
        j["problem"]["polynomials"].push_back(
            {{"label", labels[i]}, {"text", r.polynomials[i].to_string(r.spec.variables)}});
    }
    j["polyhedra"] = json::array();
    for (std::size_t i = 0; i < r.polyhedra.size(); ++i) {
        json facets = json::array();
        for (const auto& f : r.polyhedra[i].facets()) {
            facets.push_back({{"normal", f.normal}, {"offset", f.offset}});
        }
        j["polyhedra"].push_back({{"label", i < labels.size() ? labels[i] : std::string("sum")},
                                  {"vertices", r.polyhedra[i].vertices()},
                                  {"facets", facets}});
    }
    j["fan"] = json::array();
    for (const auto& c : r.fan.cones) {
        json faces = json::array();
        for (std::size_t i = 0; i < r.polynomials.size(); ++i) {
            faces.push_back({{"label", labels[i]},
                             {"text", face_function(r.polynomials[i], c.barycenter).to_string(r.spec.variables)}});
        }
        j["fan"].push_back({{"id", c.id},
                            {"generators", c.generators},
                            {"barycenter", c.barycenter},
                            {"multiplicity", c.multiplicity().str()},
                            {"face_functions", faces}});
    }
    json witnesses = json::array();
    for (const auto& w : r.survey.report.witnesses) {
        std::vector<std::string> set;
        for (std::size_t i = 0; i < labels.size(); ++i) {
            if (w.mask >> i & 1) {
                set.push_back(labels[i]);
            }
        }
        witnesses.push_back({{"cone", w.cone_id}, {"vanishing", set}, {"point", w.point}, {"rank", w.rank}});
    }
    j["nondegeneracy"] = {{"nondegenerate", r.survey.report.verdict},
                          {"failures", r.survey.report.failures},
                          {"witnesses", witnesses}};
    j["cones"] = json::array();
    for (const auto& t : r.assembly.terms) {
        j["cones"].push_back({{"id", t.cone_id},
                              {"counts", t.counts.counts},
                              {"L", t.L.canonical().to_string(tnames)},
                              {"S", t.S.canonical().to_string(tnames)}});
    }
    json num = json::array();
    for (const auto& [e, c] : r.assembly.Z.numerator().terms()) {
        num.push_back({{"t_exponent", e}, {"coefficient", to_string(c)}});
    }
    json den = json::array();
    for (const auto& [f, m] : r.assembly.Z.denominator()) {
        den.push_back({{"q_exponent", f.a}, {"t_exponent", f.b}, {"multiplicity", m}});
    }
    j["zeta"] = {{"variables", tnames},
                 {"text", r.assembly.Z.to_string(tnames)},
                 {"numerator", num},
                 {"denominator", den},
                 {"certified", r.assembly.certified}};
    if (r.poles) {
        const auto& b = r.poles->band;
        auto opt = [](const std::optional<Rational>& v) { return v ? json(to_string(*v)) : json(nullptr); };
        auto vecs = [](const std::vector<IntVector>& v) { return json(v); };
        json cands = json::array();
        for (const auto& c : r.poles->candidates) {
            cands.push_back({{"real_part", to_string(c.real_part)},
                             {"periods", c.periods},
                             {"sources", c.sources},
                             {"on_line", c.on_line},
                             {"multiplicity", c.multiplicity}});
        }
        j["poles"] = {{"candidates", cands},
                      {"band", {{"alpha", opt(b.alpha)},
                                {"beta", opt(b.beta)},
                                {"alpha_tilde", to_string(b.alpha_tilde)},
                                {"beta_tilde", to_string(b.beta_tilde)},
                                {"p_alpha", vecs(b.p_alpha)},
                                {"p_beta", vecs(b.p_beta)},
                                {"kappa", b.kappa},
                                {"rho", b.rho}}}};
    } else {
        j["poles"] = nullptr;
    }
    if (r.oracle) {
        json rows = json::array();
        for (const auto& e : r.oracle->rows) {
            rows.push_back({{"level", e.level},
                            {"estimate", detail::high_string(e.estimate)},
                            {"lower", detail::high_string(e.lower)},
                            {"upper", detail::high_string(e.upper)},
                            {"resolved_mass", detail::high_string(e.resolved_mass)}});
        }
        std::vector<std::string> s0;
        for (const auto& s : r.oracle->s0) {
            s0.push_back(to_string(s));
        }
        j["oracle"] = {{"s0", s0},
                       {"symbolic", detail::high_string(r.oracle->symbolic)},
                       {"rows", rows},
                       {"agrees", r.oracle->agrees()}};
    } else {
        j["oracle"] = nullptr;
    }
    return j;
}

namespace detail {

// Column width in code points, so that "Δ" counts once.
inline std::size_t width(const std::string& s) {
    return static_cast<std::size_t>(
        std::count_if(s.begin(), s.end(), [](char c) { return (static_cast<unsigned char>(c) & 0xC0) != 0x80; }));
}

inline void table(std::ostream& out, const std::vector<std::vector<std::string>>& rows) {
    std::vector<std::size_t> w;
    for (const auto& row : rows) {
        w.resize(std::max(w.size(), row.size()), 0);
        for (std::size_t i = 0; i < row.size(); ++i) {
            w[i] = std::max(w[i], width(row[i]));
        }
    }
    for (std::size_t k = 0; k < rows.size(); ++k) {
        std::string line;
        for (std::size_t i = 0; i < rows[k].size(); ++i) {
            line += (i ? " | " : "") + rows[k][i];
            if (i + 1 < rows[k].size()) {
                line += std::string(w[i] - width(rows[k][i]), ' ');
            }
        }
        out << "  " << line << "\n";
        if (k == 0) {
            std::string rule;
            for (std::size_t i = 0; i < w.size(); ++i) {
                rule += (i ? "-+-" : "") + std::string(w[i], '-');
            }
            out << "  " << rule << "\n";
        }
    }
}

inline std::string join(const std::vector<IntVector>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        s += (i ? " " : "") + to_string(v[i]);
    }
    return s;
}

inline void text_report(std::ostream& out, const RunReport& r) {
    const auto labels = polynomial_labels(r.spec);
    const auto tnames = r.assembly.Z.default_names();
    const bool rational = r.spec.mode == Mode::rational;
    out << "Problem (" << to_string(r.spec.mode) << ", p = " << r.spec.prime << ", fan seed " << r.spec.fan_seed
        << ")\n";
    for (std::size_t i = 0; i < r.polynomials.size(); ++i) {
        out << "  " << labels[i] << " = " << r.polynomials[i].to_string(r.spec.variables) << "\n";
    }
    out << "\nNewton polyhedra\n";
    for (std::size_t i = 0; i < r.polyhedra.size(); ++i) {
        const auto& p = r.polyhedra[i];
        out << "  " << (i < labels.size() ? "Gamma(" + labels[i] + ")" : std::string("Gamma (sum)"))
            << ": vertices " << join(p.vertices()) << "\n";
        for (const auto& f : p.facets()) {
            out << "    <" << to_string(f.normal) << ", x> >= " << f.offset << "\n";
        }
    }
    out << "\nFan\n";
    std::vector<std::vector<std::string>> fan_rows{{"Cone", "Generators", "Barycenter"}};
    for (const auto& l : labels) {
        fan_rows[0].push_back(l + "_b");
    }
    for (const auto& c : r.fan.cones) {
        std::vector<std::string> row{std::to_string(c.id), join(c.generators), to_string(c.barycenter)};
        for (const auto& p : r.polynomials) {
            row.push_back(face_function(p, c.barycenter).to_string(r.spec.variables));
        }
        fan_rows.push_back(std::move(row));
    }
    table(out, fan_rows);
    const auto& nd = r.survey.report;
    out << "\nNon-degeneracy: " << (nd.verdict ? "non-degenerate" : "DEGENERATE") << " over F_" << r.spec.prime;
    if (!nd.verdict) {
        out << " (" << nd.failures << " failing points; result not certified)";
    }
    out << "\n";
    for (const auto& w : nd.witnesses) {
        out << "  witness: cone " << w.cone_id << ", z = (";
        for (std::size_t i = 0; i < w.point.size(); ++i) {
            out << (i ? "," : "") << w.point[i];
        }
        out << "), rank " << w.rank << "\n";
    }
    out << "\nPer-cone terms (" << (rational ? "t = q^-s" : "t_i = q^-s_i") << ")\n";
    std::vector<std::vector<std::string>> rows{{"Cone", "L_Δ", "S_Δ"}};
    for (const auto& t : r.assembly.terms) {
        std::string name = t.cone_id == 0 ? "{0}" : std::to_string(t.cone_id);
        if (t.cone_id != 0) {
            name += " " + join(r.fan.cones[t.cone_id - 1].generators);
        }
        rows.push_back({name, t.L.canonical().to_string(tnames), t.S.canonical().to_string(tnames)});
    }
    table(out, rows);
    out << "\nZ = " << r.assembly.Z.to_string(tnames) << "\n";
    if (r.poles) {
        const auto& b = r.poles->band;
        out << "\nPoles (real parts; each line carries s = Re + 2 pi i k / (c ln q))\n";
        std::vector<std::vector<std::string>> prow{{"Re(s)", "c", "on line", "order at Re(s)", "sources"}};
        bool nontrivial = false;
        for (const auto& c : r.poles->candidates) {
            std::string periods, sources;
            for (auto p : c.periods) {
                periods += (periods.empty() ? "" : ",") + std::to_string(p);
            }
            for (const auto& s : c.sources) {
                sources += (sources.empty() ? "" : " ") + s;
            }
            const bool trivial = c.real_part == 1 || c.real_part == -1;
            nontrivial = nontrivial || (c.on_line && !trivial);
            prow.push_back({to_string(c.real_part), periods, c.on_line ? "yes" : "no",
                            std::to_string(c.multiplicity), sources});
        }
        table(out, prow);
        if (!nontrivial) {
            out << "  no poles outside trivial families\n";
        }
        out << "\nBand\n";
        out << "  alpha = " << (b.alpha ? to_string(*b.alpha) : "+inf") << ", beta = "
            << (b.beta ? to_string(*b.beta) : "-inf") << "\n";
        out << "  Z is holomorphic on " << to_string(b.beta_tilde) << " < Re(s) < " << to_string(b.alpha_tilde)
            << "\n";
        out << "  kappa = " << b.kappa << ", rho = " << b.rho << "\n";
    } else {
        out << "\nDenominator lines (Re <b, s> = a for each 1 - q^a t^b)\n";
        const auto zc = r.assembly.Z.canonical();
        for (const auto& [f, m] : zc.denominator()) {
            out << "  a = " << f.a << ", b = " << to_string(f.b) << (m > 1 ? ", power " + std::to_string(m) : "")
                << "\n";
        }
    }
    if (r.oracle) {
        out << "\nOracle at s0 = (";
        for (std::size_t i = 0; i < r.oracle->s0.size(); ++i) {
            out << (i ? ", " : "") << to_string(r.oracle->s0[i]);
        }
        out << "), symbolic value " << high_string(r.oracle->symbolic) << "\n";
        std::vector<std::vector<std::string>> orow{{"M", "estimate", "lower", "upper", "resolved mass"}};
        for (const auto& e : r.oracle->rows) {
            orow.push_back({std::to_string(e.level), high_string(e.estimate), high_string(e.lower),
                            high_string(e.upper), high_string(e.resolved_mass)});
        }
        table(out, orow);
        out << "  symbolic value " << (r.oracle->agrees() ? "inside" : "OUTSIDE") << " the final bracket\n";
    }
}

} // namespace detail

inline std::string print_report(const RunReport& r, Format format) {
    if (format == Format::json) {
        return to_json(r).dump(2) + "\n";
    }
    std::ostringstream out;
    detail::text_report(out, r);
    return out.str();
}

} // namespace igusa
