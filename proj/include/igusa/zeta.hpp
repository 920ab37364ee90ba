#pragma once

#include <vector>

#include "rational.hpp"
#include "torus.hpp"

namespace igusa {

/// (s_1, s_2) -> (s, -s): t_1 -> t, t_2 -> t^{-1}.
inline const std::vector<IntVector>& rational_specialization() {
    static const std::vector<IntVector> m{{1}, {-1}};
    return m;
}

/// L(s, h) = q^{-n} sum_I Card(V_I) prod_{i in I} (q-1) q^{-1-s_i} / (1 - q^{-1-s_i}).
inline ZetaRational l_factor(const CountTable& counts, const BaseField& field, std::size_t n) {
    const auto q = field.q();
    const auto r = counts.r;
    ZetaRational acc(r, q);
    for (std::uint64_t mask = 0; mask < counts.counts.size(); ++mask) {
        if (counts[mask] == 0) {
            continue;
        }
        auto term = ZetaRational::constant(r, q, Rational(counts[mask]) * rational_power(q, -static_cast<std::int64_t>(n)));
        for (std::size_t i = 0; i < r; ++i) {
            if (mask >> i & 1) {
                IntVector e(r, 0);
                e[i] = 1;
                term *= ZetaRational::monomial(q, {-1, e}, Rational(q - 1));
                term *= ZetaRational::geometric(q, -1, e);
            }
        }
        acc += term;
    }
    return acc;
}

/// Closed form of L_Delta(s, f/g) for r = 2 in the single variable t = q^{-s}:
/// q^{-n}[(q-1)^n - N_f (1-q^{-s})/(1-q^{-1-s}) - N_g (1-q^s)/(1-q^{-1+s})
///        - N_fg (1-q^{-s})(1-q^s) / (q (1-q^{-1-s})(1-q^{-1+s}))].
inline ZetaRational l_factor_rational(const CountTable& counts, const BaseField& field, std::size_t n) {
    if (counts.r != 2) {
        throw InputError("the rational-function L factor needs counts for exactly two polynomials");
    }
    const auto q = field.q();
    const Rational qn = rational_power(q, -static_cast<std::int64_t>(n));
    Rational torus = 1;
    for (std::size_t i = 0; i < n; ++i) {
        torus *= q - 1;
    }
    auto one_minus = [&](std::int64_t k) {  // 1 - t^k
        auto z = ZetaRational::constant(1, q, 1);
        return z - ZetaRational::monomial(q, {0, {k}});
    };
    const auto f_part = one_minus(1) * ZetaRational::geometric(q, -1, {1});
    const auto g_part = one_minus(-1) * ZetaRational::geometric(q, -1, {-1});
    const auto fg_part = (one_minus(1) * one_minus(-1)).scaled(Rational(1, q)) * ZetaRational::geometric(q, -1, {1}) *
                         ZetaRational::geometric(q, -1, {-1});
    auto z = ZetaRational::constant(1, q, torus);
    z -= f_part.scaled(counts[1]);
    z -= g_part.scaled(counts[2]);
    z -= fg_part.scaled(counts[3]);
    return z.scaled(qn);
}

/// S_Delta as monomial data: numerator monomials over the fundamental points and one binomial
/// exponent (-sigma(w), d(w, Gamma_1..r)) per generator w.
struct ConeSeries {
    std::vector<IntVector> points;
    std::vector<ExpMonomial> numerator;
    std::vector<ExpMonomial> denominator;

    ZetaRational to_rational(std::uint64_t q) const {
        ZetaRational z(numerator.front().sexps.size(), q);
        for (const auto& m : numerator) {
            z += ZetaRational::monomial(q, m);
        }
        for (const auto& d : denominator) {
            z.divide_by_binomial(d.qexp, d.sexps);
        }
        return z;
    }
};

inline ExpMonomial cone_monomial(const IntVector& k, const std::vector<NewtonPolyhedron>& gammas) {
    ExpMonomial m;
    m.qexp = -coordinate_sum(k);
    for (const auto& g : gammas) {
        m.sexps.push_back(d_value(k, g));
    }
    return m;
}

inline ConeSeries cone_series(const SimplicialCone& c, const std::vector<NewtonPolyhedron>& gammas) {
    ConeSeries s;
    s.points = fundamental_points(c);
    for (const auto& t : s.points) {
        s.numerator.push_back(cone_monomial(t, gammas));
    }
    for (const auto& w : c.generators) {
        s.denominator.push_back(cone_monomial(w, gammas));
    }
    return s;
}

/// S_Delta(s_1..s_r) = sum_t q^{-sigma(t) - sum d(t, Gamma_i) s_i} / prod_w (1 - q^{-sigma(w) - ...}).
inline ZetaRational s_delta(const SimplicialCone& c, const std::vector<NewtonPolyhedron>& gammas,
                            const BaseField& field) {
    return cone_series(c, gammas).to_rational(field.q());
}

struct ConeTerm {
    std::size_t cone_id = 0;  // 0: the origin, with S = 1
    CountTable counts;
    ConeSeries series;  // empty for the origin
    ZetaRational L;
    ZetaRational S;
};

struct ZetaAssembly {
    std::vector<ConeTerm> terms;
    ZetaRational Z;
    bool certified = true;  // false when computed for a degenerate input under override
};

namespace detail {

inline void require_nondegenerate(const NondegeneracyReport& rep, bool override_degenerate, ZetaAssembly& out) {
    if (!rep.verdict) {
        if (!override_degenerate) {
            throw DegenerateInput("input is degenerate over F_q with respect to its Newton polyhedron (" +
                                  std::to_string(rep.failures) +
                                  " failing torus points); pass the override flag to compute the formula anyway");
        }
        out.certified = false;
    }
}

inline std::vector<NewtonPolyhedron> component_polyhedra(const PolyMapping& h) {
    std::vector<NewtonPolyhedron> g;
    for (const auto& c : h.components()) {
        g.push_back(newton_polyhedron(c));
    }
    return g;
}

} // namespace detail

/// Z(s, h) = L_{0}(s, h) + sum_Delta L_Delta(s, h) S_Delta(s), in t_i = q^{-s_i}.
inline ZetaAssembly assemble_Z(const PolyMapping& h, const SubordinateFan& fan, const StrataSurvey& survey,
                               const BaseField& field, bool override_degenerate = false) {
    const auto q = field.q();
    const auto n = h.nvars();
    const auto r = h.size();
    ZetaAssembly out{{}, ZetaRational(r, q), true};
    detail::require_nondegenerate(survey.report, override_degenerate, out);
    const auto gammas = detail::component_polyhedra(h);
    if (survey.tables.size() != fan.cones.size() + 1) {
        throw InputError("count tables do not match the fan");
    }
    out.terms.push_back({0, survey.tables[0], {}, l_factor(survey.tables[0], field, n),
                         ZetaRational::constant(r, q, 1)});
    for (std::size_t i = 0; i < fan.cones.size(); ++i) {
        auto series = cone_series(fan.cones[i], gammas);
        auto S = series.to_rational(q);
        out.terms.push_back({fan.cones[i].id, survey.tables[i + 1], std::move(series),
                             l_factor(survey.tables[i + 1], field, n), std::move(S)});
    }
    for (const auto& t : out.terms) {
        out.Z += t.L * t.S;
    }
    out.Z.canonicalize();
    return out;
}

/// Z(s, f/g) = Z(s, -s, f, g) via the closed-form L_Delta(s, f/g), in t = q^{-s}.
inline ZetaAssembly assemble_Z_rational(const IntegerPolynomial& f, const IntegerPolynomial& g,
                                        const SubordinateFan& fan, const StrataSurvey& survey,
                                        const BaseField& field, bool override_degenerate = false) {
    const auto q = field.q();
    const auto n = f.nvars();
    ZetaAssembly out{{}, ZetaRational(1, q), true};
    detail::require_nondegenerate(survey.report, override_degenerate, out);
    const std::vector<NewtonPolyhedron> gammas{newton_polyhedron(f), newton_polyhedron(g)};
    if (survey.tables.size() != fan.cones.size() + 1) {
        throw InputError("count tables do not match the fan");
    }
    out.terms.push_back({0, survey.tables[0], {}, l_factor_rational(survey.tables[0], field, n),
                         ZetaRational::constant(1, q, 1)});
    for (std::size_t i = 0; i < fan.cones.size(); ++i) {
        auto series = cone_series(fan.cones[i], gammas);
        auto S = series.to_rational(q).specialize(rational_specialization());
        out.terms.push_back({fan.cones[i].id, survey.tables[i + 1], std::move(series),
                             l_factor_rational(survey.tables[i + 1], field, n), std::move(S)});
    }
    for (const auto& t : out.terms) {
        out.Z += t.L * t.S;
    }
    out.Z.canonicalize();
    return out;
}

} // namespace igusa
