#pragma once

// Randomized structural checks on pairs (f, g); shared by the property test and the acceptance binary.

#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "igusa/igusa.hpp"

namespace props {

using namespace igusa;

struct Instance {
    std::size_t n = 2;
    std::uint64_t q = 3;
    IntegerPolynomial f{2}, g{2};

    std::string describe() const {
        std::ostringstream out;
        out << "n=" << n << " q=" << q << " f=" << to_string(f) << " g=" << to_string(g);
        return out.str();
    }
};

inline IntegerPolynomial random_polynomial(std::mt19937_64& rng, std::size_t n, std::size_t max_terms) {
    static const int coeffs[] = {1, -1, 2, -2};
    const int maxe = n == 2 ? 3 : 2;
    IntegerPolynomial h(n);
    const std::size_t terms = 1 + rng() % max_terms;
    while (h.terms().size() < terms) {
        IntVector e(n);
        for (auto& x : e) {
            x = static_cast<std::int64_t>(rng() % (maxe + 1));
        }
        if (!is_zero(e) && h.coefficient(e) == 0) {
            h.add_term(e, coeffs[rng() % 4]);
        }
    }
    return h;
}

inline Instance random_instance(std::mt19937_64& rng, std::size_t index) {
    Instance in;
    in.n = 2 + index % 2;
    in.q = (index / 2) % 2 == 0 ? 3 : 5;
    in.f = random_polynomial(rng, in.n, 6);
    in.g = random_polynomial(rng, in.n, 3);
    return in;
}

struct Outcome {
    bool nondegenerate = false;
    std::vector<std::string> failures;  // "(x) message"
    std::size_t checks = 0;
};

namespace detail {

inline void for_box(std::size_t n, std::int64_t b, const std::function<void(const IntVector&)>& fn) {
    IntVector x(n, 0);
    for (;;) {
        if (!is_zero(x)) {
            fn(x);
        }
        std::size_t i = 0;
        while (i < n && x[i] == b) {
            x[i++] = 0;
        }
        if (i == n) {
            return;
        }
        ++x[i];
    }
}

} // namespace detail

/// Runs every property on one instance. Degenerate instances are computed under override and only
/// the algebraic identities (a)-(f) are checked; the pole theorems need non-degeneracy.
inline Outcome check_instance(const Instance& in, std::uint64_t other_seed = 11) {
    Outcome out;
    auto expect = [&](bool ok, const std::string& tag, const std::string& msg) {
        ++out.checks;
        if (!ok) {
            out.failures.push_back(tag + " " + msg);
        }
    };
    const BaseField field(in.q);
    const PolyMapping h({in.f, in.g}, field, true);
    const auto gf = newton_polyhedron(in.f);
    const auto gg = newton_polyhedron(in.g);
    const auto gamma = minkowski_sum(gf, gg);
    const auto fan = subordinate_fan(gamma);
    const auto survey = survey_strata(h, fan, field);
    out.nondegenerate = survey.report.verdict;

    // (a) the strata of every cone partition the torus
    std::uint64_t torus = 1;
    for (std::size_t i = 0; i < in.n; ++i) {
        torus *= in.q - 1;
    }
    for (const auto& t : survey.tables) {
        expect(t.total() == torus, "(a)", "cone " + std::to_string(t.cone_id) + " counts sum to " +
                                              std::to_string(t.total()));
    }

    // (b) d and first meet loci are additive under Minkowski sum
    detail::for_box(in.n, 3, [&](const IntVector& a) {
        expect(d_value(a, gamma) == d_value(a, gf) + d_value(a, gg), "(b)", "d additivity at " + to_string(a));
        const auto face = first_meet_locus(a, gamma);
        const auto ff = first_meet_locus(a, gf);
        const auto fg = first_meet_locus(a, gg);
        for (const auto& v : face.vertex_subset) {
            bool split = false;
            for (const auto& u : ff.vertex_subset) {
                for (const auto& w : fg.vertex_subset) {
                    split = split || add(u, w) == v;
                }
            }
            expect(split, "(b)", "face vertex " + to_string(v) + " is not a sum at " + to_string(a));
        }
        auto dirs = ff.free_directions;
        dirs.insert(dirs.end(), fg.free_directions.begin(), fg.free_directions.end());
        std::sort(dirs.begin(), dirs.end());
        dirs.erase(std::unique(dirs.begin(), dirs.end()), dirs.end());
        expect(face.free_directions == dirs, "(b)", "face directions at " + to_string(a));
    });

    // (c) the fan partitions the box and is subordinate to both polyhedra
    detail::for_box(in.n, in.n == 2 ? 6 : 3, [&](const IntVector& k) {
        const SimplicialCone* where = nullptr;
        int hits = 0;
        for (const auto& c : fan.cones) {
            if (c.contains_strictly(k)) {
                ++hits;
                where = &c;
            }
        }
        expect(hits == 1, "(c)", to_string(k) + " lies in " + std::to_string(hits) + " cones");
        if (where) {
            expect(first_meet_locus(k, gamma).vertex_subset == first_meet_locus(where->barycenter, gamma).vertex_subset,
                   "(c)", "face changes inside the cone of " + to_string(k));
        }
    });

    // (e) unimodular cones have the single numerator term t = sum of generators
    const std::vector<NewtonPolyhedron> gammas{gf, gg};
    for (const auto& c : fan.cones) {
        if (c.multiplicity() == 1) {
            const auto series = cone_series(c, gammas);
            expect(series.numerator.size() == 1 && series.points.front() == c.barycenter, "(e)",
                   "cone " + std::to_string(c.id) + " has " + std::to_string(series.numerator.size()) + " terms");
        }
    }

    // (d) fan independence and (f) the specialization (s1, s2) = (s, -s)
    const auto z = assemble_Z_rational(in.f, in.g, fan, survey, field, true).Z;
    const auto fan2 = subordinate_fan(gamma, {other_seed});
    const auto z2 = assemble_Z_rational(in.f, in.g, fan2, survey_strata(h, fan2, field), field, true).Z;
    expect(equivalent(z, z2), "(d)", "Z(s, f/g) depends on the subdivision");
    const auto zm = assemble_Z(h, fan, survey, field, true).Z;
    const auto zm2 = assemble_Z(h, fan2, survey_strata(h, fan2, field), field, true).Z;
    expect(equivalent(zm, zm2), "(d)", "Z(s1, s2) depends on the subdivision");
    expect(equivalent(zm.specialize(rational_specialization()), z), "(f)", "specialization identity");

    if (!out.nondegenerate) {
        return out;
    }
    // Pole theorems.
    const auto cls = classify_normals(gamma.facet_normals(), gf, gg);
    const auto b = band(cls, fan);
    const auto cands = certify_poles(z, pole_candidates(cls));
    for (const auto& line : pole_lines(z)) {
        const bool listed = std::any_of(cands.begin(), cands.end(), [&](const PoleCandidate& c) {
            return c.real_part == line;
        });
        expect(listed, "(g)", "pole line Re(s) = " + to_string(line) + " is not a candidate");
        expect(!(b.beta_tilde < line && line < b.alpha_tilde), "(h)",
               "pole line Re(s) = " + to_string(line) + " inside the band");
    }
    for (const auto& c : cands) {
        if (b.beta && *b.beta > -1 && c.real_part == *b.beta) {
            expect(c.on_line && c.multiplicity == b.rho, "(i)",
                   "beta = " + to_string(*b.beta) + " has order " + std::to_string(c.multiplicity) + ", rho = " +
                       std::to_string(b.rho));
        }
        if (b.alpha && *b.alpha < 1 && c.real_part == *b.alpha) {
            expect(c.on_line && c.multiplicity == b.kappa, "(j)",
                   "alpha = " + to_string(*b.alpha) + " has order " + std::to_string(c.multiplicity) +
                       ", kappa = " + std::to_string(b.kappa));
        }
    }
    return out;
}

} // namespace props
