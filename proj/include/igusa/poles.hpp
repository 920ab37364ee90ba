#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "fan.hpp"
#include "rational.hpp"

namespace igusa {

/// A facet normal w with c(w) = d(w, Gamma(g)) - d(w, Gamma(f)).
struct NormalClass {
    IntVector w;
    std::int64_t sigma = 0;
    std::int64_t d_f = 0;
    std::int64_t d_g = 0;

    std::int64_t diff() const { return d_g - d_f; }
    Rational ratio() const { return Rational(sigma) / diff(); }
};

struct NormalClassification {
    std::vector<NormalClass> normals;
    std::vector<NormalClass> t_plus;   // diff > 0
    std::vector<NormalClass> t_minus;  // diff < 0
};

inline NormalClassification classify_normals(const std::vector<IntVector>& normals, const NewtonPolyhedron& gf,
                                             const NewtonPolyhedron& gg) {
    NormalClassification out;
    for (const auto& w : normals) {
        NormalClass c{w, coordinate_sum(w), d_value(w, gf), d_value(w, gg)};
        if (c.diff() > 0) {
            out.t_plus.push_back(c);
        } else if (c.diff() < 0) {
            out.t_minus.push_back(c);
        }
        out.normals.push_back(std::move(c));
    }
    return out;
}

/// alpha, beta and the band (beta~, alpha~) of guaranteed holomorphy; nullopt encodes +inf / -inf.
struct BandReport {
    std::optional<Rational> alpha;
    std::optional<Rational> beta;
    Rational alpha_tilde = 1;
    Rational beta_tilde = -1;
    std::vector<IntVector> p_alpha;
    std::vector<IntVector> p_beta;
    std::size_t kappa = 0;
    std::size_t rho = 0;
};

inline BandReport band(const NormalClassification& cls, const SubordinateFan& fan) {
    BandReport b;
    for (const auto& c : cls.t_plus) {
        if (!b.alpha || c.ratio() < *b.alpha) {
            b.alpha = c.ratio();
        }
    }
    for (const auto& c : cls.t_minus) {
        if (!b.beta || c.ratio() > *b.beta) {
            b.beta = c.ratio();
        }
    }
    b.alpha_tilde = b.alpha ? std::min(Rational(1), *b.alpha) : Rational(1);
    b.beta_tilde = b.beta ? std::max(Rational(-1), *b.beta) : Rational(-1);
    for (const auto& c : cls.t_plus) {
        if (c.ratio() == *b.alpha) {
            b.p_alpha.push_back(c.w);
        }
    }
    for (const auto& c : cls.t_minus) {
        if (c.ratio() == *b.beta) {
            b.p_beta.push_back(c.w);
        }
    }
    auto max_members = [&](const std::vector<IntVector>& set) {
        std::size_t best = 0;
        for (const auto& cone : fan.cones) {
            std::size_t m = 0;
            for (const auto& g : cone.generators) {
                m += static_cast<std::size_t>(std::count(set.begin(), set.end(), g));
            }
            best = std::max(best, m);
        }
        return best;
    };
    b.kappa = max_members(b.p_alpha);
    b.rho = max_members(b.p_beta);
    return b;
}

/// A family of candidate poles real_part + 2 pi i k / (c ln q), merged over every source.
struct PoleCandidate {
    Rational real_part;
    std::vector<std::int64_t> periods;  // the integers c
    std::vector<std::string> sources;
    bool on_line = false;               // Z has a pole somewhere on Re(s) = real_part
    std::size_t multiplicity = 0;       // pole order at the real point s = real_part
};

inline std::vector<PoleCandidate> pole_candidates(const NormalClassification& cls) {
    std::vector<PoleCandidate> out;
    auto add_one = [&](const Rational& r, std::int64_t c, std::string src) {
        auto it = std::find_if(out.begin(), out.end(), [&](const PoleCandidate& p) { return p.real_part == r; });
        if (it == out.end()) {
            out.push_back({r, {}, {}, false, 0});
            it = std::prev(out.end());
        }
        if (std::find(it->periods.begin(), it->periods.end(), c) == it->periods.end()) {
            it->periods.push_back(c);
        }
        it->sources.push_back(std::move(src));
    };
    add_one(1, 1, "trivial");
    add_one(-1, 1, "trivial");
    for (const auto& c : cls.normals) {
        if (c.diff() != 0) {
            const auto d = c.diff() < 0 ? -c.diff() : c.diff();
            add_one(c.ratio(), d, "w=" + to_string(c.w));
        }
    }
    std::sort(out.begin(), out.end(),
              [](const PoleCandidate& a, const PoleCandidate& b) { return a.real_part < b.real_part; });
    return out;
}

namespace detail {

/// Real part of the zeros of 1 - q^a t^b with t = q^{-s}: Re(s) = a / b.
inline Rational binomial_line(const Binomial& f) {
    if (f.b.size() != 1) {
        throw InputError("pole analysis needs a single-variable rational function");
    }
    return Rational(f.a) / f.b[0];
}

} // namespace detail

/// Pole data of Z on the line Re(s) = r0: whether any pole lies on it and the order at s = r0.
inline std::pair<bool, std::size_t> pole_on_line(const ZetaRational& z, const Rational& r0) {
    const auto q = z.q();
    std::size_t count = 0;
    auto rest = z.numerator();
    bool on_line = false;
    for (const auto& [f, m] : z.denominator()) {
        if (detail::binomial_line(f) != r0) {
            continue;
        }
        count += static_cast<std::size_t>(m);
        for (int k = 0; k < m && !on_line; ++k) {
            auto quot = rest.divide_binomial(rational_power(q, f.a), f.b);
            if (!quot) {
                on_line = true;
            } else {
                rest = std::move(*quot);
            }
        }
    }
    if (count == 0 || z.is_zero()) {
        return {false, 0};
    }
    // 1 - q^{a'} t^{b'} with a'/b' = r0 in lowest terms is irreducible and vanishes simply at t = q^{-r0}.
    const auto a0 = to_int64(numerator(r0));
    const auto b0 = to_int64(denominator(r0));
    std::size_t vanish = 0;
    auto num = z.numerator();
    while (vanish < count) {
        auto quot = num.divide_binomial(rational_power(q, a0), {b0});
        if (!quot) {
            break;
        }
        num = std::move(*quot);
        ++vanish;
    }
    return {on_line, count - vanish};
}

/// Fills on_line and the multiplicity of every candidate from the canonical Z.
inline std::vector<PoleCandidate> certify_poles(const ZetaRational& z, std::vector<PoleCandidate> candidates) {
    const auto zc = z.canonical();
    for (auto& c : candidates) {
        std::tie(c.on_line, c.multiplicity) = pole_on_line(zc, c.real_part);
    }
    return candidates;
}

/// Every line Re(s) = r carrying at least one pole of Z, ascending.
inline std::vector<Rational> pole_lines(const ZetaRational& z) {
    const auto zc = z.canonical();
    std::vector<Rational> lines;
    for (const auto& [f, m] : zc.denominator()) {
        const auto r = detail::binomial_line(f);
        if (std::find(lines.begin(), lines.end(), r) == lines.end() && pole_on_line(zc, r).first) {
            lines.push_back(r);
        }
    }
    std::sort(lines.begin(), lines.end());
    return lines;
}

} // namespace igusa
