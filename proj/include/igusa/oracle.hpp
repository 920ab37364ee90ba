#pragma once

#include <limits>
#include <map>
#include <vector>

#include "mapping.hpp"

namespace igusa {

inline constexpr std::uint64_t default_oracle_budget = 100'000'000;

/// Truncation of the p-adic integral at level M. The true value lies in [lower, upper]; upper may be +inf.
struct TruncationEstimate {
    unsigned level = 0;
    HighFloat lower = 0;
    HighFloat upper = 0;
    HighFloat estimate = 0;
    HighFloat resolved_mass = 0;  // measure of the cosets whose contribution is exact

    bool bounded() const { return upper != std::numeric_limits<HighFloat>::infinity(); }
    HighFloat width() const { return upper - lower; }
    /// Membership up to the rounding of the 60-digit arithmetic.
    bool contains(const HighFloat& v) const {
        const HighFloat slack = HighFloat(1e-45) * (1 + abs(v));
        return lower - slack <= v && v <= upper + slack;
    }
};

struct OracleOptions {
    std::uint64_t budget = default_oracle_budget;
    bool exact_monomial_tail = true;  // integrate single-term components in closed form
};

namespace detail {

inline HighFloat to_high(const Rational& r) {
    return HighFloat(numerator(r)) / HighFloat(denominator(r));
}

/// q^{-x} for real x.
inline HighFloat qpow(std::uint64_t q, const HighFloat& x) {
    return boost::multiprecision::pow(HighFloat(q), -x);
}

inline int valuation(std::int64_t v, std::uint64_t p, unsigned cap) {
    if (v == 0) {
        return static_cast<int>(cap);
    }
    int k = 0;
    while (v % static_cast<std::int64_t>(p) == 0) {
        v /= static_cast<std::int64_t>(p);
        ++k;
    }
    return k;
}

/// One polynomial with coefficients reduced mod p^M.
struct ResiduePoly {
    std::vector<std::pair<IntVector, std::int64_t>> terms;

    ResiduePoly(const IntegerPolynomial& h, std::int64_t mod) {
        for (const auto& [e, c] : h.terms()) {
            Integer r = c % mod;
            if (r < 0) {
                r += mod;
            }
            if (r != 0) {
                terms.emplace_back(e, static_cast<std::int64_t>(r));
            }
        }
    }

    std::int64_t eval(const std::vector<std::int64_t>& x, std::int64_t mod) const {
        __int128 acc = 0;
        for (const auto& [e, c] : terms) {
            __int128 v = c;
            for (std::size_t i = 0; i < x.size(); ++i) {
                for (std::int64_t k = 0; k < e[i]; ++k) {
                    v = v * x[i] % mod;
                }
            }
            acc = (acc + v) % mod;
        }
        return static_cast<std::int64_t>(acc);
    }
};

} // namespace detail

/// Integrates prod |h_j|^{s_j} over Z_p^n by enumerating the cosets x + p^M Z_p^n.
/// A coset on which every general component has ord < M contributes exactly; single-term components are
/// integrated in closed form coordinate by coordinate. Other cosets are bracketed between 0 and the
/// coset bound q^{-M e} (e > 0), or left unbounded above (e < 0).
inline TruncationEstimate truncated_zeta(const std::vector<IntegerPolynomial>& h, const std::vector<Rational>& s,
                                         std::uint64_t p, unsigned M, const OracleOptions& opt = {}) {
    if (h.empty() || h.size() != s.size()) {
        throw InputError("oracle needs one exponent per component");
    }
    if (M == 0) {
        throw InputError("oracle level must be positive");
    }
    const auto n = h.front().nvars();
    long double cosets = 1;
    std::int64_t mod = 1;
    for (unsigned k = 0; k < M; ++k) {
        mod *= static_cast<std::int64_t>(p);
        if (mod > (std::int64_t{1} << 40)) {
            throw BudgetExceeded("oracle modulus p^M is too large");
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        cosets *= static_cast<long double>(mod);
    }
    if (cosets > static_cast<long double>(opt.budget)) {
        throw BudgetExceeded("oracle enumeration of p^(Mn) = " + std::to_string(static_cast<double>(cosets)) +
                             " cosets exceeds the budget of " + std::to_string(opt.budget) + "; lower M");
    }

    // Split into single-term components (closed form) and general ones (resolved per coset).
    std::vector<Rational> coord_exp(n, 0);  // sum over monomial components of E_ji s_j
    Rational const_val_exp = 0;             // sum of ord_p(c_j) s_j
    std::vector<std::size_t> general;
    for (std::size_t j = 0; j < h.size(); ++j) {
        if (opt.exact_monomial_tail && h[j].is_monomial()) {
            const auto& [e, c] = *h[j].terms().begin();
            Integer cc = c < 0 ? Integer(-c) : c;
            std::int64_t oc = 0;
            while (cc % p == 0) {
                cc /= p;
                ++oc;
            }
            const_val_exp += s[j] * oc;
            for (std::size_t i = 0; i < n; ++i) {
                coord_exp[i] += s[j] * e[i];
            }
        } else {
            general.push_back(j);
        }
    }
    for (const auto& e : coord_exp) {
        if (1 + e <= 0) {
            throw InputError("exponent outside the region of convergence of the oracle integral");
        }
    }
    std::vector<detail::ResiduePoly> polys;
    for (auto j : general) {
        polys.emplace_back(h[j], mod);
    }

    // Signature of a coset: ord of every coordinate (M = "in p^M"), then ord of every general component.
    std::map<std::vector<int>, std::uint64_t> classes;
    std::vector<std::int64_t> x(n, 0);
    std::vector<int> sig(n + polys.size());
    for (;;) {
        for (std::size_t i = 0; i < n; ++i) {
            sig[i] = detail::valuation(x[i], p, M);
        }
        for (std::size_t k = 0; k < polys.size(); ++k) {
            sig[n + k] = detail::valuation(polys[k].eval(x, mod), p, M);
        }
        ++classes[sig];
        std::size_t i = 0;
        while (i < n && x[i] == mod - 1) {
            x[i++] = 0;
        }
        if (i == n) {
            break;
        }
        ++x[i];
    }

    const auto q = p;
    const HighFloat inf = std::numeric_limits<HighFloat>::infinity();
    const HighFloat coset_measure = detail::qpow(q, HighFloat(M) * n);
    const HighFloat one_minus = 1 - HighFloat(1) / q;
    TruncationEstimate out;
    out.level = M;
    for (const auto& [key, count] : classes) {
        // exact part: constants and monomial coordinates
        HighFloat exact = detail::qpow(q, detail::to_high(const_val_exp)) * count;
        for (std::size_t i = 0; i < n; ++i) {
            const auto e = detail::to_high(coord_exp[i]);
            if (key[i] < static_cast<int>(M)) {
                exact *= detail::qpow(q, HighFloat(M) + key[i] * e);
            } else {
                exact *= one_minus * detail::qpow(q, HighFloat(M) * (1 + e)) / (1 - detail::qpow(q, 1 + e));
            }
        }
        HighFloat lo = exact, hi = exact, est = exact;
        bool resolved = true;
        for (std::size_t k = 0; k < general.size(); ++k) {
            const auto e = detail::to_high(s[general[k]]);
            const int v = key[n + k];
            if (v < static_cast<int>(M)) {
                const auto f = detail::qpow(q, v * e);
                lo *= f;
                hi *= f;
                est *= f;
                continue;
            }
            resolved = false;
            const auto bound = detail::qpow(q, HighFloat(M) * e);
            // as if h were uniformly distributed in p^M Z_p
            est *= 1 + e > 0 ? bound * one_minus / (1 - detail::qpow(q, 1 + e)) : bound;
            if (e >= 0) {
                lo *= 0;
                hi *= bound;
            } else {
                lo *= bound;
                hi = inf;
            }
        }
        out.lower += lo;
        out.upper = (out.upper == inf || hi == inf) ? inf : out.upper + hi;
        out.estimate += est;
        if (resolved) {
            out.resolved_mass += coset_measure * count;
        }
    }
    return out;
}

/// Z(s0, f/g) = integral of |f|^{s0} |g|^{-s0}.
inline TruncationEstimate truncated_zeta_rational(const IntegerPolynomial& f, const IntegerPolynomial& g,
                                                  const Rational& s0, std::uint64_t p, unsigned M,
                                                  const OracleOptions& opt = {}) {
    return truncated_zeta({f, g}, {s0, -s0}, p, M, opt);
}

} // namespace igusa
