#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "types.hpp"

namespace igusa {

/// q^qexp * prod_i t_i^{sexps_i}, where t_i = q^{-s_i}; i.e. the value q^{qexp - sum sexps_i s_i}.
struct ExpMonomial {
    std::int64_t qexp = 0;
    IntVector sexps;

    friend auto operator<=>(const ExpMonomial&, const ExpMonomial&) = default;
};

/// Laurent polynomial in t_1..t_r with exact rational coefficients; q is already substituted.
class LaurentPolynomial {
public:
    using Terms = std::map<IntVector, Rational>;

    explicit LaurentPolynomial(std::size_t nvars) : nvars_(nvars) {}

    static LaurentPolynomial constant(std::size_t nvars, const Rational& c) {
        LaurentPolynomial p(nvars);
        p.add_term(IntVector(nvars, 0), c);
        return p;
    }

    static LaurentPolynomial monomial(const IntVector& e, const Rational& c) {
        LaurentPolynomial p(e.size());
        p.add_term(e, c);
        return p;
    }

    std::size_t nvars() const { return nvars_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(const IntVector& e, const Rational& c) {
        if (e.size() != nvars_) {
            throw InputError("Laurent exponent has wrong length");
        }
        if (c == 0) {
            return;
        }
        auto [it, inserted] = terms_.try_emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) {
                terms_.erase(it);
            }
        }
    }

    LaurentPolynomial& operator+=(const LaurentPolynomial& o) {
        for (const auto& [e, c] : o.terms_) {
            add_term(e, c);
        }
        return *this;
    }

    LaurentPolynomial& operator-=(const LaurentPolynomial& o) {
        for (const auto& [e, c] : o.terms_) {
            add_term(e, -c);
        }
        return *this;
    }

    friend LaurentPolynomial operator+(LaurentPolynomial a, const LaurentPolynomial& b) { return a += b; }
    friend LaurentPolynomial operator-(LaurentPolynomial a, const LaurentPolynomial& b) { return a -= b; }

    friend LaurentPolynomial operator*(const LaurentPolynomial& a, const LaurentPolynomial& b) {
        LaurentPolynomial r(a.nvars_);
        for (const auto& [ea, ca] : a.terms_) {
            for (const auto& [eb, cb] : b.terms_) {
                r.add_term(add(ea, eb), ca * cb);
            }
        }
        return r;
    }

    LaurentPolynomial scaled(const Rational& c, const IntVector& shift) const {
        LaurentPolynomial r(nvars_);
        if (c == 0) {
            return r;
        }
        for (const auto& [e, v] : terms_) {
            r.terms_.emplace(add(e, shift), v * c);
        }
        return r;
    }

    /// Substitutes t_i -> prod_j u_j^{m[i][j]}.
    LaurentPolynomial substitute(const std::vector<IntVector>& m) const {
        const auto out_vars = m.empty() ? 0 : m.front().size();
        LaurentPolynomial r(out_vars);
        for (const auto& [e, c] : terms_) {
            IntVector f(out_vars, 0);
            for (std::size_t i = 0; i < nvars_; ++i) {
                for (std::size_t j = 0; j < out_vars; ++j) {
                    f[j] += e[i] * m[i][j];
                }
            }
            r.add_term(f, c);
        }
        return r;
    }

    Rational evaluate(const std::vector<Rational>& t) const {
        Rational acc = 0;
        for (const auto& [e, c] : terms_) {
            Rational v = c;
            for (std::size_t i = 0; i < nvars_; ++i) {
                v *= pow_rational(t[i], e[i]);
            }
            acc += v;
        }
        return acc;
    }

    HighFloat evaluate(const std::vector<HighFloat>& t) const {
        HighFloat acc = 0;
        for (const auto& [e, c] : terms_) {
            HighFloat v = HighFloat(numerator(c)) / HighFloat(denominator(c));
            for (std::size_t i = 0; i < nvars_; ++i) {
                v *= pow(t[i], e[i]);
            }
            acc += v;
        }
        return acc;
    }

    /// Exact quotient by 1 - c * t^b (b != 0), or nullopt when the division is not exact.
    /// Terms are peeled off in increasing order of the weight <b, e>.
    std::optional<LaurentPolynomial> divide_binomial(const Rational& c, const IntVector& b) const {
        const auto bb = dot(b, b);
        if (bb == 0) {
            throw Error("division by a constant binomial");
        }
        auto weight = [&](const IntVector& e) { return dot(b, e); };
        std::int64_t top = std::numeric_limits<std::int64_t>::min();
        for (const auto& [e, v] : terms_) {
            top = std::max(top, weight(e));
        }
        LaurentPolynomial rem = *this, quot(nvars_);
        while (!rem.is_zero()) {
            auto it = rem.terms_.begin();
            for (auto j = rem.terms_.begin(); j != rem.terms_.end(); ++j) {
                if (weight(j->first) < weight(it->first)) {
                    it = j;
                }
            }
            if (weight(it->first) > top - bb) {
                return std::nullopt;
            }
            const auto e = it->first;
            const auto v = it->second;
            quot.add_term(e, v);
            rem.add_term(e, -v);
            rem.add_term(add(e, b), c * v);
        }
        return quot;
    }

    static Rational pow_rational(const Rational& x, std::int64_t e) {
        Rational r = 1;
        Rational base = e < 0 ? Rational(1) / x : x;
        auto m = e < 0 ? -e : e;
        while (m) {
            if (m & 1) {
                r *= base;
            }
            base *= base;
            m >>= 1;
        }
        return r;
    }

    friend bool operator==(const LaurentPolynomial&, const LaurentPolynomial&) = default;

private:
    static HighFloat pow(const HighFloat& x, std::int64_t e) {
        HighFloat r = 1;
        HighFloat base = e < 0 ? HighFloat(1) / x : x;
        auto m = e < 0 ? -e : e;
        while (m) {
            if (m & 1) {
                r *= base;
            }
            base *= base;
            m >>= 1;
        }
        return r;
    }

    std::size_t nvars_;
    Terms terms_;
};

/// The factor 1 - q^a t^b. Normalized: the first nonzero entry of b is positive.
struct Binomial {
    std::int64_t a = 0;
    IntVector b;

    LaurentPolynomial polynomial(std::uint64_t q) const {
        auto p = LaurentPolynomial::constant(b.size(), 1);
        p.add_term(b, -rational_power(q, a));
        return p;
    }

    friend auto operator<=>(const Binomial&, const Binomial&) = default;
};

} // namespace igusa
