#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "types.hpp"

namespace igusa {

/// Graded lexicographic order, largest first: higher total degree wins, ties by lex.
struct GradedLexGreater {
    bool operator()(const IntVector& a, const IntVector& b) const {
        const auto da = coordinate_sum(a);
        const auto db = coordinate_sum(b);
        if (da != db) {
            return da > db;
        }
        return a > b;
    }
};

/// The residue field F_p of the base field. Only prime fields are supported, so q == p.
class BaseField {
public:
    explicit BaseField(std::uint64_t p) : p_(p) {
        if (!is_prime(p)) {
            throw InputError("p = " + std::to_string(p) + " is not prime");
        }
        if (p >= (std::uint64_t{1} << 31)) {
            throw InputError("p must be below 2^31");
        }
    }

    std::uint64_t p() const { return p_; }
    std::uint64_t q() const { return p_; }

    static bool is_prime(std::uint64_t n) {
        if (n < 2) {
            return false;
        }
        for (std::uint64_t d = 2; d * d <= n; ++d) {
            if (n % d == 0) {
                return false;
            }
        }
        return true;
    }

    friend bool operator==(const BaseField&, const BaseField&) = default;

private:
    std::uint64_t p_;
};

/// A polynomial over F_p. Terms are kept in graded-lex order with nonzero coefficients in [1, p).
class ModPolynomial {
public:
    using Terms = std::map<IntVector, std::uint64_t, GradedLexGreater>;

    ModPolynomial(std::size_t nvars, std::uint64_t p) : nvars_(nvars), p_(p) {}

    std::size_t nvars() const { return nvars_; }
    std::uint64_t p() const { return p_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_monomial() const { return terms_.size() == 1; }

    void add_term(const IntVector& exps, std::uint64_t c) {
        c %= p_;
        if (c == 0) {
            return;
        }
        auto [it, inserted] = terms_.try_emplace(exps, c);
        if (!inserted) {
            it->second = (it->second + c) % p_;
            if (it->second == 0) {
                terms_.erase(it);
            }
        }
    }

    ModPolynomial operator*(const ModPolynomial& o) const {
        ModPolynomial r(nvars_, p_);
        for (const auto& [ea, ca] : terms_) {
            for (const auto& [eb, cb] : o.terms_) {
                r.add_term(add(ea, eb), (ca * cb) % p_);
            }
        }
        return r;
    }

    /// Formal partial derivative with respect to variable j (0-based).
    ModPolynomial derivative(std::size_t j) const {
        ModPolynomial r(nvars_, p_);
        for (const auto& [e, c] : terms_) {
            if (e[j] == 0) {
                continue;
            }
            auto d = e;
            d[j] -= 1;
            r.add_term(d, (c * (static_cast<std::uint64_t>(e[j]) % p_)) % p_);
        }
        return r;
    }

    std::uint64_t evaluate(std::span<const std::uint64_t> z) const {
        std::uint64_t acc = 0;
        for (const auto& [e, c] : terms_) {
            std::uint64_t v = c;
            for (std::size_t j = 0; j < nvars_; ++j) {
                for (std::int64_t k = 0; k < e[j]; ++k) {
                    v = (v * z[j]) % p_;
                }
            }
            acc = (acc + v) % p_;
        }
        return acc;
    }

    friend bool operator==(const ModPolynomial&, const ModPolynomial&) = default;

private:
    std::size_t nvars_;
    std::uint64_t p_;
    Terms terms_;
};

/// Multivariate polynomial with arbitrary-precision integer coefficients.
/// Invariants: no stored coefficient is zero; every exponent vector has length nvars().
class IntegerPolynomial {
public:
    using Terms = std::map<IntVector, Integer, GradedLexGreater>;

    explicit IntegerPolynomial(std::size_t nvars) : nvars_(nvars) {
        if (nvars == 0) {
            throw InputError("a polynomial needs at least one variable");
        }
    }

    static IntegerPolynomial constant(std::size_t nvars, const Integer& c) {
        IntegerPolynomial r(nvars);
        r.add_term(IntVector(nvars, 0), c);
        return r;
    }

    static IntegerPolynomial variable(std::size_t nvars, std::size_t index) {
        IntVector e(nvars, 0);
        e.at(index) = 1;
        return monomial(std::move(e), 1);
    }

    static IntegerPolynomial monomial(IntVector exps, const Integer& c) {
        IntegerPolynomial r(exps.size());
        r.add_term(exps, c);
        return r;
    }

    std::size_t nvars() const { return nvars_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_monomial() const { return terms_.size() == 1; }

    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && igusa::is_zero(terms_.begin()->first));
    }

    Integer constant_term() const {
        const auto it = terms_.find(IntVector(nvars_, 0));
        return it == terms_.end() ? Integer(0) : it->second;
    }

    Integer coefficient(const IntVector& exps) const {
        const auto it = terms_.find(exps);
        return it == terms_.end() ? Integer(0) : it->second;
    }

    /// supp(h): the exponent vectors with nonzero coefficient, in graded-lex order.
    std::vector<IntVector> support() const {
        std::vector<IntVector> s;
        s.reserve(terms_.size());
        for (const auto& [e, c] : terms_) {
            s.push_back(e);
        }
        return s;
    }

    std::int64_t total_degree() const {
        std::int64_t d = 0;
        for (const auto& [e, c] : terms_) {
            d = std::max(d, coordinate_sum(e));
        }
        return d;
    }

    void add_term(const IntVector& exps, const Integer& c) {
        if (exps.size() != nvars_) {
            throw InputError("exponent vector has wrong length");
        }
        if (!is_nonnegative(exps)) {
            throw InputError("exponents must be nonnegative");
        }
        if (c == 0) {
            return;
        }
        auto [it, inserted] = terms_.try_emplace(exps, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) {
                terms_.erase(it);
            }
        }
    }

    IntegerPolynomial operator-() const {
        IntegerPolynomial r(nvars_);
        for (const auto& [e, c] : terms_) {
            r.terms_.emplace(e, -c);
        }
        return r;
    }

    IntegerPolynomial& operator+=(const IntegerPolynomial& o) {
        check_same(o);
        for (const auto& [e, c] : o.terms_) {
            add_term(e, c);
        }
        return *this;
    }

    IntegerPolynomial& operator-=(const IntegerPolynomial& o) {
        check_same(o);
        for (const auto& [e, c] : o.terms_) {
            add_term(e, -c);
        }
        return *this;
    }

    friend IntegerPolynomial operator+(IntegerPolynomial a, const IntegerPolynomial& b) { return a += b; }
    friend IntegerPolynomial operator-(IntegerPolynomial a, const IntegerPolynomial& b) { return a -= b; }

    friend IntegerPolynomial operator*(const IntegerPolynomial& a, const IntegerPolynomial& b) {
        a.check_same(b);
        IntegerPolynomial r(a.nvars_);
        for (const auto& [ea, ca] : a.terms_) {
            for (const auto& [eb, cb] : b.terms_) {
                r.add_term(add(ea, eb), ca * cb);
            }
        }
        return r;
    }

    IntegerPolynomial pow(unsigned k) const {
        auto r = constant(nvars_, 1);
        for (unsigned i = 0; i < k; ++i) {
            r = r * *this;
        }
        return r;
    }

    /// Value at an integer point (exact).
    Integer evaluate(std::span<const Integer> x) const {
        Integer acc = 0;
        for (const auto& [e, c] : terms_) {
            Integer v = c;
            for (std::size_t j = 0; j < nvars_; ++j) {
                for (std::int64_t k = 0; k < e[j]; ++k) {
                    v *= x[j];
                }
            }
            acc += v;
        }
        return acc;
    }

    /// Canonical text form: terms in descending graded-lex order, '*' between factors.
    std::string to_string(std::span<const std::string> names) const {
        if (names.size() != nvars_) {
            throw InputError("variable name count does not match polynomial");
        }
        if (terms_.empty()) {
            return "0";
        }
        std::string out;
        bool first = true;
        for (const auto& [e, c] : terms_) {
            const bool negative = c < 0;
            const Integer mag = negative ? Integer(-c) : c;
            if (first) {
                out += negative ? "-" : "";
            } else {
                out += negative ? " - " : " + ";
            }
            first = false;
            std::string mono;
            for (std::size_t j = 0; j < nvars_; ++j) {
                if (e[j] == 0) {
                    continue;
                }
                if (!mono.empty()) {
                    mono += "*";
                }
                mono += names[j];
                if (e[j] > 1) {
                    mono += "^" + std::to_string(e[j]);
                }
            }
            if (mono.empty()) {
                out += mag.str();
            } else if (mag == 1) {
                out += mono;
            } else {
                out += mag.str() + "*" + mono;
            }
        }
        return out;
    }

    friend bool operator==(const IntegerPolynomial&, const IntegerPolynomial&) = default;

private:
    void check_same(const IntegerPolynomial& o) const {
        if (o.nvars_ != nvars_) {
            throw InputError("polynomials live in different numbers of variables");
        }
    }

    std::size_t nvars_;
    Terms terms_;
};

/// Default names x1..xn, or x,y,z for n <= 3.
inline std::vector<std::string> default_variable_names(std::size_t n) {
    std::vector<std::string> names;
    if (n <= 3) {
        const char* xyz[] = {"x", "y", "z"};
        names.assign(xyz, xyz + n);
    } else {
        for (std::size_t i = 0; i < n; ++i) {
            names.push_back("x" + std::to_string(i + 1));
        }
    }
    return names;
}

inline std::string to_string(const IntegerPolynomial& h) {
    return h.to_string(default_variable_names(h.nvars()));
}

/// h_a: the sub-sum of h over the monomials on the first meet locus F(a, Gamma(h)).
/// The minimum of <a, m> over supp(h) equals d(a, Gamma(h)) since the vertices lie in supp(h).
/// For a = 0 this is h itself.
inline IntegerPolynomial face_function(const IntegerPolynomial& h, const IntVector& a) {
    if (a.size() != h.nvars()) {
        throw InputError("face vector has wrong dimension");
    }
    if (!is_nonnegative(a)) {
        throw InputError("face vector must be nonnegative");
    }
    IntegerPolynomial r(h.nvars());
    if (h.is_zero()) {
        return r;
    }
    std::int64_t best = std::numeric_limits<std::int64_t>::max();
    for (const auto& [e, c] : h.terms()) {
        best = std::min(best, dot(a, e));
    }
    for (const auto& [e, c] : h.terms()) {
        if (dot(a, e) == best) {
            r.add_term(e, c);
        }
    }
    return r;
}

inline std::uint64_t reduce_coefficient(const Integer& c, std::uint64_t p) {
    Integer r = c % p;
    if (r < 0) {
        r += p;
    }
    return static_cast<std::uint64_t>(r);
}

inline ModPolynomial reduce_mod_p(const IntegerPolynomial& h, const BaseField& field) {
    ModPolynomial r(h.nvars(), field.p());
    for (const auto& [e, c] : h.terms()) {
        r.add_term(e, reduce_coefficient(c, field.p()));
    }
    return r;
}

/// Formal partial derivative dh/dx_j, j 0-based.
inline IntegerPolynomial jacobian_row(const IntegerPolynomial& h, std::size_t j) {
    if (j >= h.nvars()) {
        throw InputError("variable index out of range");
    }
    IntegerPolynomial r(h.nvars());
    for (const auto& [e, c] : h.terms()) {
        if (e[j] == 0) {
            continue;
        }
        auto d = e;
        d[j] -= 1;
        r.add_term(d, c * e[j]);
    }
    return r;
}

} // namespace igusa
