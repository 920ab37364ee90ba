#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "laurent.hpp"

namespace igusa {

/// N(t) / prod (1 - q^a t^b)^m with N a Laurent polynomial, at a concrete prime power q.
/// The denominator is kept factored; every stored binomial is normalized and has b != 0.
class ZetaRational {
public:
    ZetaRational(std::size_t nvars, std::uint64_t q) : q_(q), num_(nvars) {}

    static ZetaRational constant(std::size_t nvars, std::uint64_t q, const Rational& c) {
        ZetaRational z(nvars, q);
        z.num_ = LaurentPolynomial::constant(nvars, c);
        return z;
    }

    /// c * q^qexp * t^sexps.
    static ZetaRational monomial(std::uint64_t q, const ExpMonomial& m, const Rational& c = 1) {
        ZetaRational z(m.sexps.size(), q);
        z.num_.add_term(m.sexps, c * rational_power(q, m.qexp));
        return z;
    }

    /// 1 / (1 - q^a t^b), normalized on the way in.
    static ZetaRational geometric(std::uint64_t q, std::int64_t a, const IntVector& b) {
        auto z = constant(b.size(), q, 1);
        z.divide_by_binomial(a, b);
        return z;
    }

    std::size_t nvars() const { return num_.nvars(); }
    std::uint64_t q() const { return q_; }
    const LaurentPolynomial& numerator() const { return num_; }
    const std::map<Binomial, int>& denominator() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }

    /// prod (1 - q^a t^b)^m expanded.
    LaurentPolynomial denominator_polynomial() const {
        auto d = LaurentPolynomial::constant(nvars(), 1);
        for (const auto& [f, m] : den_) {
            const auto fp = f.polynomial(q_);
            for (int k = 0; k < m; ++k) {
                d = d * fp;
            }
        }
        return d;
    }

    /// Multiplies by 1 / (1 - q^a t^b).
    void divide_by_binomial(std::int64_t a, IntVector b) {
        if (b.size() != nvars()) {
            throw InputError("binomial has wrong number of variables");
        }
        if (igusa::is_zero(b)) {
            if (a == 0) {
                throw Error("division by the zero binomial 1 - 1");
            }
            num_ = num_.scaled(Rational(1) / (1 - rational_power(q_, a)), IntVector(nvars(), 0));
            return;
        }
        const auto first = std::find_if(b.begin(), b.end(), [](std::int64_t x) { return x != 0; });
        if (*first < 0) {
            // 1/(1 - q^a t^b) = -q^{-a} t^{-b} / (1 - q^{-a} t^{-b})
            for (auto& x : b) {
                x = -x;
            }
            num_ = num_.scaled(-rational_power(q_, -a), b);
            a = -a;
        }
        ++den_[Binomial{a, std::move(b)}];
    }

    ZetaRational& operator*=(const ZetaRational& o) {
        check_same(o);
        num_ = num_ * o.num_;
        for (const auto& [f, m] : o.den_) {
            den_[f] += m;
        }
        return *this;
    }

    friend ZetaRational operator*(ZetaRational a, const ZetaRational& b) { return a *= b; }

    ZetaRational scaled(const Rational& c) const {
        auto z = *this;
        z.num_ = num_.scaled(c, IntVector(nvars(), 0));
        return z;
    }

    ZetaRational& operator+=(const ZetaRational& o) {
        check_same(o);
        std::map<Binomial, int> lcm = den_;
        for (const auto& [f, m] : o.den_) {
            lcm[f] = std::max(lcm[f], m);
        }
        num_ = num_ * cofactor(lcm, den_) + o.num_ * cofactor(lcm, o.den_);
        den_ = std::move(lcm);
        return *this;
    }

    ZetaRational& operator-=(const ZetaRational& o) { return *this += o.scaled(-1); }

    friend ZetaRational operator+(ZetaRational a, const ZetaRational& b) { return a += b; }
    friend ZetaRational operator-(ZetaRational a, const ZetaRational& b) { return a -= b; }

    /// Cancels every stored binomial that exactly divides the numerator.
    ZetaRational& canonicalize() {
        if (num_.is_zero()) {
            den_.clear();
            return *this;
        }
        for (auto it = den_.begin(); it != den_.end();) {
            while (it->second > 0) {
                auto quot = num_.divide_binomial(rational_power(q_, it->first.a), it->first.b);
                if (!quot) {
                    break;
                }
                num_ = std::move(*quot);
                --it->second;
            }
            it = it->second == 0 ? den_.erase(it) : std::next(it);
        }
        return *this;
    }

    ZetaRational canonical() const {
        auto z = *this;
        z.canonicalize();
        return z;
    }

    /// Substitutes t_i -> prod_j u_j^{m[i][j]}; e.g. {{1},{-1}} realizes (s_1, s_2) = (s, -s).
    ZetaRational specialize(const std::vector<IntVector>& m) const {
        if (m.size() != nvars()) {
            throw InputError("specialization matrix has wrong number of rows");
        }
        ZetaRational z(m.front().size(), q_);
        z.num_ = num_.substitute(m);
        for (const auto& [f, mult] : den_) {
            IntVector b(m.front().size(), 0);
            for (std::size_t i = 0; i < nvars(); ++i) {
                for (std::size_t j = 0; j < b.size(); ++j) {
                    b[j] += f.b[i] * m[i][j];
                }
            }
            for (int k = 0; k < mult; ++k) {
                z.divide_by_binomial(f.a, b);
            }
        }
        return z;
    }

    Rational evaluate(const std::vector<Rational>& t) const {
        Rational d = 1;
        for (const auto& [f, m] : den_) {
            const auto v = f.polynomial(q_).evaluate(t);
            for (int k = 0; k < m; ++k) {
                d *= v;
            }
        }
        if (d == 0) {
            throw Error("evaluation at a pole");
        }
        return num_.evaluate(t) / d;
    }

    HighFloat evaluate(const std::vector<HighFloat>& t) const {
        HighFloat d = 1;
        for (const auto& [f, m] : den_) {
            const auto v = f.polynomial(q_).evaluate(t);
            for (int k = 0; k < m; ++k) {
                d *= v;
            }
        }
        return num_.evaluate(t) / d;
    }

    /// Equality as rational functions, by a cross-multiplied polynomial identity.
    friend bool equivalent(const ZetaRational& a, const ZetaRational& b) {
        a.check_same(b);
        std::map<Binomial, int> lcm = a.den_;
        for (const auto& [f, m] : b.den_) {
            lcm[f] = std::max(lcm[f], m);
        }
        const auto diff = a.num_ * a.cofactor(lcm, a.den_) - b.num_ * a.cofactor(lcm, b.den_);
        return diff.is_zero();
    }

    /// Canonical text: numerator terms in increasing exponent order, then the sorted factors.
    std::string to_string(const std::vector<std::string>& names = {}) const {
        const auto vars = names.empty() ? default_names() : names;
        std::string out = "(" + polynomial_string(num_, vars) + ")";
        if (!den_.empty()) {
            out += " / (";
            bool first = true;
            for (const auto& [f, m] : den_) {
                if (!first) {
                    out += "*";
                }
                first = false;
                out += "(1 - " + monomial_string(f.a, f.b, vars) + ")";
                if (m > 1) {
                    out += "^" + std::to_string(m);
                }
            }
            out += ")";
        }
        return out;
    }

    static std::string polynomial_string(const LaurentPolynomial& p, const std::vector<std::string>& vars) {
        if (p.is_zero()) {
            return "0";
        }
        std::string out;
        bool first = true;
        for (const auto& [e, c] : p.terms()) {
            const bool neg = c < 0;
            out += first ? (neg ? "-" : "") : (neg ? " - " : " + ");
            first = false;
            const Rational mag = neg ? Rational(-c) : c;
            const auto mono = power_product(e, vars);
            if (mono.empty()) {
                out += igusa::to_string(mag);
            } else if (mag == 1) {
                out += mono;
            } else {
                out += igusa::to_string(mag) + "*" + mono;
            }
        }
        return out;
    }

    std::vector<std::string> default_names() const {
        if (nvars() == 1) {
            return {"t"};
        }
        std::vector<std::string> v;
        for (std::size_t i = 0; i < nvars(); ++i) {
            v.push_back("t" + std::to_string(i + 1));
        }
        return v;
    }

private:
    static std::string power_product(const IntVector& e, const std::vector<std::string>& vars) {
        std::string mono;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) {
                continue;
            }
            if (!mono.empty()) {
                mono += "*";
            }
            mono += vars[i];
            if (e[i] != 1) {
                mono += "^" + std::to_string(e[i]);
            }
        }
        return mono;
    }

    static std::string monomial_string(std::int64_t a, const IntVector& b,
                                       const std::vector<std::string>& vars) {
        std::string s = a == 0 ? "" : (a == 1 ? "q" : "q^" + std::to_string(a));
        const auto mono = power_product(b, vars);
        if (!s.empty() && !mono.empty()) {
            s += "*";
        }
        return s + mono;
    }

    LaurentPolynomial cofactor(const std::map<Binomial, int>& lcm, const std::map<Binomial, int>& part) const {
        auto r = LaurentPolynomial::constant(nvars(), 1);
        for (const auto& [f, m] : lcm) {
            const auto it = part.find(f);
            const int have = it == part.end() ? 0 : it->second;
            const auto fp = f.polynomial(q_);
            for (int k = have; k < m; ++k) {
                r = r * fp;
            }
        }
        return r;
    }

    void check_same(const ZetaRational& o) const {
        if (o.nvars() != nvars() || o.q_ != q_) {
            throw InputError("rational functions in different variables or over different q");
        }
    }

    std::uint64_t q_;
    LaurentPolynomial num_;
    std::map<Binomial, int> den_;
};

} // namespace igusa
