#pragma once

#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

namespace igusa {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// 60 significant decimal digits; used for numeric evaluation only.
using HighFloat = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<60>>;

// Exponent vectors, lattice points and facet normals.
using IntVector = std::vector<std::int64_t>;

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input: bad polynomial text, bad problem file, violated preconditions.
class InputError : public Error {
public:
    using Error::Error;
};

/// Thrown when an enumeration would exceed its configured budget.
class BudgetExceeded : public Error {
public:
    using Error::Error;
};

/// Thrown when a zeta computation is requested for a degenerate input without override.
class DegenerateInput : public Error {
public:
    using Error::Error;
};

inline std::int64_t dot(const IntVector& a, const IntVector& b) {
    if (a.size() != b.size()) {
        throw InputError("dimension mismatch in inner product");
    }
    std::int64_t s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        s += a[i] * b[i];
    }
    return s;
}

inline std::int64_t coordinate_sum(const IntVector& v) {
    return std::accumulate(v.begin(), v.end(), std::int64_t{0});
}

inline IntVector add(const IntVector& a, const IntVector& b) {
    IntVector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        r[i] = a[i] + b[i];
    }
    return r;
}

inline bool is_nonnegative(const IntVector& v) {
    for (auto x : v) {
        if (x < 0) {
            return false;
        }
    }
    return true;
}

inline bool is_zero(const IntVector& v) {
    for (auto x : v) {
        if (x != 0) {
            return false;
        }
    }
    return true;
}

inline std::int64_t content(const IntVector& v) {
    std::int64_t g = 0;
    for (auto x : v) {
        g = std::gcd(g, x < 0 ? -x : x);
    }
    return g;
}

/// Divides out the gcd of the coordinates. The zero vector is returned unchanged.
inline IntVector primitive(IntVector v) {
    const auto g = content(v);
    if (g > 1) {
        for (auto& x : v) {
            x /= g;
        }
    }
    return v;
}

inline std::int64_t to_int64(const Integer& x) {
    if (x > Integer(std::numeric_limits<std::int64_t>::max()) ||
        x < Integer(std::numeric_limits<std::int64_t>::min())) {
        throw Error("integer does not fit in 64 bits: " + x.str());
    }
    return static_cast<std::int64_t>(x);
}

/// q^e as an exact rational; e may be negative.
inline Rational rational_power(std::uint64_t q, std::int64_t e) {
    Integer base = 1;
    const auto m = e < 0 ? -e : e;
    for (std::int64_t i = 0; i < m; ++i) {
        base *= q;
    }
    return e < 0 ? Rational(Integer(1), base) : Rational(base);
}

inline std::string to_string(const Rational& r) {
    if (denominator(r) == 1) {
        return numerator(r).str();
    }
    return numerator(r).str() + "/" + denominator(r).str();
}

/// Parses "a", "-a", "a/b". Throws InputError otherwise.
inline Rational parse_rational(const std::string& text) {
    auto trim = [](std::string s) {
        const auto b = s.find_first_not_of(" \t");
        const auto e = s.find_last_not_of(" \t");
        return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
    };
    auto parse_int = [&](const std::string& s) {
        const auto t = trim(s);
        if (t.empty()) {
            throw InputError("expected a rational number, got '" + text + "'");
        }
        std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
        if (i == t.size()) {
            throw InputError("expected a rational number, got '" + text + "'");
        }
        for (std::size_t k = i; k < t.size(); ++k) {
            if (t[k] < '0' || t[k] > '9') {
                throw InputError("expected a rational number, got '" + text + "'");
            }
        }
        return Integer(t[0] == '+' ? t.substr(1) : t);
    };
    const auto slash = text.find('/');
    if (slash == std::string::npos) {
        return Rational(parse_int(text));
    }
    const Integer den = parse_int(text.substr(slash + 1));
    if (den == 0) {
        throw InputError("zero denominator in '" + text + "'");
    }
    return Rational(parse_int(text.substr(0, slash)), den);
}

inline std::string to_string(const IntVector& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) {
            s += ",";
        }
        s += std::to_string(v[i]);
    }
    return s + ")";
}

} // namespace igusa
