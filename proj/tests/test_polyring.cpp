#include <gtest/gtest.h>

#include <random>

#include "igusa/mapping.hpp"
#include "igusa/parser.hpp"

using namespace igusa;

namespace {

const std::vector<std::string> xy{"x", "y"};

IntegerPolynomial P(const std::string& s, const std::vector<std::string>& vars = xy) {
    return parse_polynomial(s, vars);
}

IntegerPolynomial random_poly(std::mt19937_64& rng, std::size_t n, int terms, int maxdeg) {
    IntegerPolynomial h(n);
    for (int k = 0; k < terms; ++k) {
        IntVector e(n);
        for (auto& x : e) {
            x = static_cast<std::int64_t>(rng() % (maxdeg + 1));
        }
        h.add_term(e, static_cast<int>(rng() % 11) - 5);
    }
    return h;
}

} // namespace

TEST(Parser, ExpandsBinomial) {
    const auto h = P("x^2 - y");
    EXPECT_EQ(h.terms().size(), 2u);
    EXPECT_EQ(h.coefficient({2, 0}), 1);
    EXPECT_EQ(h.coefficient({0, 1}), -1);
}

TEST(Parser, SingleMonomial) {
    const auto h = P("x^2*y");
    ASSERT_TRUE(h.is_monomial());
    EXPECT_EQ(h.coefficient({2, 1}), 1);
}

TEST(Parser, CancelsCrossTerms) {
    const auto h = P("(x+y)*(x-y)");
    EXPECT_EQ(h.terms().size(), 2u);
    EXPECT_EQ(h.coefficient({2, 0}), 1);
    EXPECT_EQ(h.coefficient({0, 2}), -1);
    EXPECT_EQ(h.coefficient({1, 1}), 0);
}

TEST(Parser, BigCoefficients) {
    const auto h = P("123456789012345678901234567890*x + 1");
    EXPECT_EQ(h.coefficient({1, 0}), Integer("123456789012345678901234567890"));
    EXPECT_EQ(P("(2*x)^70").coefficient({70, 0}), Integer(1) << 70);
}

TEST(Parser, Errors) {
    EXPECT_THROW(P("x^2 - z"), ParseError);
    EXPECT_THROW(P("2x"), ParseError);
    EXPECT_THROW(P("x y"), ParseError);
    EXPECT_THROW(P("(x + y"), ParseError);
    EXPECT_THROW(P("x^-1"), ParseError);
    EXPECT_THROW(P("x^y"), ParseError);
    EXPECT_THROW(P(""), ParseError);
    EXPECT_THROW(P("x +"), ParseError);
    EXPECT_THROW(parse_polynomial("x", {"x", "x"}), InputError);
    try {
        P("x + $");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.position(), 4u);
    }
}

TEST(Parser, CanonicalPrinting) {
    EXPECT_EQ(to_string(P("-y + x^2")), "x^2 - y");
    EXPECT_EQ(to_string(P("3*y*x^2 - 7")), "3*x^2*y - 7");
    EXPECT_EQ(to_string(P("x - x")), "0");
}

TEST(Parser, RoundTrip) {
    std::mt19937_64 rng(7);
    for (int k = 0; k < 50; ++k) {
        const auto h = random_poly(rng, 3, 5, 3);
        const std::vector<std::string> v{"x", "y", "z"};
        EXPECT_EQ(parse_polynomial(h.to_string(v), v), h);
    }
}

TEST(FaceFunction, MeetLoci) {
    const auto f = P("x^2 - y");
    EXPECT_EQ(face_function(f, {0, 1}), P("x^2"));
    EXPECT_EQ(face_function(f, {1, 2}), f);
    EXPECT_EQ(face_function(f, {1, 0}), P("-y"));
    EXPECT_EQ(face_function(f, {0, 0}), f);
    EXPECT_THROW(face_function(f, {1}), InputError);
}

TEST(ReduceModP, Examples) {
    const BaseField f5(5), f2(2), f7(7);
    EXPECT_EQ(reduce_mod_p(P("3*x + 5"), f5), reduce_mod_p(P("3*x"), f5));
    auto r = reduce_mod_p(P("x^2 - y"), f2);
    EXPECT_EQ(r, reduce_mod_p(P("x^2 + y"), f2));
    EXPECT_TRUE(reduce_mod_p(IntegerPolynomial::constant(2, 7), f7).is_zero());
}

TEST(ReduceModP, IsRingHomomorphism) {
    std::mt19937_64 rng(11);
    const BaseField f(5);
    for (int k = 0; k < 30; ++k) {
        const auto a = random_poly(rng, 2, 4, 3);
        const auto b = random_poly(rng, 2, 4, 3);
        EXPECT_EQ(reduce_mod_p(a * b, f), reduce_mod_p(a, f) * reduce_mod_p(b, f));
    }
}

TEST(Jacobian, Examples) {
    EXPECT_EQ(jacobian_row(P("x^2 - y"), 0), P("2*x"));
    EXPECT_EQ(jacobian_row(P("x^2 - y"), 1), P("-1"));
    EXPECT_EQ(jacobian_row(P("x^2*y"), 1), P("x^2"));
    EXPECT_THROW(jacobian_row(P("x"), 2), InputError);
}

TEST(Jacobian, ProductRule) {
    std::mt19937_64 rng(3);
    for (int k = 0; k < 30; ++k) {
        const auto a = random_poly(rng, 3, 4, 3);
        const auto b = random_poly(rng, 3, 4, 3);
        for (std::size_t j = 0; j < 3; ++j) {
            EXPECT_EQ(jacobian_row(a * b, j), jacobian_row(a, j) * b + a * jacobian_row(b, j));
        }
    }
}

TEST(BaseField, RejectsComposite) {
    EXPECT_THROW(BaseField(9), InputError);
    EXPECT_THROW(BaseField(1), InputError);
    EXPECT_EQ(BaseField(7).q(), 7u);
}

TEST(Mapping, Validation) {
    const BaseField f(3);
    EXPECT_NO_THROW(PolyMapping({P("x^2 - y"), P("x^2*y")}, f, true));
    EXPECT_THROW(PolyMapping({P("x"), P("y"), P("x*y")}, f, true), InputError);
    EXPECT_THROW(PolyMapping({P("5")}, f, false), InputError);
    EXPECT_THROW(PolyMapping({P("3*x")}, f, false), InputError);
    EXPECT_THROW(PolyMapping({P("x + 1")}, f, true), InputError);
    EXPECT_NO_THROW(PolyMapping({P("x + 1")}, f, false));
}
