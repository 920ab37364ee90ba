#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "igusa/report.hpp"
#include "reference_formulas.hpp"

using namespace igusa;

namespace {

const std::string parabola = R"(# the parabola quotient
variables = x, y
mode = rational
f = x^2 - y      # numerator
g = x^2*y
prime = 5
)";

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST(ProblemSpec, ParsesKeysAndComments) {
    const auto spec = parse_problem(parabola + "fan_seed = 3\noracle_level = 2\noracle_s = 1/4\nformat = json\n");
    EXPECT_EQ(spec.variables, (std::vector<std::string>{"x", "y"}));
    EXPECT_EQ(spec.mode, Mode::rational);
    EXPECT_EQ(spec.polynomials, (std::vector<std::string>{"x^2 - y", "x^2*y"}));
    EXPECT_EQ(spec.prime, 5u);
    EXPECT_EQ(spec.fan_seed, 3u);
    EXPECT_EQ(spec.oracle_level, 2u);
    EXPECT_EQ(spec.oracle_s, std::vector<Rational>{Rational(1, 4)});
    EXPECT_EQ(spec.format, Format::json);
}

TEST(ProblemSpec, ModeInferredFromKeys) {
    EXPECT_EQ(parse_problem("variables = x, y\nh = x*y\nh = y\nprime = 3\n").mode, Mode::multivariate);
    EXPECT_EQ(parse_problem("variables = x, y\nf = x\ng = y\nprime = 3\n").mode, Mode::rational);
}

TEST(ProblemSpec, Rejections) {
    auto rejects = [](const std::string& text, const std::string& fragment) {
        try {
            parse_problem(text);
            ADD_FAILURE() << "accepted: " << text;
        } catch (const InputError& e) {
            EXPECT_NE(std::string(e.what()).find(fragment), std::string::npos) << e.what();
        }
    };
    rejects(parabola + "colour = red\n", "line 7: unknown key 'colour'");
    rejects(parabola + "nonsense\n", "expected 'key = value'");
    rejects("variables = x, y\nmode = rational\nf = x\nprime = 3\n", "needs both");
    rejects("variables = x, y\nmode = rational\nf = x\ng = y\nh = x\nprime = 3\n", "not 'h'");
    rejects("variables = x, x\nh = x\nprime = 3\n", "listed twice");
    rejects("variables = x, t\nh = x\nprime = 3\n", "reserved");
    rejects("variables = x\nh = x\n", "missing 'prime'");
    rejects(parabola + "override_degenerate = maybe\n", "true or false");
    rejects(parabola + "oracle_s = 1, 2\n", "oracle_s needs 1");
    rejects(parabola + "prime = -3\n", "nonnegative integer");
}

TEST(Run, ValidationErrors) {
    auto spec = parse_problem(parabola);
    spec.polynomials[1] = "7";
    EXPECT_THROW(run(spec), InputError);
    spec.polynomials[1] = "x^2*y + 1";
    EXPECT_THROW(run(spec), InputError);
    spec.polynomials[1] = "x^2*";
    EXPECT_THROW(run(spec), InputError);
    spec = parse_problem(parabola);
    spec.prime = 6;
    EXPECT_THROW(run(spec), InputError);
}

TEST(Run, DegenerateRefusedUnlessOverridden) {
    auto spec = parse_problem("variables = x, y\nf = (x + y)^2\ng = x*y\nprime = 3\n");
    EXPECT_THROW(run(spec), DegenerateInput);
    spec.override_degenerate = true;
    const auto r = run(spec);
    EXPECT_FALSE(r.assembly.certified);
    EXPECT_FALSE(to_json(r)["zeta"]["certified"].get<bool>());
}

TEST(Run, BudgetRefusal) {
    auto spec = parse_problem("variables = x, y, z\nh = x*y*z\nprime = 1009\n");
    EXPECT_THROW(run(spec), BudgetExceeded);
    spec = parse_problem(parabola + "oracle_level = 9\noracle_s = 1/4\n");
    EXPECT_THROW(run(spec), BudgetExceeded);
}

TEST(Run, ParabolaQuotientMatchesClosedForm) {
    const auto r = run(parse_problem(parabola));
    EXPECT_TRUE(equivalent(r.assembly.Z, reference::parabola_quotient_zeta(5)));
    ASSERT_TRUE(r.poles);
    EXPECT_EQ(r.poles->band.alpha_tilde, Rational(1, 2));
}

TEST(Run, OracleOutsideBandRejected) {
    EXPECT_THROW(run(parse_problem(parabola + "oracle_level = 2\noracle_s = 3/4\n")), InputError);
    const auto r = run(parse_problem(parabola + "oracle_level = 3\n"));
    ASSERT_TRUE(r.oracle);
    EXPECT_EQ(r.oracle->s0, std::vector<Rational>{Rational(1, 4)});
    EXPECT_TRUE(r.oracle->agrees());
}

TEST(PrintReport, TextLayout) {
    const auto text = print_report(run(parse_problem(parabola)), Format::text);
    EXPECT_NE(text.find("Cone          | L_Δ"), std::string::npos);
    EXPECT_NE(text.find("| S_Δ"), std::string::npos);
    EXPECT_NE(text.find("Z is holomorphic on -1 < Re(s) < 1/2"), std::string::npos);
    EXPECT_EQ(text.find("no poles outside trivial families"), std::string::npos);

    const auto xy = print_report(run(parse_problem("variables = x, y\nf = x\ng = y\nprime = 3\n")), Format::text);
    EXPECT_NE(xy.find("no poles outside trivial families"), std::string::npos);
}

TEST(PrintReport, JsonRoundTripAndDeterminism) {
    const auto spec = parse_problem(parabola + "oracle_level = 2\n");
    const auto a = print_report(run(spec), Format::json);
    const auto b = print_report(run(spec), Format::json);
    EXPECT_EQ(a, b);
    const auto tree = nlohmann::ordered_json::parse(a);
    EXPECT_EQ(tree.dump(2) + "\n", a);
    EXPECT_EQ(tree["schema"], report_schema);
}

TEST(PrintReport, GoldenFile) {
    auto spec = load_problem(IGUSA_SOURCE_DIR "/specs/parabola_quotient.spec");
    spec.oracle_level = 0;
    const auto want = slurp(IGUSA_SOURCE_DIR "/tests/golden/parabola_quotient_q5.json");
    ASSERT_FALSE(want.empty());
    EXPECT_EQ(print_report(run(spec), Format::json), want);

    const auto tree = nlohmann::json::parse(want);
    EXPECT_EQ(tree["cones"].size(), 6u);
    std::vector<std::string> lines;
    for (const auto& c : tree["poles"]["candidates"]) {
        if (c["on_line"].get<bool>()) {
            lines.push_back(c["real_part"]);
        }
    }
    EXPECT_EQ(lines, (std::vector<std::string>{"-1", "1/2", "1", "3/2"}));
}
