#include <gtest/gtest.h>

#include <random>
#include <set>

#include "igusa/fan.hpp"
#include "igusa/parser.hpp"

using namespace igusa;

namespace {

IntegerPolynomial P(const std::string& s, std::size_t n = 2) {
    return parse_polynomial(s, default_variable_names(n));
}

SimplicialCone cone(std::vector<IntVector> gens) {
    SimplicialCone c;
    c.generators = std::move(gens);
    c.barycenter = IntVector(c.generators.front().size(), 0);
    for (const auto& g : c.generators) {
        c.barycenter = add(c.barycenter, g);
    }
    return c;
}

// Lattice points of the half-open parallelepiped by scanning the bounding box of the closed one.
std::vector<IntVector> box_scan(const SimplicialCone& c) {
    const auto n = c.generators.front().size();
    IntVector hi(n, 0);
    for (const auto& g : c.generators) {
        for (std::size_t i = 0; i < n; ++i) {
            hi[i] += g[i];
        }
    }
    std::vector<IntVector> out;
    IntVector x(n, 0);
    for (;;) {
        const auto lam = c.coefficients(x);
        if (lam && std::all_of(lam->begin(), lam->end(), [](const Rational& v) { return v > 0 && v <= 1; })) {
            out.push_back(x);
        }
        std::size_t i = 0;
        while (i < n && x[i] == hi[i]) {
            x[i++] = 0;
        }
        if (i == n) {
            break;
        }
        ++x[i];
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<IntVector> random_support(std::mt19937_64& rng, std::size_t n, std::size_t k, int maxc) {
    std::vector<IntVector> s;
    for (std::size_t i = 0; i < k; ++i) {
        IntVector v(n);
        for (auto& x : v) {
            x = static_cast<std::int64_t>(rng() % (maxc + 1));
        }
        s.push_back(v);
    }
    return s;
}

void for_box(std::size_t n, std::int64_t b, const std::function<void(const IntVector&)>& fn) {
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

} // namespace

TEST(NormalFan, ParabolaPair) {
    const auto gamma = minkowski_sum(newton_polyhedron(P("x^2 - y")), newton_polyhedron(P("x^2*y")));
    const auto nf = normal_fan(gamma);
    std::set<std::vector<IntVector>> rays;
    for (const auto& c : nf) {
        rays.insert(c.rays);
    }
    const std::set<std::vector<IntVector>> expect{
        {{1, 0}}, {{1, 0}, {1, 2}}, {{1, 2}}, {{0, 1}, {1, 2}}, {{0, 1}}};
    EXPECT_EQ(rays, expect);
}

TEST(NormalFan, MonomialOrthant) {
    const auto nf = normal_fan(newton_polyhedron(P("x*y^2*z", 3)));
    EXPECT_EQ(nf.size(), 7u);
    for (const auto& c : nf) {
        for (const auto& r : c.rays) {
            EXPECT_EQ(coordinate_sum(r), 1);
        }
    }
}

TEST(NormalFan, Membership) {
    const auto c = cone({{1, 2}});
    EXPECT_TRUE(c.contains_strictly({2, 4}));
    EXPECT_FALSE(c.contains_strictly({2, 3}));
    EXPECT_FALSE(cone({{1, 0}, {1, 2}}).contains_strictly({1, 0}));
}

TEST(Triangulate, AlreadySimplicial) {
    const std::vector<IntVector> rays{{1, 0}, {1, 2}};
    EXPECT_EQ(triangulate(rays), (std::vector<std::vector<IntVector>>{rays}));
    const std::vector<IntVector> r3{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    EXPECT_EQ(triangulate(r3).size(), 1u);
}

TEST(Triangulate, SquareCone) {
    const std::vector<IntVector> rays{{1, 0, 1}, {0, 1, 1}, {1, 1, 1}, {0, 0, 1}};
    const auto t = triangulate(rays);
    ASSERT_EQ(t.size(), 2u);
    // The lexicographically smallest ray pulls, so the diagonal is {(0,0,1),(1,1,1)}.
    for (const auto& s : t) {
        EXPECT_TRUE(std::count(s.begin(), s.end(), IntVector{0, 0, 1}));
        EXPECT_TRUE(std::count(s.begin(), s.end(), IntVector{1, 1, 1}));
    }
    // Pulling from (1,1,1) instead still gives two simplices.
    const auto reversed = triangulate(rays, {{1, 1, 1}});
    EXPECT_EQ(reversed.size(), 2u);
}

TEST(FundamentalPoints, Examples) {
    EXPECT_EQ(fundamental_points(cone({{1, 0}, {1, 2}})), (std::vector<IntVector>{{1, 1}, {2, 2}}));
    EXPECT_EQ(fundamental_points(cone({{1, 0}})), (std::vector<IntVector>{{1, 0}}));
    EXPECT_EQ(fundamental_points(cone({{1, 2}, {0, 1}})), (std::vector<IntVector>{{1, 3}}));
    EXPECT_EQ(box_scan(cone({{1, 2}, {0, 1}})), (std::vector<IntVector>{{1, 3}}));
}

TEST(FundamentalPoints, MatchBoxScan) {
    std::mt19937_64 rng(17);
    int checked = 0;
    while (checked < 60) {
        const std::size_t n = 2 + rng() % 2;
        const std::size_t l = 1 + rng() % n;
        std::vector<IntVector> gens;
        for (std::size_t i = 0; i < l; ++i) {
            IntVector g(n);
            for (auto& x : g) {
                x = static_cast<std::int64_t>(rng() % 4);
            }
            if (is_zero(g)) {
                g[0] = 1;
            }
            gens.push_back(primitive(g));
        }
        if (linalg::rank(gens, n) != l) {
            continue;
        }
        const auto c = cone(gens);
        const auto pts = fundamental_points(c);
        EXPECT_EQ(pts, box_scan(c));
        EXPECT_EQ(Integer(pts.size()), c.multiplicity());
        ++checked;
    }
}

TEST(FundamentalPoints, DeterminantForFullCones) {
    const auto c = cone({{1, 0, 0}, {1, 2, 0}, {1, 1, 3}});
    EXPECT_EQ(fundamental_points(c).size(), 6u);
    const auto u = cone({{1, 0, 0}, {0, 1, 0}, {1, 1, 1}});
    EXPECT_EQ(fundamental_points(u), (std::vector<IntVector>{{2, 2, 1}}));
}

TEST(SubordinateFan, ParabolaPair) {
    const auto gamma = minkowski_sum(newton_polyhedron(P("x^2 - y")), newton_polyhedron(P("x^2*y")));
    const auto fan = subordinate_fan(gamma);
    ASSERT_EQ(fan.cones.size(), 5u);
    std::set<std::vector<IntVector>> gens;
    for (const auto& c : fan.cones) {
        gens.insert(c.generators);
    }
    const std::set<std::vector<IntVector>> expect{
        {{1, 0}}, {{1, 0}, {1, 2}}, {{1, 2}}, {{0, 1}, {1, 2}}, {{0, 1}}};
    EXPECT_EQ(gens, expect);
}

TEST(SubordinateFan, PartitionAndFaceConsistency) {
    std::mt19937_64 rng(31);
    for (int k = 0; k < 24; ++k) {
        const std::size_t n = 2 + k % 2;
        const auto sf = random_support(rng, n, 1 + rng() % 6, 3);
        const auto sg = random_support(rng, n, 1 + rng() % 3, 3);
        const auto gf = newton_polyhedron(std::span<const IntVector>(sf));
        const auto gg = newton_polyhedron(std::span<const IntVector>(sg));
        const auto gamma = minkowski_sum(gf, gg);
        for (std::uint64_t seed : {0u, 5u}) {
            const auto fan = subordinate_fan(gamma, {seed});
            const auto normals = gamma.facet_normals();
            for (const auto& c : fan.cones) {
                for (const auto& g : c.generators) {
                    EXPECT_TRUE(std::count(normals.begin(), normals.end(), g));
                }
            }
            for_box(n, n == 2 ? 8 : 4, [&](const IntVector& x) {
                int hits = 0;
                const SimplicialCone* where = nullptr;
                for (const auto& c : fan.cones) {
                    if (c.contains_strictly(x)) {
                        ++hits;
                        where = &c;
                    }
                }
                ASSERT_EQ(hits, 1) << to_string(x);
                EXPECT_EQ(first_meet_locus(x, gf).vertex_subset,
                          first_meet_locus(where->barycenter, gf).vertex_subset);
                EXPECT_EQ(first_meet_locus(x, gg).vertex_subset,
                          first_meet_locus(where->barycenter, gg).vertex_subset);
                // linearity of d on the closed cone
                const auto lam = where->coefficients(x);
                Rational d = 0;
                for (std::size_t i = 0; i < where->generators.size(); ++i) {
                    d += (*lam)[i] * d_value(where->generators[i], gamma);
                }
                EXPECT_EQ(d, Rational(d_value(x, gamma)));
            });
        }
    }
}
