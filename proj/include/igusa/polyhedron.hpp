#pragma once

#include <algorithm>
#include <limits>
#include <set>
#include <span>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "linalg.hpp"
#include "polynomial.hpp"

namespace igusa {

/// Inequality <normal, x> >= offset; normal is primitive with nonnegative coordinates.
struct Facet {
    IntVector normal;
    std::int64_t offset = 0;

    friend bool operator==(const Facet&, const Facet&) = default;
};

/// A face of a Newton polyhedron, identified by the facets that contain it.
struct FaceDescriptor {
    std::vector<std::size_t> tight_facets;  // sorted facet indices
    std::vector<IntVector> vertex_subset;   // vertices on the face, lex sorted
    std::vector<std::size_t> free_directions;  // coordinate rays e_i contained in the face
    std::size_t dim = 0;

    friend bool operator==(const FaceDescriptor&, const FaceDescriptor&) = default;
};

/// Gamma = conv(union of m + R_+^n) for a finite support, in vertex and facet form.
class NewtonPolyhedron {
public:
    NewtonPolyhedron(std::size_t nvars, std::vector<IntVector> vertices, std::vector<Facet> facets)
        : nvars_(nvars), vertices_(std::move(vertices)), facets_(std::move(facets)) {}

    std::size_t nvars() const { return nvars_; }
    const std::vector<IntVector>& vertices() const { return vertices_; }
    const std::vector<Facet>& facets() const { return facets_; }

    /// D(Gamma): the primitive facet normals.
    std::vector<IntVector> facet_normals() const {
        std::vector<IntVector> out;
        for (const auto& f : facets_) {
            out.push_back(f.normal);
        }
        return out;
    }

    bool contains(const IntVector& x) const {
        for (const auto& f : facets_) {
            if (dot(f.normal, x) < f.offset) {
                return false;
            }
        }
        return true;
    }

    friend bool operator==(const NewtonPolyhedron&, const NewtonPolyhedron&) = default;

private:
    std::size_t nvars_;
    std::vector<IntVector> vertices_;
    std::vector<Facet> facets_;
};

namespace detail {

/// Drops duplicates and points m with some other support point m' <= m componentwise.
inline std::vector<IntVector> minimal_points(std::span<const IntVector> support) {
    std::vector<IntVector> pts(support.begin(), support.end());
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    std::vector<IntVector> out;
    for (const auto& p : pts) {
        bool dominated = false;
        for (const auto& o : pts) {
            if (&o == &p) {
                continue;
            }
            bool le = true;
            for (std::size_t i = 0; i < p.size() && le; ++i) {
                le = o[i] <= p[i];
            }
            if (le) {
                dominated = true;
                break;
            }
        }
        if (!dominated) {
            out.push_back(p);
        }
    }
    return out;
}

/// Double description: extreme rays of the cone {y : <y, g> >= 0 for all g in gens}.
/// Requires the generators to span the whole space and the cone they generate to be pointed.
inline std::vector<std::vector<Integer>> dual_extreme_rays(const std::vector<std::vector<Integer>>& gens) {
    using Vec = std::vector<Integer>;
    const std::size_t d = gens.front().size();
    const std::size_t m = gens.size();
    auto inner = [](const Vec& a, const Vec& b) {
        Integer s = 0;
        for (std::size_t i = 0; i < a.size(); ++i) {
            s += a[i] * b[i];
        }
        return s;
    };
    auto normalize = [](Vec v) {
        Integer g = 0;
        for (const auto& x : v) {
            g = boost::multiprecision::gcd(g, x);
        }
        if (g > 1) {
            for (auto& x : v) {
                x /= g;
            }
        }
        return v;
    };

    // Greedy choice of d independent generators for the initial simplicial cone.
    std::vector<std::size_t> basis;
    linalg::RationalMatrix echelon;
    for (std::size_t k = 0; k < m && basis.size() < d; ++k) {
        auto trial = echelon;
        std::vector<Rational> row(gens[k].begin(), gens[k].end());
        trial.push_back(row);
        auto copy = trial;
        if (linalg::row_reduce(copy, d).size() == trial.size()) {
            echelon = std::move(trial);
            basis.push_back(k);
        }
    }
    if (basis.size() != d) {
        throw Error("double description: generators do not span the space");
    }

    struct Ray {
        Vec y;
        boost::dynamic_bitset<> zeros;
    };
    std::vector<Ray> rays;
    {
        linalg::RationalMatrix a;
        for (auto k : basis) {
            a.emplace_back(gens[k].begin(), gens[k].end());
        }
        for (std::size_t j = 0; j < d; ++j) {
            std::vector<Rational> e(d, Rational(0));
            e[j] = 1;
            const auto x = linalg::solve(a, e);
            Integer l = 1;
            for (const auto& v : *x) {
                l = boost::multiprecision::lcm(l, denominator(v));
            }
            Vec y;
            for (const auto& v : *x) {
                y.push_back(numerator(v) * (l / denominator(v)));
            }
            Ray r{normalize(std::move(y)), boost::dynamic_bitset<>(m)};
            for (std::size_t i = 0; i < d; ++i) {
                if (i != j) {
                    r.zeros.set(basis[i]);
                }
            }
            rays.push_back(std::move(r));
        }
    }
    std::vector<bool> used(m, false);
    for (auto k : basis) {
        used[k] = true;
    }

    for (std::size_t k = 0; k < m; ++k) {
        if (used[k]) {
            continue;
        }
        const auto& g = gens[k];
        std::vector<Integer> val(rays.size());
        std::vector<std::size_t> pos, neg;
        std::vector<Ray> next;
        for (std::size_t i = 0; i < rays.size(); ++i) {
            val[i] = inner(rays[i].y, g);
            if (val[i] > 0) {
                pos.push_back(i);
            } else if (val[i] < 0) {
                neg.push_back(i);
            }
        }
        for (const auto pi : pos) {
            for (const auto ni : neg) {
                const auto common = rays[pi].zeros & rays[ni].zeros;
                if (common.count() + 2 < d) {
                    continue;
                }
                bool adjacent = true;
                for (std::size_t o = 0; o < rays.size() && adjacent; ++o) {
                    if (o != pi && o != ni && common.is_subset_of(rays[o].zeros)) {
                        adjacent = false;
                    }
                }
                if (!adjacent) {
                    continue;
                }
                Vec y(d);
                for (std::size_t c = 0; c < d; ++c) {
                    y[c] = val[pi] * rays[ni].y[c] - val[ni] * rays[pi].y[c];
                }
                Ray r{normalize(std::move(y)), common};
                r.zeros.set(k);
                next.push_back(std::move(r));
            }
        }
        for (std::size_t i = 0; i < rays.size(); ++i) {
            if (val[i] >= 0) {
                if (val[i] == 0) {
                    rays[i].zeros.set(k);
                }
                next.push_back(std::move(rays[i]));
            }
        }
        rays = std::move(next);
        used[k] = true;
    }
    std::vector<Vec> out;
    for (auto& r : rays) {
        out.push_back(std::move(r.y));
    }
    return out;
}

} // namespace detail

/// Newton polyhedron of a nonempty support in N^n. Facets come from the homogenized cone
/// generated by (m, 1) for the support points and (e_i, 0) for the coordinate rays.
inline NewtonPolyhedron newton_polyhedron(std::span<const IntVector> support) {
    if (support.empty()) {
        throw InputError("Newton polyhedron of an empty support");
    }
    const std::size_t n = support.front().size();
    for (const auto& m : support) {
        if (m.size() != n || !is_nonnegative(m)) {
            throw InputError("support points must lie in N^n with a common n");
        }
    }
    const auto pts = detail::minimal_points(support);

    std::vector<std::vector<Integer>> gens;
    for (const auto& p : pts) {
        std::vector<Integer> g(p.begin(), p.end());
        g.push_back(1);
        gens.push_back(std::move(g));
    }
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<Integer> g(n + 1, Integer(0));
        g[i] = 1;
        gens.push_back(std::move(g));
    }
    std::vector<Facet> facets;
    for (const auto& y : detail::dual_extreme_rays(gens)) {
        IntVector normal;
        for (std::size_t i = 0; i < n; ++i) {
            normal.push_back(to_int64(y[i]));
        }
        if (is_zero(normal)) {
            continue;  // the face at infinity, t >= 0
        }
        if (!is_nonnegative(normal)) {
            throw Error("internal: Newton polyhedron facet normal with a negative coordinate");
        }
        normal = primitive(std::move(normal));
        std::int64_t offset = std::numeric_limits<std::int64_t>::max();
        for (const auto& p : pts) {
            offset = std::min(offset, dot(normal, p));
        }
        facets.push_back({std::move(normal), offset});
    }
    std::sort(facets.begin(), facets.end(), [](const Facet& a, const Facet& b) { return a.normal < b.normal; });

    std::vector<IntVector> vertices;
    for (const auto& p : pts) {
        std::vector<IntVector> tight;
        for (const auto& f : facets) {
            if (dot(f.normal, p) == f.offset) {
                tight.push_back(f.normal);
            }
        }
        if (linalg::rank(tight, n) == n) {
            vertices.push_back(p);
        }
    }
    std::sort(vertices.begin(), vertices.end());
    return NewtonPolyhedron(n, std::move(vertices), std::move(facets));
}

inline NewtonPolyhedron newton_polyhedron(const IntegerPolynomial& h) {
    if (h.is_zero()) {
        throw InputError("Newton polyhedron of the zero polynomial");
    }
    const auto s = h.support();
    return newton_polyhedron(std::span<const IntVector>(s));
}

/// A + B, from the pairwise vertex sums.
inline NewtonPolyhedron minkowski_sum(const NewtonPolyhedron& a, const NewtonPolyhedron& b) {
    if (a.nvars() != b.nvars()) {
        throw InputError("Minkowski sum of polyhedra in different dimensions");
    }
    std::vector<IntVector> sums;
    for (const auto& u : a.vertices()) {
        for (const auto& v : b.vertices()) {
            sums.push_back(add(u, v));
        }
    }
    return newton_polyhedron(std::span<const IntVector>(sums));
}

/// Gamma(h) for a mapping: the iterated Minkowski sum of the component polyhedra.
inline NewtonPolyhedron minkowski_sum(std::span<const NewtonPolyhedron> parts) {
    if (parts.empty()) {
        throw InputError("Minkowski sum of no polyhedra");
    }
    auto acc = parts.front();
    for (std::size_t i = 1; i < parts.size(); ++i) {
        acc = minkowski_sum(acc, parts[i]);
    }
    return acc;
}

/// d(a, Gamma) = min over Gamma of <a, x>; the vertex minimum suffices for a >= 0.
inline std::int64_t d_value(const IntVector& a, const NewtonPolyhedron& p) {
    if (a.size() != p.nvars()) {
        throw InputError("dimension mismatch in d_value");
    }
    if (!is_nonnegative(a)) {
        throw InputError("d_value requires a nonnegative vector");
    }
    std::int64_t best = std::numeric_limits<std::int64_t>::max();
    for (const auto& v : p.vertices()) {
        best = std::min(best, dot(a, v));
    }
    return best;
}

namespace detail {

/// Face spanned by the given vertices and coordinate directions: dimension and containing facets.
inline FaceDescriptor describe_face(const NewtonPolyhedron& p, std::vector<IntVector> verts,
                                    std::vector<std::size_t> dirs) {
    const auto n = p.nvars();
    FaceDescriptor f;
    for (std::size_t j = 0; j < p.facets().size(); ++j) {
        const auto& fac = p.facets()[j];
        bool contains = true;
        for (const auto& v : verts) {
            contains = contains && dot(fac.normal, v) == fac.offset;
        }
        for (auto i : dirs) {
            contains = contains && fac.normal[i] == 0;
        }
        if (contains) {
            f.tight_facets.push_back(j);
        }
    }
    std::vector<IntVector> span;
    for (std::size_t k = 1; k < verts.size(); ++k) {
        IntVector d(n);
        for (std::size_t i = 0; i < n; ++i) {
            d[i] = verts[k][i] - verts[0][i];
        }
        span.push_back(std::move(d));
    }
    for (auto i : dirs) {
        IntVector e(n, 0);
        e[i] = 1;
        span.push_back(std::move(e));
    }
    f.dim = span.empty() ? 0 : linalg::rank(span, n);
    std::sort(verts.begin(), verts.end());
    f.vertex_subset = std::move(verts);
    f.free_directions = std::move(dirs);
    return f;
}

} // namespace detail

/// F(a, Gamma): the face on which <a, .> attains d(a, Gamma). For a = 0 this is Gamma itself.
inline FaceDescriptor first_meet_locus(const IntVector& a, const NewtonPolyhedron& p) {
    const auto d = d_value(a, p);
    std::vector<IntVector> verts;
    for (const auto& v : p.vertices()) {
        if (dot(a, v) == d) {
            verts.push_back(v);
        }
    }
    std::vector<std::size_t> dirs;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) {
            dirs.push_back(i);
        }
    }
    return detail::describe_face(p, std::move(verts), std::move(dirs));
}

} // namespace igusa
