#pragma once

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "polyhedron.hpp"

namespace igusa {

/// A cone strictly spanned by linearly independent primitive generators (all in D(Gamma)).
struct SimplicialCone {
    std::size_t id = 0;
    std::vector<IntVector> generators;  // lex sorted
    IntVector barycenter;
    FaceDescriptor parent_face;  // the face tau whose cone Delta_tau this cone refines

    std::size_t dim() const { return generators.size(); }

    /// True when k = sum lambda_i w_i with every lambda_i > 0.
    bool contains_strictly(const IntVector& k) const {
        const auto lambda = coefficients(k);
        if (!lambda) {
            return false;
        }
        return std::all_of(lambda->begin(), lambda->end(), [](const Rational& x) { return x > 0; });
    }

    /// Coefficients of k in the generators, or nullopt if k is outside their span.
    std::optional<std::vector<Rational>> coefficients(const IntVector& k) const {
        const auto n = k.size();
        const auto l = generators.size();
        // Solve W^T lambda = k by row reducing [W^T | k].
        linalg::RationalMatrix m(n, std::vector<Rational>(l + 1));
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < l; ++j) {
                m[i][j] = generators[j][i];
            }
            m[i][l] = k[i];
        }
        const auto pivots = linalg::row_reduce(m, l + 1);
        if (!pivots.empty() && pivots.back() == l) {
            return std::nullopt;
        }
        std::vector<Rational> lambda(l);
        for (std::size_t r = 0; r < pivots.size(); ++r) {
            lambda[pivots[r]] = m[r][l];
        }
        return lambda;
    }

    /// |det| of the generator lattice index: number of fundamental-parallelepiped points.
    Integer multiplicity() const {
        const auto s = linalg::saturate(generators);
        Integer d = 1;
        for (std::size_t i = 0; i < s.h.size(); ++i) {
            d *= s.h[i][i];
        }
        return d;
    }
};

/// A cone Delta_tau of the normal fan, given by its face and the normals spanning it.
struct NormalCone {
    FaceDescriptor face;
    std::vector<IntVector> rays;
};

/// Ordering used by the triangulation. Seed 0 is lexicographic; other seeds shuffle the rays.
struct FanOrdering {
    std::uint64_t seed = 0;
};

/// Simplicial subdivision of R_+^n \ {0} subordinate to Gamma. The origin {0} is implicit.
struct SubordinateFan {
    std::vector<SimplicialCone> cones;
    std::vector<IntVector> ray_order;  // the global ray order used for pulling
    FanOrdering ordering;
};

/// All faces of P other than P itself, in a stable order (by dimension, then tight facets).
inline std::vector<FaceDescriptor> proper_faces(const NewtonPolyhedron& p) {
    const auto& facets = p.facets();
    const auto n = p.nvars();
    auto closure = [&](const std::set<std::size_t>& s) -> std::optional<FaceDescriptor> {
        std::vector<IntVector> verts;
        for (const auto& v : p.vertices()) {
            bool tight = true;
            for (auto j : s) {
                tight = tight && dot(facets[j].normal, v) == facets[j].offset;
            }
            if (tight) {
                verts.push_back(v);
            }
        }
        if (verts.empty()) {
            return std::nullopt;
        }
        std::vector<std::size_t> dirs;
        for (std::size_t i = 0; i < n; ++i) {
            bool zero = true;
            for (auto j : s) {
                zero = zero && facets[j].normal[i] == 0;
            }
            if (zero) {
                dirs.push_back(i);
            }
        }
        return detail::describe_face(p, std::move(verts), std::move(dirs));
    };

    std::map<std::vector<std::size_t>, FaceDescriptor> found;
    std::deque<std::vector<std::size_t>> queue;
    for (std::size_t j = 0; j < facets.size(); ++j) {
        auto f = closure({j});
        if (f && !found.count(f->tight_facets)) {
            queue.push_back(f->tight_facets);
            found.emplace(f->tight_facets, *f);
        }
    }
    while (!queue.empty()) {
        const auto cur = queue.front();
        queue.pop_front();
        for (std::size_t j = 0; j < facets.size(); ++j) {
            if (std::binary_search(cur.begin(), cur.end(), j)) {
                continue;
            }
            std::set<std::size_t> s(cur.begin(), cur.end());
            s.insert(j);
            auto f = closure(s);
            if (f && !found.count(f->tight_facets)) {
                queue.push_back(f->tight_facets);
                found.emplace(f->tight_facets, *f);
            }
        }
    }
    std::vector<FaceDescriptor> out;
    for (auto& [k, f] : found) {
        out.push_back(std::move(f));
    }
    std::stable_sort(out.begin(), out.end(), [](const FaceDescriptor& a, const FaceDescriptor& b) {
        if (a.dim != b.dim) {
            return a.dim > b.dim;
        }
        return a.tight_facets < b.tight_facets;
    });
    return out;
}

/// The cones Delta_tau = { a : F(a, Gamma) = tau } for every proper face tau.
inline std::vector<NormalCone> normal_fan(const NewtonPolyhedron& p) {
    std::vector<NormalCone> out;
    for (auto& f : proper_faces(p)) {
        NormalCone c;
        for (auto j : f.tight_facets) {
            c.rays.push_back(p.facets()[j].normal);
        }
        std::sort(c.rays.begin(), c.rays.end());
        c.face = std::move(f);
        out.push_back(std::move(c));
    }
    return out;
}

namespace detail {

/// Facets of the pointed cone generated by `rays`, each as a sorted list of ray indices.
inline std::vector<std::vector<std::size_t>> cone_facets(const std::vector<IntVector>& rays, std::size_t k) {
    const auto n = rays.front().size();
    std::set<std::vector<std::size_t>> facets;
    std::vector<std::size_t> idx(k - 1);
    // Enumerate (k-1)-subsets in lexicographic order.
    std::vector<bool> sel(rays.size(), false);
    std::fill(sel.begin(), sel.begin() + static_cast<std::ptrdiff_t>(k - 1), true);
    do {
        std::vector<IntVector> sub;
        for (std::size_t i = 0; i < rays.size(); ++i) {
            if (sel[i]) {
                sub.push_back(rays[i]);
            }
        }
        if (linalg::rank(sub, n) != k - 1) {
            continue;
        }
        for (const auto& v : linalg::nullspace(sub, n)) {
            bool pos = false, neg = false;
            std::vector<std::size_t> zero;
            for (std::size_t i = 0; i < rays.size(); ++i) {
                const auto x = dot(v, rays[i]);
                pos = pos || x > 0;
                neg = neg || x < 0;
                if (x == 0) {
                    zero.push_back(i);
                }
            }
            if (!pos && !neg) {
                continue;  // orthogonal to the whole span, try another functional
            }
            if (!(pos && neg)) {
                facets.insert(zero);
            }
            break;
        }
    } while (std::prev_permutation(sel.begin(), sel.end()));
    return {facets.begin(), facets.end()};
}

/// Pulling triangulation of cone(rays); rays are given in pulling order.
inline std::vector<std::vector<IntVector>> pulling_triangulation(const std::vector<IntVector>& rays) {
    const auto n = rays.front().size();
    const auto k = linalg::rank(rays, n);
    if (rays.size() == k) {
        return {rays};
    }
    std::vector<std::vector<IntVector>> out;
    for (const auto& facet : cone_facets(rays, k)) {
        if (std::binary_search(facet.begin(), facet.end(), std::size_t{0})) {
            continue;
        }
        std::vector<IntVector> sub;
        for (auto i : facet) {
            sub.push_back(rays[i]);
        }
        for (auto& simplex : pulling_triangulation(sub)) {
            simplex.insert(simplex.begin(), rays.front());
            out.push_back(std::move(simplex));
        }
    }
    return out;
}

} // namespace detail

/// Simplicial cones covering cone(rays), generated only by input rays. `order` fixes the pulling
/// order; rays absent from it are placed after the listed ones in lex order.
inline std::vector<std::vector<IntVector>> triangulate(std::vector<IntVector> rays,
                                                       const std::vector<IntVector>& order = {}) {
    if (rays.empty()) {
        throw InputError("cannot triangulate an empty ray set");
    }
    for (const auto& r : rays) {
        if (is_zero(r) || !is_nonnegative(r)) {
            throw InputError("rays must be nonzero and lie in R_+^n");
        }
    }
    std::sort(rays.begin(), rays.end());
    rays.erase(std::unique(rays.begin(), rays.end()), rays.end());
    auto rank_of = [&](const IntVector& r) {
        const auto it = std::find(order.begin(), order.end(), r);
        return static_cast<std::size_t>(it - order.begin());
    };
    std::stable_sort(rays.begin(), rays.end(),
                     [&](const IntVector& a, const IntVector& b) { return rank_of(a) < rank_of(b); });
    auto simplices = detail::pulling_triangulation(rays);
    for (auto& s : simplices) {
        std::sort(s.begin(), s.end());
    }
    std::sort(simplices.begin(), simplices.end());
    return simplices;
}

/// Builds the subordinate simplicial fan: each Delta_tau is triangulated, and every face of the
/// resulting simplices whose relative interior lies in Delta_tau becomes a cone of the fan.
inline SubordinateFan subordinate_fan(const NewtonPolyhedron& p, FanOrdering ordering = {}) {
    SubordinateFan fan;
    fan.ordering = ordering;
    fan.ray_order = p.facet_normals();
    std::sort(fan.ray_order.begin(), fan.ray_order.end());
    if (ordering.seed != 0) {
        std::mt19937_64 rng(ordering.seed);
        for (std::size_t i = fan.ray_order.size(); i > 1; --i) {
            std::swap(fan.ray_order[i - 1], fan.ray_order[rng() % i]);
        }
    }

    for (const auto& nc : normal_fan(p)) {
        std::set<std::vector<IntVector>> pieces;
        for (const auto& simplex : triangulate(nc.rays, fan.ray_order)) {
            const auto l = simplex.size();
            for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << l); ++mask) {
                std::vector<IntVector> sub;
                IntVector b(p.nvars(), 0);
                for (std::size_t i = 0; i < l; ++i) {
                    if (mask >> i & 1) {
                        sub.push_back(simplex[i]);
                        b = add(b, simplex[i]);
                    }
                }
                if (first_meet_locus(b, p).tight_facets == nc.face.tight_facets) {
                    pieces.insert(std::move(sub));
                }
            }
        }
        for (const auto& gens : pieces) {
            SimplicialCone c;
            c.generators = gens;
            c.barycenter = IntVector(p.nvars(), 0);
            for (const auto& g : gens) {
                c.barycenter = add(c.barycenter, g);
            }
            c.parent_face = nc.face;
            fan.cones.push_back(std::move(c));
        }
    }
    std::stable_sort(fan.cones.begin(), fan.cones.end(), [](const SimplicialCone& a, const SimplicialCone& b) {
        if (a.dim() != b.dim()) {
            return a.dim() < b.dim();
        }
        return a.generators < b.generators;
    });
    for (std::size_t i = 0; i < fan.cones.size(); ++i) {
        fan.cones[i].id = i + 1;
    }
    return fan;
}

/// Z^n cap { sum lambda_i w_i : 0 < lambda_i <= 1 }, lex sorted.
inline std::vector<IntVector> fundamental_points(const SimplicialCone& c) {
    const auto& w = c.generators;
    if (w.empty()) {
        throw InputError("fundamental points of an empty cone");
    }
    if (linalg::rank(w, w.front().size()) != w.size()) {
        throw InputError("cone generators are linearly dependent");
    }
    const auto sat = linalg::saturate(w);
    const auto l = w.size();
    const auto& h = sat.h;

    // lambda H = z, with H lower triangular.
    auto lambda_of = [&](const std::vector<Integer>& z) {
        std::vector<Rational> lam(l);
        for (std::size_t j = l; j-- > 0;) {
            Rational acc = Rational(z[j]);
            for (std::size_t i = j + 1; i < l; ++i) {
                acc -= lam[i] * Rational(h[i][j]);
            }
            lam[j] = acc / Rational(h[j][j]);
        }
        return lam;
    };
    auto reduce = [&](const std::vector<Integer>& z) {
        auto lam = lambda_of(z);
        std::vector<Integer> out(l, Integer(0));
        for (auto& x : lam) {
            // shift into (0, 1]
            Integer fl = numerator(x) / denominator(x);
            if (fl * denominator(x) > numerator(x)) {
                fl -= 1;
            }
            Rational frac = x - Rational(fl);
            x = frac == 0 ? Rational(1) : frac;
        }
        for (std::size_t j = 0; j < l; ++j) {
            Rational acc = 0;
            for (std::size_t i = j; i < l; ++i) {
                acc += lam[i] * Rational(h[i][j]);
            }
            out[j] = numerator(acc);
        }
        return out;
    };

    std::vector<Integer> start(l, Integer(0));
    for (std::size_t j = 0; j < l; ++j) {
        for (std::size_t i = j; i < l; ++i) {
            start[j] += h[i][j];
        }
    }
    std::set<std::vector<Integer>> seen{start};
    std::deque<std::vector<Integer>> queue{start};
    while (!queue.empty()) {
        const auto z = queue.front();
        queue.pop_front();
        for (std::size_t k = 0; k < l; ++k) {
            auto y = z;
            y[k] += 1;
            auto r = reduce(y);
            if (seen.insert(r).second) {
                queue.push_back(std::move(r));
            }
        }
    }
    std::vector<IntVector> out;
    const auto n = w.front().size();
    for (const auto& z : seen) {
        IntVector x(n, 0);
        for (std::size_t i = 0; i < l; ++i) {
            const auto zi = to_int64(z[i]);
            for (std::size_t c2 = 0; c2 < n; ++c2) {
                x[c2] += zi * sat.basis[i][c2];
            }
        }
        out.push_back(std::move(x));
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// The cone of `fan` whose relative interior contains k (k nonzero, k >= 0), or nullptr.
inline const SimplicialCone* locate(const SubordinateFan& fan, const IntVector& k) {
    for (const auto& c : fan.cones) {
        if (c.contains_strictly(k)) {
            return &c;
        }
    }
    return nullptr;
}

} // namespace igusa
