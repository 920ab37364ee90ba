#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <vector>

#include "fan.hpp"
#include "mapping.hpp"

namespace igusa {

inline constexpr std::uint64_t default_torus_budget = 100'000'000;

/// Card of V_I = { z in (F_q^x)^n : face_i(z) = 0 <=> i in I }, indexed by the bitmask of I.
struct CountTable {
    std::size_t cone_id = 0;  // 0 is the origin pseudo-cone
    std::size_t r = 0;
    std::vector<std::uint64_t> counts;  // size 2^r

    std::uint64_t operator[](std::uint64_t mask) const { return counts.at(mask); }

    std::uint64_t total() const {
        std::uint64_t s = 0;
        for (auto c : counts) {
            s += c;
        }
        return s;
    }
};

struct DegeneracyWitness {
    std::size_t cone_id = 0;
    std::uint64_t mask = 0;  // the set I
    std::vector<std::uint64_t> point;
    std::size_t rank = 0;
};

struct NondegeneracyReport {
    bool verdict = true;
    std::vector<DegeneracyWitness> witnesses;  // at most `witness_limit` per cone are kept
    std::uint64_t failures = 0;                // total number of failing (cone, point) pairs
};

/// Rank over F_p of the Card(I) x n matrix [d face_i / d x_j (z)], i in I.
inline std::size_t rank_at_point(const std::vector<std::vector<ModPolynomial>>& partials, std::uint64_t mask,
                                 std::span<const std::uint64_t> z, std::uint64_t p) {
    std::vector<std::vector<std::uint64_t>> rows;
    for (std::size_t i = 0; i < partials.size(); ++i) {
        if (mask >> i & 1) {
            std::vector<std::uint64_t> row;
            for (const auto& d : partials[i]) {
                row.push_back(d.evaluate(z));
            }
            rows.push_back(std::move(row));
        }
    }
    if (rows.empty()) {
        return 0;
    }
    auto inv = [p](std::uint64_t a) {
        std::uint64_t r = 1, e = p - 2;
        while (e) {
            if (e & 1) {
                r = r * a % p;
            }
            a = a * a % p;
            e >>= 1;
        }
        return r;
    };
    const auto n = rows.front().size();
    std::size_t rank = 0;
    for (std::size_t col = 0; col < n && rank < rows.size(); ++col) {
        std::size_t sel = rank;
        while (sel < rows.size() && rows[sel][col] == 0) {
            ++sel;
        }
        if (sel == rows.size()) {
            continue;
        }
        std::swap(rows[rank], rows[sel]);
        const auto iv = inv(rows[rank][col]);
        for (std::size_t r = rank + 1; r < rows.size(); ++r) {
            const auto f = rows[r][col] * iv % p;
            for (std::size_t c = col; c < n; ++c) {
                rows[r][c] = (rows[r][c] + p - f * rows[rank][c] % p) % p;
            }
        }
        ++rank;
    }
    return rank;
}

namespace detail {

/// Evaluates a fixed polynomial on torus points using per-variable power tables.
class TorusEvaluator {
public:
    TorusEvaluator(const ModPolynomial& f, std::uint64_t p) : p_(p) {
        for (const auto& [e, c] : f.terms()) {
            terms_.push_back({e, c});
            for (std::size_t j = 0; j < e.size(); ++j) {
                maxdeg_ = std::max(maxdeg_, e[j]);
            }
        }
    }

    std::int64_t max_degree() const { return maxdeg_; }

    /// pw[j][e] = z_j^e mod p.
    std::uint64_t operator()(const std::vector<std::vector<std::uint64_t>>& pw) const {
        std::uint64_t acc = 0;
        for (const auto& [e, c] : terms_) {
            std::uint64_t v = c;
            for (std::size_t j = 0; j < e.size(); ++j) {
                if (e[j]) {
                    v = v * pw[j][static_cast<std::size_t>(e[j])] % p_;
                }
            }
            acc += v;
        }
        return acc % p_;
    }

private:
    std::uint64_t p_;
    std::int64_t maxdeg_ = 0;
    std::vector<std::pair<IntVector, std::uint64_t>> terms_;
};

inline void check_budget(std::size_t n, std::uint64_t p, std::uint64_t budget) {
    long double total = 1;
    for (std::size_t i = 0; i < n; ++i) {
        total *= static_cast<long double>(p - 1);
    }
    if (total > static_cast<long double>(budget)) {
        throw BudgetExceeded("torus enumeration of (q-1)^n = " + std::to_string(static_cast<double>(total)) +
                             " points exceeds the budget of " + std::to_string(budget) +
                             "; use a smaller prime");
    }
}

} // namespace detail

struct TorusScan {
    CountTable table;
    std::vector<DegeneracyWitness> witnesses;
    std::uint64_t failures = 0;
};

/// One pass over (F_p^x)^n: classifies every point into its stratum I and, when `check_rank` is
/// set, verifies rank Jac(faces_I)(z) = Card(I) at every point with I nonempty.
inline TorusScan scan_torus(const std::vector<ModPolynomial>& faces, const BaseField& field, bool check_rank,
                            std::size_t cone_id = 0, std::uint64_t budget = default_torus_budget,
                            std::size_t witness_limit = 16) {
    if (faces.empty()) {
        throw InputError("no face polynomials to count");
    }
    const auto n = faces.front().nvars();
    const auto r = faces.size();
    const auto p = field.p();
    if (r > n) {
        throw InputError("more face polynomials than variables");
    }
    detail::check_budget(n, p, budget);

    std::vector<detail::TorusEvaluator> evals;
    std::int64_t maxdeg = 1;
    for (const auto& f : faces) {
        evals.emplace_back(f, p);
        maxdeg = std::max(maxdeg, evals.back().max_degree());
    }
    std::vector<std::vector<ModPolynomial>> partials(r);
    if (check_rank) {
        for (std::size_t i = 0; i < r; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                partials[i].push_back(faces[i].derivative(j));
            }
        }
    }

    TorusScan out;
    out.table.cone_id = cone_id;
    out.table.r = r;
    out.table.counts.assign(std::size_t{1} << r, 0);

    std::vector<std::uint64_t> z(n, 1);
    std::vector<std::vector<std::uint64_t>> pw(n, std::vector<std::uint64_t>(static_cast<std::size_t>(maxdeg) + 1));
    auto fill = [&](std::size_t j) {
        pw[j][0] = 1;
        for (std::size_t e = 1; e < pw[j].size(); ++e) {
            pw[j][e] = pw[j][e - 1] * z[j] % p;
        }
    };
    for (std::size_t j = 0; j < n; ++j) {
        fill(j);
    }
    for (;;) {
        std::uint64_t mask = 0;
        for (std::size_t i = 0; i < r; ++i) {
            if (evals[i](pw) == 0) {
                mask |= std::uint64_t{1} << i;
            }
        }
        ++out.table.counts[mask];
        if (check_rank && mask != 0) {
            const auto rank = rank_at_point(partials, mask, z, p);
            if (rank != static_cast<std::size_t>(std::popcount(mask))) {
                ++out.failures;
                if (out.witnesses.size() < witness_limit) {
                    out.witnesses.push_back({cone_id, mask, z, rank});
                }
            }
        }
        std::size_t j = 0;
        while (j < n && z[j] == p - 1) {
            z[j] = 1;
            fill(j);
            ++j;
        }
        if (j == n) {
            break;
        }
        ++z[j];
        fill(j);
    }
    return out;
}

inline CountTable count_strata(const std::vector<ModPolynomial>& faces, const BaseField& field,
                               std::uint64_t budget = default_torus_budget) {
    return scan_torus(faces, field, false, 0, budget).table;
}

/// Reduced face functions h_{i, b(Delta)} mod p; b = 0 gives the components themselves.
inline std::vector<ModPolynomial> reduced_faces(const PolyMapping& h, const IntVector& b, const BaseField& field) {
    std::vector<ModPolynomial> out;
    for (const auto& f : h.face_functions(b)) {
        out.push_back(reduce_mod_p(f, field));
    }
    return out;
}

/// Counts for the origin and every cone of the fan, plus the non-degeneracy verdict, in one sweep.
struct StrataSurvey {
    std::vector<CountTable> tables;  // index 0: origin, then fan.cones in order
    NondegeneracyReport report;
};

inline StrataSurvey survey_strata(const PolyMapping& h, const SubordinateFan& fan, const BaseField& field,
                                  std::uint64_t budget = default_torus_budget) {
    StrataSurvey s;
    auto visit = [&](std::size_t id, const IntVector& b) {
        auto scan = scan_torus(reduced_faces(h, b, field), field, true, id, budget);
        s.tables.push_back(std::move(scan.table));
        s.report.failures += scan.failures;
        for (auto& w : scan.witnesses) {
            s.report.witnesses.push_back(std::move(w));
        }
    };
    visit(0, IntVector(h.nvars(), 0));
    for (const auto& c : fan.cones) {
        visit(c.id, c.barycenter);
    }
    s.report.verdict = s.report.failures == 0;
    return s;
}

inline NondegeneracyReport check_nondegeneracy(const PolyMapping& h, const SubordinateFan& fan,
                                               const BaseField& field, std::uint64_t budget = default_torus_budget) {
    return survey_strata(h, fan, field, budget).report;
}

} // namespace igusa
