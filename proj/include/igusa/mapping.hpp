#pragma once

#include <string>
#include <vector>

#include "polynomial.hpp"

namespace igusa {

/// h = (h_1, ..., h_r) : K^n -> K^r with r <= n, all components in the same variables.
class PolyMapping {
public:
    /// Validates the component list. When `require_origin_zero` is set every component must
    /// vanish at the origin, which the Newton-polyhedron-at-the-origin constructions assume.
    PolyMapping(std::vector<IntegerPolynomial> components, const BaseField& field, bool require_origin_zero)
        : components_(std::move(components)) {
        if (components_.empty()) {
            throw InputError("a polynomial mapping needs at least one component");
        }
        const auto n = components_.front().nvars();
        if (components_.size() > n) {
            throw InputError("mapping has " + std::to_string(components_.size()) + " components but only " +
                             std::to_string(n) + " variables (need r <= n)");
        }
        for (std::size_t i = 0; i < components_.size(); ++i) {
            const auto& h = components_[i];
            const auto label = "component " + std::to_string(i + 1);
            if (h.nvars() != n) {
                throw InputError(label + " has a different number of variables");
            }
            if (h.is_constant()) {
                throw InputError(label + " is constant");
            }
            if (reduce_mod_p(h, field).is_zero()) {
                throw InputError(label + " vanishes modulo p = " + std::to_string(field.p()));
            }
            if (require_origin_zero && h.constant_term() != 0) {
                throw InputError(label + " does not vanish at the origin (nonzero constant term)");
            }
        }
    }

    std::size_t nvars() const { return components_.front().nvars(); }
    std::size_t size() const { return components_.size(); }
    const IntegerPolynomial& operator[](std::size_t i) const { return components_[i]; }
    const std::vector<IntegerPolynomial>& components() const { return components_; }

    /// The mapping of face functions (h_{1,a}, ..., h_{r,a}).
    std::vector<IntegerPolynomial> face_functions(const IntVector& a) const {
        std::vector<IntegerPolynomial> out;
        out.reserve(components_.size());
        for (const auto& h : components_) {
            out.push_back(face_function(h, a));
        }
        return out;
    }

private:
    std::vector<IntegerPolynomial> components_;
};

} // namespace igusa
