#pragma once

// Saito's criterion and the freeness decision procedure.

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "derivation.hpp"
#include "generators.hpp"
#include "lattice.hpp"

namespace hypfree {

struct SaitoResult {
    bool ok = false;
    Scalar constant;
    std::string reason;
    /// Set when a derivation is not in D(A).
    std::optional<std::size_t> non_member;
};

/// Determinant of the coefficient matrix, derivations as rows.
inline HomPoly saito_determinant(const std::vector<Derivation>& derivs) {
    PolyMatrix m;
    for (const auto& t : derivs)
        m.push_back(t.components());
    return det_poly(m);
}

/// Checks that the l derivations lie in D(A), have degree sum |A| and a
/// determinant equal to c * Q(A) with c a nonzero constant; returns c.
inline SaitoResult saito_check(const Arrangement& a, const std::vector<Derivation>& derivs) {
    SaitoResult r;
    if (derivs.size() != static_cast<std::size_t>(a.rank())) {
        r.reason = "expected " + std::to_string(a.rank()) + " derivations, got " + std::to_string(derivs.size());
        return r;
    }
    int degree_sum = 0;
    for (std::size_t i = 0; i < derivs.size(); ++i) {
        if (derivs[i].rank() != a.rank()) {
            r.reason = "derivation " + std::to_string(i) + " has wrong rank";
            return r;
        }
        if (auto h = first_non_tangent(derivs[i], a)) {
            r.reason = "derivation " + std::to_string(i) + " is not tangent to hyperplane " + std::to_string(*h);
            r.non_member = i;
            return r;
        }
        degree_sum += derivs[i].degree();
    }
    if (degree_sum != static_cast<int>(a.size())) {
        r.reason = "degree sum " + std::to_string(degree_sum) + " differs from |A| = " + std::to_string(a.size());
        return r;
    }
    HomPoly det = saito_determinant(derivs);
    if (det.is_zero()) {
        r.reason = "determinant vanishes";
        return r;
    }
    auto c = exact_divide(det, q_poly(a));
    if (!c || c->degree() != 0) {
        r.reason = "determinant is not a constant multiple of Q(A)";
        return r;
    }
    r.ok = true;
    r.constant = c->coefficient(Exponent(static_cast<std::size_t>(a.rank()), 0));
    return r;
}

struct FreenessCertificate {
    std::vector<Derivation> basis;
    std::vector<int> exponents;
    Scalar saito_constant;
};

struct FreenessResult {
    bool free = false;
    std::string reason;
    IntPoly char_poly;
    std::optional<FreenessCertificate> certificate;
    /// Generators computed while deciding (possibly partial).
    GeneratorSet generators;

    const std::vector<int>& exponents() const { return certificate->exponents; }
};

/// Decides freeness and returns a Saito certificate when free.
///
/// A free arrangement has exponents equal to the roots of chi(A, t), and its
/// minimal generators are a basis. So chi must split over the nonnegative
/// integers, the generators found up to the largest root must have exactly
/// those degrees, and they must pass Saito's criterion. Each failure is a
/// proof of non-freeness.
inline FreenessResult is_free(const Arrangement& a) {
    FreenessResult out;
    out.char_poly = char_poly(a);
    auto roots = nonnegative_integer_roots(out.char_poly, static_cast<int>(a.size()));
    if (!roots) {
        out.reason = "char poly";
        return out;
    }
    const int top = roots->empty() ? 0 : roots->back();
    GeneratorBuilder builder(a);
    while (builder.next_degree() <= top) {
        const int d = builder.next_degree();
        auto fresh = builder.step();
        auto expected = static_cast<std::size_t>(std::count(roots->begin(), roots->end(), d));
        if (fresh.size() != expected) {
            out.reason = "generator degrees";
            out.generators = builder.result();
            return out;
        }
    }
    out.generators = builder.result();
    auto saito = saito_check(a, out.generators.generators);
    if (!saito.ok) {
        out.reason = "saito: " + saito.reason;
        return out;
    }
    out.free = true;
    out.certificate = FreenessCertificate{out.generators.generators, *roots, saito.constant};
    return out;
}

/// Sorted exponents, or nullopt when A is not free.
inline std::optional<std::vector<int>> exponents(const Arrangement& a) {
    auto r = is_free(a);
    if (!r.free)
        return std::nullopt;
    return r.certificate->exponents;
}

/// dim D(A)_d equals the free Hilbert function of the exponents for all
/// d <= up_to. `known` may carry dimensions computed earlier.
inline bool check_free_hilbert(const Arrangement& a, const std::vector<int>& exps, int up_to,
                               const std::map<int, std::size_t>& known = {}) {
    for (int d = 0; d <= up_to; ++d) {
        auto it = known.find(d);
        std::size_t dim = it != known.end() ? it->second : derivation_dimension(a, d);
        if (dim != free_hilbert(a.rank(), exps, d))
            return false;
    }
    return true;
}

} // namespace hypfree
