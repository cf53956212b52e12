#pragma once

// The polynomial B attached to a pair (A', H) with H not in A', and the
// decomposition theta(alpha_H) = f alpha_H + g B.

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "derivation.hpp"
#include "generators.hpp"

namespace hypfree {

struct BPolynomial {
    /// B in the ambient variables; it does not involve the pivot of alpha_H.
    HomPoly poly;
    /// B restricted to H, in H-coordinates.
    HomPoly restricted;
    int degree = 0;
};

/// B = Q(A')|_H / Q(A^H), computed on H and lifted by inserting the pivot
/// variable of alpha_H back with exponent zero.
inline BPolynomial b_polynomial(const Arrangement& a_prime, const Hyperplane& h) {
    if (a_prime.contains(h))
        throw std::invalid_argument("b_polynomial: H already belongs to A'");
    if (a_prime.rank() < 2)
        throw std::invalid_argument("b_polynomial: rank must be at least 2");
    Substitution on_h(restriction_images(h));
    HomPoly q_restricted = on_h.apply(q_poly(a_prime));
    Arrangement a_h = restrict_to(a_prime, h);
    auto b = exact_divide(q_restricted, q_poly(a_h));
    if (!b)
        throw std::logic_error("b_polynomial: Q(A^H) does not divide Q(A')|_H");
    BPolynomial out;
    out.restricted = std::move(*b);
    out.poly = out.restricted.insert_variable(static_cast<int>(h.pivot()));
    out.degree = out.restricted.degree();
    return out;
}

/// theta(alpha_H) = f alpha_H + g B with g taken free of the pivot variable.
struct BDecomposition {
    HomPoly f;
    HomPoly g;
};

inline std::optional<BDecomposition> b_decompose(const Derivation& theta, const Hyperplane& h, const BPolynomial& b) {
    HomPoly value = theta.apply(h);
    Substitution on_h(restriction_images(h));
    HomPoly rest = on_h.apply(value);
    BDecomposition out;
    if (rest.is_zero()) {
        out.g = HomPoly(h.dim(), std::max(0, value.degree() - b.degree));
    } else {
        auto g = exact_divide(rest, b.restricted);
        if (!g)
            return std::nullopt;
        out.g = g->insert_variable(static_cast<int>(h.pivot()));
    }
    HomPoly remainder = value;
    if (!out.g.is_zero())
        remainder -= out.g * b.poly;
    if (remainder.is_zero()) {
        out.f = HomPoly(h.dim(), std::max(0, value.degree() - 1));
        return out;
    }
    auto f = exact_divide(remainder, h.as_poly());
    if (!f)
        return std::nullopt;
    out.f = std::move(*f);
    return out;
}

/// theta(alpha_H) lies in the ideal (alpha_H, B).
inline bool satisfies_b_contract(const Derivation& theta, const Hyperplane& h, const BPolynomial& b) {
    return b_decompose(theta, h, b).has_value();
}

struct BContractReport {
    bool ok = true;
    std::string failure;
    std::size_t generators_checked = 0;
    /// Generators of degree below deg B, all of which must be tangent to H.
    std::size_t low_degree_checked = 0;
};

/// Checks every generator against the contract, and that the generators of
/// degree < deg B already lie in D(A' + H).
inline BContractReport check_b_contract(const Hyperplane& h, const BPolynomial& b,
                                        const std::vector<Derivation>& generators) {
    BContractReport r;
    for (std::size_t i = 0; i < generators.size(); ++i) {
        const auto& t = generators[i];
        ++r.generators_checked;
        if (!satisfies_b_contract(t, h, b)) {
            r.ok = false;
            r.failure = "generator " + std::to_string(i) + " of degree " + std::to_string(t.degree()) +
                        ": theta(alpha_H) not in (alpha_H, B)";
            return r;
        }
        if (t.degree() < b.degree) {
            ++r.low_degree_checked;
            if (!t.is_tangent(h)) {
                r.ok = false;
                r.failure = "generator " + std::to_string(i) + " of degree " + std::to_string(t.degree()) +
                            " < deg B is not tangent to H";
                return r;
            }
        }
    }
    return r;
}

/// Computes B and checks it on the minimal generators of D(A') up to
/// degree d_max (|A'| when negative).
inline BContractReport verify_b_polynomial(const Arrangement& a_prime, const Hyperplane& h, const BPolynomial& b,
                                           int d_max = -1) {
    BContractReport r;
    const int expected = static_cast<int>(a_prime.size()) - static_cast<int>(restrict_to(a_prime, h).size());
    if (b.degree != expected) {
        r.ok = false;
        r.failure = "deg B = " + std::to_string(b.degree) + " but |A'| - |A^H| = " + std::to_string(expected);
        return r;
    }
    if (d_max < 0)
        d_max = static_cast<int>(a_prime.size());
    return check_b_contract(h, b, minimal_generators(a_prime, d_max).generators);
}

namespace detail {

using Univariate = std::vector<Scalar>;

inline void trim(Univariate& p) {
    while (!p.empty() && p.back().is_zero())
        p.pop_back();
}

inline Univariate univariate_remainder(Univariate a, const Univariate& b) {
    while (a.size() >= b.size() && !a.empty()) {
        Scalar f = a.back() / b.back();
        const std::size_t shift = a.size() - b.size();
        for (std::size_t k = 0; k < b.size(); ++k)
            a[shift + k] -= f * b[k];
        a.pop_back();
        trim(a);
    }
    return a;
}

inline Univariate univariate_gcd(Univariate a, Univariate b) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        Univariate r = univariate_remainder(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

} // namespace detail

/// The binary forms share a nonconstant common factor. Zero forms are
/// ignored; if every form is zero the answer is yes.
inline bool binary_forms_share_factor(const std::vector<HomPoly>& forms) {
    std::vector<const HomPoly*> live;
    for (const auto& f : forms) {
        if (f.vars() != 2)
            throw std::invalid_argument("binary_forms_share_factor: expected forms in two variables");
        if (!f.is_zero())
            live.push_back(&f);
    }
    if (live.empty())
        return true;
    bool all_vanish_at_infinity = true;
    for (const auto* f : live) {
        if (f->degree() == 0)
            return false;
        all_vanish_at_infinity &= f->coefficient({f->degree(), 0}).is_zero();
    }
    if (all_vanish_at_infinity)
        return true;
    // Set the second variable to 1; a common root is then a common factor of
    // the univariate polynomials.
    detail::Univariate g;
    for (const auto* f : live) {
        detail::Univariate u(static_cast<std::size_t>(f->degree()) + 1);
        for (const auto& [e, c] : f->terms())
            u[static_cast<std::size_t>(e[0])] = c;
        detail::trim(u);
        g = f == live.front() ? u : detail::univariate_gcd(g, u);
        if (g.size() <= 1)
            return false;
    }
    return g.size() > 1;
}

inline bool coprime_binary_forms(const HomPoly& p, const HomPoly& q) {
    if (p.is_zero() || q.is_zero())
        return false;
    return !binary_forms_share_factor({p, q});
}

} // namespace hypfree
