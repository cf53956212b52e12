#pragma once

// Counting basis members of D(A') that are not tangent to a new hyperplane.

#include <map>
#include <stdexcept>
#include <vector>

#include "freeness.hpp"

namespace hypfree {

/// Number of basis members theta with theta(alpha_H) not divisible by
/// alpha_H. The basis must pass Saito's criterion for A'.
inline int nt(const Arrangement& a_prime, const std::vector<Derivation>& basis, const Hyperplane& h) {
    auto check = saito_check(a_prime, basis);
    if (!check.ok)
        throw std::invalid_argument("nt: not a basis of D(A'): " + check.reason);
    int count = 0;
    for (const auto& t : basis)
        count += !t.is_tangent(h);
    return count;
}

struct SntResult {
    int s = 0;
    /// The greedy choice below attains the minimum over all free bases.
    bool exact = true;
    /// A basis of D(A') realizing s, ordered by degree.
    std::vector<Derivation> basis;
    std::vector<int> exponents;
};

/// Minimum of NT over homogeneous bases of D(A').
///
/// In degree e every basis has k_e members, and they are independent modulo
/// L_e, the degree-e part of the submodule generated by D(A')_{<e}. L_e does
/// not depend on the basis. A member is tangent to H iff it lies in D(A)_e,
/// so at most rank(L_e + D(A)_e) - rank(L_e) of the k_e can be tangent, and
/// choosing vectors of D(A)_e first attains that. Summing the shortfall over
/// degrees gives the minimum exactly.
inline SntResult snt_upper(const Arrangement& a_prime, const Hyperplane& h) {
    if (a_prime.contains(h))
        throw std::invalid_argument("snt_upper: H already belongs to A'");
    auto free = is_free(a_prime);
    if (!free.free)
        throw std::invalid_argument("snt_upper: A' is not free");
    const Arrangement a = a_prime.with(h);
    const int l = a_prime.rank();
    std::map<int, int> multiplicity;
    for (int e : free.certificate->exponents)
        ++multiplicity[e];

    SntResult out;
    out.exponents = free.certificate->exponents;
    for (const auto& [e, k] : multiplicity) {
        SpanBuilder<Scalar> span(monomial_count(l, e) * static_cast<std::size_t>(l));
        for (const auto& b : out.basis)
            for (const auto& m : monomial_basis(l, e - b.degree()))
                span.insert(b.shifted_vector(m));
        int taken = 0;
        // Euler first so it stays in the basis when it can.
        std::vector<Derivation> tangent;
        if (e == 1)
            tangent.push_back(Derivation::euler(l));
        for (auto& t : derivation_space(a, e))
            tangent.push_back(std::move(t));
        for (const auto& t : tangent)
            if (taken < k && span.insert(t.to_vector())) {
                out.basis.push_back(t);
                ++taken;
            }
        const int tangent_taken = taken;
        for (const auto& t : derivation_space(a_prime, e))
            if (taken < k && span.insert(t.to_vector())) {
                out.basis.push_back(t);
                ++taken;
            }
        if (taken != k)
            throw std::logic_error("snt_upper: could not complete a basis in degree " + std::to_string(e));
        out.s += k - tangent_taken;
    }
    auto check = saito_check(a_prime, out.basis);
    if (!check.ok)
        throw std::logic_error("snt_upper: constructed basis fails Saito: " + check.reason);
    return out;
}

/// The lower bound g(A) >= l + s - 1 on the generator count of A' + H.
inline bool snt_consistent_with_generators(int s, int generator_count, int rank) {
    return generator_count >= rank + s - 1;
}

} // namespace hypfree
