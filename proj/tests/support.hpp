#pragma once

// Small fixtures shared by the unit tests.

#include <hypfree/arrangement.hpp>
#include <hypfree/matrix.hpp>
#include <hypfree/polynomial.hpp>

#include <initializer_list>
#include <random>
#include <vector>

namespace test_support {

using hypfree::Arrangement;
using hypfree::Scalar;

inline Arrangement rational(int rank, std::initializer_list<std::initializer_list<int>> rows) {
    std::vector<std::vector<Scalar>> forms;
    for (const auto& r : rows) {
        std::vector<Scalar> f;
        for (int v : r)
            f.emplace_back(v);
        forms.push_back(std::move(f));
    }
    return Arrangement::from_forms(rank, forms);
}

inline Arrangement boolean(int rank) {
    std::vector<std::vector<Scalar>> forms;
    for (int i = 0; i < rank; ++i) {
        std::vector<Scalar> f(static_cast<std::size_t>(rank), Scalar(0));
        f[static_cast<std::size_t>(i)] = Scalar(1);
        forms.push_back(std::move(f));
    }
    return Arrangement::from_forms(rank, forms);
}

/// x1 x2 (x1 - x2) z.
inline Arrangement coned_a2() { return rational(3, {{1, 0, 0}, {0, 1, 0}, {1, -1, 0}, {0, 0, 1}}); }

/// Integer forms with entries in [-bound, bound], skipping zero and
/// proportional forms. May be non-essential; callers filter.
inline Arrangement random_forms(std::mt19937_64& rng, int rank, int n, int bound) {
    std::uniform_int_distribution<int> coeff(-bound, bound);
    Arrangement a(rank);
    int guard = 0;
    while (static_cast<int>(a.size()) < n && guard++ < 10000) {
        std::vector<Scalar> f;
        bool nonzero = false;
        for (int i = 0; i < rank; ++i) {
            int v = coeff(rng);
            nonzero |= v != 0;
            f.emplace_back(v);
        }
        if (!nonzero)
            continue;
        hypfree::Hyperplane h(f);
        if (!a.contains(h))
            a = a.with(h);
    }
    return a;
}

// dim D(A)_d by evaluation: theta(alpha_H) has degree d and vanishes on H
// iff it vanishes on the principal lattice {sum j_k u_k : |j| = d} of a
// basis u of H, which is unisolvent for degree-d forms on H.
inline std::size_t dimension_by_evaluation(const Arrangement& a, int d) {
    const int l = a.rank();
    const auto basis = hypfree::monomial_basis(l, d);
    const std::size_t n = basis.size();
    hypfree::ExactMatrix m(0, n * static_cast<std::size_t>(l));
    for (const auto& h : a) {
        const std::size_t p = h.pivot();
        std::vector<std::vector<Scalar>> u;
        for (int j = 0; j < l; ++j) {
            if (static_cast<std::size_t>(j) == p)
                continue;
            std::vector<Scalar> v(static_cast<std::size_t>(l), Scalar(0));
            v[static_cast<std::size_t>(j)] = Scalar(1);
            v[p] = -h[static_cast<std::size_t>(j)];
            u.push_back(std::move(v));
        }
        for (const auto& w : hypfree::monomial_basis(l - 1, d)) {
            std::vector<Scalar> point(static_cast<std::size_t>(l), Scalar(0));
            for (std::size_t k = 0; k < u.size(); ++k)
                for (int c = 0; c < l; ++c)
                    point[static_cast<std::size_t>(c)] += Scalar(w[k]) * u[k][static_cast<std::size_t>(c)];
            std::vector<Scalar> row(n * static_cast<std::size_t>(l), Scalar(0));
            for (std::size_t k = 0; k < n; ++k) {
                Scalar mono(1);
                for (int c = 0; c < l; ++c)
                    for (int e = 0; e < basis[k][static_cast<std::size_t>(c)]; ++e)
                        mono *= point[static_cast<std::size_t>(c)];
                for (int i = 0; i < l; ++i)
                    row[static_cast<std::size_t>(i) * n + k] = h[static_cast<std::size_t>(i)] * mono;
            }
            m.append_row(row);
        }
    }
    return n * static_cast<std::size_t>(l) - hypfree::matrix_rank(m);
}

} // namespace test_support
