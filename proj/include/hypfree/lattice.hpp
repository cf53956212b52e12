#pragma once

// Intersection lattice, Moebius function and characteristic polynomial.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "arrangement.hpp"
#include "matrix.hpp"
#include "modp.hpp"

namespace hypfree {

struct Flat {
    /// Row-reduced defining equations of the subspace.
    std::vector<std::vector<Scalar>> equations;
    /// Indices of the hyperplanes containing the flat, ascending.
    std::vector<std::size_t> hyperplanes;
    std::uint64_t mask = 0;
    int codim = 0;
    long long moebius = 0;

    std::size_t multiplicity() const noexcept { return hyperplanes.size(); }
};

/// All flats, ordered by codimension and then by containing index set.
/// Closure is computed by intersecting flats with single hyperplanes, and a
/// flat is identified by the set of hyperplanes containing it.
inline std::vector<Flat> intersection_lattice(const Arrangement& a) {
    const std::size_t n = a.size();
    if (n > 64)
        throw std::invalid_argument("intersection_lattice: more than 64 hyperplanes");
    const std::size_t l = static_cast<std::size_t>(a.rank());

    struct Pending {
        std::uint64_t mask;
        std::vector<std::size_t> basis;
    };
    std::vector<std::vector<Pending>> by_codim(l + 1);
    by_codim[0].push_back({0, {}});

    for (std::size_t r = 1; r <= l; ++r) {
        std::map<std::uint64_t, std::vector<std::size_t>> found;
        for (const auto& x : by_codim[r - 1]) {
            std::uint64_t covered = x.mask;
            for (std::size_t i = 0; i < n; ++i) {
                if (covered >> i & 1u)
                    continue;
                SpanBuilder<Scalar> span(l);
                for (std::size_t b : x.basis)
                    span.insert(a[b].form());
                span.insert(a[i].form());
                std::uint64_t mask = 0;
                for (std::size_t j = 0; j < n; ++j)
                    if ((x.mask >> j & 1u) || j == i || span.contains(a[j].form()))
                        mask |= std::uint64_t{1} << j;
                covered |= mask;
                if (!found.count(mask)) {
                    auto basis = x.basis;
                    basis.push_back(i);
                    found.emplace(mask, std::move(basis));
                }
            }
        }
        for (auto& [mask, basis] : found)
            by_codim[r].push_back({mask, std::move(basis)});
        auto index_list = [n](std::uint64_t m) {
            std::vector<std::size_t> v;
            for (std::size_t j = 0; j < n; ++j)
                if (m >> j & 1u)
                    v.push_back(j);
            return v;
        };
        std::sort(by_codim[r].begin(), by_codim[r].end(),
                  [&](const Pending& p, const Pending& q) { return index_list(p.mask) < index_list(q.mask); });
    }

    std::vector<Flat> flats;
    for (std::size_t r = 0; r <= l; ++r) {
        for (const auto& p : by_codim[r]) {
            Flat f;
            f.mask = p.mask;
            f.codim = static_cast<int>(r);
            for (std::size_t j = 0; j < n; ++j)
                if (p.mask >> j & 1u)
                    f.hyperplanes.push_back(j);
            if (!p.basis.empty()) {
                ExactMatrix m(p.basis.size(), l);
                for (std::size_t k = 0; k < p.basis.size(); ++k)
                    for (std::size_t c = 0; c < l; ++c)
                        m(k, c) = a[p.basis[k]][c];
                auto e = row_reduce(std::move(m));
                for (std::size_t k = 0; k < e.rank(); ++k)
                    f.equations.emplace_back(e.rref.row(k).begin(), e.rref.row(k).end());
            }
            long long mu = r == 0 ? 1 : 0;
            for (const auto& y : flats)
                if (y.mask != f.mask && (y.mask & ~f.mask) == 0)
                    mu -= y.moebius;
            f.moebius = mu;
            flats.push_back(std::move(f));
        }
    }
    return flats;
}

/// Integer polynomial, coefficient of t^k at index k.
struct IntPoly {
    std::vector<long long> coeffs;

    int degree() const {
        for (std::size_t k = coeffs.size(); k-- > 0;)
            if (coeffs[k] != 0)
                return static_cast<int>(k);
        return -1;
    }

    long long evaluate(long long t) const {
        long long v = 0;
        for (std::size_t k = coeffs.size(); k-- > 0;)
            v = v * t + coeffs[k];
        return v;
    }

    std::string to_string() const {
        std::ostringstream os;
        bool first = true;
        for (int k = degree(); k >= 0; --k) {
            long long c = coeffs[static_cast<std::size_t>(k)];
            if (c == 0)
                continue;
            if (!first)
                os << (c < 0 ? " - " : " + ");
            else if (c < 0)
                os << "-";
            long long m = c < 0 ? -c : c;
            if (m != 1 || k == 0)
                os << m;
            if (k > 0)
                os << "t";
            if (k > 1)
                os << "^" << k;
            first = false;
        }
        return first ? "0" : os.str();
    }

    friend bool operator==(const IntPoly& a, const IntPoly& b) {
        auto trimmed = [](const IntPoly& p) {
            auto c = p.coeffs;
            while (!c.empty() && c.back() == 0)
                c.pop_back();
            return c;
        };
        return trimmed(a) == trimmed(b);
    }

    /// prod (t - r) over the given roots.
    static IntPoly from_roots(const std::vector<int>& roots) {
        IntPoly p{{1}};
        for (int r : roots) {
            std::vector<long long> next(p.coeffs.size() + 1, 0);
            for (std::size_t k = 0; k < p.coeffs.size(); ++k) {
                next[k + 1] += p.coeffs[k];
                next[k] -= r * p.coeffs[k];
            }
            p.coeffs = std::move(next);
        }
        return p;
    }
};

/// chi(A, t) = sum over flats X of mu(X) t^(dim X).
inline IntPoly char_poly(const std::vector<Flat>& lattice, int rank) {
    IntPoly p;
    p.coeffs.assign(static_cast<std::size_t>(rank) + 1, 0);
    for (const auto& f : lattice)
        p.coeffs[static_cast<std::size_t>(rank - f.codim)] += f.moebius;
    return p;
}

inline IntPoly char_poly(const Arrangement& a) { return char_poly(intersection_lattice(a), a.rank()); }

/// Roots of a monic polynomial that splits into linear factors with roots in
/// [0, max_root], ascending; nullopt if it does not split that way.
inline std::optional<std::vector<int>> nonnegative_integer_roots(const IntPoly& p, int max_root) {
    int deg = p.degree();
    if (deg < 0 || p.coeffs[static_cast<std::size_t>(deg)] != 1)
        return std::nullopt;
    std::vector<long long> c(p.coeffs.begin(), p.coeffs.begin() + deg + 1);
    std::vector<int> roots;
    for (int r = 0; r <= max_root && c.size() > 1;) {
        // synthetic division by (t - r)
        std::vector<long long> q(c.size() - 1);
        long long carry = 0;
        for (std::size_t k = c.size(); k-- > 1;) {
            carry = c[k] + carry * r;
            q[k - 1] = carry;
        }
        long long rem = c[0] + carry * r;
        if (rem == 0) {
            roots.push_back(r);
            c = std::move(q);
        } else {
            ++r;
        }
    }
    if (c.size() != 1)
        return std::nullopt;
    return roots;
}

/// Number of points of F_P^l off every hyperplane; nullopt when some form
/// does not reduce to a nonzero form mod P. For primes of good reduction this
/// equals chi(A, P). Heuristic only.
template <std::uint32_t P>
std::optional<long long> complement_point_count(const Arrangement& a) {
    const std::size_t l = static_cast<std::size_t>(a.rank());
    std::vector<std::vector<ModP<P>>> forms;
    for (const auto& h : a) {
        std::vector<ModP<P>> f;
        bool nonzero = false;
        for (const auto& c : h.form()) {
            auto r = reduce_mod<P>(c);
            if (!r)
                return std::nullopt;
            nonzero |= !r->is_zero();
            f.push_back(*r);
        }
        if (!nonzero)
            return std::nullopt;
        forms.push_back(std::move(f));
    }
    std::vector<std::uint32_t> x(l, 0);
    long long count = 0;
    while (true) {
        bool off = true;
        for (const auto& f : forms) {
            std::uint64_t v = 0;
            for (std::size_t i = 0; i < l; ++i)
                v += std::uint64_t{f[i].value()} * x[i];
            if (v % P == 0) {
                off = false;
                break;
            }
        }
        count += off;
        std::size_t i = 0;
        while (i < l && ++x[i] == P)
            x[i++] = 0;
        if (i == l)
            break;
    }
    return count;
}

} // namespace hypfree
