#pragma once

// Kernel bases of exact matrices via word-size primes.
//
// The reduced echelon form is computed modulo several primes p in which the
// radicand is a square, under both embeddings sqrt(d) -> +-r. Residues of
// the kernel basis are combined by CRT and lifted by rational
// reconstruction, and the candidate is accepted only after an exact check
// that it lies in the kernel. The candidate has the identity on the non-pivot
// columns, so the check also proves that the rank is the modular rank and
// that the pivots are the true ones; the output is then exactly what
// kernel_basis returns. If no candidate verifies, exact elimination runs.

#include <cstdint>
#include <optional>
#include <vector>

#include "matrix.hpp"

namespace hypfree {

namespace modular {

inline std::uint64_t pow_mod(std::uint64_t b, std::uint64_t e, std::uint64_t p) {
    std::uint64_t r = 1;
    b %= p;
    while (e) {
        if (e & 1)
            r = r * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return r;
}

inline bool is_prime(std::uint64_t n) {
    if (n < 2)
        return false;
    for (std::uint64_t q = 2; q * q <= n; ++q)
        if (n % q == 0)
            return false;
    return true;
}

/// Square root of a mod p by Tonelli-Shanks, or nullopt for a non-residue.
inline std::optional<std::uint64_t> sqrt_mod(std::uint64_t a, std::uint64_t p) {
    a %= p;
    if (a == 0)
        return 0;
    if (pow_mod(a, (p - 1) / 2, p) != 1)
        return std::nullopt;
    std::uint64_t q = p - 1, s = 0;
    while (q % 2 == 0) {
        q /= 2;
        ++s;
    }
    std::uint64_t z = 2;
    while (pow_mod(z, (p - 1) / 2, p) != p - 1)
        ++z;
    std::uint64_t m = s, c = pow_mod(z, q, p), t = pow_mod(a, q, p), r = pow_mod(a, (q + 1) / 2, p);
    while (t != 1) {
        std::uint64_t i = 0, t2 = t;
        while (t2 != 1) {
            t2 = t2 * t2 % p;
            ++i;
        }
        std::uint64_t b = c;
        for (std::uint64_t k = 0; k + 1 < m - i; ++k)
            b = b * b % p;
        m = i;
        c = b * b % p;
        t = t * c % p;
        r = r * b % p;
    }
    return r;
}

struct Prime {
    std::uint64_t p;
    std::uint64_t root; // sqrt(radicand) mod p, 0 over Q
};

/// Primes below 2^31 in decreasing order in which the radicand is a nonzero
/// square; the sequence is fixed, so results are reproducible.
class PrimeStream {
  public:
    explicit PrimeStream(std::int64_t radicand) : radicand_(radicand) {}
    Prime next() {
        while (true) {
            candidate_ -= 2;
            if (!is_prime(candidate_))
                continue;
            if (radicand_ == 0)
                return {candidate_, 0};
            if (static_cast<std::uint64_t>(radicand_) % candidate_ == 0)
                continue;
            if (auto r = sqrt_mod(static_cast<std::uint64_t>(radicand_), candidate_))
                return {candidate_, *r};
        }
    }

  private:
    std::int64_t radicand_;
    std::uint64_t candidate_ = (1ull << 31) + 1;
};

inline std::optional<std::uint64_t> reduce(const mpq_class& q, std::uint64_t p) {
    const std::uint64_t den = mpz_fdiv_ui(q.get_den().get_mpz_t(), p);
    if (den == 0)
        return std::nullopt;
    const std::uint64_t num = mpz_fdiv_ui(q.get_num().get_mpz_t(), p);
    return num * pow_mod(den, p - 2, p) % p;
}

/// Reduced echelon form mod p; returns the pivot columns and leaves the
/// reduced rows in m.
inline std::vector<std::size_t> rref_mod(std::vector<std::uint64_t>& m, std::size_t rows, std::size_t cols,
                                         std::uint64_t p) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols && row < rows; ++col) {
        std::size_t r = row;
        while (r < rows && m[r * cols + col] == 0)
            ++r;
        if (r == rows)
            continue;
        if (r != row)
            for (std::size_t c = 0; c < cols; ++c)
                std::swap(m[r * cols + c], m[row * cols + c]);
        const std::uint64_t inv = pow_mod(m[row * cols + col], p - 2, p);
        for (std::size_t c = col; c < cols; ++c)
            m[row * cols + c] = m[row * cols + c] * inv % p;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == row)
                continue;
            const std::uint64_t f = m[i * cols + col];
            if (f == 0)
                continue;
            for (std::size_t c = col; c < cols; ++c) {
                const std::uint64_t v = m[row * cols + c];
                if (v)
                    m[i * cols + c] = (m[i * cols + c] + (p - f) * v) % p;
            }
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

/// a / b with |a|, b <= sqrt(modulus / 2), congruent to x; nullopt if none.
inline std::optional<mpq_class> rational_reconstruct(const mpz_class& x, const mpz_class& modulus,
                                                     const mpz_class& bound) {
    mpz_class r0 = modulus, r1 = x, t0 = 0, t1 = 1;
    while (r1 > bound) {
        mpz_class q = r0 / r1;
        mpz_class r2 = r0 - q * r1;
        mpz_class t2 = t0 - q * t1;
        r0 = std::move(r1);
        r1 = std::move(r2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (t1 == 0 || abs(t1) > bound)
        return std::nullopt;
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), r1.get_mpz_t(), t1.get_mpz_t());
    if (g != 1)
        return std::nullopt;
    mpq_class out(r1, t1);
    out.canonicalize();
    return out;
}

/// Exact check that v (identity on the free columns) is in the kernel,
/// with everything cleared to integers first.
inline bool in_kernel(const ExactMatrix& m, const std::vector<Scalar>& v, std::int64_t radicand) {
    mpz_class den = 1;
    for (const auto& s : v) {
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), s.rational_part().get_den().get_mpz_t());
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), s.root_part().get_den().get_mpz_t());
    }
    std::vector<std::pair<mpz_class, mpz_class>> iv;
    std::vector<std::size_t> support;
    for (std::size_t j = 0; j < v.size(); ++j) {
        if (v[j].is_zero())
            continue;
        support.push_back(j);
        iv.emplace_back(mpz_class(v[j].rational_part() * den), mpz_class(v[j].root_part() * den));
    }
    for (std::size_t r = 0; r < m.rows(); ++r) {
        mpz_class rd = 1;
        for (std::size_t j : support) {
            const Scalar& e = m(r, j);
            mpz_lcm(rd.get_mpz_t(), rd.get_mpz_t(), e.rational_part().get_den().get_mpz_t());
            mpz_lcm(rd.get_mpz_t(), rd.get_mpz_t(), e.root_part().get_den().get_mpz_t());
        }
        mpz_class a = 0, b = 0;
        for (std::size_t k = 0; k < support.size(); ++k) {
            const Scalar& e = m(r, support[k]);
            if (e.is_zero())
                continue;
            mpz_class ea = mpz_class(e.rational_part() * rd), eb = mpz_class(e.root_part() * rd);
            const auto& [va, vb] = iv[k];
            a += ea * va;
            if (radicand != 0) {
                a += eb * vb * radicand;
                b += ea * vb + eb * va;
            }
        }
        if (a != 0 || b != 0)
            return false;
    }
    return true;
}

} // namespace modular

/// A lower bound on the rank from one prime (the larger of the two
/// embeddings). Equal to the rank unless the prime is unlucky.
inline std::size_t rank_lower_bound(const ExactMatrix& m) {
    const std::size_t rows = m.rows(), cols = m.cols();
    std::int64_t radicand = 0;
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c)
            if (!m(r, c).is_rational())
                radicand = m(r, c).radicand();
    modular::PrimeStream primes(radicand);
    for (int round = 0; round < 20; ++round) {
        const auto pr = primes.next();
        std::size_t best = 0;
        bool ok = true;
        for (int sign = 0; sign < (radicand != 0 ? 2 : 1) && ok; ++sign) {
            const std::uint64_t root = sign ? pr.p - pr.root : pr.root;
            std::vector<std::uint64_t> red(rows * cols, 0);
            for (std::size_t r = 0; r < rows && ok; ++r)
                for (std::size_t c = 0; c < cols; ++c) {
                    const Scalar& s = m(r, c);
                    if (s.is_zero())
                        continue;
                    auto a = modular::reduce(s.rational_part(), pr.p);
                    auto b = s.is_rational() ? std::optional<std::uint64_t>(0) : modular::reduce(s.root_part(), pr.p);
                    if (!a || !b) {
                        ok = false;
                        break;
                    }
                    red[r * cols + c] = (*a + *b * root) % pr.p;
                }
            if (ok)
                best = std::max(best, modular::rref_mod(red, rows, cols, pr.p).size());
        }
        if (ok)
            return best;
    }
    return 0;
}

/// Same result as kernel_basis(m), computed modulo primes when the matrix
/// is large enough for that to pay off.
inline KernelResult<Scalar> kernel_basis_modular(const ExactMatrix& m) {
    const std::size_t rows = m.rows(), cols = m.cols();
    if (rows * cols < 400)
        return kernel_basis(m);
    std::int64_t radicand = 0;
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c)
            if (!m(r, c).is_rational())
                radicand = m(r, c).radicand();

    modular::PrimeStream primes(radicand);
    std::vector<std::size_t> pivots;
    std::vector<std::size_t> free_cols;
    // residues[k][i]: rational (then root) part of kernel vector k at pivot i.
    std::vector<mpz_class> residue_a, residue_b;
    mpz_class modulus = 1;
    std::size_t used = 0, next_attempt = 1, hardest = 0;

    auto embed = [&](const modular::Prime& pr, bool negate, std::vector<std::uint64_t>& out) {
        const std::uint64_t p = pr.p;
        const std::uint64_t root = negate ? (p - pr.root) % p : pr.root;
        out.assign(rows * cols, 0);
        for (std::size_t r = 0; r < rows; ++r)
            for (std::size_t c = 0; c < cols; ++c) {
                const Scalar& s = m(r, c);
                if (s.is_zero())
                    continue;
                auto a = modular::reduce(s.rational_part(), p);
                if (!a)
                    return false;
                std::uint64_t v = *a;
                if (!s.is_rational()) {
                    auto b = modular::reduce(s.root_part(), p);
                    if (!b)
                        return false;
                    v = (v + *b * root) % p;
                }
                out[r * cols + c] = v;
            }
        return true;
    };

    for (int round = 0; round < 400; ++round) {
        const auto pr = primes.next();
        const std::uint64_t p = pr.p;
        std::vector<std::uint64_t> m1, m2;
        if (!embed(pr, false, m1))
            continue;
        auto piv1 = modular::rref_mod(m1, rows, cols, p);
        std::vector<std::size_t> piv2;
        if (radicand != 0) {
            if (!embed(pr, true, m2))
                continue;
            piv2 = modular::rref_mod(m2, rows, cols, p);
            if (piv2 != piv1)
                continue;
        }
        // A larger rank, or the same rank with earlier pivots, means the
        // earlier primes were unlucky.
        if (used > 0 && piv1 != pivots) {
            if (piv1.size() < pivots.size() || (piv1.size() == pivots.size() && piv1 > pivots))
                continue;
            used = 0;
        }
        if (used == 0) {
            pivots = piv1;
            free_cols.clear();
            std::vector<bool> is_pivot(cols, false);
            for (std::size_t q : pivots)
                is_pivot[q] = true;
            for (std::size_t c = 0; c < cols; ++c)
                if (!is_pivot[c])
                    free_cols.push_back(c);
            residue_a.assign(free_cols.size() * pivots.size(), 0);
            residue_b.assign(radicand != 0 ? residue_a.size() : 0, 0);
            modulus = 1;
            next_attempt = 1;
            hardest = 0;
        }
        // Modular rank never exceeds the true rank.
        if (free_cols.empty())
            return {cols, {}};
        if (pivots.empty())
            return kernel_basis(m);
        // Values of -rref(i, f) under both embeddings give a + b r and a - b r.
        const std::uint64_t inv2 = modular::pow_mod(2, p - 2, p);
        const std::uint64_t inv2r = radicand != 0 ? modular::pow_mod(2 * pr.root % p, p - 2, p) : 0;
        mpz_class inv_mod;
        mpz_class pz(static_cast<unsigned long>(p));
        mpz_class mod_mod_p = modulus % pz;
        mpz_invert(inv_mod.get_mpz_t(), mod_mod_p.get_mpz_t(), pz.get_mpz_t());
        auto crt = [&](mpz_class& x, std::uint64_t v) {
            // x' = x + modulus * ((v - x) / modulus mod p)
            const std::uint64_t xm = mpz_fdiv_ui(x.get_mpz_t(), p);
            const std::uint64_t diff = (v + p - xm) % p;
            const std::uint64_t k = diff * mpz_get_ui(inv_mod.get_mpz_t()) % p;
            x += modulus * static_cast<unsigned long>(k);
        };
        for (std::size_t k = 0; k < free_cols.size(); ++k)
            for (std::size_t i = 0; i < pivots.size(); ++i) {
                const std::uint64_t v1 = (p - m1[i * cols + free_cols[k]]) % p;
                const std::size_t slot = k * pivots.size() + i;
                if (radicand == 0) {
                    crt(residue_a[slot], v1);
                } else {
                    const std::uint64_t v2 = (p - m2[i * cols + free_cols[k]]) % p;
                    crt(residue_a[slot], (v1 + v2) % p * inv2 % p);
                    crt(residue_b[slot], (v1 + p - v2) % p * inv2r % p);
                }
            }
        modulus *= pz;
        ++used;
        if (used < next_attempt)
            continue;
        next_attempt = used + std::max<std::size_t>(1, used / 2);

        mpz_class bound = sqrt(modulus / 2);
        auto lift = [&](std::size_t slot, mpq_class& a, mpq_class& b) {
            auto ra = modular::rational_reconstruct(residue_a[slot], modulus, bound);
            if (!ra)
                return false;
            a = *ra;
            b = 0;
            if (radicand != 0) {
                auto rb = modular::rational_reconstruct(residue_b[slot], modulus, bound);
                if (!rb)
                    return false;
                b = *rb;
            }
            return true;
        };
        {
            mpq_class a, b;
            if (!lift(hardest, a, b))
                continue;
        }
        KernelResult<Scalar> out;
        out.rank = pivots.size();
        bool ok = true;
        for (std::size_t k = 0; k < free_cols.size() && ok; ++k) {
            std::vector<Scalar> v(cols, Scalar(0));
            v[free_cols[k]] = Scalar(1);
            for (std::size_t i = 0; i < pivots.size(); ++i) {
                const std::size_t slot = k * pivots.size() + i;
                mpq_class a, b;
                if (!lift(slot, a, b)) {
                    hardest = slot;
                    ok = false;
                    break;
                }
                v[pivots[i]] = radicand != 0 && sgn(b) != 0 ? Scalar(a, b, radicand) : Scalar(a);
            }
            if (ok && !modular::in_kernel(m, v, radicand))
                ok = false;
            if (ok)
                out.basis.push_back(std::move(v));
        }
        if (ok)
            return out;
    }
    return kernel_basis(m);
}

} // namespace hypfree
