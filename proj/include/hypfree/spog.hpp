#pragma once

// SPOG detection: l+1 minimal generators and a single relation sitting one
// degree above a generator (the level element).

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bpoly.hpp"
#include "freeness.hpp"

namespace hypfree {

struct SpogCertificate {
    /// Generator degrees without the level element, ascending.
    std::vector<int> poexp;
    int level = 0;
    /// Euler derivation first, level element last.
    std::vector<Derivation> generators;
    /// relation[i] multiplies generators[i]; the sum vanishes.
    std::vector<HomPoly> relation;
    int hilbert_checked_to = -1;

    int relation_degree() const noexcept { return level + 1; }
};

enum class SpogStatus { spog, not_spog, inconclusive };

struct SpogResult {
    SpogStatus status = SpogStatus::not_spog;
    std::string reason;
    std::optional<SpogCertificate> certificate;
    GeneratorSet generators;

    bool is_spog() const noexcept { return status == SpogStatus::spog; }
};

/// Hilbert function of coker(S[-r] -> sum S[-d_i]).
inline std::size_t spog_hilbert(int rank, const std::vector<int>& generator_degrees, int relation_degree, int d) {
    return free_hilbert(rank, generator_degrees, d) - monomial_count(rank, d - relation_degree);
}

namespace detail {

/// For l = 3: do the l+1 generators with single relation `rel` generate all
/// of D(A)? The generated module M has the resolution
/// 0 -> S[-e0] -> F -> M -> 0, so its maximal minors are a_i * G for one
/// polynomial G, and Q divides G. M equals D(A) exactly when G = c Q (same
/// determinant in codimension one) and M is reflexive, which for a module of
/// projective dimension one means the a_i have no common zero in P^2. The
/// level coefficient is linear, so that is a gcd test of binary forms on its
/// zero line.
inline std::optional<std::string> rank3_generation_gap(const Arrangement& a, const std::vector<Derivation>& gens,
                                                       const std::vector<HomPoly>& rel, std::size_t level_index) {
    std::vector<Derivation> others;
    for (std::size_t i = 0; i < gens.size(); ++i)
        if (i != level_index)
            others.push_back(gens[i]);
    HomPoly minor = saito_determinant(others);
    if (minor.is_zero())
        return "generators span rank below 3";
    const HomPoly& a_level = rel[level_index];
    auto c = exact_divide(minor, a_level * q_poly(a));
    if (!c || c->degree() != 0)
        return "maximal minors are not a constant multiple of Q(A)";
    Hyperplane zero_line(a_level.dense());
    Substitution on_line(restriction_images(zero_line));
    std::vector<HomPoly> restricted;
    for (std::size_t i = 0; i < rel.size(); ++i)
        if (i != level_index)
            restricted.push_back(on_line.apply(rel[i]));
    if (binary_forms_share_factor(restricted))
        return "relation coefficients have a common zero";
    return std::nullopt;
}

} // namespace detail

/// Decides SPOG from the minimal generators, computed degree by degree.
///
/// Once exactly l+1 generators are known, the relation module is the kernel
/// of a map between free modules of ranks l+1 and l, so it is reflexive of
/// rank one and hence free: a single relation, in the first degree where any
/// appears. In rank 3 the search stops there and the generation test above
/// settles completeness; in other ranks generators are sought up to d_max
/// (|A| by default) and completeness is only known up to that degree.
inline SpogResult spog_check(const Arrangement& a, int d_max = -1) {
    SpogResult out;
    const int l = a.rank();
    if (d_max < 0)
        d_max = static_cast<int>(a.size());

    if (is_free(a).free) {
        out.reason = "free";
        return out;
    }
    const std::size_t want = static_cast<std::size_t>(l) + 1;
    GeneratorBuilder builder(a);
    std::vector<Relation> rel;
    int e0 = -1, next_relation_degree = -1;
    while (builder.next_degree() <= d_max) {
        builder.step();
        const int d = builder.result().complete_up_to;
        const auto& gens = builder.result().generators;
        if (gens.size() > want) {
            out.generators = builder.result();
            out.reason = "at least " + std::to_string(gens.size()) + " minimal generators";
            return out;
        }
        if (gens.size() < want)
            continue;
        if (next_relation_degree < 0)
            next_relation_degree = gens.front().degree() + 1;
        for (; next_relation_degree <= d + 1 && rel.empty(); ++next_relation_degree) {
            rel = syzygies(gens, next_relation_degree);
            e0 = next_relation_degree;
        }
        if (!rel.empty())
            break;
    }
    out.generators = builder.result();
    const auto& gens = out.generators.generators;
    if (rel.empty()) {
        out.status = SpogStatus::inconclusive;
        out.reason = std::to_string(gens.size()) + " generators and no relation up to degree " + std::to_string(d_max);
        return out;
    }
    if (!(gens[0] == Derivation::euler(l))) {
        out.reason = "Euler derivation is not a minimal generator";
        return out;
    }
    if (rel.size() > 1) {
        out.reason = std::to_string(rel.size()) + " relations in degree " + std::to_string(e0);
        return out;
    }
    auto degrees = out.generators.degrees();
    const int level = e0 - 1;
    std::optional<std::size_t> level_index;
    for (std::size_t i = 1; i < gens.size(); ++i)
        if (degrees[i] == level && !rel[0].coefficients[i].is_zero())
            level_index = i;
    if (!level_index) {
        out.reason = "relation in degree " + std::to_string(e0) + " has no generator one degree below";
        return out;
    }

    if (l == 3) {
        if (auto gap = detail::rank3_generation_gap(a, gens, rel[0].coefficients, *level_index)) {
            out.reason = "a further generator exists: " + *gap;
            return out;
        }
    } else {
        while (builder.next_degree() <= d_max)
            if (!builder.step().empty()) {
                out.generators = builder.result();
                out.reason = "a generator in degree " + std::to_string(out.generators.complete_up_to);
                return out;
            }
        out.generators = builder.result();
    }

    SpogCertificate cert;
    cert.level = level;
    for (std::size_t i = 0; i < gens.size(); ++i) {
        if (i == *level_index)
            continue;
        cert.generators.push_back(gens[i]);
        cert.relation.push_back(rel[0].coefficients[i]);
        cert.poexp.push_back(degrees[i]);
    }
    cert.generators.push_back(gens[*level_index]);
    cert.relation.push_back(rel[0].coefficients[*level_index]);
    std::sort(cert.poexp.begin(), cert.poexp.end());

    std::vector<int> all_degrees = cert.poexp;
    all_degrees.push_back(level);
    cert.hilbert_checked_to = *std::max_element(all_degrees.begin(), all_degrees.end()) + 2;
    // Beyond the processed degrees: the generators span a module whose
    // relations are the multiples of the one relation (the relation module
    // is free of rank one), so dim D(A)_d is at least the expected value,
    // and a modular rank bounds it from above. Exact elimination only runs
    // when the two bounds do not meet.
    for (int d = 0; d <= cert.hilbert_checked_to; ++d) {
        const std::size_t expected = spog_hilbert(l, all_degrees, e0, d);
        auto it = out.generators.hilbert.find(d);
        std::size_t dim = 0;
        if (it != out.generators.hilbert.end()) {
            dim = it->second;
        } else {
            ExactMatrix m = tangency_constraints(a, d);
            dim = m.cols() - rank_lower_bound(m);
            if (dim != expected)
                dim = derivation_dimension(a, d);
        }
        if (dim != expected) {
            if (l == 3 || d <= out.generators.complete_up_to)
                throw std::logic_error("spog_check: Hilbert function disagrees with the resolution in degree " +
                                       std::to_string(d));
            out.reason = "a generator above degree " + std::to_string(d_max);
            return out;
        }
    }
    out.status = SpogStatus::spog;
    out.certificate = std::move(cert);
    return out;
}

/// Generators of D(A): the basis when A is free, the SPOG generators when
/// A is SPOG, otherwise the minimal generators up to d_max (|A| when
/// negative), which may be incomplete.
struct KnownGenerators {
    std::vector<Derivation> generators;
    bool complete = false;
    std::string source;
};

inline KnownGenerators known_generators(const Arrangement& a, int d_max = -1) {
    KnownGenerators out;
    auto free = is_free(a);
    if (free.free) {
        out.generators = free.certificate->basis;
        out.complete = true;
        out.source = "free basis";
        return out;
    }
    auto spog = spog_check(a, d_max);
    if (spog.is_spog()) {
        out.generators = spog.certificate->generators;
        out.complete = a.rank() == 3;
        out.source = "SPOG generators";
        return out;
    }
    if (d_max < 0)
        d_max = static_cast<int>(a.size());
    auto gens = spog.generators.complete_up_to >= d_max ? spog.generators : minimal_generators(a, d_max);
    out.generators = gens.generators;
    out.source = "minimal generators up to degree " + std::to_string(d_max);
    return out;
}

/// Level of A minus H when that deletion is not free: |A| - 1 - |A^H|.
inline int predict_deletion_level(const Arrangement& a, std::size_t index) {
    if (!is_free(a).free)
        throw std::invalid_argument("predict_deletion_level: A is not free");
    return static_cast<int>(a.size()) - 1 - static_cast<int>(restrict_to(a, index).size());
}

/// Level of A' plus H when that addition is not free: |A^H| - 1. Rank 3 only.
inline int predict_addition_level(const Arrangement& a_prime, const Hyperplane& h) {
    if (a_prime.rank() != 3)
        throw std::invalid_argument("predict_addition_level: only stated for rank 3");
    if (a_prime.contains(h))
        throw std::invalid_argument("predict_addition_level: H already belongs to A'");
    if (!is_free(a_prime).free)
        throw std::invalid_argument("predict_addition_level: A' is not free");
    return static_cast<int>(restrict_to(a_prime, h).size()) - 1;
}

struct SpogDivision {
    bool ok = false;
    std::string reason;
    std::vector<Derivation> basis;
    std::size_t s = 0, t = 0, dropped = 0;
    Scalar saito_constant;
};

namespace detail {

/// theta_x + sum_{j != x} f_j gens[j] divisible by alpha_H, for some
/// homogeneous f_j; returns the quotient.
inline std::optional<Derivation> make_divisible(const std::vector<Derivation>& gens, std::size_t x,
                                                const Hyperplane& h) {
    const int l = h.dim();
    const int d = gens[x].degree();
    Substitution on_h(restriction_images(h));
    const std::size_t block = monomial_count(l - 1, d);
    auto restricted = [&](const Derivation& t) {
        std::vector<Scalar> v(block * static_cast<std::size_t>(l));
        for (int i = 0; i < l; ++i) {
            auto dense = on_h.apply(t[static_cast<std::size_t>(i)]).dense();
            std::copy(dense.begin(), dense.end(), v.begin() + static_cast<std::ptrdiff_t>(i * block));
        }
        return v;
    };
    std::vector<Derivation> columns;
    for (std::size_t j = 0; j < gens.size(); ++j) {
        if (j == x || gens[j].degree() > d)
            continue;
        for (const auto& m : monomial_basis(l, d - gens[j].degree()))
            columns.push_back(HomPoly::monomial(m) * gens[j]);
    }
    auto target = restricted(gens[x]);
    for (auto& v : target)
        v = -v;
    ExactMatrix m(target.size(), columns.size());
    for (std::size_t c = 0; c < columns.size(); ++c) {
        auto v = restricted(columns[c]);
        for (std::size_t r = 0; r < v.size(); ++r)
            m(r, c) = v[r];
    }
    auto sol = solve(m, target);
    if (!sol)
        return std::nullopt;
    Derivation modified = gens[x];
    for (std::size_t c = 0; c < columns.size(); ++c)
        if (!(*sol)[c].is_zero())
            modified = modified + (*sol)[c] * columns[c];
    return modified.divide_by(h.as_poly());
}

} // namespace detail

/// Given a SPOG certificate for A whose deletion at H is free, finds two
/// generators s < t that become divisible by alpha_H after adding
/// S-combinations of the other generators, and returns the basis of D(A')
/// obtained by dividing them and dropping one generator.
inline SpogDivision spog_to_free_basis(const Arrangement& a, const SpogCertificate& cert, std::size_t index) {
    SpogDivision out;
    const Hyperplane& h = a[index];
    const Arrangement a_prime = a.without(index);
    if (!is_free(a_prime).free) {
        out.reason = "deletion is not free";
        return out;
    }
    const auto& gens = cert.generators;
    const std::size_t n = gens.size();
    for (std::size_t p = n; p-- > 1;) {
        for (std::size_t s = 1; s < n; ++s) {
            if (s == p)
                continue;
            for (std::size_t t = s + 1; t < n; ++t) {
                if (t == p)
                    continue;
                auto ds = detail::make_divisible(gens, s, h);
                if (!ds)
                    continue;
                auto dt = detail::make_divisible(gens, t, h);
                if (!dt)
                    continue;
                std::vector<Derivation> basis;
                for (std::size_t i = 0; i < n; ++i) {
                    if (i == p)
                        continue;
                    basis.push_back(i == s ? *ds : i == t ? *dt : gens[i]);
                }
                auto check = saito_check(a_prime, basis);
                if (check.ok) {
                    out.ok = true;
                    out.basis = std::move(basis);
                    out.s = s;
                    out.t = t;
                    out.dropped = p;
                    out.saito_constant = check.constant;
                    return out;
                }
            }
        }
    }
    out.reason = "no pair of generators becomes divisible by alpha_H";
    return out;
}

inline SpogDivision spog_to_free_basis(const Arrangement& a, std::size_t index) {
    auto r = spog_check(a);
    if (!r.is_spog()) {
        SpogDivision out;
        out.reason = "not SPOG: " + r.reason;
        return out;
    }
    return spog_to_free_basis(a, *r.certificate, index);
}

} // namespace hypfree
