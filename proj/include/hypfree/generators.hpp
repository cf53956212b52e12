#pragma once

// Minimal homogeneous generators of D(A), found degree by degree, and the
// graded relations among a generator list.

#include <algorithm>
#include <map>
#include <vector>

#include "derivation.hpp"

namespace hypfree {

struct GeneratorSet {
    std::vector<Derivation> generators;
    /// Every generator of degree <= complete_up_to has been found.
    int complete_up_to = -1;
    /// dim D(A)_d for every processed degree.
    std::map<int, std::size_t> hilbert;

    std::size_t size() const noexcept { return generators.size(); }
    std::vector<int> degrees() const {
        std::vector<int> out;
        for (const auto& g : generators)
            out.push_back(g.degree());
        return out;
    }
};

/// Processes one degree at a time so callers can stop as soon as the
/// generator degrees rule out what they are looking for.
///
/// At degree d the span of x^m * g over earlier generators g is built, and a
/// complement of it in D(A)_d is taken from the kernel basis by pivoting in
/// the fixed monomial order. At degree 1 the Euler derivation is offered
/// first so it is always a generator when A is nonempty.
class GeneratorBuilder {
  public:
    explicit GeneratorBuilder(Arrangement a) : a_(std::move(a)) {}

    const Arrangement& arrangement() const noexcept { return a_; }
    int next_degree() const noexcept { return result_.complete_up_to + 1; }
    const GeneratorSet& result() const noexcept { return result_; }

    /// Returns the generators found in the processed degree.
    std::vector<Derivation> step() {
        const int d = next_degree();
        const int l = a_.rank();
        std::vector<Derivation> space = derivation_space(a_, d);
        result_.hilbert[d] = space.size();

        SpanBuilder<Scalar> span(monomial_count(l, d) * static_cast<std::size_t>(l));
        for (const auto& g : result_.generators) {
            if (span.rank() == space.size())
                break;
            for (const auto& m : monomial_basis(l, d - g.degree())) {
                span.insert(g.shifted_vector(m));
                if (span.rank() == space.size())
                    break;
            }
        }

        std::vector<Derivation> fresh;
        auto offer = [&](const Derivation& t) {
            if (span.rank() < space.size() && span.insert(t.to_vector()))
                fresh.push_back(t);
        };
        if (d == 1 && !a_.empty())
            offer(Derivation::euler(l));
        for (const auto& t : space)
            offer(t);

        result_.generators.insert(result_.generators.end(), fresh.begin(), fresh.end());
        result_.complete_up_to = d;
        return fresh;
    }

  private:
    Arrangement a_;
    GeneratorSet result_;
};

/// Minimal generators of D(A) in degrees 0..d_max.
inline GeneratorSet minimal_generators(const Arrangement& a, int d_max) {
    GeneratorBuilder b(a);
    while (b.next_degree() <= d_max)
        b.step();
    return b.result();
}

/// A relation sum_i coefficients[i] * gens[i] = 0 of total degree `degree`.
/// Generators of degree above `degree` get a zero coefficient of degree 0.
struct Relation {
    int degree = 0;
    std::vector<HomPoly> coefficients;
};

/// Basis of the degree-e relations among `gens`: the kernel of
/// (a_i) -> sum a_i g_i from the sum of S_{e - deg g_i} to Der(S)_e.
inline std::vector<Relation> syzygies(const std::vector<Derivation>& gens, int e) {
    if (gens.empty())
        return {};
    const int l = gens[0].rank();
    const std::size_t rows = monomial_count(l, e) * static_cast<std::size_t>(l);
    std::vector<std::size_t> offsets;
    std::vector<std::vector<Exponent>> shifts;
    std::size_t cols = 0;
    for (const auto& g : gens) {
        offsets.push_back(cols);
        shifts.push_back(e >= g.degree() ? monomial_basis(l, e - g.degree()) : std::vector<Exponent>{});
        cols += shifts.back().size();
    }
    ExactMatrix m(rows, cols);
    for (std::size_t i = 0; i < gens.size(); ++i)
        for (std::size_t k = 0; k < shifts[i].size(); ++k) {
            auto v = gens[i].shifted_vector(shifts[i][k]);
            for (std::size_t r = 0; r < rows; ++r)
                if (!v[r].is_zero())
                    m(r, offsets[i] + k) = v[r];
        }
    std::vector<Relation> out;
    for (const auto& v : kernel_basis_modular(m).basis) {
        Relation rel;
        rel.degree = e;
        for (std::size_t i = 0; i < gens.size(); ++i) {
            int cd = e - gens[i].degree();
            if (cd < 0) {
                rel.coefficients.emplace_back(l, 0);
                continue;
            }
            std::span<const Scalar> part(v.data() + offsets[i], shifts[i].size());
            rel.coefficients.push_back(HomPoly::from_dense(l, cd, part));
        }
        out.push_back(std::move(rel));
    }
    return out;
}

/// sum_i coefficients[i] * gens[i]; zero exactly when the relation holds.
inline Derivation evaluate_relation(const Relation& rel, const std::vector<Derivation>& gens) {
    const int l = gens.at(0).rank();
    Derivation total = Derivation::zero(l, rel.degree);
    for (std::size_t i = 0; i < gens.size(); ++i) {
        if (rel.coefficients[i].is_zero())
            continue;
        total = total + rel.coefficients[i] * gens[i];
    }
    return total;
}

} // namespace hypfree
