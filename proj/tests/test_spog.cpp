#include <catch2/catch_amalgamated.hpp>

#include <hypfree/bpoly.hpp>
#include <hypfree/families.hpp>
#include <hypfree/nt.hpp>
#include <hypfree/spog.hpp>

#include <random>

#include "support.hpp"

using namespace hypfree;
using test_support::boolean;
using test_support::dimension_by_evaluation;
using test_support::rational;

namespace {

std::vector<Scalar> cross(const std::vector<Scalar>& u, const std::vector<Scalar>& v) {
    return {u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]};
}

bool is_zero_vector(const std::vector<Scalar>& v) {
    return std::all_of(v.begin(), v.end(), [](const Scalar& s) { return s.is_zero(); });
}

// Rank 3: the planes of A' meet H in lines through the origin; |A'^H| is the
// number of distinct lines, i.e. of pairwise non-proportional cross products.
std::size_t restriction_count(const Arrangement& a_prime, const Hyperplane& h) {
    std::vector<std::vector<Scalar>> lines;
    for (const auto& k : a_prime) {
        auto d = cross(h.form(), k.form());
        bool seen = false;
        for (const auto& e : lines)
            seen |= is_zero_vector(cross(d, e));
        if (!seen)
            lines.push_back(std::move(d));
    }
    return lines.size();
}

// Homogeneous resultant of two binary forms, as the Sylvester rank test.
bool resultant_vanishes(const HomPoly& p, const HomPoly& q) {
    const int m = p.degree(), n = q.degree();
    auto coeffs = [](const HomPoly& f) {
        std::vector<Scalar> c(static_cast<std::size_t>(f.degree()) + 1, Scalar(0));
        for (const auto& [e, v] : f.terms())
            c[static_cast<std::size_t>(e[0])] = v;
        return c;
    };
    auto cp = coeffs(p), cq = coeffs(q);
    const std::size_t size = static_cast<std::size_t>(m + n);
    ExactMatrix s(size, size);
    for (int r = 0; r < n; ++r)
        for (int k = 0; k <= m; ++k)
            s(static_cast<std::size_t>(r), static_cast<std::size_t>(r + k)) = cp[static_cast<std::size_t>(k)];
    for (int r = 0; r < m; ++r)
        for (int k = 0; k <= n; ++k)
            s(static_cast<std::size_t>(n + r), static_cast<std::size_t>(r + k)) = cq[static_cast<std::size_t>(k)];
    return matrix_rank(s) < size;
}

HomPoly random_binary_form(std::mt19937_64& rng, int degree) {
    std::uniform_int_distribution<int> c(-3, 3);
    std::vector<Scalar> dense(static_cast<std::size_t>(degree) + 1);
    for (auto& v : dense)
        v = Scalar(c(rng));
    return HomPoly::from_dense(2, degree, dense);
}

// dim of the degree-d part of the module generated by gens.
std::size_t generated_dimension(int rank, const std::vector<Derivation>& gens, int d) {
    SpanBuilder<Scalar> span(monomial_count(rank, d) * static_cast<std::size_t>(rank));
    for (const auto& g : gens)
        if (g.degree() <= d)
            for (const auto& m : monomial_basis(rank, d - g.degree()))
                span.insert(g.shifted_vector(m));
    return span.rank();
}

// Everything a SPOG certificate promises, checked without spog_check.
void check_spog_certificate(const Arrangement& a, const SpogCertificate& cert) {
    const int l = a.rank();
    REQUIRE(cert.generators.size() == static_cast<std::size_t>(l) + 1);
    REQUIRE(cert.relation.size() == cert.generators.size());
    CHECK(cert.generators.front() == Derivation::euler(l));
    CHECK(cert.generators.back().degree() == cert.level);
    for (const auto& g : cert.generators)
        CHECK(in_module(g, a));

    Derivation sum = Derivation::zero(l, cert.level + 1);
    for (std::size_t i = 0; i < cert.generators.size(); ++i) {
        const auto& c = cert.relation[i];
        if (c.is_zero())
            continue;
        CHECK(c.degree() + cert.generators[i].degree() == cert.level + 1);
        sum = sum + c * cert.generators[i];
    }
    CHECK(sum.is_zero());
    CHECK(cert.relation.back().degree() == 1);
    CHECK_FALSE(cert.relation.back().is_zero());

    int total = 0;
    for (int e : cert.poexp)
        total += e;
    CHECK(total == static_cast<int>(a.size()) + 1);

    std::vector<int> degrees = cert.poexp;
    degrees.push_back(cert.level);
    for (int d = 0; d <= cert.level + 2; ++d) {
        const std::size_t dim = dimension_by_evaluation(a, d);
        CHECK(dim == spog_hilbert(l, degrees, cert.level + 1, d));
        CHECK(generated_dimension(l, cert.generators, d) == dim);
    }
}

Arrangement pad_with_last_coordinate(const Arrangement& a) {
    std::vector<std::vector<Scalar>> forms;
    for (const auto& h : a) {
        auto f = h.form();
        f.emplace_back(0);
        forms.push_back(std::move(f));
    }
    std::vector<Scalar> last(static_cast<std::size_t>(a.rank()) + 1, Scalar(0));
    last.back() = Scalar(1);
    forms.push_back(last);
    return Arrangement::from_forms(a.rank() + 1, forms, a.radicand());
}

// A rational SPOG on five planes found by a small search: the deletion of a
// free six-plane arrangement.
Arrangement five_plane_spog() { return rational(3, {{1, -1, 0}, {1, -1, 1}, {1, 0, -1}, {1, 0, 0}, {1, 0, 1}}); }

std::vector<Hyperplane> outside(const Arrangement& super, const Arrangement& sub) {
    std::vector<Hyperplane> out;
    for (const auto& h : super)
        if (!sub.contains(h))
            out.push_back(h);
    return out;
}

} // namespace

TEST_CASE("B polynomial on small examples", "[bpoly]") {
    const Hyperplane x1({Scalar(1), Scalar(0), Scalar(0)});
    auto b = b_polynomial(rational(3, {{0, 1, 0}, {0, 0, 1}}), x1);
    CHECK(b.degree == 0);

    // x1 and x2 both restrict to the same line on x1 = x2.
    const Hyperplane diag({Scalar(1), Scalar(-1), Scalar(0)});
    auto b2 = b_polynomial(rational(3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}), diag);
    CHECK(b2.degree == 1);
    CHECK(b2.poly.vars() == 3);
    CHECK(b2.restricted.vars() == 2);

    CHECK_THROWS_AS(b_polynomial(boolean(3), x1), std::invalid_argument);
    CHECK_THROWS_AS(b_polynomial(Arrangement::from_forms(1, {{Scalar(1)}}), Hyperplane({Scalar(2)})),
                    std::invalid_argument);
}

TEST_CASE("B polynomial of a pentagon deletion has degree 5", "[bpoly]") {
    auto p = pentagon();
    for (std::size_t i = 0; i < p.super.size(); ++i) {
        auto a_prime = p.super.without(i);
        auto b = b_polynomial(a_prime, p.super[i]);
        CHECK(b.degree == static_cast<int>(a_prime.size() - restriction_count(a_prime, p.super[i])));
        CHECK(b.degree == 5);
    }
}

TEST_CASE("deg B matches the count of restricted lines", "[bpoly][property]") {
    std::mt19937_64 rng(11);
    int checked = 0;
    for (int trial = 0; trial < 60; ++trial) {
        auto a = test_support::random_forms(rng, 3, 7, 2);
        const Hyperplane h = a[a.size() - 1];
        auto a_prime = a.without(a.size() - 1);
        if (a_prime.empty())
            continue;
        auto b = b_polynomial(a_prime, h);
        CHECK(b.degree == static_cast<int>(a_prime.size() - restriction_count(a_prime, h)));
        // B does not involve the pivot, and B times Q(A^H) agrees with Q(A') on H.
        for (const auto& [e, c] : b.poly.terms())
            CHECK(e[h.pivot()] == 0);
        Substitution on_h(restriction_images(h));
        CHECK(b.restricted * q_poly(restrict_to(a_prime, h)) == on_h.apply(q_poly(a_prime)));
        ++checked;
    }
    CHECK(checked > 40);
}

TEST_CASE("minimal generators satisfy the B contract", "[bpoly][property]") {
    std::mt19937_64 rng(12);
    int free_cases = 0;
    for (int trial = 0; trial < 40; ++trial) {
        auto a = test_support::random_forms(rng, 3, 6, 1);
        std::uniform_int_distribution<std::size_t> pick(0, a.size() - 1);
        const std::size_t i = pick(rng);
        auto a_prime = a.without(i);
        auto b = b_polynomial(a_prime, a[i]);
        auto report = verify_b_polynomial(a_prime, a[i], b);
        INFO(a_prime.key() << " + " << a[i].to_string() << ": " << report.failure);
        CHECK(report.ok);
        CHECK(report.generators_checked > 0);
        free_cases += is_free(a_prime).free;
    }
    CHECK(free_cases > 0);
}

TEST_CASE("B decomposition and its failure", "[bpoly]") {
    const auto a_prime = rational(3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
    const Hyperplane h({Scalar(1), Scalar(-1), Scalar(0)});
    auto b = b_polynomial(a_prime, h);
    const Derivation theta({HomPoly::variable(3, 0) * HomPoly::variable(3, 0), HomPoly(3, 2), HomPoly(3, 2)});
    auto dec = b_decompose(theta, h, b);
    REQUIRE(dec);
    CHECK(theta.apply(h) == dec->f * h.as_poly() + dec->g * b.poly);
    // d/dz applied to x1 - x2 gives 0; d/dx1 of a quadratic on x1 = x2 is not a multiple of B.
    const Derivation bad({HomPoly::variable(3, 2) * HomPoly::variable(3, 2), HomPoly(3, 2), HomPoly(3, 2)});
    CHECK_FALSE(satisfies_b_contract(bad, h, b));
    auto report = check_b_contract(h, b, {bad});
    CHECK_FALSE(report.ok);
    CHECK_FALSE(report.failure.empty());
}

TEST_CASE("binary form gcd agrees with the resultant", "[bpoly][property]") {
    std::mt19937_64 rng(13);
    std::uniform_int_distribution<int> deg(1, 4);
    int shared = 0;
    for (int trial = 0; trial < 300; ++trial) {
        auto p = random_binary_form(rng, deg(rng));
        auto q = random_binary_form(rng, deg(rng));
        if (trial % 3 == 0) {
            auto common = random_binary_form(rng, 1);
            p = p * common;
            q = q * common;
        }
        if (p.is_zero() || q.is_zero())
            continue;
        const bool expected = resultant_vanishes(p, q);
        shared += expected;
        CHECK(binary_forms_share_factor({p, q}) == expected);
        CHECK(coprime_binary_forms(p, q) == !expected);
    }
    CHECK(shared > 50);
}

TEST_CASE("binary forms: edge cases", "[bpoly]") {
    const auto x = HomPoly::variable(2, 0), y = HomPoly::variable(2, 1);
    CHECK(binary_forms_share_factor({x * y, y * (x + y), y * y}));
    // Pairwise common factors but none shared by all three.
    CHECK_FALSE(binary_forms_share_factor({x * y, y * (x + y), x * (x + y)}));
    // Common root at infinity: both divisible by y.
    CHECK(binary_forms_share_factor({x * y, y * y}));
    CHECK_FALSE(binary_forms_share_factor({x, HomPoly::constant(2, Scalar(3))}));
    CHECK(binary_forms_share_factor({HomPoly(2, 2), x * x}));
    CHECK(binary_forms_share_factor({HomPoly(2, 1)}));
    CHECK_FALSE(coprime_binary_forms(HomPoly(2, 1), x));
    CHECK_THROWS_AS(binary_forms_share_factor({HomPoly::variable(3, 0)}), std::invalid_argument);
}

TEST_CASE("NT of the Boolean basis", "[nt]") {
    const auto a = boolean(3);
    std::vector<Derivation> basis;
    for (int i = 0; i < 3; ++i) {
        std::vector<HomPoly> c(3, HomPoly(3, 1));
        c[static_cast<std::size_t>(i)] = HomPoly::variable(3, i);
        basis.emplace_back(c);
    }
    CHECK(nt(a, basis, Hyperplane({Scalar(1), Scalar(1), Scalar(0)})) == 2);
    CHECK(nt(a, basis, Hyperplane({Scalar(1), Scalar(1), Scalar(1)})) == 3);
    CHECK(nt(a, basis, a[0]) == 0);
    basis.pop_back();
    CHECK_THROWS_AS(nt(a, basis, a[0]), std::invalid_argument);
}

TEST_CASE("SNT of the Boolean arrangement against a brute-force basis search", "[nt]") {
    const auto a = boolean(3);
    const Hyperplane h({Scalar(1), Scalar(1), Scalar(1)});
    auto snt = snt_upper(a, h);
    CHECK(snt.s == 2);
    CHECK(nt(a, snt.basis, h) == 2);

    // Every basis of D(A) is M applied to (x_i d_i) for invertible M; scan
    // the ones with entries in {-1, 0, 1}.
    std::vector<Derivation> diag;
    for (int i = 0; i < 3; ++i) {
        std::vector<HomPoly> c(3, HomPoly(3, 1));
        c[static_cast<std::size_t>(i)] = HomPoly::variable(3, i);
        diag.emplace_back(c);
    }
    int best = 4;
    for (int code = 0; code < 19683; ++code) {
        int m[9];
        for (int k = 0, c = code; k < 9; ++k, c /= 3)
            m[k] = c % 3 - 1;
        const int det = m[0] * (m[4] * m[8] - m[5] * m[7]) - m[1] * (m[3] * m[8] - m[5] * m[6]) +
                        m[2] * (m[3] * m[7] - m[4] * m[6]);
        if (det == 0)
            continue;
        int count = 0;
        for (int r = 0; r < 3; ++r) {
            Derivation t = Derivation::zero(3, 1);
            for (int c = 0; c < 3; ++c)
                t = t + Scalar(m[3 * r + c]) * diag[static_cast<std::size_t>(c)];
            count += !t.is_tangent(h);
        }
        best = std::min(best, count);
    }
    CHECK(best == snt.s);
}

TEST_CASE("SNT errors", "[nt]") {
    CHECK_THROWS_AS(snt_upper(boolean(3), boolean(3)[0]), std::invalid_argument);
    auto generic = rational(3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 1}});
    CHECK_THROWS_AS(snt_upper(generic, Hyperplane({Scalar(1), Scalar(2), Scalar(3)})), std::invalid_argument);
}

TEST_CASE("SNT is 1 exactly when the addition is free", "[nt][property]") {
    std::mt19937_64 rng(14);
    std::uniform_int_distribution<int> c(-1, 1);
    int free_additions = 0, other = 0;
    for (int trial = 0; trial < 80 && free_additions + other < 40; ++trial) {
        auto a_prime = test_support::random_forms(rng, 3, 5, 1);
        if (!is_essential(a_prime) || !is_free(a_prime).free)
            continue;
        std::vector<Scalar> f{Scalar(c(rng)), Scalar(c(rng)), Scalar(c(rng))};
        if (is_zero_vector(f))
            continue;
        const Hyperplane h(f);
        if (a_prime.contains(h))
            continue;
        auto snt = snt_upper(a_prime, h);
        CHECK(snt.s >= 1);
        CHECK(nt(a_prime, snt.basis, h) == snt.s);
        const bool free = is_free(a_prime.with(h)).free;
        CHECK((snt.s == 1) == free);
        (free ? free_additions : other)++;
    }
    CHECK(free_additions > 0);
    CHECK(other > 0);
}

TEST_CASE("SPOG: pentagon deletions", "[spog]") {
    auto p = pentagon();
    const auto a = p.super.without(0);
    auto r = spog_check(a);
    REQUIRE(r.is_spog());
    const auto& cert = *r.certificate;
    CHECK(cert.poexp == std::vector<int>{1, 5, 5});
    CHECK(cert.level == 5);
    CHECK(cert.level == predict_deletion_level(p.super, 0));
    check_spog_certificate(a, cert);
}

TEST_CASE("SPOG: additions to the smaller pentagon arrangement", "[spog]") {
    auto p = pentagon();
    for (const auto& h : outside(p.super, p.sub)) {
        const auto a = p.sub.with(h);
        auto r = spog_check(a);
        REQUIRE(r.is_spog());
        CHECK(r.certificate->poexp == std::vector<int>{1, 4, 4});
        CHECK(r.certificate->level == predict_addition_level(p.sub, h));
        CHECK(r.certificate->level == 4);
        check_spog_certificate(a, *r.certificate);

        auto snt = snt_upper(p.sub, h);
        CHECK(snt.s == 2);
        CHECK(snt_consistent_with_generators(snt.s, static_cast<int>(r.certificate->generators.size()), 3));
        auto b = b_polynomial(p.sub, h);
        CHECK(b.degree == 2);
        CHECK(check_b_contract(h, b, snt.basis).ok);
    }
}

TEST_CASE("SPOG: negative and rejected inputs", "[spog]") {
    auto free_result = spog_check(test_support::coned_a2());
    CHECK(free_result.status == SpogStatus::not_spog);
    CHECK(free_result.reason == "free");

    auto generic = rational(3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 1}, {1, 2, 3}});
    auto r = spog_check(generic);
    CHECK(r.status == SpogStatus::not_spog);
    CHECK_FALSE(r.certificate);

    // Too small a search bound leaves the question open.
    auto tight = spog_check(five_plane_spog(), 1);
    CHECK(tight.status == SpogStatus::inconclusive);

    CHECK_THROWS_AS(predict_deletion_level(generic, 0), std::invalid_argument);
    CHECK_THROWS_AS(predict_addition_level(generic, Hyperplane({Scalar(1), Scalar(-1), Scalar(0)})),
                    std::invalid_argument);
    CHECK_THROWS_AS(predict_addition_level(boolean(3), boolean(3)[0]), std::invalid_argument);
    CHECK_THROWS_AS(predict_addition_level(boolean(4), Hyperplane({Scalar(1), Scalar(1), Scalar(0), Scalar(0)})),
                    std::invalid_argument);
}

TEST_CASE("SPOG in rank 4 via the bounded search", "[spog]") {
    const auto a = pad_with_last_coordinate(five_plane_spog());
    auto r = spog_check(a);
    REQUIRE(r.is_spog());
    auto r3 = spog_check(five_plane_spog());
    REQUIRE(r3.is_spog());
    CHECK(r.certificate->level == r3.certificate->level);
    check_spog_certificate(a, *r.certificate);
}

TEST_CASE("deleting from a free arrangement gives free or SPOG at the predicted level", "[spog][property]") {
    std::mt19937_64 rng(15);
    int spogs = 0, frees = 0;
    for (int trial = 0; trial < 120 && spogs < 12; ++trial) {
        auto a = test_support::random_forms(rng, 3, 6, 1);
        if (!is_essential(a) || !is_free(a).free)
            continue;
        for (std::size_t i = 0; i < a.size(); ++i) {
            auto d = a.without(i);
            if (is_free(d).free) {
                ++frees;
                continue;
            }
            auto r = spog_check(d);
            INFO(d.key() << ": " << r.reason);
            REQUIRE(r.is_spog());
            CHECK(r.certificate->level == predict_deletion_level(a, i));
            CHECK(r.certificate->poexp == is_free(a).exponents());
            check_spog_certificate(d, *r.certificate);
            ++spogs;
        }
    }
    CHECK(spogs >= 5);
    CHECK(frees > 0);
}

TEST_CASE("adding to a free arrangement gives free or SPOG at the predicted level", "[spog][property]") {
    std::mt19937_64 rng(16);
    std::uniform_int_distribution<int> c(-2, 2);
    int spogs = 0;
    for (int trial = 0; trial < 200 && spogs < 10; ++trial) {
        auto a_prime = test_support::random_forms(rng, 3, 5, 1);
        if (!is_essential(a_prime) || !is_free(a_prime).free)
            continue;
        std::vector<Scalar> f{Scalar(c(rng)), Scalar(c(rng)), Scalar(c(rng))};
        if (is_zero_vector(f))
            continue;
        const Hyperplane h(f);
        if (a_prime.contains(h))
            continue;
        const auto a = a_prime.with(h);
        if (is_free(a).free)
            continue;
        auto r = spog_check(a);
        INFO(a.key() << ": " << r.reason);
        REQUIRE(r.is_spog());
        CHECK(r.certificate->level == predict_addition_level(a_prime, h));
        const auto e = is_free(a_prime).exponents();
        CHECK(r.certificate->poexp == std::vector<int>{1, e[1] + 1, e[2] + 1});
        check_spog_certificate(a, *r.certificate);
        ++spogs;
    }
    CHECK(spogs >= 5);
}

TEST_CASE("SNT 2 additions: the coprime pair and the generators it produces", "[spog][nt]") {
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<int> c(-2, 2);
    auto run = [](const Arrangement& a_prime, const Hyperplane& h) {
        auto snt = snt_upper(a_prime, h);
        if (snt.s != 2)
            return false;
        const auto a = a_prime.with(h);
        auto b = b_polynomial(a_prime, h);
        std::vector<std::size_t> moving;
        for (std::size_t i = 0; i < snt.basis.size(); ++i)
            if (!snt.basis[i].is_tangent(h))
                moving.push_back(i);
        REQUIRE(moving.size() == 2);
        const auto& ti = snt.basis[moving[0]];
        const auto& tj = snt.basis[moving[1]];
        auto di = b_decompose(ti, h, b);
        auto dj = b_decompose(tj, h, b);
        REQUIRE(di);
        REQUIRE(dj);
        Substitution on_h(restriction_images(h));
        CHECK(coprime_binary_forms(on_h.apply(di->g), on_h.apply(dj->g)));

        std::vector<Derivation> gens;
        for (std::size_t k = 0; k < snt.basis.size(); ++k)
            if (k != moving[0] && k != moving[1])
                gens.push_back(snt.basis[k]);
        gens.push_back(h.as_poly() * ti);
        gens.push_back(h.as_poly() * tj);
        const Derivation combo = dj->g * ti - di->g * tj;
        gens.push_back(combo);
        for (const auto& g : gens)
            CHECK(in_module(g, a));

        const int level = ti.degree() + tj.degree() - static_cast<int>(a_prime.size()) +
                          static_cast<int>(restrict_to(a_prime, h).size());
        CHECK(combo.degree() == level);
        auto r = spog_check(a);
        REQUIRE(r.is_spog());
        CHECK(r.certificate->level == level);
        for (int d = 0; d <= level + 2; ++d)
            CHECK(generated_dimension(3, gens, d) == derivation_dimension(a, d));
        return true;
    };
    auto p = pentagon();
    for (const auto& h : outside(p.super, p.sub))
        CHECK(run(p.sub, h));
    int seen = 0;
    for (int trial = 0; trial < 300 && seen < 6; ++trial) {
        auto a_prime = test_support::random_forms(rng, 3, 5, 1);
        if (!is_essential(a_prime) || !is_free(a_prime).free)
            continue;
        std::vector<Scalar> f{Scalar(c(rng)), Scalar(c(rng)), Scalar(c(rng))};
        if (is_zero_vector(f) || a_prime.contains(Hyperplane(f)))
            continue;
        seen += run(a_prime, Hyperplane(f));
    }
    CHECK(seen >= 3);
}

TEST_CASE("a SPOG with free deletion divides down to a basis", "[spog]") {
    auto p = pentagon();
    for (const auto& h : outside(p.super, p.sub)) {
        const auto a = p.sub.with(h);
        const std::size_t index = *a.index_of(h);
        auto div = spog_to_free_basis(a, index);
        INFO(div.reason);
        REQUIRE(div.ok);
        CHECK(div.s != div.t);
        CHECK(div.dropped != div.s);
        CHECK(div.dropped != div.t);
        auto check = saito_check(p.sub, div.basis);
        CHECK(check.ok);
        std::vector<int> degs;
        for (const auto& t : div.basis)
            degs.push_back(t.degree());
        std::sort(degs.begin(), degs.end());
        CHECK(degs == std::vector<int>{1, 3, 3});
    }

    const auto a = five_plane_spog();
    int divided = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!is_free(a.without(i)).free) {
            CHECK_FALSE(spog_to_free_basis(a, i).ok);
            continue;
        }
        auto div = spog_to_free_basis(a, i);
        INFO(div.reason);
        CHECK(div.ok);
        CHECK(saito_check(a.without(i), div.basis).ok);
        ++divided;
    }
    CHECK(divided > 0);

    auto rejected = spog_to_free_basis(test_support::coned_a2(), 0);
    CHECK_FALSE(rejected.ok);
    CHECK(rejected.reason.rfind("not SPOG", 0) == 0);
}
