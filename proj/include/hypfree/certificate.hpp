#pragma once

// JSON certificates (schema hypfree.cert/v1) and an independent checker.
//
// Every document carries the arrangement it speaks about. The checker only
// evaluates what the document claims: membership in D(A), products and sums
// of polynomials, determinants and exact division by Q(A), plus dimension
// counts of graded pieces where a claim is about a Hilbert function. It never
// searches for generators.

#include <json.hpp>

#include <algorithm>
#include <bit>
#include <map>
#include <initializer_list>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "freepath.hpp"
#include "io.hpp"
#include "spog.hpp"

#ifndef HYPFREE_VERSION
#define HYPFREE_VERSION "0.0.0"
#endif

namespace hypfree {

using ojson = nlohmann::ordered_json;

inline constexpr const char* cert_schema = "hypfree.cert/v1";
inline constexpr const char* tool_version = HYPFREE_VERSION;

/// Malformed certificate documents (as opposed to ones that parse but fail).
class CertificateError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

// ---- encoding ----

inline ojson scalar_json(const Scalar& s) { return s.to_string(); }

/// [[exponent, coefficient], ...] in the fixed monomial order.
inline ojson terms_json(const HomPoly& p) {
    ojson out = ojson::array();
    for (const auto& [e, c] : p.terms())
        out.push_back(ojson::array({e, c.to_string()}));
    return out;
}

inline ojson poly_json(const HomPoly& p) {
    ojson j;
    j["degree"] = p.degree();
    j["terms"] = terms_json(p);
    return j;
}

inline ojson derivation_json(const Derivation& d) {
    ojson j;
    j["degree"] = d.degree();
    ojson comps = ojson::array();
    for (const auto& c : d.components())
        comps.push_back(terms_json(c));
    j["components"] = comps;
    return j;
}

inline ojson arrangement_json(const Arrangement& a) {
    ojson j;
    j["field"] = field_name(a.radicand());
    j["rank"] = a.rank();
    ojson planes = ojson::array();
    for (const auto& h : a) {
        ojson f = ojson::array();
        for (const auto& c : h.form())
            f.push_back(c.to_string());
        planes.push_back(f);
    }
    j["hyperplanes"] = planes;
    return j;
}

inline ojson header(const char* kind) {
    ojson j;
    j["schema"] = cert_schema;
    j["kind"] = kind;
    j["tool_version"] = tool_version;
    return j;
}

// ---- decoding ----

namespace cert_detail {

inline void keys(const ojson& j, std::initializer_list<const char*> allowed, const std::string& where) {
    if (!j.is_object())
        throw CertificateError(where + ": expected an object");
    std::set<std::string> ok(allowed.begin(), allowed.end());
    for (const auto& [k, v] : j.items())
        if (!ok.count(k))
            throw CertificateError(where + ": unknown field '" + k + "'");
    for (const auto* k : allowed)
        if (!j.contains(k))
            throw CertificateError(where + ": missing field '" + std::string(k) + "'");
}

template <class T>
T get(const ojson& j, const char* key, const std::string& where) {
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
        throw CertificateError(where + ": field '" + key + "' has the wrong type");
    }
}

inline Scalar scalar(const ojson& j, std::int64_t radicand, const std::string& where) {
    if (!j.is_string())
        throw CertificateError(where + ": scalars are strings");
    try {
        return Scalar::parse(j.get<std::string>(), radicand);
    } catch (const std::exception& e) {
        throw CertificateError(where + ": " + e.what());
    }
}

inline HomPoly terms(const ojson& j, int vars, int degree, std::int64_t radicand, const std::string& where) {
    if (!j.is_array())
        throw CertificateError(where + ": terms must be an array");
    if (degree < 0)
        throw CertificateError(where + ": negative degree");
    HomPoly p(vars, degree);
    for (const auto& t : j) {
        if (!t.is_array() || t.size() != 2 || !t[0].is_array())
            throw CertificateError(where + ": a term is [exponent, coefficient]");
        Exponent e;
        try {
            e = t[0].get<Exponent>();
        } catch (const nlohmann::json::exception&) {
            throw CertificateError(where + ": bad exponent");
        }
        int total = 0;
        for (int x : e) {
            if (x < 0)
                throw CertificateError(where + ": negative exponent");
            total += x;
        }
        if (static_cast<int>(e.size()) != vars || total != degree)
            throw CertificateError(where + ": exponent does not fit the degree");
        if (!p.coefficient(e).is_zero())
            throw CertificateError(where + ": repeated monomial");
        p.add_term(std::move(e), scalar(t[1], radicand, where));
    }
    return p;
}

inline HomPoly poly(const ojson& j, int vars, std::int64_t radicand, const std::string& where) {
    keys(j, {"degree", "terms"}, where);
    return terms(j.at("terms"), vars, get<int>(j, "degree", where), radicand, where);
}

inline Derivation derivation(const ojson& j, int rank, std::int64_t radicand, const std::string& where) {
    keys(j, {"degree", "components"}, where);
    const int d = get<int>(j, "degree", where);
    const auto& comps = j.at("components");
    if (!comps.is_array() || comps.size() != static_cast<std::size_t>(rank))
        throw CertificateError(where + ": need " + std::to_string(rank) + " components");
    std::vector<HomPoly> parts;
    for (std::size_t i = 0; i < comps.size(); ++i)
        parts.push_back(terms(comps[i], rank, d, radicand, where + ".components[" + std::to_string(i) + "]"));
    return Derivation(std::move(parts));
}

inline std::vector<Derivation> derivations(const ojson& j, int rank, std::int64_t radicand,
                                           const std::string& where) {
    if (!j.is_array())
        throw CertificateError(where + ": expected an array");
    std::vector<Derivation> out;
    for (std::size_t i = 0; i < j.size(); ++i)
        out.push_back(derivation(j[i], rank, radicand, where + "[" + std::to_string(i) + "]"));
    return out;
}

inline IntPoly int_poly(const ojson& j, const std::string& where) {
    try {
        return IntPoly{j.get<std::vector<long long>>()};
    } catch (const nlohmann::json::exception&) {
        throw CertificateError(where + ": char_poly is a list of integers");
    }
}

} // namespace cert_detail

inline Arrangement arrangement_from_json(const ojson& j, const std::string& where = "arrangement") {
    using namespace cert_detail;
    keys(j, {"field", "rank", "hyperplanes"}, where);
    std::int64_t radicand = 0;
    try {
        radicand = parse_field(get<std::string>(j, "field", where));
    } catch (const CertificateError&) {
        throw;
    } catch (const std::exception& e) {
        throw CertificateError(where + ": " + e.what());
    }
    const int rank = get<int>(j, "rank", where);
    if (rank < 1 || rank > 62)
        throw CertificateError(where + ": bad rank");
    const auto& planes = j.at("hyperplanes");
    if (!planes.is_array())
        throw CertificateError(where + ": hyperplanes must be an array");
    Arrangement a(rank, radicand);
    for (std::size_t i = 0; i < planes.size(); ++i) {
        const std::string at = where + ".hyperplanes[" + std::to_string(i) + "]";
        if (!planes[i].is_array() || planes[i].size() != static_cast<std::size_t>(rank))
            throw CertificateError(at + ": need " + std::to_string(rank) + " coefficients");
        std::vector<Scalar> f;
        for (const auto& c : planes[i])
            f.push_back(scalar(c, radicand, at));
        try {
            Hyperplane h(std::move(f));
            if (a.contains(h))
                throw CertificateError(at + ": repeated hyperplane");
            a = a.with(h);
        } catch (const CertificateError&) {
            throw;
        } catch (const std::exception& e) {
            throw CertificateError(at + ": " + e.what());
        }
    }
    return a;
}

// ---- free / not free ----

inline ojson free_certificate(const Arrangement& a, const FreenessCertificate& c, const IntPoly& chi) {
    ojson j = header("free");
    j["arrangement"] = arrangement_json(a);
    j["exponents"] = c.exponents;
    ojson basis = ojson::array();
    for (const auto& d : c.basis)
        basis.push_back(derivation_json(d));
    j["basis"] = basis;
    j["saito_constant"] = scalar_json(c.saito_constant);
    j["char_poly"] = chi.coeffs;
    return j;
}

/// Number of minimal generators of D(A) in degree d: dim D(A)_d minus the
/// dimension of S_1 . D(A)_{d-1}.
inline std::size_t minimal_generator_count(const Arrangement& a, int d) {
    const std::size_t top = derivation_dimension(a, d);
    if (d == 0)
        return top;
    const int l = a.rank();
    SpanBuilder<Scalar> span(monomial_count(l, d) * static_cast<std::size_t>(l));
    for (const auto& theta : derivation_space(a, d - 1))
        for (const auto& m : monomial_basis(l, 1))
            span.insert(theta.shifted_vector(m));
    return top - span.rank();
}

/// dim of the degree-d part of S . gens.
inline std::size_t generated_dimension(int rank, const std::vector<Derivation>& gens, int d) {
    SpanBuilder<Scalar> span(monomial_count(rank, d) * static_cast<std::size_t>(rank));
    for (const auto& g : gens)
        if (g.degree() <= d)
            for (const auto& m : monomial_basis(rank, d - g.degree()))
                span.insert(g.shifted_vector(m));
    return span.rank();
}

/// Why A is not free, in a form the checker can confirm:
///   char_poly        chi(A, t) has a root outside {0, .., |A|}
///   generator_count  a free A has exactly #{i : d_i = d} minimal generators
///                    in degree d
///   saito            l derivations of the root degrees spanning D(A) up to
///                    the largest root, whose determinant is not c Q(A)
inline ojson not_free_witness(const Arrangement& a, const FreenessResult& r) {
    ojson w;
    auto roots = nonnegative_integer_roots(r.char_poly, static_cast<int>(a.size()));
    if (!roots) {
        w["type"] = "char_poly";
        return w;
    }
    // the verdict may come from a cache that dropped the generators
    const FreenessResult full = r.generators.complete_up_to >= 0 ? r : is_free(a);
    if (full.reason.starts_with("saito")) {
        w["type"] = "saito";
        ojson ds = ojson::array();
        for (const auto& d : full.generators.generators)
            ds.push_back(derivation_json(d));
        w["derivations"] = ds;
        return w;
    }
    const int d = full.generators.complete_up_to;
    w["type"] = "generator_count";
    w["degree"] = d;
    w["count"] = std::count_if(full.generators.generators.begin(), full.generators.generators.end(),
                               [&](const Derivation& g) { return g.degree() == d; });
    w["expected"] = std::count(roots->begin(), roots->end(), d);
    return w;
}

inline ojson not_free_certificate(const Arrangement& a, const FreenessResult& r) {
    ojson j = header("not_free");
    j["arrangement"] = arrangement_json(a);
    j["reason"] = r.reason;
    j["char_poly"] = r.char_poly.coeffs;
    j["witness"] = not_free_witness(a, r);
    return j;
}

inline ojson freeness_certificate(const Arrangement& a, const FreenessResult& r) {
    return r.free ? free_certificate(a, *r.certificate, r.char_poly) : not_free_certificate(a, r);
}

// ---- SPOG ----

inline ojson spog_certificate(const Arrangement& a, const SpogCertificate& c) {
    ojson j = header("spog");
    j["arrangement"] = arrangement_json(a);
    j["poexp"] = c.poexp;
    j["level"] = c.level;
    ojson gens = ojson::array();
    for (const auto& g : c.generators)
        gens.push_back(derivation_json(g));
    j["generators"] = gens;
    ojson rel = ojson::array();
    for (const auto& p : c.relation)
        rel.push_back(poly_json(p));
    j["relation"] = rel;
    j["hilbert_checked_to"] = c.hilbert_checked_to;
    return j;
}

// ---- free paths ----

inline ojson path_certificate(const Arrangement& b, const Arrangement& a, const PathResult& r,
                              FreenessOracle& oracle) {
    ojson j = header("path");
    j["status"] = to_string(r.status);
    j["reason"] = r.reason;
    j["sub"] = arrangement_json(b);
    j["super"] = arrangement_json(a);
    ojson extra = ojson::array();
    for (const auto& h : r.extra) {
        ojson f = ojson::array();
        for (const auto& c : h.form())
            f.push_back(c.to_string());
        extra.push_back(f);
    }
    j["extra"] = extra;
    ojson chain = ojson::array();
    for (std::size_t i = 0; i < r.chain.size(); ++i) {
        ojson node;
        node["mask"] = r.chain_masks[i];
        node["certificate"] = free_certificate(r.chain[i], r.certificates[i], oracle.verdict(r.chain[i])->char_poly);
        chain.push_back(node);
    }
    j["chain"] = chain;
    ojson explored = ojson::array();
    if (r.status == PathStatus::none)
        for (const auto& [m, free] : r.explored) {
            ojson node;
            node["mask"] = m;
            node["free"] = free;
            if (!free) {
                const auto c = with_mask(b, r.extra, m);
                node["witness"] = not_free_witness(c, *oracle.verdict(c));
            }
            explored.push_back(node);
        }
    j["explored"] = explored;
    return j;
}

// ---- checking ----

struct CheckResult {
    bool ok = false;
    std::string kind;
    std::string message;
};

namespace cert_detail {

struct Failed {
    std::string why;
};

inline void need(bool ok, const std::string& why) {
    if (!ok)
        throw Failed{why};
}

inline void check_header(const ojson& j, const std::string& where) {
    if (get<std::string>(j, "schema", where) != cert_schema)
        throw CertificateError(where + ": unsupported schema '" + j.at("schema").get<std::string>() + "'");
    get<std::string>(j, "tool_version", where);
}

inline void check_free(const ojson& j, const std::string& where) {
    keys(j, {"schema", "kind", "tool_version", "arrangement", "exponents", "basis", "saito_constant", "char_poly"},
         where);
    check_header(j, where);
    const auto a = arrangement_from_json(j.at("arrangement"), where + ".arrangement");
    const auto exps = get<std::vector<int>>(j, "exponents", where);
    const auto basis = derivations(j.at("basis"), a.rank(), a.radicand(), where + ".basis");
    const Scalar c = scalar(j.at("saito_constant"), a.radicand(), where + ".saito_constant");
    const IntPoly chi = int_poly(j.at("char_poly"), where);

    need(basis.size() == static_cast<std::size_t>(a.rank()), "basis has the wrong size");
    std::vector<int> degrees;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        need(in_module(basis[i], a), "basis element " + std::to_string(i) + " is not in D(A)");
        degrees.push_back(basis[i].degree());
    }
    auto sorted = degrees;
    std::sort(sorted.begin(), sorted.end());
    need(sorted == exps, "exponents do not match the basis degrees");
    need(!c.is_zero(), "Saito constant is zero");
    need(saito_determinant(basis) == HomPoly::constant(a.rank(), c) * q_poly(a), "det is not c Q(A)");
    need(chi == char_poly(a), "char_poly does not match the arrangement");
}

inline std::vector<int> split_roots(const Arrangement& a, const IntPoly& chi) {
    auto roots = nonnegative_integer_roots(chi, static_cast<int>(a.size()));
    need(roots.has_value(), "char_poly does not split, but the witness assumes it does");
    return *roots;
}

inline void check_not_free_witness(const Arrangement& a, const IntPoly& chi, const ojson& w, const std::string& where) {
    const auto type = get<std::string>(w, "type", where);
    if (type == "char_poly") {
        keys(w, {"type"}, where);
        need(!nonnegative_integer_roots(chi, static_cast<int>(a.size())), "char_poly splits");
        return;
    }
    if (type == "generator_count") {
        keys(w, {"type", "degree", "count", "expected"}, where);
        const auto roots = split_roots(a, chi);
        const int d = get<int>(w, "degree", where);
        need(d >= 0 && d <= static_cast<int>(a.size()), "degree out of range");
        const auto expected = static_cast<std::size_t>(std::count(roots.begin(), roots.end(), d));
        need(get<std::size_t>(w, "expected", where) == expected, "expected count does not match the roots");
        const std::size_t count = minimal_generator_count(a, d);
        need(get<std::size_t>(w, "count", where) == count, "claimed generator count is wrong");
        need(count != expected, "generator count agrees with the roots");
        return;
    }
    if (type == "saito") {
        keys(w, {"type", "derivations"}, where);
        const auto roots = split_roots(a, chi);
        const auto ds = derivations(w.at("derivations"), a.rank(), a.radicand(), where + ".derivations");
        need(ds.size() == static_cast<std::size_t>(a.rank()), "need l derivations");
        std::vector<int> degrees;
        for (const auto& d : ds) {
            need(in_module(d, a), "a derivation is not in D(A)");
            degrees.push_back(d.degree());
        }
        std::sort(degrees.begin(), degrees.end());
        need(degrees == roots, "derivation degrees are not the roots of chi");
        const int top = roots.empty() ? 0 : roots.back();
        for (int e = 0; e <= top; ++e)
            need(generated_dimension(a.rank(), ds, e) == derivation_dimension(a, e),
                 "derivations do not span D(A) in degree " + std::to_string(e));
        auto quotient = exact_divide(saito_determinant(ds), q_poly(a));
        need(!quotient || quotient->degree() != 0 || quotient->is_zero(), "det is c Q(A), so A is free");
        return;
    }
    throw CertificateError(where + ": unknown witness type '" + type + "'");
}

inline void check_not_free(const ojson& j, const std::string& where) {
    keys(j, {"schema", "kind", "tool_version", "arrangement", "reason", "char_poly", "witness"}, where);
    check_header(j, where);
    get<std::string>(j, "reason", where);
    const auto a = arrangement_from_json(j.at("arrangement"), where + ".arrangement");
    const IntPoly chi = int_poly(j.at("char_poly"), where);
    need(chi == char_poly(a), "char_poly does not match the arrangement");
    check_not_free_witness(a, chi, j.at("witness"), where + ".witness");
}

inline void check_spog(const ojson& j, const std::string& where) {
    keys(j, {"schema", "kind", "tool_version", "arrangement", "poexp", "level", "generators", "relation",
             "hilbert_checked_to"},
         where);
    check_header(j, where);
    const auto a = arrangement_from_json(j.at("arrangement"), where + ".arrangement");
    const int l = a.rank();
    const auto poexp = get<std::vector<int>>(j, "poexp", where);
    const int level = get<int>(j, "level", where);
    const int checked_to = get<int>(j, "hilbert_checked_to", where);
    const auto gens = derivations(j.at("generators"), l, a.radicand(), where + ".generators");
    const auto& rel_json = j.at("relation");
    if (!rel_json.is_array())
        throw CertificateError(where + ": relation must be an array");
    std::vector<HomPoly> rel;
    for (std::size_t i = 0; i < rel_json.size(); ++i)
        rel.push_back(poly(rel_json[i], l, a.radicand(), where + ".relation[" + std::to_string(i) + "]"));

    need(gens.size() == static_cast<std::size_t>(l) + 1, "need l+1 generators");
    need(rel.size() == gens.size(), "relation length differs from the generator count");
    need(gens.front() == Derivation::euler(l), "first generator is not the Euler derivation");
    need(gens.back().degree() == level, "last generator is not of the level degree");
    std::vector<int> degrees;
    for (std::size_t i = 0; i < gens.size(); ++i) {
        need(in_module(gens[i], a), "generator " + std::to_string(i) + " is not in D(A)");
        if (i + 1 < gens.size())
            degrees.push_back(gens[i].degree());
    }
    std::sort(degrees.begin(), degrees.end());
    need(degrees == poexp, "poexp does not match the generator degrees");
    int total = 0;
    for (int e : poexp)
        total += e;
    need(total == static_cast<int>(a.size()) + 1, "sum of poexp is not |A| + 1");

    Derivation sum = Derivation::zero(l, level + 1);
    for (std::size_t i = 0; i < gens.size(); ++i) {
        if (rel[i].is_zero())
            continue;
        need(rel[i].degree() + gens[i].degree() == level + 1, "relation coefficient " + std::to_string(i) +
                                                                  " has the wrong degree");
        // no unit coefficient, so the generators are minimal
        need(rel[i].degree() >= 1, "relation has a constant coefficient");
        sum = sum + rel[i] * gens[i];
    }
    need(sum.is_zero(), "relation does not vanish");
    need(!rel.back().is_zero() && rel.back().degree() == 1, "level coefficient is not linear");

    std::vector<int> all = poexp;
    all.push_back(level);
    for (int d = 0; d <= checked_to; ++d) {
        const std::size_t dim = derivation_dimension(a, d);
        need(dim == spog_hilbert(l, all, level + 1, d), "Hilbert function mismatch in degree " + std::to_string(d));
        need(generated_dimension(l, gens, d) == dim, "generators miss part of D(A) in degree " + std::to_string(d));
    }
    if (l == 3) {
        auto gap = detail::rank3_generation_gap(a, gens, rel, gens.size() - 1);
        need(!gap, "generation test failed: " + gap.value_or(""));
    }
}

inline std::vector<Hyperplane> forms(const ojson& j, int rank, std::int64_t radicand, const std::string& where) {
    if (!j.is_array())
        throw CertificateError(where + ": expected an array");
    std::vector<Hyperplane> out;
    for (const auto& row : j) {
        if (!row.is_array() || row.size() != static_cast<std::size_t>(rank))
            throw CertificateError(where + ": bad form");
        std::vector<Scalar> f;
        for (const auto& c : row)
            f.push_back(scalar(c, radicand, where));
        try {
            out.emplace_back(std::move(f));
        } catch (const std::exception& e) {
            throw CertificateError(where + ": " + e.what());
        }
    }
    return out;
}

inline void check_path(const ojson& j, const std::string& where) {
    keys(j, {"schema", "kind", "tool_version", "status", "reason", "sub", "super", "extra", "chain", "explored"},
         where);
    check_header(j, where);
    get<std::string>(j, "reason", where);
    const auto b = arrangement_from_json(j.at("sub"), where + ".sub");
    const auto a = arrangement_from_json(j.at("super"), where + ".super");
    need(b.rank() == a.rank() && b.is_subset_of(a), "sub is not contained in super");
    const auto extra = forms(j.at("extra"), a.rank(), a.radicand(), where + ".extra");
    {
        std::vector<Hyperplane> want;
        for (const auto& h : a)
            if (!b.contains(h))
                want.push_back(h);
        need(extra == want, "extra is not the list of planes of super outside sub");
    }
    need(extra.size() < 64, "too many extra planes");
    const std::uint64_t full = extra.empty() ? 0 : (std::uint64_t(1) << extra.size()) - 1;
    const auto status = get<std::string>(j, "status", where);
    const auto& chain = j.at("chain");
    const auto& explored = j.at("explored");
    if (!chain.is_array() || !explored.is_array())
        throw CertificateError(where + ": chain and explored are arrays");

    if (status == "FOUND") {
        need(chain.size() == extra.size() + 1, "chain has the wrong length");
        std::uint64_t prev = 0;
        for (std::size_t i = 0; i < chain.size(); ++i) {
            const std::string at = where + ".chain[" + std::to_string(i) + "]";
            keys(chain[i], {"mask", "certificate"}, at);
            const auto m = get<std::uint64_t>(chain[i], "mask", at);
            need(m <= full, "mask out of range");
            need(i == 0 ? m == 0 : (m & prev) == prev && std::popcount(m ^ prev) == 1,
                 "consecutive chain members do not differ by one plane");
            const auto& c = chain[i].at("certificate");
            if (get<std::string>(c, "kind", at) != "free")
                throw CertificateError(at + ": chain members carry free certificates");
            need(arrangement_from_json(c.at("arrangement"), at) == with_mask(b, extra, m),
                 "chain member is not B plus the masked planes");
            check_free(c, at + ".certificate");
            prev = m;
        }
        need(prev == full, "chain does not end at super");
        return;
    }
    if (status == "NONE") {
        need(chain.empty(), "a NONE certificate has no chain");
        std::map<std::uint64_t, bool> verdict;
        for (std::size_t i = 0; i < explored.size(); ++i) {
            const std::string at = where + ".explored[" + std::to_string(i) + "]";
            const auto& node = explored[i];
            const bool free = get<bool>(node, "free", at);
            if (free)
                keys(node, {"mask", "free"}, at);
            else
                keys(node, {"mask", "free", "witness"}, at);
            const auto m = get<std::uint64_t>(node, "mask", at);
            need(m <= full, "mask out of range");
            need(verdict.emplace(m, free).second, "mask listed twice");
            if (!free) {
                const auto c = with_mask(b, extra, m);
                check_not_free_witness(c, char_poly(c), node.at("witness"), at + ".witness");
            }
        }
        need(verdict.size() == full + 1, "not every subset between sub and super is listed");
        // A free verdict need not be confirmed: marking fewer subsets free
        // only makes a chain harder to find.
        std::set<std::uint64_t> seen{0};
        std::vector<std::uint64_t> stack{0};
        while (!stack.empty()) {
            auto m = stack.back();
            stack.pop_back();
            for (std::size_t i = 0; i < extra.size(); ++i) {
                auto n = m | std::uint64_t(1) << i;
                if (n != m && verdict.at(n) && seen.insert(n).second)
                    stack.push_back(n);
            }
        }
        need(full != 0, "sub equals super, so a chain exists");
        need(!seen.count(full), "the listed verdicts admit a chain");
        return;
    }
    throw Failed{"status " + status + " makes no checkable claim"};
}

} // namespace cert_detail

/// Re-verifies a certificate. Malformed documents throw CertificateError;
/// well-formed documents whose claim fails come back with ok = false.
inline CheckResult check_certificate(const ojson& j) {
    using namespace cert_detail;
    if (!j.is_object())
        throw CertificateError("certificate: expected an object");
    CheckResult r;
    r.kind = get<std::string>(j, "kind", "certificate");
    try {
        if (r.kind == "free")
            check_free(j, "certificate");
        else if (r.kind == "not_free")
            check_not_free(j, "certificate");
        else if (r.kind == "spog")
            check_spog(j, "certificate");
        else if (r.kind == "path")
            check_path(j, "certificate");
        else
            throw CertificateError("certificate: unknown kind '" + r.kind + "'");
    } catch (const Failed& f) {
        r.message = f.why;
        return r;
    }
    r.ok = true;
    r.message = "verified";
    return r;
}

} // namespace hypfree
