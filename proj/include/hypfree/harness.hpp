#pragma once

// Corpus runs that check the structural statements extensionally: two- and
// three-plane deletions, SPOG levels, addition-deletion, the B contract, and
// the NT/SNT predictions. Reports are JSON and do not depend on the thread
// count.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "bpoly.hpp"
#include "families.hpp"
#include "freepath.hpp"
#include "nt.hpp"
#include "spog.hpp"

namespace hypfree {

using ojson = nlohmann::ordered_json;

struct CorpusOptions {
    std::uint64_t seed = 7;
    int count = 100;
    int nmin = 4;
    int nmax = 8;
    int bound = 3;
    /// Pentagon and family instances on top of the random members.
    bool named = true;
    unsigned threads = 0;
};

struct CorpusMember {
    std::string name;
    Arrangement a;
};

inline std::vector<CorpusMember> named_instances() {
    auto p = pentagon();
    const auto a2 = weyl(WeylType::A2), b2 = weyl(WeylType::B2), g2 = weyl(WeylType::G2);
    return {
        {"pentagon-A", p.super},
        {"pentagon-B", p.sub},
        {"A2-Shi1", shi(a2, 1)},
        {"A2-Cat1", catalan(a2, 1)},
        {"B2-Shi1,1", shi(b2, 1, 1)},
        {"B2-Cat1Shi1", cat_shi(b2, 1, 1)},
        {"G2-Cat0", catalan(g2, 0)},
    };
}

/// Member i of the random part uses seed*1000003 + i and n cycling through
/// nmin..nmax.
inline std::vector<CorpusMember> build_corpus(const CorpusOptions& o) {
    if (o.count < 0 || o.nmin < 3 || o.nmax < o.nmin || o.bound < 1)
        throw std::invalid_argument("corpus: need count >= 0, 3 <= nmin <= nmax and bound >= 1");
    std::vector<CorpusMember> out;
    const int span = o.nmax - o.nmin + 1;
    for (int i = 0; i < o.count; ++i) {
        const int n = o.nmin + i % span;
        const std::uint64_t s = o.seed * 1000003u + static_cast<std::uint64_t>(i);
        out.push_back({"random-" + std::to_string(i), random_arrangement(s, 3, n, o.bound)});
    }
    if (o.named)
        for (auto& m : named_instances())
            out.push_back(std::move(m));
    return out;
}

/// Candidate planes to add: the forms with entries in {-1, 0, 1}, and for the
/// smaller pentagon arrangement the planes of the larger one.
inline std::vector<Hyperplane> addition_pool(const CorpusMember& m) {
    std::vector<Hyperplane> out;
    if (m.name == "pentagon-B") {
        auto p = pentagon();
        for (const auto& h : p.super)
            if (!m.a.contains(h))
                out.push_back(h);
        return out;
    }
    if (m.a.rank() != 3)
        return out;
    for (int code = 0; code < 27; ++code) {
        std::vector<Scalar> f{Scalar(code % 3 - 1), Scalar(code / 3 % 3 - 1), Scalar(code / 9 - 1)};
        if (f[0].is_zero() && f[1].is_zero() && f[2].is_zero())
            continue;
        Hyperplane h(std::move(f));
        if (!m.a.contains(h) && std::find(out.begin(), out.end(), h) == out.end())
            out.push_back(std::move(h));
    }
    return out;
}

inline ojson exponents_json(const std::vector<int>& e) { return ojson(e); }

/// One member's contribution to a report.
struct MemberOutcome {
    std::size_t checked = 0;
    std::size_t vacuous = 0;
    std::vector<std::string> violations;
    ojson detail = ojson::object();

    void fail(const std::string& what) { violations.push_back(what); }
    void expect(bool ok, const std::string& what) {
        ++checked;
        if (!ok)
            fail(what);
    }
};

struct HarnessReport {
    std::string name;
    std::size_t members = 0;
    std::size_t checked = 0;
    std::size_t vacuous = 0;
    std::vector<std::string> violations;
    ojson detail = ojson::array();

    bool passed() const noexcept { return violations.empty(); }

    ojson to_json(const CorpusOptions& o) const {
        ojson j;
        j["report"] = name;
        j["seed"] = o.seed;
        j["count"] = o.count;
        j["nmin"] = o.nmin;
        j["nmax"] = o.nmax;
        j["bound"] = o.bound;
        j["named"] = o.named;
        j["members"] = members;
        j["checked"] = checked;
        j["vacuous"] = vacuous;
        j["violations"] = violations;
        j["passed"] = passed();
        j["detail"] = detail;
        return j;
    }
};

using MemberCheck = std::function<MemberOutcome(const CorpusMember&, FreenessOracle&)>;

inline HarnessReport run_report(const std::string& name, const std::vector<CorpusMember>& corpus, const MemberCheck& fn,
                                unsigned threads) {
    FreenessOracle oracle;
    auto outcomes = parallel_map(
        corpus, [&](const CorpusMember& m) { return fn(m, oracle); }, threads);
    HarnessReport r;
    r.name = name;
    r.members = corpus.size();
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        auto& o = outcomes[i];
        r.checked += o.checked;
        r.vacuous += o.vacuous;
        for (auto& v : o.violations)
            r.violations.push_back(corpus[i].name + ": " + v);
        if (o.checked > 0 || !o.violations.empty()) {
            ojson d = ojson::object();
            d["member"] = corpus[i].name;
            d["planes"] = corpus[i].a.size();
            d["checked"] = o.checked;
            d["vacuous"] = o.vacuous;
            for (auto& [k, v] : o.detail.items())
                d[k] = v;
            r.detail.push_back(std::move(d));
        }
    }
    return r;
}

inline std::string pair_name(std::size_t i, std::size_t j) {
    return "(" + std::to_string(i) + "," + std::to_string(j) + ")";
}

/// A and A minus two planes free: one single deletion is free.
inline MemberOutcome check_two_plane(const CorpusMember& m, FreenessOracle& oracle) {
    MemberOutcome o;
    if (!oracle.is_free(m.a))
        return o;
    for (std::size_t i = 0; i < m.a.size(); ++i)
        for (std::size_t j = i + 1; j < m.a.size(); ++j) {
            auto r = verify_two_plane(m.a, i, j, oracle);
            if (r.vacuous) {
                ++o.vacuous;
                continue;
            }
            o.expect(r.passed, "deleting " + pair_name(i, j) + " is free but neither single deletion is");
        }
    return o;
}

/// A and A minus three planes free (rank 3): a free path joins them.
inline MemberOutcome check_three_plane(const CorpusMember& m, FreenessOracle& oracle) {
    MemberOutcome o;
    if (m.a.rank() != 3 || !oracle.is_free(m.a))
        return o;
    const std::size_t n = m.a.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            for (std::size_t k = j + 1; k < n; ++k) {
                auto r = verify_three_plane(m.a, i, j, k, oracle);
                if (r.vacuous) {
                    ++o.vacuous;
                    continue;
                }
                o.expect(r.passed, "no free path after deleting (" + std::to_string(i) + "," + std::to_string(j) +
                                       "," + std::to_string(k) + "): " + to_string(r.path));
            }
    return o;
}

inline std::string show(const std::vector<int>& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i)
        s += (i ? "," : "") + std::to_string(v[i]);
    return s + ")";
}

/// Non-free deletions of a free A are SPOG with poexp = exp(A) and level
/// |A| - 1 - |A^H|; non-free additions in rank 3 are SPOG with poexp
/// (1, d2+1, d3+1) and level |A^H| - 1.
inline MemberOutcome check_spog_levels(const CorpusMember& m, FreenessOracle& oracle) {
    MemberOutcome o;
    auto va = oracle.verdict(m.a);
    if (!va->free)
        return o;
    const auto& exps = va->exponents();
    ojson levels = ojson::array();
    for (std::size_t i = 0; i < m.a.size(); ++i) {
        auto d = m.a.without(i);
        if (oracle.is_free(d)) {
            ++o.vacuous;
            continue;
        }
        auto r = spog_check(d);
        const std::string where = "deleting " + std::to_string(i);
        if (!r.is_spog()) {
            o.expect(false, where + ": not SPOG (" + r.reason + ")");
            continue;
        }
        const int predicted = predict_deletion_level(m.a, i);
        o.expect(r.certificate->poexp == exps,
                 where + ": poexp " + show(r.certificate->poexp) + " but exp(A) = " + show(exps));
        o.expect(r.certificate->level == predicted, where + ": level " + std::to_string(r.certificate->level) +
                                                        " but predicted " + std::to_string(predicted));
        levels.push_back({{"delete", i}, {"level", r.certificate->level}});
    }
    if (m.a.rank() == 3) {
        for (const auto& h : addition_pool(m)) {
            auto added = m.a.with(h);
            if (oracle.is_free(added)) {
                ++o.vacuous;
                continue;
            }
            auto r = spog_check(added);
            const std::string where = "adding " + h.to_string();
            if (!r.is_spog()) {
                o.expect(false, where + ": not SPOG (" + r.reason + ")");
                continue;
            }
            const std::vector<int> want{1, exps[1] + 1, exps[2] + 1};
            const int predicted = predict_addition_level(m.a, h);
            o.expect(r.certificate->poexp == want,
                     where + ": poexp " + show(r.certificate->poexp) + " but expected " + show(want));
            o.expect(r.certificate->level == predicted, where + ": level " + std::to_string(r.certificate->level) +
                                                            " but predicted " + std::to_string(predicted));
            levels.push_back({{"add", h.to_string()}, {"level", r.certificate->level}});
        }
    }
    o.detail["exponents"] = exps;
    o.detail["spog"] = levels;
    return o;
}

/// exp(A') is exp(A) with one d_i lowered by one, and exp(A^H) is exp(A)
/// without that d_i.
inline bool addition_deletion_pattern(const std::vector<int>& a, const std::vector<int>& deleted,
                                      const std::vector<int>& restricted) {
    for (std::size_t i = 0; i < a.size(); ++i) {
        auto lowered = a;
        lowered[i] -= 1;
        std::sort(lowered.begin(), lowered.end());
        auto removed = a;
        removed.erase(removed.begin() + static_cast<std::ptrdiff_t>(i));
        if (lowered == deleted && removed == restricted)
            return true;
    }
    return false;
}

inline MemberOutcome check_addition_deletion(const CorpusMember& m, FreenessOracle& oracle) {
    MemberOutcome o;
    auto va = oracle.verdict(m.a);
    if (!va->free)
        return o;
    for (std::size_t i = 0; i < m.a.size(); ++i) {
        auto vd = oracle.verdict(m.a.without(i));
        if (!vd->free) {
            ++o.vacuous;
            continue;
        }
        auto vr = oracle.verdict(restrict_to(m.a, i));
        const std::string where = "plane " + std::to_string(i);
        if (!vr->free) {
            o.expect(false, where + ": restriction not free");
            continue;
        }
        o.expect(addition_deletion_pattern(va->exponents(), vd->exponents(), vr->exponents()),
                 where + ": exp(A) " + show(va->exponents()) + ", exp(A') " + show(vd->exponents()) + ", exp(A^H) " +
                     show(vr->exponents()));
    }
    return o;
}

/// deg B = |A'| - |A^H| and every minimal generator of D(A') satisfies the
/// contract, for A' = A minus H over every plane H of the member.
inline MemberOutcome check_b_polynomial(const CorpusMember& m, FreenessOracle&) {
    MemberOutcome o;
    if (m.a.rank() < 2 || m.a.size() < 2)
        return o;
    for (std::size_t i = 0; i < m.a.size(); ++i) {
        auto a_prime = m.a.without(i);
        auto b = b_polynomial(a_prime, m.a[i]);
        const std::string where = "plane " + std::to_string(i);
        const int expected = static_cast<int>(a_prime.size()) - static_cast<int>(restrict_to(a_prime, m.a[i]).size());
        o.expect(b.degree == expected, where + ": deg B = " + std::to_string(b.degree) + ", expected " +
                                           std::to_string(expected));
        auto r = check_b_contract(m.a[i], b, known_generators(a_prime).generators);
        o.expect(r.ok, where + ": " + r.failure);
    }
    return o;
}

/// Free certificates: det = c Q and the Hilbert function up to the top
/// exponent + 2. SPOG certificates of non-free deletions: the resolution's
/// Hilbert function up to the level + 2.
inline MemberOutcome check_certificates(const CorpusMember& m, FreenessOracle& oracle) {
    MemberOutcome o;
    auto check_free = [&](const Arrangement& a, const std::string& where) {
        auto v = oracle.verdict(a);
        if (!v->free)
            return false;
        const auto& cert = *v->certificate;
        auto s = saito_check(a, cert.basis);
        o.expect(s.ok && s.constant == cert.saito_constant, where + ": Saito check failed");
        const int top = cert.exponents.empty() ? 0 : cert.exponents.back();
        o.expect(check_free_hilbert(a, cert.exponents, top + 2), where + ": Hilbert function mismatch");
        return true;
    };
    if (!check_free(m.a, "A"))
        return o;
    for (std::size_t i = 0; i < m.a.size(); ++i) {
        auto d = m.a.without(i);
        if (check_free(d, "A minus " + std::to_string(i)))
            continue;
        auto r = spog_check(d);
        if (!r.is_spog())
            continue;
        const auto& c = *r.certificate;
        std::vector<int> degrees = c.poexp;
        degrees.push_back(c.level);
        bool ok = true;
        for (int e = 0; e <= c.hilbert_checked_to; ++e)
            ok &= derivation_dimension(d, e) == spog_hilbert(d.rank(), degrees, c.level + 1, e);
        o.expect(ok, "A minus " + std::to_string(i) + ": SPOG resolution Hilbert mismatch");
    }
    return o;
}

/// Rank 3, free A', H from the addition pool:
///   SNT >= 1, and SNT = 1 exactly when A = A' + H is free; then the basis
///   with the one non-tangent member multiplied by alpha_H is a basis of D(A).
///   Otherwise A is SPOG, so g(A) = 4 >= 2 + SNT forces SNT = 2; the pair
///   (g_i, g_j) of the decomposition is coprime, the generators built from
///   it give D(A) with level d_i + d_j - |A'| + |A^H|, and dividing two SPOG
///   generators by alpha_H recovers a basis of D(A').
///   The SNT basis satisfies the B contract.
inline MemberOutcome check_snt_predictions(const CorpusMember& m, FreenessOracle& oracle) {
    MemberOutcome o;
    if (m.a.rank() != 3 || !oracle.is_free(m.a))
        return o;
    const int l = 3;
    for (const auto& h : addition_pool(m)) {
        const auto a = m.a.with(h);
        const std::string where = "adding " + h.to_string();
        auto snt = snt_upper(m.a, h);
        const bool free = oracle.is_free(a);
        o.expect(snt.s >= 1, where + ": SNT is 0");
        auto b = b_polynomial(m.a, h);
        auto contract = check_b_contract(h, b, snt.basis);
        o.expect(contract.ok, where + ": " + contract.failure);

        std::vector<std::size_t> moving;
        for (std::size_t i = 0; i < snt.basis.size(); ++i)
            if (!snt.basis[i].is_tangent(h))
                moving.push_back(i);

        if (free) {
            o.expect(snt.s == 1, where + ": free addition with SNT " + std::to_string(snt.s));
            if (moving.size() == 1) {
                auto basis = snt.basis;
                basis[moving[0]] = h.as_poly() * basis[moving[0]];
                o.expect(saito_check(a, basis).ok, where + ": multiplied basis fails Saito");
            }
            continue;
        }
        auto r = spog_check(a);
        if (!r.is_spog()) {
            o.expect(false, where + ": non-free addition is not SPOG (" + r.reason + ")");
            continue;
        }
        const auto& cert = *r.certificate;
        o.expect(snt_consistent_with_generators(snt.s, static_cast<int>(cert.generators.size()), l),
                 where + ": SNT " + std::to_string(snt.s) + " exceeds the generator bound");
        o.expect(snt.s == 2, where + ": non-free addition with SNT " + std::to_string(snt.s));

        if (moving.size() == 2) {
            const auto& ti = snt.basis[moving[0]];
            const auto& tj = snt.basis[moving[1]];
            auto di = b_decompose(ti, h, b), dj = b_decompose(tj, h, b);
            if (!di || !dj) {
                o.expect(false, where + ": B decomposition failed");
            } else {
                Substitution on_h(restriction_images(h));
                o.expect(coprime_binary_forms(on_h.apply(di->g), on_h.apply(dj->g)),
                         where + ": g_i and g_j share a factor");
                std::vector<Derivation> gens;
                for (std::size_t k = 0; k < snt.basis.size(); ++k)
                    if (k != moving[0] && k != moving[1])
                        gens.push_back(snt.basis[k]);
                gens.push_back(h.as_poly() * ti);
                gens.push_back(h.as_poly() * tj);
                gens.push_back(dj->g * ti - di->g * tj);
                const int level = ti.degree() + tj.degree() - static_cast<int>(m.a.size()) +
                                  static_cast<int>(restrict_to(m.a, h).size());
                o.expect(level == cert.level, where + ": level from the coprime pair is " + std::to_string(level) +
                                                  ", SPOG level " + std::to_string(cert.level));
                bool members = true;
                for (const auto& g : gens)
                    members &= in_module(g, a);
                bool spans = members;
                for (int d = 0; spans && d <= cert.level + 2; ++d) {
                    SpanBuilder<Scalar> span(monomial_count(l, d) * l);
                    for (const auto& g : gens)
                        if (g.degree() <= d)
                            for (const auto& mono : monomial_basis(l, d - g.degree()))
                                span.insert(g.shifted_vector(mono));
                    spans = span.rank() == derivation_dimension(a, d);
                }
                o.expect(spans, where + ": generators from the coprime pair do not give D(A)");
            }
        }
        auto division = spog_to_free_basis(a, cert, *a.index_of(h));
        o.expect(division.ok, where + ": " + division.reason);
    }
    return o;
}

struct ReportSpec {
    const char* name;
    MemberCheck check;
};

inline const std::vector<ReportSpec>& report_specs() {
    static const std::vector<ReportSpec> specs{
        {"thm12", check_two_plane},       {"thm13", check_three_plane},    {"spoglevels", check_spog_levels},
        {"adddel", check_addition_deletion}, {"bpoly", check_b_polynomial}, {"selfcheck", check_certificates},
        {"atmore", check_snt_predictions},
    };
    return specs;
}

inline HarnessReport run_harness(const std::string& name, const CorpusOptions& o) {
    for (const auto& s : report_specs())
        if (name == s.name)
            return run_report(name, build_corpus(o), s.check, o.threads);
    throw std::invalid_argument("unknown report '" + name + "'");
}

} // namespace hypfree
