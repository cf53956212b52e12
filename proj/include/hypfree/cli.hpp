#pragma once

// The hypfree command line, as a library call so tests can drive it.
//
// Exit codes: 0 success, 1 a mathematical claim failed (harness violation,
// rejected certificate, broken B contract), 2 bad usage or malformed input,
// 3 a bounded search gave up.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "bpoly.hpp"
#include "certificate.hpp"
#include "families.hpp"
#include "freepath.hpp"
#include "harness.hpp"
#include "io.hpp"
#include "spog.hpp"

namespace hypfree::cli {

struct CommandOutcome {
    int exit_code = 0;
    std::string payload;
    std::string diagnostics;
};

/// Where input and settings come from. Defaults leave stdin empty and the
/// environment unset, which is what tests want.
struct Context {
    std::function<std::string()> read_stdin = [] { return std::string(); };
    std::optional<std::string> env_dmax;
};

inline Context process_context() {
    Context c;
    c.read_stdin = [] {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    };
    if (const char* v = std::getenv("HYPFREE_DMAX"))
        c.env_dmax = v;
    return c;
}

namespace detail {

struct Usage {
    std::string what;
};

struct Settings {
    bool json = false;
    int dmax = -1;
    std::int64_t radicand = 0;
    unsigned threads = 0;
};

inline std::string exps(const std::vector<int>& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i)
        s += (i ? "," : "") + std::to_string(v[i]);
    return s + ")";
}

inline std::string dump(const ojson& j) { return j.dump(2) + "\n"; }

inline ArrangementFile load(const std::string& path, const Settings& s, const Context& ctx) {
    std::string text;
    if (path == "-") {
        text = ctx.read_stdin();
    } else {
        try {
            text = read_file(path);
        } catch (const std::exception& e) {
            throw Usage{e.what()};
        }
    }
    try {
        return read_arrangement(text, s.radicand);
    } catch (const ParseError& e) {
        throw Usage{(path == "-" ? std::string("<stdin>") : path) + ": " + e.what()};
    }
}

inline int parse_dmax(const std::string& text, const char* source) {
    try {
        std::size_t used = 0;
        int v = std::stoi(text, &used);
        if (used == text.size() && v >= 0)
            return v;
    } catch (const std::exception&) {
    }
    throw Usage{std::string(source) + ": expected a nonnegative integer, got '" + text + "'"};
}

inline CommandOutcome check_free(const Arrangement& a, const Settings& s) {
    auto r = is_free(a);
    if (s.json)
        return {0, dump(freeness_certificate(a, r)), {}};
    if (r.free)
        return {0, "FREE " + exps(r.exponents()) + "\n", {}};
    return {0, "NOT_FREE (" + r.reason + ")\n", {}};
}

inline CommandOutcome exponents_cmd(const Arrangement& a, const Settings& s) {
    auto r = is_free(a);
    if (s.json) {
        ojson j;
        j["free"] = r.free;
        j["exponents"] = r.free ? ojson(r.exponents()) : ojson(nullptr);
        return {0, dump(j), {}};
    }
    return {0, (r.free ? exps(r.exponents()) : std::string("NOT_FREE")) + "\n", {}};
}

inline CommandOutcome generators_cmd(const Arrangement& a, const Settings& s) {
    const int dmax = s.dmax >= 0 ? s.dmax : static_cast<int>(a.size());
    auto g = minimal_generators(a, dmax);
    if (s.json) {
        ojson j;
        j["arrangement"] = arrangement_json(a);
        j["dmax"] = dmax;
        j["degrees"] = g.degrees();
        ojson gens = ojson::array();
        for (const auto& d : g.generators)
            gens.push_back(derivation_json(d));
        j["generators"] = gens;
        return {0, dump(j), {}};
    }
    std::string out = "minimal generators up to degree " + std::to_string(dmax) + ": " + exps(g.degrees()) + "\n";
    for (const auto& d : g.generators)
        out += "  [" + std::to_string(d.degree()) + "] " + d.to_string() + "\n";
    return {0, out, {}};
}

inline CommandOutcome spog_cmd(const Arrangement& a, const Settings& s) {
    auto r = spog_check(a, s.dmax);
    const int code = r.status == SpogStatus::inconclusive ? 3 : 0;
    if (s.json) {
        if (r.is_spog())
            return {0, dump(spog_certificate(a, *r.certificate)), {}};
        ojson j = header(r.status == SpogStatus::inconclusive ? "spog_inconclusive" : "not_spog");
        j["arrangement"] = arrangement_json(a);
        j["reason"] = r.reason;
        return {code, dump(j), {}};
    }
    if (r.is_spog())
        return {0, "SPOG poexp " + exps(r.certificate->poexp) + " level " + std::to_string(r.certificate->level) + "\n",
                {}};
    return {code, std::string(code ? "INCONCLUSIVE" : "NOT_SPOG") + " (" + r.reason + ")\n", {}};
}

inline CommandOutcome charpoly_cmd(const Arrangement& a, const Settings& s) {
    auto chi = char_poly(a);
    auto roots = nonnegative_integer_roots(chi, static_cast<int>(a.size()));
    if (s.json) {
        ojson j;
        j["char_poly"] = chi.coeffs;
        j["roots"] = roots ? ojson(*roots) : ojson(nullptr);
        return {0, dump(j), {}};
    }
    std::string out = chi.to_string() + "\n";
    if (roots)
        out += "roots " + exps(*roots) + "\n";
    return {0, out, {}};
}

inline CommandOutcome bpoly_cmd(const ArrangementFile& f, std::size_t index, const Settings& s) {
    if (index >= f.file_order.size())
        throw Usage{"--delete " + std::to_string(index) + " is out of range (the file has " +
                    std::to_string(f.file_order.size()) + " hyperplanes)"};
    const Hyperplane h = f.file_order[index];
    const auto a_prime = f.arrangement.without(*f.arrangement.index_of(h));
    if (a_prime.empty())
        throw Usage{"deleting the only hyperplane leaves nothing"};
    auto b = b_polynomial(a_prime, h);
    const std::size_t restricted = restrict_to(a_prime, h).size();
    auto known = known_generators(a_prime, s.dmax);
    auto contract = check_b_contract(h, b, known.generators);
    const bool degree_ok = b.degree == static_cast<int>(a_prime.size() - restricted);
    const int code = contract.ok && degree_ok ? 0 : 1;
    if (s.json) {
        ojson j;
        j["hyperplane"] = h.to_string();
        j["deleted_size"] = a_prime.size();
        j["restriction_size"] = restricted;
        j["degree"] = b.degree;
        j["B"] = b.poly.to_string();
        j["generators"] = known.source;
        j["generators_checked"] = contract.generators_checked;
        j["contract"] = contract.ok ? "ok" : contract.failure;
        return {code, dump(j), {}};
    }
    std::string out = "H = " + h.to_string() + ", |A'| = " + std::to_string(a_prime.size()) +
                      ", |A^H| = " + std::to_string(restricted) + "\n";
    out += "B = " + b.poly.to_string() + " (degree " + std::to_string(b.degree) + ")\n";
    out += "contract on " + std::to_string(contract.generators_checked) + " " + known.source + ": " +
           (contract.ok ? "ok" : contract.failure) + "\n";
    return {code, out, {}};
}

inline CommandOutcome freepath_cmd(const Arrangement& b, const Arrangement& a, const Settings& s) {
    FreenessOracle oracle;
    PathResult r;
    try {
        r = free_path(b, a, oracle, {20, s.threads});
    } catch (const std::invalid_argument& e) {
        throw Usage{e.what()};
    }
    const int code = r.status == PathStatus::inconclusive ? 3 : 0;
    if (s.json)
        return {code, dump(path_certificate(b, a, r, oracle)), {}};
    std::string out = to_string(r.status);
    if (r.status == PathStatus::found) {
        out += " chain of " + std::to_string(r.chain.size()) + " free arrangements\n";
        for (std::size_t i = 0; i < r.chain.size(); ++i)
            out += "  |C| = " + std::to_string(r.chain[i].size()) + " exponents " +
                   exps(r.certificates[i].exponents) + (i ? " added " + r.extra[static_cast<std::size_t>(
                                                                            std::countr_zero(r.chain_masks[i] ^
                                                                                             r.chain_masks[i - 1]))]
                                                                            .to_string()
                                                            : std::string()) +
                   "\n";
    } else {
        out += " (" + r.reason + ")\n";
    }
    return {code, out, {}};
}

inline CommandOutcome family_cmd(const std::string& kind, const std::string& type, int k, std::optional<int> k2,
                                 const Settings& s) {
    RootSystem rs;
    try {
        rs = weyl(parse_weyl_type(type));
    } catch (const std::invalid_argument& e) {
        throw Usage{e.what()};
    }
    const int second = k2.value_or(k);
    Arrangement a;
    std::string label = type + " ";
    try {
        if (kind == "weyl") {
            a = weyl_arrangement(rs);
            label += "Weyl";
        } else if (kind == "cat") {
            a = catalan(rs, k, second);
            label += "Catalan k=" + std::to_string(k) + "," + std::to_string(second);
        } else if (kind == "shi") {
            a = shi(rs, k, second);
            label += "Shi k=" + std::to_string(k) + "," + std::to_string(second);
        } else if (kind == "catshi") {
            a = cat_shi(rs, k, second);
            label += "Catalan(long) k=" + std::to_string(k) + " Shi(short) k=" + std::to_string(second);
        } else if (kind == "shicat") {
            a = shi_cat(rs, k, second);
            label += "Shi(long) k=" + std::to_string(k) + " Catalan(short) k=" + std::to_string(second);
        } else {
            throw Usage{"unknown family '" + kind + "' (weyl, cat, shi, catshi, shicat)"};
        }
    } catch (const std::invalid_argument& e) {
        throw Usage{e.what()};
    }
    if (s.json)
        return {0, dump(arrangement_json(a)), {}};
    return {0, write_arrangement(a, "cone of the " + label + " arrangement"), {}};
}

inline CommandOutcome pentagon_cmd(bool sub, bool super, const Settings& s) {
    auto p = pentagon();
    if (!sub && !super)
        throw Usage{"pentagon: choose --sub, --super or --both"};
    if (s.json) {
        ojson j;
        if (super)
            j["super"] = arrangement_json(p.super);
        if (sub)
            j["sub"] = arrangement_json(p.sub);
        return {0, dump(sub && super ? j : j.begin().value()), {}};
    }
    std::string out;
    if (super)
        out += write_arrangement(p.super, "pentagon: cone over the 5 edges and 5 diagonals");
    if (sub && super)
        out += "\n";
    if (sub)
        out += write_arrangement(p.sub, "pentagon: cone over the 6 lines of the smaller arrangement");
    return {0, out, {}};
}

inline CommandOutcome verify_cmd(const std::string& report, CorpusOptions o, const Settings& s) {
    o.threads = s.threads;
    HarnessReport r;
    try {
        r = run_harness(report, o);
    } catch (const std::invalid_argument& e) {
        throw Usage{e.what()};
    }
    const int code = r.passed() ? 0 : 1;
    if (s.json)
        return {code, dump(r.to_json(o)), {}};
    std::string out = report + ": " + std::to_string(r.members) + " members, " + std::to_string(r.checked) +
                      " checked, " + std::to_string(r.vacuous) + " vacuous, " + std::to_string(r.violations.size()) +
                      " violations\n";
    for (const auto& v : r.violations)
        out += "  VIOLATION " + v + "\n";
    out += r.passed() ? "PASS\n" : "FAIL\n";
    return {code, out, {}};
}

inline CommandOutcome check_cert_cmd(const std::string& path, const Settings& s, const Context& ctx) {
    std::string text;
    try {
        text = path == "-" ? ctx.read_stdin() : read_file(path);
    } catch (const std::exception& e) {
        throw Usage{e.what()};
    }
    ojson j;
    try {
        j = ojson::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw Usage{std::string("not JSON: ") + e.what()};
    }
    CheckResult r;
    try {
        r = check_certificate(j);
    } catch (const CertificateError& e) {
        throw Usage{e.what()};
    }
    const int code = r.ok ? 0 : 1;
    if (s.json) {
        ojson out;
        out["kind"] = r.kind;
        out["verified"] = r.ok;
        out["message"] = r.message;
        return {code, dump(out), {}};
    }
    return {code, std::string(r.ok ? "VERIFIED " : "REJECTED ") + r.kind + (r.ok ? "" : ": " + r.message) + "\n", {}};
}

} // namespace detail

/// argv without the program name.
inline CommandOutcome run(std::vector<std::string> args, const Context& ctx = {}) {
    using namespace detail;
    // "-k2 3" would otherwise read as "-k 2" followed by a stray "3"
    for (auto& a : args)
        if (a == "-k2" || a.starts_with("-k2="))
            a = "-" + a;

    CLI::App app{"Freeness, SPOG structure and free paths of central hyperplane arrangements", "hypfree"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_version_flag("--version", std::string(tool_version));

    Settings s;
    std::string field, dmax_text, path, sub_path, super_path, family_kind, weyl_type, report = "";
    app.add_flag("--json", s.json, "Machine-readable output");
    app.add_option("--dmax", dmax_text, "Degree cap for generator searches (default |A|, or $HYPFREE_DMAX)");
    app.add_option("--field", field, "Field for files without a 'field' line: Q or 'Qsqrt d'");
    app.add_option("--threads", s.threads, "Worker threads (0 = all cores); output does not depend on it");

    auto file_cmd = [&](const char* name, const char* help) {
        auto* c = app.add_subcommand(name, help);
        c->add_option("file", path, "Arrangement file, '-' for stdin")->default_val("-");
        return c;
    };
    auto* c_free = file_cmd("check-free", "Decide freeness; a Saito certificate when free");
    auto* c_exp = file_cmd("exponents", "Exponents of a free arrangement");
    auto* c_gen = file_cmd("generators", "Minimal generators of D(A) up to --dmax");
    auto* c_spog = file_cmd("spog", "Decide whether D(A) is strictly plus-one generated");
    auto* c_chi = file_cmd("charpoly", "Characteristic polynomial");
    auto* c_b = file_cmd("bpoly", "The polynomial B for deleting one hyperplane");
    std::size_t delete_index = 0;
    c_b->add_option("--delete", delete_index, "0-based index of the hyperplane, in file order")->required();

    auto* c_path = app.add_subcommand("freepath", "Search for a free path from SUB up to SUPER");
    c_path->add_option("sub", sub_path, "Smaller free arrangement")->required();
    c_path->add_option("super", super_path, "Larger free arrangement")->required();

    auto* c_fam = app.add_subcommand("family", "Write a Weyl, Catalan or Shi arrangement file");
    c_fam->add_option("kind", family_kind, "weyl, cat, shi, catshi or shicat")->required();
    c_fam->add_option("--type", weyl_type, "A2, B2 or G2")->required();
    int k = 1;
    std::optional<int> k2;
    c_fam->add_option("-k", k, "Translate parameter (long roots for catshi/shicat)")->default_val(1);
    c_fam->add_option("--k2", k2, "Second parameter (short roots); written -k2 on the command line");

    auto* c_pent = app.add_subcommand("pentagon", "Write the pentagon arrangements");
    bool p_sub = false, p_super = false, p_both = false;
    c_pent->add_flag("--sub", p_sub, "The 7-plane arrangement");
    c_pent->add_flag("--super", p_super, "The 11-plane arrangement");
    c_pent->add_flag("--both", p_both, "Both, larger first");

    auto* c_verify = app.add_subcommand("verify", "Run a harness over a random corpus");
    CorpusOptions corpus;
    bool no_named = false;
    c_verify->add_option("report", report, "thm12, thm13, spoglevels, adddel, atmore, bpoly or selfcheck")->required();
    c_verify->add_option("--seed", corpus.seed, "Corpus seed")->default_val(7);
    c_verify->add_option("--count", corpus.count, "Random members")->default_val(100);
    c_verify->add_option("--nmin", corpus.nmin, "Fewest planes")->default_val(4);
    c_verify->add_option("--nmax", corpus.nmax, "Most planes")->default_val(8);
    c_verify->add_option("--bound", corpus.bound, "Coefficient bound")->default_val(3);
    c_verify->add_flag("--no-named", no_named, "Leave out the named instances");

    auto* c_cert = app.add_subcommand("check-cert", "Re-verify a JSON certificate");
    c_cert->add_option("file", path, "Certificate, '-' for stdin")->default_val("-");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        std::ostringstream out, err;
        const int code = app.exit(e, out, err);
        if (code == 0)
            return {0, out.str(), {}};
        return {2, {}, err.str()};
    }

    try {
        if (!field.empty()) {
            try {
                s.radicand = parse_field(field);
            } catch (const std::invalid_argument& e) {
                throw Usage{std::string("--field: ") + e.what()};
            }
        }
        if (!dmax_text.empty())
            s.dmax = parse_dmax(dmax_text, "--dmax");
        else if (ctx.env_dmax && !ctx.env_dmax->empty())
            s.dmax = parse_dmax(*ctx.env_dmax, "HYPFREE_DMAX");

        if (c_path->parsed())
            return freepath_cmd(load(sub_path, s, ctx).arrangement, load(super_path, s, ctx).arrangement, s);
        if (c_fam->parsed())
            return family_cmd(family_kind, weyl_type, k, k2, s);
        if (c_pent->parsed())
            return pentagon_cmd(p_sub || p_both, p_super || p_both, s);
        if (c_verify->parsed()) {
            corpus.named = !no_named;
            return verify_cmd(report, corpus, s);
        }
        if (c_cert->parsed())
            return check_cert_cmd(path, s, ctx);

        const auto file = load(path, s, ctx);
        const auto& a = file.arrangement;
        if (c_free->parsed())
            return check_free(a, s);
        if (c_exp->parsed())
            return exponents_cmd(a, s);
        if (c_gen->parsed())
            return generators_cmd(a, s);
        if (c_spog->parsed())
            return spog_cmd(a, s);
        if (c_chi->parsed())
            return charpoly_cmd(a, s);
        if (c_b->parsed())
            return bpoly_cmd(file, delete_index, s);
        return {2, {}, "no subcommand\n"};
    } catch (const Usage& u) {
        return {2, {}, "error: " + u.what + "\n"};
    } catch (const std::invalid_argument& e) {
        return {2, {}, std::string("error: ") + e.what() + "\n"};
    }
}

} // namespace hypfree::cli
