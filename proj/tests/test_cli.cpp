#include <catch2/catch_amalgamated.hpp>

#include <hypfree/cli.hpp>

#include <filesystem>
#include <fstream>
#include <random>

#include "support.hpp"

using namespace hypfree;
using test_support::boolean;
using test_support::rational;

namespace {

cli::CommandOutcome run(std::vector<std::string> args, std::string input = {},
                        std::optional<std::string> env_dmax = std::nullopt) {
    cli::Context ctx;
    ctx.read_stdin = [input] { return input; };
    ctx.env_dmax = std::move(env_dmax);
    return cli::run(std::move(args), ctx);
}

// Non-free with a split characteristic polynomial: D(A) has an unexpected
// quadratic generator.
const char* seven_lines = R"(field Q
rank 3
0 0 1
1 -2 -1
1 -1 -2
1 -1 -1/2
1 -1 0
1 -1 2
1 2 -2
)";

std::string text_of(const Arrangement& a) { return write_arrangement(a); }

} // namespace

TEST_CASE("arrangement files round trip", "[io]") {
    auto p = pentagon();
    for (const auto& a : {p.super, p.sub, boolean(3), rational(4, {{1, 2, 3, 4}, {0, 1, 0, -1}, {1, 0, 0, 0}})}) {
        CHECK(parse_arrangement(write_arrangement(a)) == a);
        CHECK(parse_arrangement(write_arrangement(a, "a comment")) == a);
    }
    std::mt19937_64 rng(5);
    for (int i = 0; i < 20; ++i) {
        auto a = test_support::random_forms(rng, 3, 6, 4);
        CHECK(parse_arrangement(write_arrangement(a)) == a);
    }
}

TEST_CASE("arrangement file syntax", "[io]") {
    auto f = read_arrangement("# x\n\nfield Q\nrank 2\n0 1   # y\n2 -4\n");
    CHECK(f.arrangement.size() == 2);
    CHECK(f.file_order[0].to_string() == "0 1");
    CHECK(f.file_order[1].to_string() == "1 -2");
    CHECK(f.arrangement.radicand() == 0);

    CHECK(parse_arrangement("field Qsqrt 5\nrank 2\n1 r\n").radicand() == 5);
    CHECK(parse_arrangement("field Qsqrt5\nrank 2\n1 1/2+3/4*r\n").radicand() == 5);
    // no field line: the caller's default
    CHECK(parse_arrangement("rank 2\n1 r\n", 2).radicand() == 2);
    CHECK(parse_arrangement("field Q\nrank 2\n1 0\n", 5).radicand() == 0);

    // affine lines x = 1, y = 0 cone to x - z, y, z
    auto aff = read_arrangement("affine 2\n1 0 -1\n0 1 0\n");
    CHECK(aff.arrangement == rational(3, {{1, 0, -1}, {0, 1, 0}, {0, 0, 1}}));
    REQUIRE(aff.file_order.size() == 3);
    CHECK(aff.file_order[0].to_string() == "1 0 -1");
    CHECK(aff.file_order[2].to_string() == "0 0 1");
}

TEST_CASE("malformed files name the line", "[io]") {
    auto line_of = [](const std::string& text) {
        try {
            parse_arrangement(text);
        } catch (const ParseError& e) {
            return e.line();
        }
        return std::size_t(999);
    };
    CHECK(line_of("rank 3\n1 0 0\n1 0\n") == 3);
    CHECK(line_of("rank 3\n1 0 0\n2 0 0\n") == 3);
    CHECK(line_of("rank 3\n0 0 0\n") == 2);
    CHECK(line_of("field Q\nrank 2\n1 r\n") == 3);
    CHECK(line_of("field F7\nrank 2\n") == 1);
    CHECK(line_of("field Qsqrt 4\nrank 2\n") == 1);
    CHECK(line_of("1 0\n") == 1);
    CHECK(line_of("rank x\n") == 1);
    CHECK(line_of("rank 2\nrank 2\n") == 2);
    CHECK(line_of("rank 2\nfield Q\n") == 2);
    CHECK(line_of("rank 2\n1 1/0\n") == 2);
    CHECK(line_of("affine 2\n1 0 1\n2 0 2\n") == 3);
    // reported at the end of the file
    CHECK(line_of("# nothing\n") == 2);
    CHECK_THROWS_AS(parse_arrangement(""), ParseError);
}

TEST_CASE("free certificates verify and tampering is caught", "[certificate]") {
    for (const auto& a : {boolean(3), pentagon().sub, rational(3, {{1, 0, 0}, {0, 1, 0}, {1, -1, 0}, {0, 0, 1}})}) {
        auto j = freeness_certificate(a, is_free(a));
        CHECK(j["schema"] == "hypfree.cert/v1");
        CHECK(j["kind"] == "free");
        CHECK(j["tool_version"] == tool_version);
        CHECK(check_certificate(j).ok);
        CHECK(arrangement_from_json(j["arrangement"]) == a);
        // survives a text round trip
        CHECK(check_certificate(ojson::parse(j.dump())).ok);

        auto t = j;
        t["saito_constant"] = "12345";
        CHECK_FALSE(check_certificate(t).ok);
        t = j;
        t["exponents"][0] = 2;
        CHECK_FALSE(check_certificate(t).ok);
        t = j;
        t["basis"][1] = t["basis"][0];
        CHECK_FALSE(check_certificate(t).ok);
        t = j;
        t["char_poly"][0] = 99;
        CHECK_FALSE(check_certificate(t).ok);
        t = j;
        t["arrangement"]["hyperplanes"].erase(0);
        CHECK_FALSE(check_certificate(t).ok);
    }
}

TEST_CASE("malformed certificates are errors, not rejections", "[certificate]") {
    auto a = boolean(3);
    auto j = freeness_certificate(a, is_free(a));
    auto with = [&](auto edit) {
        auto t = j;
        edit(t);
        return t;
    };
    CHECK_THROWS_AS(check_certificate(with([](ojson& t) { t["note"] = "hi"; })), CertificateError);
    CHECK_THROWS_AS(check_certificate(with([](ojson& t) { t.erase("basis"); })), CertificateError);
    CHECK_THROWS_AS(check_certificate(with([](ojson& t) { t["schema"] = "hypfree.cert/v2"; })), CertificateError);
    CHECK_THROWS_AS(check_certificate(with([](ojson& t) { t["kind"] = "maybe"; })), CertificateError);
    CHECK_THROWS_AS(check_certificate(with([](ojson& t) { t["basis"][0]["extra"] = 1; })), CertificateError);
    CHECK_THROWS_AS(check_certificate(with([](ojson& t) { t["basis"][0]["components"][0][0][0] = {2, 0}; })),
                    CertificateError);
    CHECK_THROWS_AS(check_certificate(with([](ojson& t) { t["arrangement"]["field"] = "R"; })), CertificateError);
    CHECK_THROWS_AS(check_certificate(with([](ojson& t) { t["saito_constant"] = 1; })), CertificateError);
    CHECK_THROWS_AS(check_certificate(ojson::array()), CertificateError);
}

TEST_CASE("not-free witnesses", "[certificate]") {
    // char poly that does not split
    auto generic = rational(3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 1}});
    auto j = freeness_certificate(generic, is_free(generic));
    CHECK(j["kind"] == "not_free");
    CHECK(j["witness"]["type"] == "char_poly");
    CHECK(check_certificate(j).ok);

    // char poly splits; the count of quadratic generators gives it away
    auto a = parse_arrangement(seven_lines);
    auto r = is_free(a);
    REQUIRE_FALSE(r.free);
    auto w = freeness_certificate(a, r);
    CHECK(w["witness"]["type"] == "generator_count");
    CHECK(w["witness"]["degree"] == 2);
    CHECK(w["witness"]["count"] == 1);
    CHECK(w["witness"]["expected"] == 0);
    CHECK(check_certificate(w).ok);
    auto t = w;
    t["witness"]["count"] = 0;
    CHECK_FALSE(check_certificate(t).ok);

    // the same witnesses claimed for a free arrangement must fail
    auto b3 = rational(3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, -1, 0}, {1, 1, 0}, {0, 1, -1}, {0, 1, 1}, {1, 0, -1},
                           {1, 0, 1}});
    auto fr = is_free(b3);
    REQUIRE(fr.free);
    ojson fake = header("not_free");
    fake["arrangement"] = arrangement_json(b3);
    fake["reason"] = "made up";
    fake["char_poly"] = fr.char_poly.coeffs;
    fake["witness"] = {{"type", "char_poly"}};
    CHECK_FALSE(check_certificate(fake).ok);
    fake["witness"] = {{"type", "generator_count"}, {"degree", 3}, {"count", 1}, {"expected", 1}};
    CHECK_FALSE(check_certificate(fake).ok);
    ojson basis = ojson::array();
    for (const auto& d : fr.certificate->basis)
        basis.push_back(derivation_json(d));
    fake["witness"] = {{"type", "saito"}, {"derivations", basis}};
    auto verdict = check_certificate(fake);
    CHECK_FALSE(verdict.ok);
    CHECK(verdict.message == "det is c Q(A), so A is free");
}

TEST_CASE("SPOG certificates verify and tampering is caught", "[certificate][spog]") {
    auto p = pentagon();
    auto a = p.super.without(0);
    auto r = spog_check(a);
    REQUIRE(r.is_spog());
    auto j = spog_certificate(a, *r.certificate);
    CHECK(j["kind"] == "spog");
    CHECK(check_certificate(j).ok);

    auto t = j;
    t["level"] = 4;
    CHECK_FALSE(check_certificate(t).ok);
    t = j;
    t["relation"][1] = t["relation"][2];
    CHECK_FALSE(check_certificate(t).ok);
    t = j;
    t["generators"][3] = t["generators"][2];
    CHECK_FALSE(check_certificate(t).ok);
    t = j;
    t["arrangement"] = arrangement_json(p.super);
    CHECK_FALSE(check_certificate(t).ok);
}

TEST_CASE("path certificates", "[certificate][freepath]") {
    FreenessOracle oracle;
    auto p = pentagon();
    auto none = free_path(p.sub, p.super, oracle);
    auto j = path_certificate(p.sub, p.super, none, oracle);
    CHECK(j["status"] == "NONE");
    CHECK(j["explored"].size() == 16);
    CHECK(check_certificate(j).ok);

    auto t = j;
    t["explored"].erase(3);
    CHECK_FALSE(check_certificate(t).ok);
    // claiming every subset free opens a chain
    t = j;
    for (auto& node : t["explored"]) {
        node["free"] = true;
        node.erase("witness");
    }
    CHECK_FALSE(check_certificate(t).ok);

    auto cat1 = catalan(weyl(WeylType::A2), 1), shi2 = shi(weyl(WeylType::A2), 2);
    auto found = free_path(cat1, shi2, oracle);
    REQUIRE(found.status == PathStatus::found);
    auto f = path_certificate(cat1, shi2, found, oracle);
    CHECK(f["chain"].size() == 4);
    CHECK(check_certificate(f).ok);
    t = f;
    std::swap(t["chain"][1], t["chain"][2]);
    CHECK_FALSE(check_certificate(t).ok);
    t = f;
    t["chain"].erase(3);
    CHECK_FALSE(check_certificate(t).ok);
    t = f;
    t["status"] = "NONE";
    CHECK_FALSE(check_certificate(t).ok);
}

TEST_CASE("cli: pentagon reproduction", "[cli]") {
    auto super = run({"pentagon", "--super"});
    REQUIRE(super.exit_code == 0);
    auto sub = run({"pentagon", "--sub"});
    auto free_super = run({"check-free"}, super.payload);
    CHECK(free_super.exit_code == 0);
    CHECK(free_super.payload == "FREE (1,5,5)\n");
    CHECK(run({"check-free", "-"}, sub.payload).payload == "FREE (1,3,3)\n");
    CHECK(run({"exponents"}, sub.payload).payload == "(1,3,3)\n");
    auto both = run({"pentagon", "--both"});
    CHECK(both.payload == super.payload + "\n" + sub.payload);
    CHECK(run({"pentagon"}).exit_code == 2);
}

TEST_CASE("cli: file commands", "[cli]") {
    const std::string b3 = text_of(rational(3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, -1, 0}, {1, 1, 0}, {0, 1, -1},
                                                {0, 1, 1}, {1, 0, -1}, {1, 0, 1}}));
    auto chi = run({"charpoly"}, b3);
    CHECK(chi.exit_code == 0);
    CHECK(chi.payload.find("roots (1,3,5)") != std::string::npos);
    auto chi_json = ojson::parse(run({"--json", "charpoly"}, b3).payload);
    CHECK(chi_json["roots"] == ojson({1, 3, 5}));

    auto gens = ojson::parse(run({"generators", "--json", "--dmax", "3"}, b3).payload);
    CHECK(gens["degrees"] == ojson({1, 3}));
    CHECK(ojson::parse(run({"generators", "--json"}, b3).payload)["degrees"] == ojson({1, 3, 5}));
    // HYPFREE_DMAX is the default, --dmax wins
    CHECK(ojson::parse(run({"generators", "--json"}, b3, "3").payload)["dmax"] == 3);
    CHECK(ojson::parse(run({"generators", "--json", "--dmax", "4"}, b3, "3").payload)["dmax"] == 4);
    CHECK(run({"generators"}, b3, "three").exit_code == 2);

    CHECK(run({"check-free"}, seven_lines).payload == "NOT_FREE (generator degrees)\n");
    CHECK(run({"exponents"}, seven_lines).payload == "NOT_FREE\n");

    auto sub = run({"pentagon", "--super"}).payload;
    auto b = ojson::parse(run({"--json", "bpoly", "--delete", "3"}, sub).payload);
    CHECK(b["degree"] == 5);
    CHECK(b["restriction_size"] == 5);
    CHECK(b["contract"] == "ok");
    CHECK(run({"bpoly", "--delete", "11"}, sub).exit_code == 2);
    CHECK(run({"bpoly"}, sub).exit_code == 2);
}

TEST_CASE("cli: spog", "[cli][spog]") {
    auto p = pentagon();
    const auto deleted = text_of(p.super.without(2));
    auto out = run({"spog"}, deleted);
    CHECK(out.exit_code == 0);
    CHECK(out.payload == "SPOG poexp (1,5,5) level 5\n");
    auto cert = run({"--json", "spog"}, deleted);
    CHECK(run({"check-cert"}, cert.payload).payload == "VERIFIED spog\n");
    CHECK(run({"spog"}, text_of(p.super)).payload == "NOT_SPOG (free)\n");
    auto capped = run({"--dmax", "1", "spog"}, deleted);
    CHECK(capped.exit_code == 3);
    CHECK(capped.payload.starts_with("INCONCLUSIVE"));
}

TEST_CASE("cli: freepath and family", "[cli][freepath][families]") {
    auto shi1 = run({"family", "shi", "--type", "A2", "-k", "1"}).payload;
    auto cat1 = run({"family", "cat", "--type", "A2", "-k", "1"}).payload;
    CHECK(parse_arrangement(shi1).size() == 7);
    CHECK(parse_arrangement(cat1).size() == 10);
    CHECK(run({"check-free"}, shi1).payload.starts_with("FREE"));

    auto b2a = run({"family", "shi", "--type", "B2", "-k", "1", "-k2", "1"}).payload;
    auto b2b = run({"family", "catshi", "--type", "B2", "-k", "1", "-k2", "1"}).payload;
    CHECK(parse_arrangement(b2b).size() > parse_arrangement(b2a).size());
    CHECK(run({"family", "weyl", "--type", "G2"}).exit_code == 0);
    CHECK(run({"family", "cat", "--type", "E8", "-k", "1"}).exit_code == 2);
    CHECK(run({"family", "bogus", "--type", "A2"}).exit_code == 2);

    // freepath reads two files; feed them through temporary files
    const std::string dir = std::filesystem::temp_directory_path().string();
    const std::string s_path = dir + "/hypfree_test_shi1.arr", c_path = dir + "/hypfree_test_cat1.arr";
    std::ofstream(s_path) << shi1;
    std::ofstream(c_path) << cat1;
    auto found = run({"freepath", s_path, c_path});
    CHECK(found.exit_code == 0);
    CHECK(found.payload.starts_with("FOUND chain of 4"));
    auto found_json = run({"--json", "--threads", "2", "freepath", s_path, c_path});
    CHECK(found_json.payload == run({"--json", "--threads", "1", "freepath", s_path, c_path}).payload);
    CHECK(check_certificate(ojson::parse(found_json.payload)).ok);
    // reversed endpoints are not nested
    CHECK(run({"freepath", c_path, s_path}).exit_code == 2);
    CHECK(run({"freepath", s_path}).exit_code == 2);
    std::filesystem::remove(s_path);
    std::filesystem::remove(c_path);
}

TEST_CASE("cli: verify and exit codes", "[cli][harness]") {
    auto out = run({"verify", "adddel", "--count", "6", "--no-named"});
    CHECK(out.exit_code == 0);
    CHECK(out.payload.ends_with("PASS\n"));
    auto j1 = run({"--json", "--threads", "1", "verify", "thm12", "--seed", "3", "--count", "8", "--nmax", "6"});
    auto j3 = run({"verify", "thm12", "--seed", "3", "--count", "8", "--nmax", "6", "--threads", "3", "--json"});
    CHECK(j1.exit_code == 0);
    CHECK(j1.payload == j3.payload);
    auto doc = ojson::parse(j1.payload);
    CHECK(doc["report"] == "thm12");
    CHECK(doc["seed"] == 3);
    CHECK(doc["passed"] == true);

    CHECK(run({"verify", "nope"}).exit_code == 2);
    CHECK(run({"verify", "thm12", "--count", "x"}).exit_code == 2);
    CHECK(run({}).exit_code == 2);
    CHECK(run({"frobnicate"}).exit_code == 2);
    CHECK(run({"--help"}).exit_code == 0);
    CHECK(run({"--version"}).payload.find(tool_version) != std::string::npos);
    CHECK(run({"check-free", "/nonexistent/file"}).exit_code == 2);
    auto bad = run({"check-free"}, "rank 3\n1 0 0\n1 0\n");
    CHECK(bad.exit_code == 2);
    CHECK(bad.diagnostics.find("line 3") != std::string::npos);
    CHECK(run({"--field", "Qsqrt 5", "check-free"}, "rank 2\n1 r\n0 1\n").payload == "FREE (1,1)\n");
    CHECK(run({"--field", "Qsqrt 4", "check-free"}, "rank 2\n1 0\n").exit_code == 2);
}

TEST_CASE("cli: check-cert", "[cli][certificate]") {
    auto cert = run({"--json", "check-free"}, seven_lines).payload;
    CHECK(run({"check-cert"}, cert).payload == "VERIFIED not_free\n");
    auto j = ojson::parse(cert);
    j["witness"]["count"] = 3;
    auto rejected = run({"check-cert"}, j.dump());
    CHECK(rejected.exit_code == 1);
    CHECK(rejected.payload.starts_with("REJECTED"));
    j["unknown"] = true;
    CHECK(run({"check-cert"}, j.dump()).exit_code == 2);
    CHECK(run({"check-cert"}, "{").exit_code == 2);
    auto not_spog = run({"--json", "spog"}, text_of(boolean(3))).payload;
    CHECK(run({"check-cert"}, not_spog).exit_code == 2);
}
