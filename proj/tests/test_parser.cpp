#include <fstream>
#include <random>
#include <filesystem>

#include "chemostab/crn_parser.hpp"
#include "chemostab/error.hpp"
#include "chemostab/steady_state.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace chemostab;

namespace {

ParseError parse_error(const std::string& text) {
    try {
        parse_crn(text);
    } catch (const ParseError& e) {
        return e;
    }
    FAIL("no parse error for: " << text);
    return ParseError(0, 0, "", "");
}

ParseError model_error(const std::string& text) {
    try {
        parse_model(text);
    } catch (const ParseError& e) {
        return e;
    }
    FAIL("no parse error for: " << text);
    return ParseError(0, 0, "", "");
}

const char* kMinimal = R"({
  "crn": "v1 -> 0 @ 1.0",
  "alpha": [2.0],
  "chi": 1,
  "D": 1,
  "D_tilde": [1],
  "domain": {"kind": "interval", "L": 3.141592653589793}
})";

}  // namespace

TEST_CASE("dimerization statements") {
    const auto net = parse_crn("2 v1 <-> v2 @ 1.0, 1.0\nv1 -> 0 @ 1.0\nv2 -> 0 @ 1.0");
    REQUIRE(net.size() == 2);
    REQUIRE(net.reactions().size() == 4);
    CHECK(net.species()[0].name == "v1");
    CHECK(net.species()[1].name == "v2");
    const auto& fwd = net.reactions()[0];
    CHECK(fwd.reactants == Complex{{0, 2}});
    CHECK(fwd.products == Complex{{1, 1}});
    const auto& back = net.reactions()[1];
    CHECK(back.reactants == Complex{{1, 1}});
    CHECK(back.products == Complex{{0, 2}});
    CHECK(net.reactions()[2].products.empty());
}

TEST_CASE("empty input is an empty network") {
    CHECK(parse_crn("").size() == 0);
    CHECK(parse_crn("# only a comment\n\n   \n").reactions().empty());
}

TEST_CASE("trimolecular statements") {
    const auto net = parse_crn("v1 + v2 <-> v3 @ 2.0, 3.0\nv1 -> 0 @ 1.0");
    REQUIRE(net.size() == 3);
    REQUIRE(net.reactions().size() == 3);
    CHECK(net.reactions()[0].rate == 2.0);
    CHECK(net.reactions()[1].rate == 3.0);
    CHECK(net.reactions()[2].rate == 1.0);
    CHECK(net.reactions()[0].order() == 2);
}

TEST_CASE("syntax details") {
    const auto net = parse_crn("  A+2B->  3C @1e-3 # trailing comment\r\n0 -> A @ 4\n");
    REQUIRE(net.size() == 3);
    CHECK(net.reactions()[0].reactants == Complex{{0, 1}, {1, 2}});
    CHECK(net.reactions()[0].products == Complex{{2, 3}});
    CHECK(net.reactions()[0].rate == 1e-3);
    CHECK(net.reactions()[1].reactants.empty());
    const auto merged = parse_crn("a + a -> b @ 1");
    CHECK(merged.reactions()[0].reactants == Complex{{0, 2}});
}

TEST_CASE("parse errors carry positions") {
    auto e = parse_error("v1 -> v2 @ -1");
    CHECK(e.line() == 1);
    CHECK(e.column() > 1);
    CHECK(std::string(e.what()).find("negative") != std::string::npos);

    e = parse_error("v1 -> 0 @ 1\nv1 <-> v2 @ 1");
    CHECK(e.line() == 2);

    e = parse_error("v1 -> v2 @ 1 @ 2");
    CHECK(e.line() == 1);
    CHECK(std::string(e.what()).find("@") != std::string::npos);

    e = parse_error("v1 -> v2");
    CHECK(e.line() == 1);
    e = parse_error("v1 => v2 @ 1");
    CHECK(e.column() >= 1);
    e = parse_error("v1 -> 0 @ 1, 2");
    CHECK(e.line() == 1);
    e = parse_error("0 -> 0 @ 1");
    CHECK(e.line() == 1);
    e = parse_error("10 v1 -> 0 @ 1");
    CHECK(e.line() == 1);
    e = parse_error("v1 -> 0 @ nan");
    CHECK(e.line() == 1);
    e = parse_error("\n\n  v1 -> $ @ 1");
    CHECK(e.line() == 3);
    CHECK(e.column() == 9);
    CHECK_FALSE(e.snippet().empty());
}

TEST_CASE("serialize round-trips the corpus") {
    const char* corpus[] = {
        "2 v1 <-> v2 @ 1.0, 1.0\nv1 -> 0 @ 1.0\nv2 -> 0 @ 1.0",
        "v1 + v2 <-> v3 @ 2.0, 3.0\nv1 -> 0 @ 1.0",
        "v1 -> v2 @ 1\nv2 -> v3 @ 0.1\nv1 -> 0 @ 1e-300\n0 -> v3 @ 3.5",
        "enzyme + camp <-> complex @ 1.25, 0.75\ncomplex -> enzyme @ 0.3333333333333333",
        "",
    };
    for (const char* text : corpus) {
        const auto net = parse_crn(text);
        CHECK(parse_crn(serialize_crn(net)) == net);
    }
}

TEST_CASE("serialize round-trips random networks") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 300; ++trial) {
        const auto net = testing::random_network(rng, 5, 8, 3);
        const auto text = serialize_crn(net);
        const auto back = parse_crn(text);
        // Species that never occur are dropped by the text form; compare reactions by name.
        REQUIRE(back.reactions().size() == net.reactions().size());
        CHECK(parse_crn(serialize_crn(back)) == back);
        for (std::size_t r = 0; r < net.reactions().size(); ++r) {
            CHECK(back.reactions()[r].rate == net.reactions()[r].rate);
        }
    }
}

TEST_CASE("fuzzing never escapes ParseError") {
    std::mt19937_64 rng(99);
    const std::string alphabet = "v12 +-<>@,.#0e\n\r\t_ab9";
    std::uniform_int_distribution<std::size_t> len(0, 60), pick(0, alphabet.size() - 1);
    std::uniform_int_distribution<int> byte(0, 255);
    int parsed = 0, rejected = 0;
    for (int trial = 0; trial < 3000; ++trial) {
        std::string text;
        const std::size_t n = len(rng);
        for (std::size_t k = 0; k < n; ++k) {
            text += trial % 3 == 0 ? static_cast<char>(byte(rng)) : alphabet[pick(rng)];
        }
        try {
            const auto net = parse_crn(text);
            CHECK(parse_crn(serialize_crn(net)) == net);
            ++parsed;
        } catch (const ParseError& e) {
            CHECK(e.line() >= 1);
            CHECK(e.column() >= 1);
            ++rejected;
        }
    }
    CHECK(parsed + rejected == 3000);
}

TEST_CASE("minimal model document") {
    const ModelSpec m = parse_model(kMinimal);
    CHECK(m.species_count() == 1);
    CHECK(m.alpha[0] == 2.0);
    CHECK(m.chemoattractant == 0);
    CHECK(std::get<Interval>(m.domain).length == doctest::Approx(testing::kPi));
    CHECK(eval_jacobian(m.network, Vector::Ones(1))(0, 0) == -1.0);
}

TEST_CASE("model document errors") {
    std::string doc = kMinimal;
    std::string bad = doc;
    bad.replace(bad.find("[2.0]"), 5, "[0.0]");
    try {
        parse_model(bad);
        FAIL("expected validation error");
    } catch (const ValidationError& e) {
        CHECK(std::string(e.what()).find("alpha has no positive entry") != std::string::npos);
    }

    bad = doc;
    bad.replace(bad.find("\"chi\""), 5, "\"chai\"");
    auto e = model_error(bad);
    CHECK(e.line() == 4);
    CHECK(std::string(e.what()).find("chai") != std::string::npos);

    e = model_error("{ \"crn\": \"v1 -> 0 @ 1\", ");
    CHECK(e.line() == 1);

    bad = doc;
    bad.replace(bad.find("v1 -> 0 @ 1.0"), 13, "v1 -> 0 @ -1");
    e = model_error(bad);
    CHECK(std::string(e.what()).find("in crn") != std::string::npos);

    bad = doc;
    bad.replace(bad.find("\"interval\""), 10, "\"disk\"");
    e = model_error(bad);
    CHECK(e.line() == 7);

    e = model_error("[1, 2]");
    CHECK(e.line() == 1);
    e = model_error(R"({"crn": "v1 -> 0 @ 1", "alpha": [1], "chi": 1, "D": 1, "D_tilde": [1]})");
    CHECK(std::string(e.what()).find("domain") != std::string::npos);

    bad = doc;
    bad.replace(bad.find("\"D\": 1"), 6, "\"D\": \"x\"");
    e = model_error(bad);
    CHECK(e.line() == 5);

    bad = doc;
    bad.insert(bad.find("\"domain\""), "\"chemoattractant\": \"v9\",\n  ");
    CHECK_THROWS_AS(parse_model(bad), ValidationError);
}

TEST_CASE("crn given as a file path") {
    const auto dir = std::filesystem::temp_directory_path() / "chemostab_parser_test";
    std::filesystem::create_directories(dir);
    {
        std::ofstream(dir / "net.crn") << "# decay\nv1 -> 0 @ 3\n";
    }
    std::string doc = kMinimal;
    doc.replace(doc.find("\"v1 -> 0 @ 1.0\""), 15, "\"net.crn\"");
    const ModelSpec m = parse_model(doc, dir);
    CHECK(m.network.reactions()[0].rate == 3.0);
    doc.replace(doc.find("net.crn"), 7, "missing.crn");
    CHECK_THROWS_AS(parse_model(doc, dir), ParseError);
    std::filesystem::remove_all(dir);
}

TEST_CASE("bundled models load") {
    for (const char* name :
         {"minimal_ks.model", "dimerization.model", "trimolecular.model", "linear_chain.model", "full_ks.model",
          "autocatalytic.model"}) {
        CAPTURE(name);
        CHECK_NOTHROW(testing::bundled(name));
    }
}

TEST_CASE("full model reproduces the enzyme kinetics") {
    const ModelSpec m = testing::bundled("full_ks.model");
    const auto& net = m.network;
    const std::size_t e = *net.find_species("enzyme"), c = *net.find_species("complex"), a = *net.find_species("camp");
    CHECK(m.chemoattractant == a);
    const double r1 = 1, rm1 = 1, r2 = 1;
    Vector v(3);
    v[static_cast<Eigen::Index>(e)] = 0.7;
    v[static_cast<Eigen::Index>(c)] = 1.9;
    v[static_cast<Eigen::Index>(a)] = 0.4;
    const Vector g = eval_kinetics(net, v);
    const double v1 = 0.7, v2 = 1.9, v3 = 0.4;
    CHECK(g[static_cast<Eigen::Index>(e)] == doctest::Approx(-r1 * v1 * v3 + (rm1 + r2) * v2));
    CHECK(g[static_cast<Eigen::Index>(c)] == doctest::Approx(r1 * v1 * v3 - (rm1 + r2) * v2));
    CHECK(g[static_cast<Eigen::Index>(a)] == doctest::Approx(-r1 * v1 * v3 + rm1 * v2));
    CHECK(m.alpha[static_cast<Eigen::Index>(e)] > 0);
    CHECK(m.alpha[static_cast<Eigen::Index>(c)] == 0);
    CHECK(m.alpha[static_cast<Eigen::Index>(a)] > 0);
}
