#include "doctest.h"

#include "json.hpp"
#include "valfan/commands.hpp"
#include "valfan/fanio.hpp"

using namespace valfan;
using nlohmann::json;

namespace {

std::string fixture_text(const std::string& name, std::size_t n = 0, unsigned long r = 0,
                         std::size_t m = 0) {
    CommandResult res = cmd_fixture(name, n, r, m);
    REQUIRE(res.exit_code == 0);
    return res.output;
}

} // namespace

TEST_CASE("fixture documents") {
    CHECK(parse_fan_document(fixture_text("dart")).fan->max_cones().size() == 4);
    CHECK(parse_fan_document(fixture_text("dart-completion")).fan->max_cones().size() == 10);
    CHECK(parse_fan_document(fixture_text("dart-lift")).rational->max.size() == 4);
    CHECK(parse_fan_document(fixture_text("badnorm", 2, 2)).fan->max_cones().size() == 5);
    CHECK(parse_fan_document(fixture_text("model", 2, 0, 1)).fan->max_cones().size() == 1);
    auto t45 = parse_fan_document(fixture_text("thm45"));
    CHECK(t45.oracle == OracleKind::Lexicographic);
    CHECK(cmd_fixture("nonesuch", 0, 0, 0).exit_code == 3);
}

TEST_CASE("check command") {
    std::string dart = fixture_text("dart");
    std::string completion = fixture_text("dart-completion");

    SUBCASE("reports") {
        CommandResult res = cmd_check(dart);
        REQUIRE(res.exit_code == 0);
        json rep = json::parse(res.output);
        CHECK(rep.at("admissible") == true);
        CHECK(rep.at("complete") == false);
        CHECK(rep.at("finite_type").at("verdict") == true);

        res = cmd_check(completion);
        REQUIRE(res.exit_code == 0);
        CHECK(json::parse(res.output).at("complete") == true);
    }
    SUBCASE("against") {
        CommandResult res = cmd_check(completion, dart);
        CHECK(res.exit_code == 0);
        CHECK(json::parse(res.output).at("completes") == true);
        // the dart certainly does not complete its own completion
        res = cmd_check(dart, completion);
        CHECK(res.exit_code == 1);
        CHECK(json::parse(res.output).at("completes") == false);
    }
    SUBCASE("bad input") {
        CHECK(cmd_check("garbage").exit_code == 3);
        CHECK(json::parse(cmd_check("garbage").output).at("error") == "parse-error");
    }
}

TEST_CASE("reduce command") {
    CommandResult res = cmd_reduce(fixture_text("dart"));
    REQUIRE(res.exit_code == 0);
    FanDocument lifted = parse_fan_document(res.output);
    REQUIRE(lifted.rational.has_value());
    CHECK(lifted.rational->max.size() == 4);
    CHECK(lifted.metadata.at("k") == 2);
    CHECK(lifted.metadata.at("gamma_bar").size() == 2);
    CHECK(lifted.metadata.at("correspondence").size() == 4);
    // a full document cannot be reduced again
    CHECK(cmd_reduce(res.output).exit_code == 3);
}

TEST_CASE("complete command") {
    SUBCASE("half-space pipeline on the dart") {
        CommandResult res = cmd_complete(fixture_text("dart"), 0, "", 0x5EED);
        REQUIRE(res.exit_code == 0);
        FanDocument out = parse_fan_document(res.output);
        CHECK(out.metadata.at("complete") == true);
        CHECK(cmd_check(res.output).exit_code == 0);
        CHECK(json::parse(cmd_check(res.output).output).at("complete") == true);
        // the completion contains the dart as a subfan
        CHECK(cmd_check(res.output, fixture_text("dart")).exit_code == 0);
    }
    SUBCASE("rational engine with trace and replay") {
        std::string lift = fixture_text("dart-lift");
        CommandResult res = cmd_complete(lift, 0, "", 0x5EED);
        REQUIRE(res.exit_code == 0);
        FanDocument out = parse_fan_document(res.output);
        CHECK(out.metadata.at("complete") == true);
        CHECK(out.metadata.at("trace").size() > 0);

        CommandResult rep = cmd_complete(lift, 0, "", 0x5EED, res.output);
        CHECK(rep.exit_code == 0);
        CHECK(parse_fan_document(rep.output).metadata.at("replayed") == true);
    }
    SUBCASE("strategy list") {
        // a plane quadrant closes up quickly even without star joins
        std::string quadrant = R"({
          "format": "valfan-1", "kind": "full", "ambient": 2,
          "cones": [{"name": "q", "rays": [["1","0"], ["0","1"]]}]
        })";
        CommandResult res = cmd_complete(quadrant, 0, "contact-fill,sliver-fill", 0x5EED);
        CHECK(res.exit_code == 0);
        CHECK(json::parse(cmd_check(res.output).output).at("complete") == true);
        CHECK(cmd_complete(quadrant, 0, "warp-fill", 0).exit_code == 3);
    }
    SUBCASE("exhaustion exits 2") {
        CommandResult res = cmd_complete(fixture_text("dart-lift"), 1, "", 0x5EED);
        CHECK(res.exit_code == 2);
        CHECK(json::parse(res.output).at("error") == "engine-exhausted");
    }
    SUBCASE("non-archimedean oracle stalls with exit 2") {
        CommandResult res = cmd_complete(fixture_text("thm45"), 0, "", 0x5EED);
        CHECK(res.exit_code == 2);
        CHECK(json::parse(res.output).at("error") == "oracle-stall");
    }
}

TEST_CASE("toric-report command") {
    CommandResult res = cmd_toric_report(fixture_text("dart"));
    REQUIRE(res.exit_code == 0);
    json rep = json::parse(res.output);
    CHECK(rep.at("semistable").at("verdict") == "passes-necessary (inconclusive)");
    CHECK(rep.at("cones").size() == 4);
    for (const auto& c : rep.at("cones")) {
        CHECK(!c.at("segment_model").is_null());
        CHECK(c.at("presentation").contains("per_vertex"));
    }

    res = cmd_toric_report(fixture_text("badnorm", 1, 2));
    REQUIRE(res.exit_code == 0);
    rep = json::parse(res.output);
    CHECK(rep.at("finite_type").at("verdict") == false);
    bool some_bad = false;
    for (const auto& c : rep.at("cones"))
        if (c.at("presentation").contains("error")) some_bad = true;
    CHECK(some_bad);
}

TEST_CASE("render command") {
    CommandResult res = cmd_render(fixture_text("dart"), 24);
    REQUIRE(res.exit_code == 0);
    CHECK(res.output.rfind("<svg", 0) == 0);
    CHECK(res.output.find("alpha") != std::string::npos);
    CHECK(res.output.find("<line") != std::string::npos);

    CommandResult comp = cmd_render(fixture_text("dart-completion"), 24);
    REQUIRE(comp.exit_code == 0);
    // the completion has more edges than the dart alone
    auto count = [](const std::string& s, const std::string& needle) {
        std::size_t n = 0;
        for (std::size_t p = s.find(needle); p != std::string::npos; p = s.find(needle, p + 1)) ++n;
        return n;
    };
    CHECK(count(comp.output, "<line") > count(res.output, "<line"));
}
