#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixtures.hpp"
#include "latfox/errors.hpp"
#include "latfox/export.hpp"
#include "latfox/ifox.hpp"
#include "latfox/verification.hpp"

using namespace latfox;
using nlohmann::json;

TEST_CASE("K2 document") {
    const auto doc = document_json(ifox::build_state(fixtures::k2()));
    CHECK(doc["nodes"].size() == 2);
    CHECK(doc["edges"].size() == 1);
    CHECK(doc["version"] == 0);
    CHECK(doc["seeds"].contains("a"));
    CHECK(doc["downArrows"] == json::parse(R"([["g2","a"]])"));
    for (const auto& node : doc["nodes"]) {
        CHECK(node["changeClass"].is_null());
        CHECK(node["pos"].size() == 2);
    }
}

TEST_CASE("FCD3 document marks the new concepts") {
    const auto s = ifox::build_state(fixtures::fcd3_old());
    const auto [next, cs] = ifox::insert_column(s, fixtures::fcd3_z());
    const auto doc = document_json(next);
    std::size_t generated = 0, old = 0, varied = 0;
    for (const auto& node : doc["nodes"]) {
        const auto cls = node["changeClass"].get<std::string>();
        generated += cls == "generated";
        old += cls == "old";
        varied += cls == "varied";
        const ConceptId id{node["id"].get<std::uint64_t>()};
        CHECK((cls == "generated") == (std::find(cs.created.begin(), cs.created.end(), id) != cs.created.end()));
    }
    CHECK(generated == cs.created.size());
    CHECK(generated + old + varied == next.concepts.size());
}

TEST_CASE("document round trip") {
    verify::Rng rng(12);
    for (int i = 0; i < 40; ++i) {
        const auto k = verify::random_context(rng, 8, 6, 0.4);
        auto [s, cs] = ifox::insert_column(ifox::build_state(k), verify::random_column(rng, k, "n", 0.5));
        const auto text = export_json(s);
        const auto back = state_from_document_text(text);
        verify::CompareOptions strict;
        strict.ids = true;
        CHECK(verify::compare_states(back, s, strict).empty());
        CHECK(back.version == s.version);
        CHECK(back.next_id == s.next_id);
        CHECK(back.change_class == s.change_class);
        CHECK(export_json(back) == text);
    }
}

TEST_CASE("change set JSON round trip and replay") {
    const auto s = ifox::build_state(fixtures::fcd3_old());
    const auto [next, cs] = ifox::insert_column(s, fixtures::fcd3_z());
    const auto j = changeset_json(cs, next.context);
    CHECK(j["created"].size() == cs.created.size());
    CHECK(j["redundant"] == false);
    const auto parsed = changeset_from_json(json::parse(j.dump()), s.context);
    CHECK(parsed.created == cs.created);
    CHECK(parsed.edges_added == cs.edges_added);
    CHECK(parsed.column == cs.column);

    // Replaying on the parsed previous document reproduces the next document.
    const auto previous = state_from_document(document_json(s));
    CHECK(document_json(ifox::apply_changeset(previous, parsed)) == document_json(next));
}

TEST_CASE("DOT output") {
    const auto dot = export_dot(ifox::build_state(apposition(fixtures::k2(), fixtures::k2_d())));
    CHECK(dot.rfind("digraph", 0) == 0);
    CHECK(dot.find("rankdir=BT") != std::string::npos);
    std::size_t arrows = 0;
    for (auto p = dot.find("->"); p != std::string::npos; p = dot.find("->", p + 1)) ++arrows;
    CHECK(arrows == 4);
    CHECK(dot.find("label=\"d\\ng2\"") != std::string::npos);
}

TEST_CASE("bad documents") {
    CHECK_THROWS_AS(state_from_document_text("{\"nodes\": ["), ParseError);
    CHECK_THROWS_AS(state_from_document_text("[1, 2]"), DocumentError);
    CHECK_THROWS_AS(state_from_document_text("{\"objects\": []}"), DocumentError);

    auto doc = document_json(ifox::build_state(fixtures::k2()));
    auto broken = doc;
    broken["nodes"][0]["objectLabels"] = json::array();
    broken["nodes"][1]["objectLabels"] = json::array();
    CHECK_THROWS_AS(state_from_document(broken), DocumentError);
    broken = doc;
    broken["seeds"]["zz"] = json::array({0, 0});
    CHECK_THROWS_AS(state_from_document(broken), DocumentError);
    broken = doc;
    broken["nodes"][0]["intent"] = json::array();
    CHECK_THROWS_AS(state_from_document(broken), DocumentError);
    try {
        state_from_document_text("{\n\"a\": 1,\n oops }");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 3);
    }
}
