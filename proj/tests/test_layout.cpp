#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixtures.hpp"
#include "latfox/errors.hpp"
#include "latfox/ifox.hpp"
#include "latfox/layout.hpp"
#include "latfox/verification.hpp"

using namespace latfox;

namespace {

ConceptId id_of(const DiagramState& s, std::vector<std::string> objects) {
    auto id = s.find_extent(s.context.object_set(objects));
    REQUIRE(id.has_value());
    return *id;
}

} // namespace

TEST_CASE("concepts without irreducible intent attributes sit at the origin") {
    const auto s = ifox::build_state(fixtures::k2());
    CHECK(position(s, s.top()) == Vec2{0, 0});
}

TEST_CASE("position is the sum of seeds on K2 with d") {
    auto s = ifox::build_state(apposition(fixtures::k2(), fixtures::k2_d()));
    set_seed(s, "a", Vec2{-1, -1});
    set_seed(s, "d", Vec2{1, -1});
    CHECK(position(s, s.bottom()) == Vec2{0, -2});
    CHECK(position(s, id_of(s, {"g1"})) == Vec2{-1, -1});
}

TEST_CASE("default seeds are spread over one row") {
    const auto s = ifox::build_state(fixtures::fcd3_old());
    const auto irr = s.irreducibles.indices();
    REQUIRE(irr.size() >= 2);
    const double width = double(irr.size() - 1) * kSeedSpacing;
    CHECK(assign_default_seed(s, irr.front()) == Vec2{-width / 2, -1});
    CHECK(assign_default_seed(s, irr.back()) == Vec2{width / 2, -1});
    CHECK(assign_default_seed(s, irr[1]) == assign_default_seed(s, irr[1]));
    CHECK(s.seeds.at(s.context.attributes()[irr.front()]) == Vec2{-width / 2, -1});
}

TEST_CASE("seeds are only for irreducible attributes") {
    auto s = ifox::build_state(apposition(fixtures::k2(), fixtures::k2_d()));
    CHECK_THROWS_AS(assign_default_seed(s, 1), ContractViolation);
    CHECK_THROWS_AS(set_seed(s, "b", Vec2{1, 1}), ContractViolation);
    CHECK_THROWS_AS(set_seed(s, "zz", Vec2{1, 1}), NotFound);
    CHECK_THROWS_AS(set_seed(s, "a", Vec2{std::nan(""), 1}), ContractViolation);
}

TEST_CASE("missing seed is a contract violation") {
    auto s = ifox::build_state(fixtures::k2());
    s.seeds.clear();
    CHECK_THROWS_AS(position(s, s.bottom()), ContractViolation);
}

TEST_CASE("moving a seed shifts exactly the concepts that contain it") {
    auto s = ifox::build_state(fixtures::fcd3_full());
    const auto before = positions(s);
    const auto m = s.irreducibles.first();
    const auto name = s.context.attributes()[m];
    set_seed(s, name, s.seeds.at(name) + Vec2{1, 0});
    for (const auto& [id, p] : positions(s)) {
        const bool moves = s.concept_at(id).intent.test(m);
        CHECK(p == (moves ? before.at(id) + Vec2{1, 0} : before.at(id)));
    }
}

TEST_CASE("inserting an irreducible column leaves concepts without it in place") {
    const auto s = ifox::build_state(fixtures::k2());
    const auto [next, cs] = ifox::insert_column(s, fixtures::k2_d());
    REQUIRE(next.irreducibles.test(2));
    CHECK(next.seeds.count("d") == 1);
    for (const auto& [id, c] : s.concepts)
        if (!next.concept_at(id).intent.test(2)) CHECK(position(next, id) == position(s, id));
}

TEST_CASE("old concepts keep their positions unless a seed they use changed") {
    verify::Rng rng(4);
    for (int i = 0; i < 100; ++i) {
        const auto k = verify::random_context(rng, 9, 7, 0.35);
        const auto s = ifox::build_state(k);
        const auto [next, cs] = ifox::insert_column(s, verify::random_column(rng, k, "n", 0.4));
        for (const auto& [id, cls] : cs.post_class) {
            if (cls != PostClass::Old) continue;
            bool touched = false;
            for (const auto& [name, seed] : cs.seeds_removed)
                touched |= next.concept_at(id).intent.test(next.context.attribute_index(name));
            if (!touched) CHECK(position(next, id) == position(s, id));
        }
    }
}

TEST_CASE("positions recomputed from scratch agree after every update") {
    verify::Rng rng(8);
    auto s = ifox::build_state(verify::random_context(rng, 10, 6, 0.3));
    for (int i = 0; i < 20; ++i) {
        auto [next, cs] = ifox::insert_column(s, verify::random_column(rng, s.context, "x" + std::to_string(i), 0.4));
        // Rebuild with the same seeds and compare every position.
        auto fresh = ifox::build_state(next.context);
        fresh.seeds = next.seeds;
        for (const auto& [id, c] : next.concepts)
            CHECK(position(next, id) == position(fresh, *fresh.find_extent(c.extent)));
        s = std::move(next);
    }
}
