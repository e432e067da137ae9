#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixtures.hpp"
#include "latfox/errors.hpp"
#include "latfox/instrumentation.hpp"
#include "latfox/oracle.hpp"
#include "latfox/verification.hpp"

#include <set>

using namespace latfox;

namespace {

// Independent reference: close every subset of G, then read covers, labels,
// irreducibles and arrows off the lattice order.
struct Brute {
    std::vector<ObjectSet> extents;
    std::set<std::pair<std::size_t, std::size_t>> covers; // (lower, upper) indices
    std::vector<std::size_t> gamma, mu;
    AttributeSet irreducibles;
    ArrowRelation up, down;
};

Brute brute(const FormalContext& k) {
    Brute b;
    std::set<ObjectSet> seen;
    const std::size_t n = k.object_count();
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        ObjectSet a(n);
        for (std::size_t i = 0; i < n; ++i)
            if (mask >> i & 1) a.set(i);
        seen.insert(closure_extent(k, a));
    }
    b.extents.assign(seen.begin(), seen.end());
    auto index = [&](const ObjectSet& e) {
        return std::size_t(std::find(b.extents.begin(), b.extents.end(), e) - b.extents.begin());
    };
    const auto size = b.extents.size();
    for (std::size_t i = 0; i < size; ++i)
        for (std::size_t j = 0; j < size; ++j) {
            if (!b.extents[i].is_proper_subset_of(b.extents[j])) continue;
            bool between = false;
            for (std::size_t c = 0; c < size && !between; ++c)
                between = b.extents[i].is_proper_subset_of(b.extents[c]) &&
                          b.extents[c].is_proper_subset_of(b.extents[j]);
            if (!between) b.covers.emplace(i, j);
        }
    for (std::size_t g = 0; g < n; ++g) b.gamma.push_back(index(derive_objects(k, k.row(g))));
    for (std::size_t m = 0; m < k.attribute_count(); ++m) b.mu.push_back(index(k.column(m)));

    b.irreducibles = k.no_attributes();
    b.up.rows.assign(n, k.no_attributes());
    b.down.rows.assign(n, k.no_attributes());
    for (std::size_t m = 0; m < k.attribute_count(); ++m) {
        std::vector<std::size_t> uppers;
        for (const auto& [l, u] : b.covers)
            if (l == b.mu[m]) uppers.push_back(u);
        if (uppers.size() == 1) b.irreducibles.set(m);
        for (std::size_t g = 0; g < n; ++g) {
            if (k.incident(g, m)) continue;
            if (std::all_of(uppers.begin(), uppers.end(), [&](std::size_t u) { return b.extents[u].test(g); }))
                b.up.rows[g].set(m);
            bool below = true;
            for (const auto& [l, u] : b.covers)
                if (u == b.gamma[g] && !b.extents[l].is_subset_of(k.column(m))) below = false;
            if (below) b.down.rows[g].set(m);
        }
    }
    return b;
}

void check_against_brute(const FormalContext& k) {
    const auto snap = oracle::snapshot(k);
    const auto b = brute(k);
    REQUIRE(snap.concepts.size() == b.extents.size());
    auto index = [&](ConceptId id) {
        const auto& e = snap.concepts[id.value].extent;
        return std::size_t(std::find(b.extents.begin(), b.extents.end(), e) - b.extents.begin());
    };
    for (const auto& c : snap.concepts) {
        CHECK(std::find(b.extents.begin(), b.extents.end(), c.extent) != b.extents.end());
        CHECK(c.intent == derive_attributes(k, c.extent));
    }
    std::set<std::pair<std::size_t, std::size_t>> covers;
    for (const auto& [l, ups] : snap.covering.upper)
        for (auto u : ups) covers.emplace(index(l), index(u));
    CHECK(covers == b.covers);
    for (std::size_t g = 0; g < k.object_count(); ++g) CHECK(index(snap.gamma[g]) == b.gamma[g]);
    for (std::size_t m = 0; m < k.attribute_count(); ++m) CHECK(index(snap.mu[m]) == b.mu[m]);
    CHECK(snap.irreducibles == b.irreducibles);
    CHECK(snap.up_arrows == b.up);
    CHECK(snap.down_arrows == b.down);
}

} // namespace

TEST_CASE("K2 lattice") {
    const auto k = fixtures::k2();
    const auto snap = oracle::snapshot(k);
    CHECK(snap.concepts.size() == 2);
    CHECK(snap.covering.upper.at(snap.gamma[0]).count(snap.gamma[1]) == 1);
    // b labels the top concept, which has no upper neighbor.
    CHECK(snap.irreducibles == AttributeSet::of(2, {0}));
    // g2 lacks a while the only larger row has it.
    CHECK(snap.down_arrows.contains(1, 0));
    CHECK(snap.up_arrows.contains(1, 0));
    CHECK(snap.down_arrows.size() == 1);
}

TEST_CASE("K2 with c has the same concepts, c is irreducible") {
    const auto kc = apposition(fixtures::k2(), fixtures::k2_c());
    const auto snap = oracle::snapshot(kc);
    CHECK(snap.concepts.size() == 2);
    CHECK(snap.mu[2] == snap.mu[0]);
    CHECK(snap.irreducibles.test(2));
    CHECK(oracle::is_redundant_column(fixtures::k2(), fixtures::k2_c()));
}

TEST_CASE("K2 with d: four concepts, b reducible") {
    const auto kd = apposition(fixtures::k2(), fixtures::k2_d());
    const auto snap = oracle::snapshot(kd);
    CHECK(snap.concepts.size() == 4);
    CHECK_FALSE(snap.irreducibles.test(1));
    CHECK(snap.irreducibles.test(0));
    CHECK(snap.irreducibles.test(2));
    CHECK(snap.down_arrows.contains(1, 0));
    CHECK_FALSE(oracle::is_redundant_column(fixtures::k2(), fixtures::k2_d()));
}

TEST_CASE("FCD3 sizes") {
    CHECK(oracle::enumerate_concepts(fixtures::fcd3_old()).size() == 14);
    CHECK(oracle::enumerate_concepts(fixtures::fcd3_full()).size() == 19);
}

TEST_CASE("intents come in lectic order") {
    const auto concepts = oracle::enumerate_concepts(fixtures::fcd3_full());
    for (std::size_t i = 1; i < concepts.size(); ++i) {
        const auto& a = concepts[i - 1].intent;
        const auto& b = concepts[i].intent;
        const auto diff = (a - b) | (b - a);
        REQUIRE_FALSE(diff.empty());
        CHECK(b.test(diff.first())); // the first differing attribute belongs to the later intent
    }
}

TEST_CASE("enumeration is counted") {
    reset_counters();
    oracle::snapshot(fixtures::k4());
    CHECK(counters().full_enumerations == 1);
}

TEST_CASE("labels by name") {
    const auto k = fixtures::k4();
    const auto mu_b = oracle::attribute_concept(k, "b");
    CHECK(mu_b.extent == k.object_set(std::vector<std::string>{"1", "2"}));
    const auto gamma_3 = oracle::object_concept(k, "3");
    CHECK(gamma_3.intent == k.attribute_set(std::vector<std::string>{"a"}));
    CHECK_THROWS_AS(oracle::object_concept(k, "9"), NotFound);
}

TEST_CASE("degenerate contexts") {
    check_against_brute(FormalContext({}, {}, {}));
    check_against_brute(fixtures::from_rows({"g"}, {}, {""}));
    check_against_brute(fixtures::from_rows({}, {"a", "b"}, {}));
    check_against_brute(fixtures::from_rows({"g", "h"}, {"a", "b"}, {"..", ".."}));
    check_against_brute(fixtures::from_rows({"g", "h"}, {"a", "b"}, {"XX", "XX"}));
    const auto snap = oracle::snapshot(FormalContext({}, {}, {}));
    CHECK(snap.concepts.size() == 1);
}

TEST_CASE("fixtures agree with brute force") {
    check_against_brute(fixtures::k2());
    check_against_brute(fixtures::k4());
    check_against_brute(fixtures::fcd3_old());
    check_against_brute(fixtures::fcd3_full());
}

TEST_CASE("random contexts agree with brute force") {
    verify::Rng rng(5);
    for (int i = 0; i < 150; ++i) {
        const double density = 0.15 + 0.15 * (i % 5);
        check_against_brute(verify::random_context(rng, 1 + i % 8, i % 7, density));
    }
}
