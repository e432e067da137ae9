#pragma once

#include "latfox/bitset.hpp"

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <vector>

namespace latfox {

struct ConceptId {
    std::uint64_t value = 0;
    friend auto operator<=>(const ConceptId&, const ConceptId&) = default;
};

/// (extent, intent) with extent = intent^I and intent = extent^I.
struct Concept {
    ConceptId id;
    ObjectSet extent;
    AttributeSet intent;

    friend bool operator==(const Concept&, const Concept&) = default;
};

/// Covering pair: `lower` is a lower neighbor of `upper`.
struct Edge {
    ConceptId lower;
    ConceptId upper;
    friend auto operator<=>(const Edge&, const Edge&) = default;
};

using Neighbors = std::map<ConceptId, std::set<ConceptId>>;

/// Arrow relation stored row-wise: rows[g] holds the attributes m with g ~ m.
struct ArrowRelation {
    std::vector<AttributeSet> rows;

    bool contains(std::size_t g, std::size_t m) const { return rows.at(g).test(m); }
    std::size_t size() const {
        std::size_t n = 0;
        for (const auto& r : rows) n += r.count();
        return n;
    }
    friend bool operator==(const ArrowRelation&, const ArrowRelation&) = default;
};

} // namespace latfox

template <>
struct std::hash<latfox::ConceptId> {
    std::size_t operator()(latfox::ConceptId id) const noexcept {
        return std::hash<std::uint64_t>{}(id.value);
    }
};
