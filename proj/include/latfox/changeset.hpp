#pragma once

#include "latfox/concept.hpp"
#include "latfox/context.hpp"
#include "latfox/vec2.hpp"

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace latfox {

enum class Direction { Insert, Remove };

/// Classification of a concept of K with respect to a column C.
/// Generating concepts are old concepts whose intersection with n^J has
/// the same intent.
enum class PreClass { Old, Varying, Generating };

/// Classification of a concept of K|C.
enum class PostClass { Old, Varied, Generated };

struct ObjectMove {
    std::string object;
    ConceptId from;
    ConceptId to;
    friend bool operator==(const ObjectMove&, const ObjectMove&) = default;
};

/// Attribute label change; a missing side means the label appears/vanishes.
struct AttributeMove {
    std::string attribute;
    std::optional<ConceptId> from;
    std::optional<ConceptId> to;
    friend bool operator==(const AttributeMove&, const AttributeMove&) = default;
};

struct NamedPair {
    std::string object;
    std::string attribute;
    friend auto operator<=>(const NamedPair&, const NamedPair&) = default;
};

struct UpdateStats {
    std::size_t generators = 0;
    std::size_t varying = 0;
    std::uint64_t subset_tests = 0;
    std::uint64_t full_enumerations = 0;
    /// Down-arrow pairs whose fate the fast-path conditions left open and
    /// that were decided by the definitional check instead.
    std::vector<NamedPair> down_arrow_fallbacks;
};

/// Exact delta of one column insertion or removal.
///
/// `pre_class` always describes the concepts of the context without the
/// column and `post_class` those of the context with it, whatever the
/// direction; `generated` maps generator ids to the ids of their generated
/// concepts. A change set applied to its pre-state yields its post-state,
/// and its inverse undoes it.
struct ChangeSet {
    Direction direction = Direction::Insert;
    AttributeColumn column;
    bool redundant = false;
    std::map<ConceptId, PreClass> pre_class;
    std::map<ConceptId, PostClass> post_class;
    std::map<ConceptId, ConceptId> generated;
    std::vector<ConceptId> created;
    std::vector<ConceptId> retired;
    std::vector<Edge> edges_added;
    std::vector<Edge> edges_removed;
    std::vector<ObjectMove> object_moves;
    std::vector<AttributeMove> attribute_moves;
    SeedMap seeds_added;
    SeedMap seeds_removed;
    std::vector<NamedPair> up_added;
    std::vector<NamedPair> up_removed;
    std::vector<NamedPair> down_added;
    std::vector<NamedPair> down_removed;
    std::uint64_t version = 0; // version of the post-state
    UpdateStats stats;
};

} // namespace latfox
