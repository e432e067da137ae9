#pragma once

#include "latfox/concept.hpp"
#include "latfox/context.hpp"
#include "latfox/vec2.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <vector>

namespace latfox {

/// Role a concept played in the most recent update.
enum class ChangeClass { Old, Varied, Generated };

/// The maintained concept diagram of one context: concepts, covering
/// relation, labels, irreducible attributes, seeds and both arrow relations.
///
/// Concept ids are stable across updates; retired ids are never reused.
/// Positions are not stored, they follow from the seeds (see layout.hpp).
struct DiagramState {
    FormalContext context;
    std::map<ConceptId, Concept> concepts;
    Neighbors upper;
    Neighbors lower;
    std::vector<ConceptId> gamma; // object index -> object concept
    std::vector<ConceptId> mu;    // attribute index -> attribute concept
    AttributeSet irreducibles;
    SeedMap seeds;
    ArrowRelation up_arrows;
    ArrowRelation down_arrows;
    std::uint64_t version = 0;
    std::uint64_t next_id = 0;
    std::map<ConceptId, ChangeClass> change_class;
    std::map<ObjectSet, ConceptId> by_extent;

    const Concept& concept_at(ConceptId id) const;
    std::optional<ConceptId> find_extent(const ObjectSet& extent) const;

    void add_concept(Concept c);
    void erase_concept(ConceptId id);
    void add_edge(Edge e);
    void remove_edge(Edge e);

    std::set<Edge> edges() const;
    std::size_t edge_count() const;

    ConceptId top() const;
    ConceptId bottom() const;

    /// Objects labelling `id` from below, attributes labelling it from above.
    std::vector<std::size_t> object_labels(ConceptId id) const;
    std::vector<std::size_t> attribute_labels(ConceptId id) const;
};

} // namespace latfox
