#pragma once

// Incremental maintenance of a concept diagram under insertion and removal
// of a single attribute column.
//
// Concepts of K split into old (extent not inside n^J) and varying (extent
// inside n^J); an old concept is generating when its extent cut down to n^J
// still has the same intent. Across the update old concepts stay as they
// are, varying ones gain n in their intent, and every generating concept
// spawns a new concept (A & n^J, B + n) directly below it. Removal runs the
// same correspondence backwards.

#include "latfox/changeset.hpp"
#include "latfox/diagram_state.hpp"

#include <cstddef>
#include <map>
#include <string_view>
#include <utility>
#include <vector>

namespace latfox::ifox {

/// Batch construction of a diagram (the only path that enumerates concepts).
/// Ids are assigned in lectic order; every irreducible attribute gets its
/// default seed.
DiagramState build_state(const FormalContext& context);

PreClass classify_pre(const FormalContext& context, const AttributeColumn& column,
                      const Concept& c);

/// `extended` is K|C and `n` the index of the column attribute in it.
PostClass classify_post(const FormalContext& extended, std::size_t n, const Concept& c);

/// (A, B) -> (A & n^J, B + n), intent over K|C with n appended last.
/// Throws ContractViolation unless the concept is generating.
Concept generator_image(const FormalContext& context, const AttributeColumn& column,
                        const Concept& generator);

/// (A, B) -> (A, B + n). Throws ContractViolation unless A is inside n^J.
Concept varied_image(const AttributeColumn& column, const Concept& varying);

/// (A, B) -> (A, B - n) with intent over K.
Concept varied_preimage(const FormalContext& extended, std::size_t n, const Concept& varied);

/// (A, B) -> ((B - n)^I, B - n) with intent over K.
Concept generator_preimage(const FormalContext& extended, std::size_t n, const Concept& generated);

/// Optional seeds for attributes that become irreducible during an update;
/// anything not listed gets the default seed.
using SeedHints = SeedMap;

std::pair<DiagramState, ChangeSet> insert_column(const DiagramState& state,
                                                 const AttributeColumn& column,
                                                 const SeedHints& hints = {});

std::pair<DiagramState, ChangeSet> remove_column(const DiagramState& state, std::string_view name,
                                                 const SeedHints& hints = {});

/// Replays a change set on the state it was computed from.
DiagramState apply_changeset(const DiagramState& state, const ChangeSet& changes);

/// The change set that undoes `changes`.
ChangeSet invert(const ChangeSet& changes);

// Individual update stages, exposed for testing. Ids in the returned deltas
// refer to the state after the update; old and varying concepts keep their
// ids, so they are valid on both sides.

struct InsertPlan {
    AttributeColumn column;
    std::map<ConceptId, PreClass> classes;
    std::map<ConceptId, ConceptId> generated; // generator -> fresh id
};

struct RemovePlan {
    std::size_t n = 0; // index of the column attribute in K|C
    AttributeColumn column;
    std::map<ConceptId, PostClass> classes;
    std::map<ConceptId, ConceptId> generator_of; // generated -> generator
};

InsertPlan plan_insert(const DiagramState& state, const AttributeColumn& column);
RemovePlan plan_remove(const DiagramState& state, std::string_view name);

struct EdgeDelta {
    std::vector<Edge> added;
    std::vector<Edge> removed;
};

EdgeDelta update_neighborhood_insert(const DiagramState& state, const InsertPlan& plan);
EdgeDelta update_neighborhood_remove(const DiagramState& state, const RemovePlan& plan);

struct LabelDelta {
    std::vector<std::pair<std::size_t, ConceptId>> object_moves; // object -> new concept
    ConceptId column_concept{};                                   // mu(n), insertion only
};

LabelDelta update_labels_insert(const DiagramState& state, const InsertPlan& plan);
LabelDelta update_labels_remove(const DiagramState& state, const RemovePlan& plan);

struct ReducibilityDelta {
    AttributeSet irreducibles; // over the attributes of the target context
    std::vector<std::size_t> flipped; // target-context indices that changed status
    /// Removal only: for each attribute that became irreducible, the unique
    /// old upper neighbor of its attribute concept in K|C.
    std::map<std::size_t, ConceptId> old_upper;
};

/// `extended` is the partially updated K|C state with concepts and edges in
/// place; it decides the reducibility of n itself.
ReducibilityDelta update_reducibility_insert(const DiagramState& state, const InsertPlan& plan,
                                             const DiagramState& extended);
ReducibilityDelta update_reducibility_remove(const DiagramState& state, const RemovePlan& plan);

ArrowRelation update_up_arrows_insert(const DiagramState& state, const AttributeColumn& column);
ArrowRelation update_up_arrows_remove(const DiagramState& state, const RemovePlan& plan,
                                      const ReducibilityDelta& reducibility);

/// Pairs decided by the definitional fallback are appended to `fallbacks`.
ArrowRelation update_down_arrows_insert(const DiagramState& state, const AttributeColumn& column,
                                        std::vector<std::pair<std::size_t, std::size_t>>& fallbacks);
ArrowRelation update_down_arrows_remove(const DiagramState& state, const RemovePlan& plan);

} // namespace latfox::ifox
