#pragma once

// Batch computation of everything the incremental engine maintains. This is
// the correctness baseline: it shares no update logic with the engine.

#include "latfox/concept.hpp"
#include "latfox/context.hpp"

#include <span>
#include <string_view>
#include <vector>

namespace latfox::oracle {

struct Covering {
    Neighbors upper;
    Neighbors lower;
};

struct LatticeSnapshot {
    std::vector<Concept> concepts; // ids are enumeration ordinals
    Covering covering;
    std::vector<ConceptId> gamma; // per object
    std::vector<ConceptId> mu;    // per attribute
    AttributeSet irreducibles;
    ArrowRelation up_arrows;
    ArrowRelation down_arrows;
};

/// All concepts, intents in lectic order (NextClosure). Counts as one full
/// enumeration in the instrumentation counters.
std::vector<Concept> enumerate_concepts(const FormalContext& context);

/// Transitive reduction of extent inclusion, by pairwise subset tests.
Covering covering_relation(std::span<const Concept> concepts);

/// gamma(g) = (g^II, g^I); throws NotFound on an unknown name.
Concept object_concept(const FormalContext& context, std::string_view object);
/// mu(m) = (m^I, m^II); throws NotFound on an unknown name.
Concept attribute_concept(const FormalContext& context, std::string_view attribute);

/// m is irreducible iff m^I differs from the intersection of all strictly
/// larger attribute extents (the empty intersection being G).
AttributeSet irreducible_attributes(const FormalContext& context);

struct Arrows {
    ArrowRelation up;
    ArrowRelation down;
};

/// Definitional scan over all non-incident pairs.
Arrows arrows(const FormalContext& context);

/// True iff the column extent already is an extent of the context.
bool is_redundant_column(const FormalContext& context, const AttributeColumn& column);

LatticeSnapshot snapshot(const FormalContext& context);

} // namespace latfox::oracle
