#include "latfox/oracle.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>

namespace latfox::oracle {

namespace {

// Lectically next closed intent after `current`, or nullopt after the last.
std::optional<AttributeSet> next_closure(const FormalContext& context, AttributeSet current) {
    const std::size_t m = context.attribute_count();
    for (std::size_t i = m; i-- > 0;) {
        if (current.test(i)) {
            current.reset(i);
            continue;
        }
        AttributeSet candidate = current;
        candidate.set(i);
        candidate = closure_intent(context, candidate);
        if ((candidate - current).first() == i) return candidate;
    }
    return std::nullopt;
}

} // namespace

std::vector<Concept> enumerate_concepts(const FormalContext& context) {
    ++counters().full_enumerations;
    std::vector<Concept> concepts;
    std::optional<AttributeSet> intent = closure_intent(context, context.no_attributes());
    while (intent) {
        concepts.push_back(Concept{ConceptId{concepts.size()}, derive_objects(context, *intent), *intent});
        intent = next_closure(context, *intent);
    }
    return concepts;
}

Covering covering_relation(std::span<const Concept> concepts) {
    Covering cover;
    std::vector<std::size_t> by_size(concepts.size());
    std::iota(by_size.begin(), by_size.end(), 0);
    std::stable_sort(by_size.begin(), by_size.end(), [&](std::size_t a, std::size_t b) {
        return concepts[a].extent.count() < concepts[b].extent.count();
    });

    for (const auto& c : concepts) {
        cover.upper[c.id];
        cover.lower[c.id];
    }
    for (const auto& c : concepts) {
        // Candidates are visited by increasing extent size, so any concept
        // strictly between c and a candidate has been seen (or is above a
        // cover already found).
        std::vector<std::size_t> found;
        for (auto j : by_size) {
            const auto& d = concepts[j];
            if (!c.extent.is_proper_subset_of(d.extent)) continue;
            bool covered = std::none_of(found.begin(), found.end(), [&](std::size_t k) {
                return concepts[k].extent.is_subset_of(d.extent);
            });
            if (covered) {
                found.push_back(j);
                cover.upper[c.id].insert(d.id);
                cover.lower[d.id].insert(c.id);
            }
        }
    }
    return cover;
}

Concept object_concept(const FormalContext& context, std::string_view object) {
    const auto g = context.object_index(object);
    const AttributeSet& intent = context.row(g);
    return Concept{ConceptId{}, derive_objects(context, intent), intent};
}

Concept attribute_concept(const FormalContext& context, std::string_view attribute) {
    const auto m = context.attribute_index(attribute);
    const ObjectSet& extent = context.column(m);
    return Concept{ConceptId{}, extent, derive_attributes(context, extent)};
}

AttributeSet irreducible_attributes(const FormalContext& context) {
    AttributeSet irreducible = context.no_attributes();
    for (std::size_t m = 0; m < context.attribute_count(); ++m) {
        ObjectSet meet = context.all_objects();
        for (std::size_t k = 0; k < context.attribute_count(); ++k)
            if (k != m && context.column(m).is_proper_subset_of(context.column(k)))
                meet &= context.column(k);
        if (meet != context.column(m)) irreducible.set(m);
    }
    return irreducible;
}

Arrows arrows(const FormalContext& context) {
    const std::size_t n_g = context.object_count();
    const std::size_t n_m = context.attribute_count();
    Arrows out;
    out.up.rows.assign(n_g, context.no_attributes());
    out.down.rows.assign(n_g, context.no_attributes());
    for (std::size_t g = 0; g < n_g; ++g) {
        for (std::size_t m = 0; m < n_m; ++m) {
            if (context.incident(g, m)) continue;
            bool down = true;
            for (std::size_t h = 0; h < n_g && down; ++h)
                if (context.row(g).is_proper_subset_of(context.row(h)) && !context.incident(h, m))
                    down = false;
            bool up = true;
            for (std::size_t k = 0; k < n_m && up; ++k)
                if (context.column(m).is_proper_subset_of(context.column(k)) && !context.incident(g, k))
                    up = false;
            if (down) out.down.rows[g].set(m);
            if (up) out.up.rows[g].set(m);
        }
    }
    return out;
}

bool is_redundant_column(const FormalContext& context, const AttributeColumn& column) {
    return closure_extent(context, column.extent) == column.extent;
}

LatticeSnapshot snapshot(const FormalContext& context) {
    LatticeSnapshot s;
    s.concepts = enumerate_concepts(context);
    s.covering = covering_relation(s.concepts);

    std::map<ObjectSet, ConceptId> by_extent;
    for (const auto& c : s.concepts) by_extent.emplace(c.extent, c.id);
    for (std::size_t g = 0; g < context.object_count(); ++g)
        s.gamma.push_back(by_extent.at(object_concept(context, context.objects()[g]).extent));
    for (std::size_t m = 0; m < context.attribute_count(); ++m)
        s.mu.push_back(by_extent.at(context.column(m)));

    s.irreducibles = irreducible_attributes(context);
    auto a = arrows(context);
    s.up_arrows = std::move(a.up);
    s.down_arrows = std::move(a.down);
    return s;
}

} // namespace latfox::oracle
