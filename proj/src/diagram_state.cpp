#include "latfox/diagram_state.hpp"

#include "latfox/errors.hpp"

#include <string>

namespace latfox {

const Concept& DiagramState::concept_at(ConceptId id) const {
    auto it = concepts.find(id);
    if (it == concepts.end()) throw NotFound("unknown concept id " + std::to_string(id.value));
    return it->second;
}

std::optional<ConceptId> DiagramState::find_extent(const ObjectSet& extent) const {
    auto it = by_extent.find(extent);
    if (it == by_extent.end()) return std::nullopt;
    return it->second;
}

void DiagramState::add_concept(Concept c) {
    const ConceptId id = c.id;
    if (!by_extent.emplace(c.extent, id).second)
        throw ContractViolation("duplicate extent for concept " + std::to_string(id.value));
    if (!concepts.emplace(id, std::move(c)).second)
        throw ContractViolation("duplicate concept id " + std::to_string(id.value));
    upper[id];
    lower[id];
    if (id.value >= next_id) next_id = id.value + 1;
}

void DiagramState::erase_concept(ConceptId id) {
    const auto& c = concept_at(id);
    for (auto u : upper.at(id)) lower.at(u).erase(id);
    for (auto l : lower.at(id)) upper.at(l).erase(id);
    upper.erase(id);
    lower.erase(id);
    by_extent.erase(c.extent);
    change_class.erase(id);
    concepts.erase(id);
}

void DiagramState::add_edge(Edge e) {
    upper.at(e.lower).insert(e.upper);
    lower.at(e.upper).insert(e.lower);
}

void DiagramState::remove_edge(Edge e) {
    upper.at(e.lower).erase(e.upper);
    lower.at(e.upper).erase(e.lower);
}

std::set<Edge> DiagramState::edges() const {
    std::set<Edge> out;
    for (const auto& [l, ups] : upper)
        for (auto u : ups) out.insert(Edge{l, u});
    return out;
}

std::size_t DiagramState::edge_count() const {
    std::size_t n = 0;
    for (const auto& [l, ups] : upper) n += ups.size();
    return n;
}

ConceptId DiagramState::top() const {
    auto id = find_extent(context.all_objects());
    if (!id) throw ContractViolation("diagram has no top concept");
    return *id;
}

ConceptId DiagramState::bottom() const {
    auto id = find_extent(derive_objects(context, context.all_attributes()));
    if (!id) throw ContractViolation("diagram has no bottom concept");
    return *id;
}

std::vector<std::size_t> DiagramState::object_labels(ConceptId id) const {
    std::vector<std::size_t> out;
    for (std::size_t g = 0; g < gamma.size(); ++g)
        if (gamma[g] == id) out.push_back(g);
    return out;
}

std::vector<std::size_t> DiagramState::attribute_labels(ConceptId id) const {
    std::vector<std::size_t> out;
    for (std::size_t m = 0; m < mu.size(); ++m)
        if (mu[m] == id) out.push_back(m);
    return out;
}

} // namespace latfox
