#include "latfox/layout.hpp"

#include "latfox/errors.hpp"

#include <string>

namespace latfox {

Vec2 position(const DiagramState& state, ConceptId id) {
    const auto& c = state.concept_at(id);
    Vec2 p;
    (c.intent & state.irreducibles).for_each([&](std::size_t m) {
        const auto& name = state.context.attributes()[m];
        auto it = state.seeds.find(name);
        if (it == state.seeds.end())
            throw ContractViolation("irreducible attribute '" + name + "' has no seed");
        p += it->second;
    });
    return p;
}

std::map<ConceptId, Vec2> positions(const DiagramState& state) {
    std::map<ConceptId, Vec2> out;
    for (const auto& [id, c] : state.concepts) out.emplace(id, position(state, id));
    return out;
}

Vec2 assign_default_seed(const DiagramState& state, std::size_t m) {
    if (m >= state.irreducibles.universe() || !state.irreducibles.test(m))
        throw ContractViolation("default seed requested for a reducible attribute");
    std::size_t rank = 0;
    for (auto i = state.irreducibles.first(); i < m; i = state.irreducibles.next(i)) ++rank;
    const double width = static_cast<double>(state.irreducibles.count() - 1) * kSeedSpacing;
    return Vec2{static_cast<double>(rank) * kSeedSpacing - width / 2.0, -1.0};
}

void set_seed(DiagramState& state, std::string_view attribute, Vec2 seed) {
    const auto m = state.context.attribute_index(attribute);
    if (!state.irreducibles.test(m))
        throw ContractViolation("attribute '" + std::string(attribute) + "' is reducible");
    if (!seed.finite()) throw ContractViolation("seed components must be finite");
    state.seeds[std::string(attribute)] = seed;
}

} // namespace latfox
