#pragma once

#include "latfox/diagram_state.hpp"
#include "latfox/vec2.hpp"

#include <map>
#include <string_view>

namespace latfox {

/// Horizontal distance between neighbouring default seeds.
inline constexpr double kSeedSpacing = 1.0;

/// Sum of the seeds of the irreducible attributes in the concept's intent.
/// Throws ContractViolation if one of those seeds is missing.
Vec2 position(const DiagramState& state, ConceptId id);

std::map<ConceptId, Vec2> positions(const DiagramState& state);

/// Default seed for irreducible attribute `m`: (k * spacing - W / 2, -1),
/// where k is m's rank among the irreducibles and W the width of the row of
/// all irreducible seeds. Throws ContractViolation if m is reducible.
Vec2 assign_default_seed(const DiagramState& state, std::size_t m);

/// Replaces the seed of an irreducible attribute. Throws NotFound for an
/// unknown attribute and ContractViolation for a reducible one.
void set_seed(DiagramState& state, std::string_view attribute, Vec2 seed);

} // namespace latfox
