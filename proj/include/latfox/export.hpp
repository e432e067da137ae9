#pragma once

// Diagram documents (JSON), Graphviz output and change set serialization.
//
// Document layout:
//   { "version": 3, "objects": [...], "attributes": [...], "nextId": 9,
//     "nodes": [{ "id", "extent", "intent", "pos": [x, y], "objectLabels",
//                 "attributeLabels", "changeClass": "old"|"varied"|"generated"|null }],
//     "edges": [[lower, upper]], "seeds": { name: [x, y] },
//     "upArrows": [[object, attribute]], "downArrows": [[object, attribute]] }
// `objects`, `attributes` and `nextId` keep column order and id allocation
// across a save/load cycle.

#include "latfox/changeset.hpp"
#include "latfox/diagram_state.hpp"

#include <json.hpp>

#include <string>

namespace latfox {

nlohmann::json document_json(const DiagramState& state);
std::string export_json(const DiagramState& state);
std::string export_dot(const DiagramState& state);

/// Rebuilds a state from a document. Incidence is read off the object
/// labels. Throws ParseError on malformed JSON and DocumentError on a
/// document that does not describe a diagram.
DiagramState state_from_document(const nlohmann::json& document);
DiagramState state_from_document_text(std::string_view text);

/// `context` supplies object names for the column extent (objects never
/// change across updates, so either side of the update will do).
nlohmann::json changeset_json(const ChangeSet& changes, const FormalContext& context);
ChangeSet changeset_from_json(const nlohmann::json& json, const FormalContext& context);

} // namespace latfox
