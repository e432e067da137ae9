#include "latfox/export.hpp"

#include "latfox/errors.hpp"
#include "latfox/layout.hpp"

#include <algorithm>
#include <sstream>

namespace latfox {

using nlohmann::json;

namespace {

const char* change_class_name(ChangeClass c) {
    switch (c) {
    case ChangeClass::Old: return "old";
    case ChangeClass::Varied: return "varied";
    case ChangeClass::Generated: return "generated";
    }
    return "old";
}

ChangeClass parse_change_class(const std::string& s) {
    if (s == "old") return ChangeClass::Old;
    if (s == "varied") return ChangeClass::Varied;
    if (s == "generated") return ChangeClass::Generated;
    throw DocumentError("unknown change class '" + s + "'");
}

const char* pre_name(PreClass c) {
    switch (c) {
    case PreClass::Old: return "old";
    case PreClass::Varying: return "varying";
    case PreClass::Generating: return "generating";
    }
    return "old";
}

const char* post_name(PostClass c) {
    switch (c) {
    case PostClass::Old: return "old";
    case PostClass::Varied: return "varied";
    case PostClass::Generated: return "generated";
    }
    return "old";
}

PreClass parse_pre(const std::string& s) {
    if (s == "old") return PreClass::Old;
    if (s == "varying") return PreClass::Varying;
    if (s == "generating") return PreClass::Generating;
    throw DocumentError("unknown concept class '" + s + "'");
}

PostClass parse_post(const std::string& s) {
    if (s == "old") return PostClass::Old;
    if (s == "varied") return PostClass::Varied;
    if (s == "generated") return PostClass::Generated;
    throw DocumentError("unknown concept class '" + s + "'");
}

json vec(const Vec2& v) { return json::array({v.x, v.y}); }

Vec2 parse_vec(const json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw DocumentError("expected a vector [x, y]");
    return Vec2{j[0].get<double>(), j[1].get<double>()};
}

json seed_map(const SeedMap& seeds) {
    json out = json::object();
    for (const auto& [name, v] : seeds) out[name] = vec(v);
    return out;
}

SeedMap parse_seed_map(const json& j) {
    if (!j.is_object()) throw DocumentError("seeds must be an object");
    SeedMap out;
    for (const auto& [name, v] : j.items()) out[name] = parse_vec(v);
    return out;
}

json pairs(const std::vector<NamedPair>& v) {
    json out = json::array();
    for (const auto& p : v) out.push_back(json::array({p.object, p.attribute}));
    return out;
}

std::vector<NamedPair> parse_pairs(const json& j) {
    if (!j.is_array()) throw DocumentError("expected an array of pairs");
    std::vector<NamedPair> out;
    for (const auto& p : j) {
        if (!p.is_array() || p.size() != 2) throw DocumentError("expected a pair");
        out.push_back(NamedPair{p[0].get<std::string>(), p[1].get<std::string>()});
    }
    return out;
}

json arrow_pairs(const FormalContext& context, const ArrowRelation& relation) {
    json out = json::array();
    for (std::size_t g = 0; g < relation.rows.size(); ++g)
        relation.rows[g].for_each([&](std::size_t m) {
            out.push_back(json::array({context.objects()[g], context.attributes()[m]}));
        });
    return out;
}

ArrowRelation parse_arrows(const FormalContext& context, const json& j) {
    ArrowRelation out;
    out.rows.assign(context.object_count(), context.no_attributes());
    for (const auto& p : parse_pairs(j))
        out.rows[context.object_index(p.object)].set(context.attribute_index(p.attribute));
    return out;
}

json edges(const std::vector<Edge>& v) {
    json out = json::array();
    for (const auto& e : v) out.push_back(json::array({e.lower.value, e.upper.value}));
    return out;
}

std::vector<Edge> parse_edges(const json& j) {
    if (!j.is_array()) throw DocumentError("edges must be an array");
    std::vector<Edge> out;
    for (const auto& e : j) {
        if (!e.is_array() || e.size() != 2) throw DocumentError("an edge is a pair of ids");
        out.push_back(Edge{ConceptId{e[0].get<std::uint64_t>()}, ConceptId{e[1].get<std::uint64_t>()}});
    }
    return out;
}

std::vector<std::string> strings(const json& j) {
    if (!j.is_array()) throw DocumentError("expected an array of names");
    return j.get<std::vector<std::string>>();
}

const json& field(const json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end()) throw DocumentError(std::string("missing field '") + key + "'");
    return *it;
}

std::string dot_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out;
}

template <class Key, class Fn>
json id_map(const std::map<ConceptId, Key>& m, Fn name) {
    json out = json::object();
    for (const auto& [id, v] : m) out[std::to_string(id.value)] = name(v);
    return out;
}

ConceptId parse_id(const std::string& s) {
    try {
        std::size_t used = 0;
        auto v = std::stoull(s, &used);
        if (used != s.size()) throw DocumentError("bad concept id '" + s + "'");
        return ConceptId{v};
    } catch (const std::logic_error&) {
        throw DocumentError("bad concept id '" + s + "'");
    }
}

} // namespace

json document_json(const DiagramState& state) {
    const auto& context = state.context;
    std::map<ConceptId, std::vector<std::string>> object_labels, attribute_labels;
    for (std::size_t g = 0; g < state.gamma.size(); ++g) object_labels[state.gamma[g]].push_back(context.objects()[g]);
    for (std::size_t m = 0; m < state.mu.size(); ++m) attribute_labels[state.mu[m]].push_back(context.attributes()[m]);

    json nodes = json::array();
    for (const auto& [id, c] : state.concepts) {
        json node;
        node["id"] = id.value;
        node["extent"] = context.object_names(c.extent);
        node["intent"] = context.attribute_names(c.intent);
        node["pos"] = vec(position(state, id));
        node["objectLabels"] = object_labels.count(id) ? json(object_labels[id]) : json::array();
        node["attributeLabels"] = attribute_labels.count(id) ? json(attribute_labels[id]) : json::array();
        auto cls = state.change_class.find(id);
        node["changeClass"] = cls == state.change_class.end() ? json(nullptr) : json(change_class_name(cls->second));
        nodes.push_back(std::move(node));
    }
    const auto all_edges = state.edges();

    json doc;
    doc["version"] = state.version;
    doc["objects"] = context.objects();
    doc["attributes"] = context.attributes();
    doc["nextId"] = state.next_id;
    doc["nodes"] = std::move(nodes);
    doc["edges"] = edges(std::vector<Edge>(all_edges.begin(), all_edges.end()));
    doc["seeds"] = seed_map(state.seeds);
    doc["upArrows"] = arrow_pairs(context, state.up_arrows);
    doc["downArrows"] = arrow_pairs(context, state.down_arrows);
    return doc;
}

std::string export_json(const DiagramState& state) { return document_json(state).dump(2) + "\n"; }

std::string export_dot(const DiagramState& state) {
    const auto& context = state.context;
    std::ostringstream out;
    out << "digraph lattice {\n  rankdir=BT;\n  node [shape=box];\n";
    for (const auto& [id, c] : state.concepts) {
        std::string attrs, objs;
        for (auto m : state.attribute_labels(id)) attrs += (attrs.empty() ? "" : ", ") + context.attributes()[m];
        for (auto g : state.object_labels(id)) objs += (objs.empty() ? "" : ", ") + context.objects()[g];
        out << "  c" << id.value << " [label=\"" << dot_escape(attrs) << "\\n" << dot_escape(objs) << "\"];\n";
    }
    for (const auto& e : state.edges()) out << "  c" << e.lower.value << " -> c" << e.upper.value << ";\n";
    out << "}\n";
    return out.str();
}

DiagramState state_from_document(const json& doc) {
    try {
        if (!doc.is_object()) throw DocumentError("a diagram document is a JSON object");
        const auto objects = strings(field(doc, "objects"));
        const auto attributes = strings(field(doc, "attributes"));
        const auto& nodes = field(doc, "nodes");
        if (!nodes.is_array()) throw DocumentError("nodes must be an array");

        // The intent of an object's labelled node is its row.
        std::vector<std::optional<std::vector<std::string>>> rows(objects.size());
        FormalContext names_only(objects, attributes,
                                 std::vector<AttributeSet>(objects.size(), AttributeSet(attributes.size())));
        for (const auto& node : nodes)
            for (const auto& g : strings(field(node, "objectLabels"))) {
                auto& row = rows[names_only.object_index(g)];
                if (row) throw DocumentError("object '" + g + "' labels two nodes");
                row = strings(field(node, "intent"));
            }
        std::vector<AttributeSet> incidence;
        for (std::size_t g = 0; g < objects.size(); ++g) {
            if (!rows[g]) throw DocumentError("object '" + objects[g] + "' labels no node");
            incidence.push_back(names_only.attribute_set(*rows[g]));
        }

        DiagramState state;
        state.context = FormalContext(objects, attributes, std::move(incidence));
        const auto& context = state.context;
        state.gamma.assign(objects.size(), ConceptId{});
        state.mu.assign(attributes.size(), ConceptId{});
        std::vector<bool> mu_seen(attributes.size(), false);
        for (const auto& node : nodes) {
            Concept c{ConceptId{field(node, "id").get<std::uint64_t>()},
                      context.object_set(strings(field(node, "extent"))),
                      context.attribute_set(strings(field(node, "intent")))};
            if (derive_attributes(context, c.extent) != c.intent || derive_objects(context, c.intent) != c.extent)
                throw DocumentError("node " + std::to_string(c.id.value) + " is not a concept");
            for (const auto& g : strings(field(node, "objectLabels"))) state.gamma[context.object_index(g)] = c.id;
            for (const auto& m : strings(field(node, "attributeLabels"))) {
                auto i = context.attribute_index(m);
                if (mu_seen[i]) throw DocumentError("attribute '" + m + "' labels two nodes");
                mu_seen[i] = true;
                state.mu[i] = c.id;
            }
            const auto& cls = field(node, "changeClass");
            if (!cls.is_null()) state.change_class[c.id] = parse_change_class(cls.get<std::string>());
            state.add_concept(std::move(c));
        }
        for (std::size_t m = 0; m < attributes.size(); ++m)
            if (!mu_seen[m]) throw DocumentError("attribute '" + attributes[m] + "' labels no node");
        for (std::size_t g = 0; g < objects.size(); ++g)
            if (state.concept_at(state.gamma[g]).intent != context.row(g))
                throw DocumentError("object '" + objects[g] + "' labels the wrong node");
        for (std::size_t m = 0; m < attributes.size(); ++m)
            if (state.concept_at(state.mu[m]).extent != context.column(m))
                throw DocumentError("attribute '" + attributes[m] + "' labels the wrong node");
        for (const auto& e : parse_edges(field(doc, "edges"))) {
            if (!state.concepts.count(e.lower) || !state.concepts.count(e.upper))
                throw DocumentError("edge refers to an unknown node");
            state.add_edge(e);
        }
        state.seeds = parse_seed_map(field(doc, "seeds"));
        state.irreducibles = context.no_attributes();
        for (const auto& [name, seed] : state.seeds) {
            if (!seed.finite()) throw DocumentError("seed of '" + name + "' is not finite");
            state.irreducibles.set(context.attribute_index(name));
        }
        state.up_arrows = parse_arrows(context, field(doc, "upArrows"));
        state.down_arrows = parse_arrows(context, field(doc, "downArrows"));
        state.version = field(doc, "version").get<std::uint64_t>();
        const auto next = field(doc, "nextId").get<std::uint64_t>();
        if (next < state.next_id) throw DocumentError("nextId is below an existing id");
        state.next_id = next;
        return state;
    } catch (const json::exception& e) {
        throw DocumentError(std::string("malformed diagram document: ") + e.what());
    } catch (const NotFound& e) {
        throw DocumentError(std::string("malformed diagram document: ") + e.what());
    } catch (const NameCollision& e) {
        throw DocumentError(std::string("malformed diagram document: ") + e.what());
    } catch (const ContractViolation& e) {
        throw DocumentError(std::string("malformed diagram document: ") + e.what());
    }
}

DiagramState state_from_document_text(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        const auto upto = std::min<std::size_t>(e.byte, text.size());
        const auto line = 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + upto, '\n'));
        throw ParseError(line, e.what());
    }
    return state_from_document(doc);
}

json changeset_json(const ChangeSet& cs, const FormalContext& context) {
    json out;
    out["direction"] = cs.direction == Direction::Insert ? "insert" : "remove";
    out["column"] = {{"name", cs.column.name}, {"extent", context.object_names(cs.column.extent)}};
    out["redundant"] = cs.redundant;
    out["preClass"] = id_map(cs.pre_class, pre_name);
    out["postClass"] = id_map(cs.post_class, post_name);
    out["generated"] = id_map(cs.generated, [](ConceptId id) { return id.value; });
    json created = json::array(), retired = json::array();
    for (auto id : cs.created) created.push_back(id.value);
    for (auto id : cs.retired) retired.push_back(id.value);
    out["created"] = std::move(created);
    out["retired"] = std::move(retired);
    out["edgesAdded"] = edges(cs.edges_added);
    out["edgesRemoved"] = edges(cs.edges_removed);
    json moves = json::array();
    for (const auto& m : cs.object_moves) moves.push_back({{"object", m.object}, {"from", m.from.value}, {"to", m.to.value}});
    out["objectMoves"] = std::move(moves);
    json attr_moves = json::array();
    for (const auto& m : cs.attribute_moves)
        attr_moves.push_back({{"attribute", m.attribute},
                              {"from", m.from ? json(m.from->value) : json(nullptr)},
                              {"to", m.to ? json(m.to->value) : json(nullptr)}});
    out["attributeMoves"] = std::move(attr_moves);
    out["seedsAdded"] = seed_map(cs.seeds_added);
    out["seedsRemoved"] = seed_map(cs.seeds_removed);
    out["upAdded"] = pairs(cs.up_added);
    out["upRemoved"] = pairs(cs.up_removed);
    out["downAdded"] = pairs(cs.down_added);
    out["downRemoved"] = pairs(cs.down_removed);
    out["version"] = cs.version;
    out["stats"] = {{"generators", cs.stats.generators},
                    {"varying", cs.stats.varying},
                    {"subsetTests", cs.stats.subset_tests},
                    {"fullEnumerations", cs.stats.full_enumerations},
                    {"downArrowFallbacks", pairs(cs.stats.down_arrow_fallbacks)}};
    return out;
}

ChangeSet changeset_from_json(const json& j, const FormalContext& context) {
    try {
        ChangeSet cs;
        const auto direction = field(j, "direction").get<std::string>();
        if (direction != "insert" && direction != "remove") throw DocumentError("unknown direction '" + direction + "'");
        cs.direction = direction == "insert" ? Direction::Insert : Direction::Remove;
        const auto& column = field(j, "column");
        cs.column.name = field(column, "name").get<std::string>();
        cs.column.extent = context.object_set(strings(field(column, "extent")));
        cs.redundant = field(j, "redundant").get<bool>();
        for (const auto& [id, v] : field(j, "preClass").items()) cs.pre_class[parse_id(id)] = parse_pre(v.get<std::string>());
        for (const auto& [id, v] : field(j, "postClass").items()) cs.post_class[parse_id(id)] = parse_post(v.get<std::string>());
        for (const auto& [id, v] : field(j, "generated").items())
            cs.generated[parse_id(id)] = ConceptId{v.get<std::uint64_t>()};
        for (const auto& v : field(j, "created")) cs.created.push_back(ConceptId{v.get<std::uint64_t>()});
        for (const auto& v : field(j, "retired")) cs.retired.push_back(ConceptId{v.get<std::uint64_t>()});
        cs.edges_added = parse_edges(field(j, "edgesAdded"));
        cs.edges_removed = parse_edges(field(j, "edgesRemoved"));
        for (const auto& m : field(j, "objectMoves"))
            cs.object_moves.push_back(ObjectMove{field(m, "object").get<std::string>(),
                                                 ConceptId{field(m, "from").get<std::uint64_t>()},
                                                 ConceptId{field(m, "to").get<std::uint64_t>()}});
        auto optional_id = [](const json& v) -> std::optional<ConceptId> {
            if (v.is_null()) return std::nullopt;
            return ConceptId{v.get<std::uint64_t>()};
        };
        for (const auto& m : field(j, "attributeMoves"))
            cs.attribute_moves.push_back(AttributeMove{field(m, "attribute").get<std::string>(),
                                                       optional_id(field(m, "from")), optional_id(field(m, "to"))});
        cs.seeds_added = parse_seed_map(field(j, "seedsAdded"));
        cs.seeds_removed = parse_seed_map(field(j, "seedsRemoved"));
        cs.up_added = parse_pairs(field(j, "upAdded"));
        cs.up_removed = parse_pairs(field(j, "upRemoved"));
        cs.down_added = parse_pairs(field(j, "downAdded"));
        cs.down_removed = parse_pairs(field(j, "downRemoved"));
        cs.version = field(j, "version").get<std::uint64_t>();
        if (auto it = j.find("stats"); it != j.end()) {
            cs.stats.generators = it->value("generators", std::size_t{0});
            cs.stats.varying = it->value("varying", std::size_t{0});
            cs.stats.subset_tests = it->value("subsetTests", std::uint64_t{0});
            cs.stats.full_enumerations = it->value("fullEnumerations", std::uint64_t{0});
            if (auto f = it->find("downArrowFallbacks"); f != it->end()) cs.stats.down_arrow_fallbacks = parse_pairs(*f);
        }
        return cs;
    } catch (const json::exception& e) {
        throw DocumentError(std::string("malformed change set: ") + e.what());
    } catch (const NotFound& e) {
        throw DocumentError(std::string("malformed change set: ") + e.what());
    }
}

} // namespace latfox
