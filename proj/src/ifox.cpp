#include "latfox/ifox.hpp"

#include "latfox/errors.hpp"
#include "latfox/layout.hpp"
#include "latfox/oracle.hpp"

#include <algorithm>
#include <set>
#include <string>

namespace latfox::ifox {

namespace {

template <class Map>
auto class_of(const Map& classes, ConceptId id) {
    auto it = classes.find(id);
    if (it == classes.end())
        throw ContractViolation("concept " + std::to_string(id.value) + " was not classified");
    return it->second;
}

// Objects h with g^I a proper subset of h^I.
ObjectSet strict_row_supersets(const FormalContext& context, std::size_t g) {
    const auto& row = context.row(g);
    const auto size = row.count();
    ObjectSet out = derive_objects(context, row);
    out.for_each([&](std::size_t h) {
        if (context.row(h).count() == size) out.reset(h);
    });
    return out;
}

bool down_arrow_by_definition(const FormalContext& context, std::size_t g, std::size_t m) {
    return !context.incident(g, m) && strict_row_supersets(context, g).is_subset_of(context.column(m));
}

std::set<NamedPair> named_pairs(const FormalContext& context, const ArrowRelation& relation) {
    std::set<NamedPair> out;
    for (std::size_t g = 0; g < relation.rows.size(); ++g)
        relation.rows[g].for_each([&](std::size_t m) {
            out.insert(NamedPair{context.objects()[g], context.attributes()[m]});
        });
    return out;
}

void arrow_delta(const FormalContext& before_ctx, const ArrowRelation& before,
                 const FormalContext& after_ctx, const ArrowRelation& after,
                 std::vector<NamedPair>& added, std::vector<NamedPair>& removed) {
    const auto a = named_pairs(before_ctx, before);
    const auto b = named_pairs(after_ctx, after);
    std::set_difference(b.begin(), b.end(), a.begin(), a.end(), std::back_inserter(added));
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(removed));
}

ArrowRelation drop_column(const ArrowRelation& relation, std::size_t n) {
    ArrowRelation out;
    out.rows.reserve(relation.rows.size());
    for (const auto& r : relation.rows) out.rows.push_back(r.without(n));
    return out;
}

ArrowRelation append_column(const ArrowRelation& relation) {
    ArrowRelation out = relation;
    for (auto& r : out.rows) r.push_back(false);
    return out;
}

void check_column(const FormalContext& context, const AttributeColumn& column) {
    if (context.find_attribute(column.name))
        throw NameCollision("attribute '" + column.name + "' already exists");
    if (column.extent.universe() != context.object_count())
        throw ContractViolation("column extent is not over this context's objects");
}

Vec2 seed_for(const DiagramState& state, std::size_t m, const SeedHints& hints) {
    auto it = hints.find(state.context.attributes()[m]);
    if (it != hints.end()) return it->second;
    return assign_default_seed(state, m);
}

} // namespace

DiagramState build_state(const FormalContext& context) {
    auto snap = oracle::snapshot(context);
    DiagramState state;
    state.context = context;
    for (auto& c : snap.concepts) state.add_concept(std::move(c));
    for (const auto& [lower, ups] : snap.covering.upper)
        for (auto u : ups) state.add_edge(Edge{lower, u});
    state.gamma = std::move(snap.gamma);
    state.mu = std::move(snap.mu);
    state.irreducibles = std::move(snap.irreducibles);
    state.up_arrows = std::move(snap.up_arrows);
    state.down_arrows = std::move(snap.down_arrows);
    state.irreducibles.for_each([&](std::size_t m) {
        state.seeds[context.attributes()[m]] = assign_default_seed(state, m);
    });
    return state;
}

PreClass classify_pre(const FormalContext& context, const AttributeColumn& column,
                      const Concept& c) {
    if (c.extent.is_subset_of(column.extent)) return PreClass::Varying;
    if (derive_attributes(context, c.extent & column.extent) == c.intent)
        return PreClass::Generating;
    return PreClass::Old;
}

PostClass classify_post(const FormalContext& extended, std::size_t n, const Concept& c) {
    if (!c.intent.test(n)) return PostClass::Old;
    AttributeSet rest = c.intent;
    rest.reset(n);
    return derive_objects(extended, rest) == c.extent ? PostClass::Varied : PostClass::Generated;
}

Concept generator_image(const FormalContext& context, const AttributeColumn& column,
                        const Concept& generator) {
    if (classify_pre(context, column, generator) != PreClass::Generating)
        throw ContractViolation("generator_image applied to a non-generating concept");
    Concept out{generator.id, generator.extent & column.extent, generator.intent};
    out.intent.push_back(true);
    return out;
}

Concept varied_image(const AttributeColumn& column, const Concept& varying) {
    if (!varying.extent.is_subset_of(column.extent))
        throw ContractViolation("varied_image applied to a non-varying concept");
    Concept out = varying;
    out.intent.push_back(true);
    return out;
}

Concept varied_preimage(const FormalContext& extended, std::size_t n, const Concept& varied) {
    if (classify_post(extended, n, varied) != PostClass::Varied)
        throw ContractViolation("varied_preimage applied to a non-varied concept");
    return Concept{varied.id, varied.extent, varied.intent.without(n)};
}

Concept generator_preimage(const FormalContext& extended, std::size_t n, const Concept& generated) {
    if (classify_post(extended, n, generated) != PostClass::Generated)
        throw ContractViolation("generator_preimage applied to a non-generated concept");
    AttributeSet rest = generated.intent;
    rest.reset(n);
    return Concept{generated.id, derive_objects(extended, rest), rest.without(n)};
}

// ---------------------------------------------------------------------------
// Planning

InsertPlan plan_insert(const DiagramState& state, const AttributeColumn& column) {
    check_column(state.context, column);
    InsertPlan plan;
    plan.column = column;
    std::uint64_t fresh = state.next_id;
    for (const auto& [id, c] : state.concepts) {
        const auto cls = classify_pre(state.context, column, c);
        plan.classes.emplace(id, cls);
        if (cls == PreClass::Generating) plan.generated.emplace(id, ConceptId{fresh++});
    }
    return plan;
}

RemovePlan plan_remove(const DiagramState& state, std::string_view name) {
    RemovePlan plan;
    plan.n = state.context.attribute_index(name);
    plan.column = AttributeColumn{std::string(name), state.context.column(plan.n)};
    for (const auto& [id, c] : state.concepts) {
        const auto cls = classify_post(state.context, plan.n, c);
        plan.classes.emplace(id, cls);
        if (cls != PostClass::Generated) continue;
        AttributeSet rest = c.intent;
        rest.reset(plan.n);
        auto generator = state.find_extent(derive_objects(state.context, rest));
        if (!generator)
            throw ContractViolation("generated concept " + std::to_string(id.value) +
                                    " has no generator in the diagram");
        plan.generator_of.emplace(id, *generator);
    }
    return plan;
}

// ---------------------------------------------------------------------------
// Neighborhood

EdgeDelta update_neighborhood_insert(const DiagramState& state, const InsertPlan& plan) {
    EdgeDelta delta;

    // A varied concept is never covered by a generator any more: the new
    // concept of that generator now sits in between.
    for (const auto& [lower, ups] : state.upper) {
        if (class_of(plan.classes, lower) != PreClass::Varying) continue;
        for (auto u : ups)
            if (class_of(plan.classes, u) == PreClass::Generating) delta.removed.push_back(Edge{lower, u});
    }

    for (const auto& [generator, fresh] : plan.generated) delta.added.push_back(Edge{fresh, generator});

    // Lower neighbors of new concepts. For a generator a, the new concept of
    // a generator b > a covers n(a) iff no generator lies strictly between a
    // and b; for a varying a, it covers v(a) iff no generator or varying
    // concept lies strictly between. Varying concepts are never above
    // generators, so in both cases b must be a minimal element among the
    // non-old concepts strictly above a.
    std::vector<const Concept*> changing;
    for (const auto& [id, c] : state.concepts)
        if (class_of(plan.classes, id) != PreClass::Old) changing.push_back(&c);
    std::stable_sort(changing.begin(), changing.end(), [](const Concept* a, const Concept* b) {
        return a->extent.count() < b->extent.count();
    });

    std::vector<const Concept*> minimal;
    for (std::size_t i = 0; i < changing.size(); ++i) {
        const Concept& a = *changing[i];
        const auto a_class = class_of(plan.classes, a.id);
        const auto a_size = a.extent.count();
        minimal.clear();
        for (std::size_t j = i + 1; j < changing.size(); ++j) {
            const Concept& c = *changing[j];
            if (c.extent.count() == a_size || !a.extent.is_subset_of(c.extent)) continue;
            const bool blocked = std::any_of(minimal.begin(), minimal.end(), [&](const Concept* m) {
                return m->extent.is_subset_of(c.extent);
            });
            if (!blocked) minimal.push_back(&c);
        }
        for (const Concept* b : minimal) {
            if (class_of(plan.classes, b->id) != PreClass::Generating) continue;
            const ConceptId lower = a_class == PreClass::Generating ? plan.generated.at(a.id) : a.id;
            delta.added.push_back(Edge{lower, plan.generated.at(b->id)});
        }
    }
    return delta;
}

EdgeDelta update_neighborhood_remove(const DiagramState& state, const RemovePlan& plan) {
    EdgeDelta delta;
    std::set<ConceptId> generators;
    for (const auto& [generated, generator] : plan.generator_of) generators.insert(generator);

    for (const auto& [generated, generator] : plan.generator_of) {
        for (auto u : state.upper.at(generated)) delta.removed.push_back(Edge{generated, u});
        for (auto l : state.lower.at(generated))
            if (class_of(plan.classes, l) != PostClass::Generated) delta.removed.push_back(Edge{l, generated});
    }

    // A varied a covered by a new concept b is covered by b's generator in K
    // iff no really old concept lies strictly between a and the generator.
    for (const auto& [generated, generator] : plan.generator_of) {
        const auto& top = state.concept_at(generator).extent;
        for (auto a : state.lower.at(generated)) {
            if (class_of(plan.classes, a) != PostClass::Varied) continue;
            const auto& bottom = state.concept_at(a).extent;
            bool blocked = false;
            for (const auto& [id, c] : state.concepts) {
                if (class_of(plan.classes, id) != PostClass::Old || generators.count(id)) continue;
                if (bottom.is_proper_subset_of(c.extent) && c.extent.is_proper_subset_of(top)) {
                    blocked = true;
                    break;
                }
            }
            if (!blocked) delta.added.push_back(Edge{a, generator});
        }
    }
    return delta;
}

// ---------------------------------------------------------------------------
// Labels

LabelDelta update_labels_insert(const DiagramState& state, const InsertPlan& plan) {
    LabelDelta delta;
    const auto& extent = plan.column.extent;

    // Only objects labelling a generator and having n move down, to the new
    // concept right below.
    for (std::size_t g = 0; g < state.gamma.size(); ++g) {
        const auto id = state.gamma[g];
        if (!extent.test(g) || class_of(plan.classes, id) == PreClass::Varying) continue;
        auto it = plan.generated.find(id);
        if (it == plan.generated.end())
            throw ContractViolation("object concept of '" + state.context.objects()[g] +
                                    "' should be a generator");
        delta.object_moves.emplace_back(g, it->second);
    }

    if (plan.generated.empty()) {
        // Redundant column: n^J is already an extent, of a varying concept.
        auto id = state.find_extent(extent);
        if (!id || class_of(plan.classes, *id) != PreClass::Varying)
            throw ContractViolation("redundant column without a varying concept of extent n^J");
        delta.column_concept = *id;
        return delta;
    }

    // The attribute concept of n is the new concept of the greatest generator.
    const Concept* greatest = nullptr;
    for (const auto& [generator, fresh] : plan.generated) {
        const auto& c = state.concept_at(generator);
        if (!greatest || greatest->extent.is_proper_subset_of(c.extent)) greatest = &c;
    }
    for (const auto& [generator, fresh] : plan.generated)
        if (!state.concept_at(generator).extent.is_subset_of(greatest->extent))
            throw ContractViolation("generators have no greatest element");
    if (greatest->extent != closure_extent(state.context, extent))
        throw ContractViolation("greatest generator differs from the closure of n^J");
    delta.column_concept = plan.generated.at(greatest->id);
    return delta;
}

LabelDelta update_labels_remove(const DiagramState& state, const RemovePlan& plan) {
    LabelDelta delta;
    for (std::size_t g = 0; g < state.gamma.size(); ++g) {
        auto it = plan.generator_of.find(state.gamma[g]);
        if (it != plan.generator_of.end()) delta.object_moves.emplace_back(g, it->second);
    }
    return delta;
}

// ---------------------------------------------------------------------------
// Reducibility

ReducibilityDelta update_reducibility_insert(const DiagramState& state, const InsertPlan& plan,
                                             const DiagramState& extended) {
    ReducibilityDelta delta;
    delta.irreducibles = state.irreducibles;
    delta.irreducibles.push_back(false);

    // Reducible attributes stay reducible. An irreducible m becomes reducible
    // iff mu(m) is varying, its unique upper neighbor is really old, and some
    // generator lies above that neighbor.
    state.irreducibles.for_each([&](std::size_t m) {
        const auto attr_concept = state.mu[m];
        if (class_of(plan.classes, attr_concept) != PreClass::Varying) return;
        const auto& ups = state.upper.at(attr_concept);
        if (ups.size() != 1)
            throw ContractViolation("irreducible attribute '" + state.context.attributes()[m] +
                                    "' has no unique upper cover");
        const auto cover = *ups.begin();
        if (class_of(plan.classes, cover) != PreClass::Old) return;
        const auto& cover_extent = state.concept_at(cover).extent;
        const bool below_generator = std::any_of(
            plan.generated.begin(), plan.generated.end(), [&](const auto& entry) {
                return cover_extent.is_subset_of(state.concept_at(entry.first).extent);
            });
        if (below_generator) {
            delta.irreducibles.reset(m);
            delta.flipped.push_back(m);
        }
    });

    const std::size_t n = state.context.attribute_count();
    if (extended.upper.at(extended.mu.at(n)).size() == 1) delta.irreducibles.set(n);
    return delta;
}

ReducibilityDelta update_reducibility_remove(const DiagramState& state, const RemovePlan& plan) {
    ReducibilityDelta delta;
    delta.irreducibles = state.irreducibles.without(plan.n);

    // Irreducible attributes stay irreducible. A reducible m becomes
    // irreducible iff mu(m) is varied with exactly one old upper neighbor b
    // and all its other upper neighbors are new concepts generated from
    // concepts above b.
    for (std::size_t mc = 0; mc < state.context.attribute_count(); ++mc) {
        if (mc == plan.n || state.irreducibles.test(mc)) continue;
        const auto attr_concept = state.mu[mc];
        if (class_of(plan.classes, attr_concept) != PostClass::Varied) continue;
        std::vector<ConceptId> old_ups;
        std::vector<ConceptId> new_ups;
        bool other = false;
        for (auto u : state.upper.at(attr_concept)) {
            switch (class_of(plan.classes, u)) {
            case PostClass::Old: old_ups.push_back(u); break;
            case PostClass::Generated: new_ups.push_back(u); break;
            case PostClass::Varied: other = true; break;
            }
        }
        if (other || old_ups.size() != 1) continue;
        const auto& cover_extent = state.concept_at(old_ups.front()).extent;
        const bool all_above = std::all_of(new_ups.begin(), new_ups.end(), [&](ConceptId u) {
            return cover_extent.is_subset_of(state.concept_at(plan.generator_of.at(u)).extent);
        });
        if (!all_above) continue;
        const std::size_t m = mc < plan.n ? mc : mc - 1;
        delta.irreducibles.set(m);
        delta.flipped.push_back(m);
        delta.old_upper.emplace(m, old_ups.front());
    }
    return delta;
}

// ---------------------------------------------------------------------------
// Arrows

ArrowRelation update_up_arrows_insert(const DiagramState& state, const AttributeColumn& column) {
    const auto& context = state.context;
    const auto& extent = column.extent;
    const std::size_t n = context.attribute_count();
    ArrowRelation up = append_column(state.up_arrows);

    // Up arrows only change on G1 x M2 (all deleted) and G1 x {n}, where
    // G1 = objects without n and M2 = attributes with extent strictly inside n^J.
    AttributeSet m2 = context.no_attributes();
    ObjectSet above = context.all_objects();
    for (std::size_t m = 0; m < n; ++m) {
        if (context.column(m).is_proper_subset_of(extent)) m2.set(m);
        if (extent.is_proper_subset_of(context.column(m))) above &= context.column(m);
    }
    m2.push_back(false);
    for (std::size_t g = 0; g < context.object_count(); ++g) {
        if (extent.test(g)) continue;
        up.rows[g] -= m2;
        if (above.test(g)) up.rows[g].set(n);
    }
    return up;
}

ArrowRelation update_up_arrows_remove(const DiagramState& state, const RemovePlan& plan,
                                      const ReducibilityDelta& reducibility) {
    const auto& extended = state.context;
    const auto& extent = plan.column.extent;
    ArrowRelation up = drop_column(state.up_arrows, plan.n);

    for (std::size_t mc = 0; mc < extended.attribute_count(); ++mc) {
        if (mc == plan.n || !extended.column(mc).is_proper_subset_of(extent)) continue;
        const std::size_t m = mc < plan.n ? mc : mc - 1;

        // (a) m turns irreducible: arrows from objects below its old cover.
        if (auto it = reducibility.old_upper.find(m); it != reducibility.old_upper.end()) {
            const auto& cover = state.concept_at(it->second).extent;
            for (std::size_t g = 0; g < extended.object_count(); ++g)
                if (!extent.test(g) && cover.test(g)) up.rows[g].set(m);
            continue;
        }
        // (b) m irreducible with a new concept as its cover: arrows from old
        // object concepts below that concept's generator.
        if (!state.irreducibles.test(mc)) continue;
        const auto& ups = state.upper.at(state.mu[mc]);
        if (ups.size() != 1) continue;
        const auto cover = *ups.begin();
        if (class_of(plan.classes, cover) != PostClass::Generated) continue;
        const auto& generator = state.concept_at(plan.generator_of.at(cover)).extent;
        for (std::size_t g = 0; g < extended.object_count(); ++g) {
            if (extent.test(g)) continue;
            const auto object_concept = state.gamma[g];
            if (class_of(plan.classes, object_concept) == PostClass::Old &&
                state.concept_at(object_concept).extent.is_subset_of(generator))
                up.rows[g].set(m);
        }
    }
    return up;
}

ArrowRelation update_down_arrows_insert(const DiagramState& state, const AttributeColumn& column,
                                        std::vector<std::pair<std::size_t, std::size_t>>& fallbacks) {
    const auto& context = state.context;
    const auto& extent = column.extent;
    const auto extended = apposition(context, column);
    const std::size_t n = context.attribute_count();
    ArrowRelation down = append_column(state.down_arrows);

    for (std::size_t g = 0; g < context.object_count(); ++g) {
        const auto& row = context.row(g);
        if (!extent.test(g)) {
            // The arrows of g survive unless some object with the same
            // K-intent has n; such an object now lies strictly above g and
            // lacks every attribute g lacks.
            bool condition = true;
            for (std::size_t h = 0; h < context.object_count() && condition; ++h)
                if (extent.test(h) && context.row(h) == row) condition = false;
            if (condition) continue;
            state.down_arrows.rows[g].for_each([&](std::size_t m) {
                fallbacks.emplace_back(g, m);
                if (!down_arrow_by_definition(extended, g, m)) down.rows[g].reset(m);
            });
            continue;
        }
        // Objects above g in K|C are those above g in K that also have n, so
        // g keeps all its arrows. Arrows the fast path cannot confirm (some
        // object above g lacks n) are confirmed by definition and recorded.
        const auto above = strict_row_supersets(extended, g);
        if (!strict_row_supersets(context, g).is_subset_of(extent))
            state.down_arrows.rows[g].for_each([&](std::size_t m) {
                fallbacks.emplace_back(g, m);
                if (!above.is_subset_of(context.column(m))) down.rows[g].reset(m);
            });
        // With fewer objects above it, g may gain arrows.
        for (std::size_t m = 0; m < n; ++m)
            if (!row.test(m) && above.is_subset_of(context.column(m))) down.rows[g].set(m);
    }

    for (std::size_t g = 0; g < context.object_count(); ++g)
        if (!extent.test(g) && strict_row_supersets(extended, g).is_subset_of(extent))
            down.rows[g].set(n);
    return down;
}

ArrowRelation update_down_arrows_remove(const DiagramState& state, const RemovePlan& plan) {
    const auto context = split_column(state.context, plan.column.name).first;
    const auto& extent = plan.column.extent;
    ArrowRelation down = drop_column(state.down_arrows, plan.n);

    // Objects without n only gain objects above them in K|C, so their K|C
    // arrows survive and only the other pairs need checking. Objects with n
    // may get new objects above them and are checked in full.
    for (std::size_t g = 0; g < context.object_count(); ++g) {
        const auto above = strict_row_supersets(context, g);
        const bool full_check = extent.test(g);
        for (std::size_t m = 0; m < context.attribute_count(); ++m) {
            if (context.incident(g, m) || (!full_check && down.rows[g].test(m))) continue;
            down.rows[g].set(m, above.is_subset_of(context.column(m)));
        }
    }
    return down;
}

// ---------------------------------------------------------------------------
// Orchestration

std::pair<DiagramState, ChangeSet> insert_column(const DiagramState& state,
                                                 const AttributeColumn& column,
                                                 const SeedHints& hints) {
    const Counters before = counters();
    const auto plan = plan_insert(state, column);

    DiagramState next = state;
    next.context = apposition(state.context, column);
    const std::size_t n = state.context.attribute_count();

    for (auto& [id, c] : next.concepts) c.intent.push_back(plan.classes.at(id) == PreClass::Varying);
    for (const auto& [generator, fresh] : plan.generated) {
        Concept c = generator_image(state.context, column, state.concept_at(generator));
        c.id = fresh;
        next.add_concept(std::move(c));
    }

    const auto edges = update_neighborhood_insert(state, plan);
    for (const auto& e : edges.removed) next.remove_edge(e);
    for (const auto& e : edges.added) next.add_edge(e);

    const auto labels = update_labels_insert(state, plan);
    for (const auto& [g, to] : labels.object_moves) next.gamma[g] = to;
    next.mu.push_back(labels.column_concept);

    const auto reducibility = update_reducibility_insert(state, plan, next);
    next.irreducibles = reducibility.irreducibles;
    ChangeSet cs;
    for (auto m : reducibility.flipped) {
        const auto& name = next.context.attributes()[m];
        if (auto it = next.seeds.find(name); it != next.seeds.end()) {
            cs.seeds_removed.emplace(name, it->second);
            next.seeds.erase(it);
        }
    }
    if (next.irreducibles.test(n)) {
        const auto seed = seed_for(next, n, hints);
        next.seeds[column.name] = seed;
        cs.seeds_added.emplace(column.name, seed);
    }

    std::vector<std::pair<std::size_t, std::size_t>> fallbacks;
    next.up_arrows = update_up_arrows_insert(state, column);
    next.down_arrows = update_down_arrows_insert(state, column, fallbacks);

    next.change_class.clear();
    for (const auto& [id, cls] : plan.classes)
        next.change_class[id] = cls == PreClass::Varying ? ChangeClass::Varied : ChangeClass::Old;
    for (const auto& [generator, fresh] : plan.generated) next.change_class[fresh] = ChangeClass::Generated;
    next.version = state.version + 1;

    cs.direction = Direction::Insert;
    cs.column = column;
    cs.redundant = plan.generated.empty();
    cs.pre_class = plan.classes;
    for (const auto& [id, cls] : plan.classes)
        cs.post_class[id] = cls == PreClass::Varying ? PostClass::Varied : PostClass::Old;
    for (const auto& [generator, fresh] : plan.generated) {
        cs.post_class[fresh] = PostClass::Generated;
        cs.created.push_back(fresh);
    }
    cs.generated = plan.generated;
    cs.edges_added = edges.added;
    cs.edges_removed = edges.removed;
    for (const auto& [g, to] : labels.object_moves)
        cs.object_moves.push_back(ObjectMove{state.context.objects()[g], state.gamma[g], to});
    cs.attribute_moves.push_back(AttributeMove{column.name, std::nullopt, labels.column_concept});
    arrow_delta(state.context, state.up_arrows, next.context, next.up_arrows, cs.up_added, cs.up_removed);
    arrow_delta(state.context, state.down_arrows, next.context, next.down_arrows, cs.down_added,
                cs.down_removed);
    cs.version = next.version;

    cs.stats.generators = plan.generated.size();
    cs.stats.varying = static_cast<std::size_t>(std::count_if(
        plan.classes.begin(), plan.classes.end(),
        [](const auto& e) { return e.second == PreClass::Varying; }));
    for (const auto& [g, m] : fallbacks)
        cs.stats.down_arrow_fallbacks.push_back(
            NamedPair{state.context.objects()[g], state.context.attributes()[m]});
    cs.stats.subset_tests = counters().subset_tests - before.subset_tests;
    cs.stats.full_enumerations = counters().full_enumerations - before.full_enumerations;
    return {std::move(next), std::move(cs)};
}

std::pair<DiagramState, ChangeSet> remove_column(const DiagramState& state, std::string_view name,
                                                 const SeedHints& hints) {
    const Counters before = counters();
    const auto plan = plan_remove(state, name);
    const std::size_t n = plan.n;

    DiagramState next = state;
    next.context = split_column(state.context, name).first;

    const auto edges = update_neighborhood_remove(state, plan);
    for (const auto& e : edges.removed) next.remove_edge(e);
    for (const auto& [generated, generator] : plan.generator_of) next.erase_concept(generated);
    for (const auto& e : edges.added) next.add_edge(e);
    for (auto& [id, c] : next.concepts) c.intent = c.intent.without(n);

    const auto labels = update_labels_remove(state, plan);
    for (const auto& [g, to] : labels.object_moves) next.gamma[g] = to;
    next.mu.erase(next.mu.begin() + static_cast<std::ptrdiff_t>(n));

    const auto reducibility = update_reducibility_remove(state, plan);
    next.irreducibles = reducibility.irreducibles;
    ChangeSet cs;
    if (auto it = next.seeds.find(plan.column.name); it != next.seeds.end()) {
        cs.seeds_removed.emplace(it->first, it->second);
        next.seeds.erase(it);
    }
    for (auto m : reducibility.flipped) {
        const auto seed = seed_for(next, m, hints);
        next.seeds[next.context.attributes()[m]] = seed;
        cs.seeds_added.emplace(next.context.attributes()[m], seed);
    }

    next.up_arrows = update_up_arrows_remove(state, plan, reducibility);
    next.down_arrows = update_down_arrows_remove(state, plan);

    next.change_class.clear();
    for (const auto& [id, cls] : plan.classes)
        if (cls != PostClass::Generated)
            next.change_class[id] = cls == PostClass::Varied ? ChangeClass::Varied : ChangeClass::Old;
    next.version = state.version + 1;

    cs.direction = Direction::Remove;
    cs.column = plan.column;
    cs.redundant = plan.generator_of.empty();
    cs.post_class = plan.classes;
    for (const auto& [id, cls] : plan.classes) {
        if (cls == PostClass::Generated) continue;
        cs.pre_class[id] = cls == PostClass::Varied ? PreClass::Varying : PreClass::Old;
    }
    for (const auto& [generated, generator] : plan.generator_of) {
        cs.pre_class[generator] = PreClass::Generating;
        cs.generated.emplace(generator, generated);
        cs.retired.push_back(generated);
    }
    cs.edges_added = edges.added;
    cs.edges_removed = edges.removed;
    for (const auto& [g, to] : labels.object_moves)
        cs.object_moves.push_back(ObjectMove{state.context.objects()[g], state.gamma[g], to});
    cs.attribute_moves.push_back(AttributeMove{plan.column.name, state.mu[n], std::nullopt});
    arrow_delta(state.context, state.up_arrows, next.context, next.up_arrows, cs.up_added, cs.up_removed);
    arrow_delta(state.context, state.down_arrows, next.context, next.down_arrows, cs.down_added,
                cs.down_removed);
    cs.version = next.version;
    cs.stats.generators = plan.generator_of.size();
    cs.stats.varying = static_cast<std::size_t>(std::count_if(
        plan.classes.begin(), plan.classes.end(),
        [](const auto& e) { return e.second == PostClass::Varied; }));
    cs.stats.subset_tests = counters().subset_tests - before.subset_tests;
    cs.stats.full_enumerations = counters().full_enumerations - before.full_enumerations;
    return {std::move(next), std::move(cs)};
}

// ---------------------------------------------------------------------------
// Replay

DiagramState apply_changeset(const DiagramState& state, const ChangeSet& changes) {
    DiagramState next = state;
    const auto& column = changes.column;

    if (changes.direction == Direction::Insert) {
        next.context = apposition(state.context, column);
        for (auto& [id, c] : next.concepts) {
            auto it = changes.pre_class.find(id);
            if (it == changes.pre_class.end())
                throw ContractViolation("change set does not match this state");
            c.intent.push_back(it->second == PreClass::Varying);
        }
        for (const auto& [generator, fresh] : changes.generated) {
            const auto& g = state.concept_at(generator);
            Concept c{fresh, g.extent & column.extent, g.intent};
            c.intent.push_back(true);
            next.add_concept(std::move(c));
        }
        for (const auto& e : changes.edges_removed) next.remove_edge(e);
        for (const auto& e : changes.edges_added) next.add_edge(e);
        next.mu.push_back(ConceptId{});
    } else {
        const std::size_t n = state.context.attribute_index(column.name);
        next.context = split_column(state.context, column.name).first;
        for (const auto& e : changes.edges_removed) next.remove_edge(e);
        for (auto id : changes.retired) next.erase_concept(id);
        for (const auto& e : changes.edges_added) next.add_edge(e);
        for (auto& [id, c] : next.concepts) c.intent = c.intent.without(n);
        next.mu.erase(next.mu.begin() + static_cast<std::ptrdiff_t>(n));
    }

    for (const auto& move : changes.object_moves) next.gamma.at(next.context.object_index(move.object)) = move.to;
    for (const auto& move : changes.attribute_moves)
        if (move.to) next.mu.at(next.context.attribute_index(move.attribute)) = *move.to;

    for (const auto& [name, seed] : changes.seeds_removed) next.seeds.erase(name);
    for (const auto& [name, seed] : changes.seeds_added) next.seeds[name] = seed;
    next.irreducibles = next.context.no_attributes();
    for (const auto& [name, seed] : next.seeds) next.irreducibles.set(next.context.attribute_index(name));

    auto replay_arrows = [&](const ArrowRelation& before, const std::vector<NamedPair>& added,
                             const std::vector<NamedPair>& removed) {
        ArrowRelation out;
        if (changes.direction == Direction::Insert) {
            out = append_column(before);
        } else {
            out = drop_column(before, state.context.attribute_index(column.name));
        }
        for (const auto& p : removed) {
            if (p.attribute == column.name && changes.direction == Direction::Remove) continue;
            out.rows.at(next.context.object_index(p.object)).reset(next.context.attribute_index(p.attribute));
        }
        for (const auto& p : added)
            out.rows.at(next.context.object_index(p.object)).set(next.context.attribute_index(p.attribute));
        return out;
    };
    next.up_arrows = replay_arrows(state.up_arrows, changes.up_added, changes.up_removed);
    next.down_arrows = replay_arrows(state.down_arrows, changes.down_added, changes.down_removed);

    next.change_class.clear();
    for (const auto& [id, c] : next.concepts) {
        auto it = changes.post_class.find(id);
        if (changes.direction == Direction::Insert && it != changes.post_class.end()) {
            next.change_class[id] = it->second == PostClass::Generated ? ChangeClass::Generated
                                    : it->second == PostClass::Varied  ? ChangeClass::Varied
                                                                       : ChangeClass::Old;
        } else if (changes.direction == Direction::Remove) {
            auto pre = changes.pre_class.find(id);
            next.change_class[id] = pre != changes.pre_class.end() && pre->second == PreClass::Varying
                                        ? ChangeClass::Varied
                                        : ChangeClass::Old;
        }
    }
    next.version = changes.version;
    return next;
}

ChangeSet invert(const ChangeSet& changes) {
    ChangeSet inv = changes;
    inv.direction = changes.direction == Direction::Insert ? Direction::Remove : Direction::Insert;
    inv.created = changes.retired;
    inv.retired = changes.created;
    inv.edges_added = changes.edges_removed;
    inv.edges_removed = changes.edges_added;
    inv.object_moves.clear();
    for (const auto& m : changes.object_moves) inv.object_moves.push_back(ObjectMove{m.object, m.to, m.from});
    inv.attribute_moves.clear();
    for (const auto& m : changes.attribute_moves)
        inv.attribute_moves.push_back(AttributeMove{m.attribute, m.to, m.from});
    inv.seeds_added = changes.seeds_removed;
    inv.seeds_removed = changes.seeds_added;
    inv.up_added = changes.up_removed;
    inv.up_removed = changes.up_added;
    inv.down_added = changes.down_removed;
    inv.down_removed = changes.down_added;
    inv.version = changes.version + 1;
    inv.stats = UpdateStats{};
    return inv;
}

} // namespace latfox::ifox
