#include "latfox/verification.hpp"

#include "latfox/errors.hpp"
#include "latfox/ifox.hpp"
#include "latfox/instrumentation.hpp"
#include "latfox/layout.hpp"
#include "latfox/oracle.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace latfox::verify {

namespace {

std::string names(const std::vector<std::string>& v) {
    std::string out = "{";
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + v[i];
    return out + "}";
}

std::string extent_text(const FormalContext& context, const ObjectSet& extent) {
    return names(context.object_names(extent));
}

using ExtentEdge = std::pair<ObjectSet, ObjectSet>;

std::set<ExtentEdge> extent_edges(const DiagramState& state) {
    std::set<ExtentEdge> out;
    for (const auto& e : state.edges())
        out.emplace(state.concept_at(e.lower).extent, state.concept_at(e.upper).extent);
    return out;
}

void compare_arrows(const FormalContext& context, const char* what, const ArrowRelation& got,
                    const ArrowRelation& want, std::vector<std::string>& problems) {
    if (got.rows.size() != want.rows.size()) {
        problems.push_back(std::string(what) + " arrows: row count differs");
        return;
    }
    for (std::size_t g = 0; g < got.rows.size(); ++g) {
        if (got.rows[g].universe() != want.rows[g].universe()) {
            problems.push_back(std::string(what) + " arrows: column count differs");
            return;
        }
        for (std::size_t m = 0; m < got.rows[g].universe(); ++m) {
            if (got.rows[g].test(m) == want.rows[g].test(m)) continue;
            problems.push_back(std::string(what) + " arrow " + context.objects()[g] + "," +
                               context.attributes()[m] + (got.rows[g].test(m) ? " unexpected" : " missing"));
        }
    }
}

std::uniform_real_distribution<double> unit(0.0, 1.0);

ObjectSet random_objects(Rng& rng, std::size_t universe, double density) {
    ObjectSet s(universe);
    for (std::size_t i = 0; i < universe; ++i)
        if (unit(rng) < density) s.set(i);
    return s;
}

} // namespace

FormalContext random_context(Rng& rng, std::size_t objects, std::size_t attributes, double density) {
    std::vector<std::string> g, m;
    for (std::size_t i = 0; i < objects; ++i) g.push_back("g" + std::to_string(i));
    for (std::size_t i = 0; i < attributes; ++i) m.push_back("m" + std::to_string(i));
    std::vector<AttributeSet> rows;
    for (std::size_t i = 0; i < objects; ++i) {
        AttributeSet r(attributes);
        for (std::size_t j = 0; j < attributes; ++j)
            if (unit(rng) < density) r.set(j);
        rows.push_back(std::move(r));
    }
    return FormalContext(std::move(g), std::move(m), std::move(rows));
}

AttributeColumn random_column(Rng& rng, const FormalContext& context, std::string name, double density) {
    return AttributeColumn{std::move(name), random_objects(rng, context.object_count(), density)};
}

FormalContext restrict(const FormalContext& context, const ObjectSet& objects,
                       const AttributeSet& attributes) {
    std::vector<std::string> g = context.object_names(objects);
    std::vector<std::string> m = context.attribute_names(attributes);
    std::vector<AttributeSet> rows;
    objects.for_each([&](std::size_t i) {
        AttributeSet r(m.size());
        std::size_t k = 0;
        attributes.for_each([&](std::size_t j) {
            if (context.incident(i, j)) r.set(k);
            ++k;
        });
        rows.push_back(std::move(r));
    });
    return FormalContext(std::move(g), std::move(m), std::move(rows));
}

std::vector<std::string> compare_with_oracle(const DiagramState& state) {
    std::vector<std::string> problems;
    const auto& context = state.context;
    const auto snap = oracle::snapshot(context);

    std::map<ObjectSet, const Concept*> want;
    for (const auto& c : snap.concepts) want.emplace(c.extent, &c);
    if (want.size() != state.concepts.size())
        problems.push_back("concept count " + std::to_string(state.concepts.size()) + ", expected " +
                           std::to_string(want.size()));
    for (const auto& [id, c] : state.concepts) {
        auto it = want.find(c.extent);
        if (it == want.end()) {
            problems.push_back("concept " + std::to_string(id.value) + " with extent " +
                               extent_text(context, c.extent) + " is not a concept");
        } else if (it->second->intent != c.intent) {
            problems.push_back("concept " + std::to_string(id.value) + " has intent " +
                               names(context.attribute_names(c.intent)) + ", expected " +
                               names(context.attribute_names(it->second->intent)));
        }
    }
    for (const auto& [extent, c] : want)
        if (!state.find_extent(extent))
            problems.push_back("missing concept with extent " + extent_text(context, extent));

    std::set<ExtentEdge> want_edges;
    for (const auto& [lower, ups] : snap.covering.upper)
        for (auto u : ups) want_edges.emplace(snap.concepts[lower.value].extent, snap.concepts[u.value].extent);
    const auto got_edges = extent_edges(state);
    for (const auto& e : got_edges)
        if (!want_edges.count(e))
            problems.push_back("unexpected edge " + extent_text(context, e.first) + " < " +
                               extent_text(context, e.second));
    for (const auto& e : want_edges)
        if (!got_edges.count(e))
            problems.push_back("missing edge " + extent_text(context, e.first) + " < " +
                               extent_text(context, e.second));

    auto check_label = [&](const char* kind, const std::string& name, ConceptId got, ConceptId want_id) {
        auto it = state.concepts.find(got);
        const auto& expected = snap.concepts[want_id.value].extent;
        if (it == state.concepts.end() || it->second.extent != expected)
            problems.push_back(std::string(kind) + " label " + name + " on the wrong concept, expected extent " +
                               extent_text(context, expected));
    };
    if (state.gamma.size() != context.object_count() || state.mu.size() != context.attribute_count()) {
        problems.push_back("label vectors have the wrong length");
    } else {
        for (std::size_t g = 0; g < context.object_count(); ++g)
            check_label("object", context.objects()[g], state.gamma[g], snap.gamma[g]);
        for (std::size_t m = 0; m < context.attribute_count(); ++m)
            check_label("attribute", context.attributes()[m], state.mu[m], snap.mu[m]);
    }

    if (state.irreducibles != snap.irreducibles)
        problems.push_back("irreducibles " + names(context.attribute_names(state.irreducibles)) +
                           ", expected " + names(context.attribute_names(snap.irreducibles)));
    compare_arrows(context, "up", state.up_arrows, snap.up_arrows, problems);
    compare_arrows(context, "down", state.down_arrows, snap.down_arrows, problems);
    return problems;
}

std::vector<std::string> check_consistency(const DiagramState& state) {
    std::vector<std::string> problems;
    if (state.by_extent.size() != state.concepts.size()) problems.push_back("extent index size differs");
    for (const auto& [id, c] : state.concepts) {
        if (c.id != id) problems.push_back("concept " + std::to_string(id.value) + " stores another id");
        if (id.value >= state.next_id) problems.push_back("id " + std::to_string(id.value) + " not below next id");
        auto it = state.by_extent.find(c.extent);
        if (it == state.by_extent.end() || it->second != id)
            problems.push_back("extent index wrong for " + std::to_string(id.value));
        if (c.intent.universe() != state.context.attribute_count())
            problems.push_back("intent of " + std::to_string(id.value) + " has the wrong universe");
        if (!state.upper.count(id) || !state.lower.count(id))
            problems.push_back("no neighbor entry for " + std::to_string(id.value));
    }
    for (const auto& [id, ups] : state.upper)
        for (auto u : ups)
            if (!state.lower.count(u) || !state.lower.at(u).count(id))
                problems.push_back("edge " + std::to_string(id.value) + "<" + std::to_string(u.value) +
                                   " missing from the lower map");
    for (auto id : state.gamma)
        if (!state.concepts.count(id)) problems.push_back("object label on unknown concept");
    for (auto id : state.mu)
        if (!state.concepts.count(id)) problems.push_back("attribute label on unknown concept");

    std::set<std::string> irreducible_names;
    state.irreducibles.for_each([&](std::size_t m) { irreducible_names.insert(state.context.attributes()[m]); });
    std::set<std::string> seeded;
    for (const auto& [name, seed] : state.seeds) {
        seeded.insert(name);
        if (!seed.finite()) problems.push_back("seed of " + name + " is not finite");
    }
    if (seeded != irreducible_names) problems.push_back("seed domain differs from the irreducibles");
    else
        for (const auto& [id, p] : positions(state))
            if (!p.finite()) problems.push_back("position of " + std::to_string(id.value) + " is not finite");
    return problems;
}

std::vector<std::string> compare_states(const DiagramState& a, const DiagramState& b,
                                        const CompareOptions& options) {
    std::vector<std::string> problems;
    if (a.context != b.context) {
        problems.push_back("contexts differ");
        return problems;
    }
    const auto& context = a.context;
    if (a.concepts.size() != b.concepts.size()) problems.push_back("concept counts differ");
    for (const auto& [id, c] : a.concepts) {
        auto other = b.find_extent(c.extent);
        if (!other) {
            problems.push_back("extent " + extent_text(context, c.extent) + " only on the left");
            continue;
        }
        if (b.concept_at(*other).intent != c.intent)
            problems.push_back("intents differ for extent " + extent_text(context, c.extent));
        if (options.ids && *other != id && !options.fresh.count(id))
            problems.push_back("extent " + extent_text(context, c.extent) + " has id " + std::to_string(id.value) +
                               " vs " + std::to_string(other->value));
    }
    if (extent_edges(a) != extent_edges(b)) problems.push_back("covering relations differ");

    auto extent_of = [](const DiagramState& s, ConceptId id) { return s.concept_at(id).extent; };
    for (std::size_t g = 0; g < std::min(a.gamma.size(), b.gamma.size()); ++g)
        if (extent_of(a, a.gamma[g]) != extent_of(b, b.gamma[g]))
            problems.push_back("object label " + context.objects()[g] + " differs");
    for (std::size_t m = 0; m < std::min(a.mu.size(), b.mu.size()); ++m)
        if (extent_of(a, a.mu[m]) != extent_of(b, b.mu[m]))
            problems.push_back("attribute label " + context.attributes()[m] + " differs");
    if (a.irreducibles != b.irreducibles) problems.push_back("irreducibles differ");
    if (a.up_arrows != b.up_arrows) problems.push_back("up arrows differ");
    if (a.down_arrows != b.down_arrows) problems.push_back("down arrows differ");

    if (options.seeds) {
        std::set<std::string> names_seen;
        for (const auto* s : {&a.seeds, &b.seeds})
            for (const auto& [name, seed] : *s) names_seen.insert(name);
        for (const auto& name : names_seen) {
            if (options.skip_seeds.count(name)) continue;
            auto x = a.seeds.find(name);
            auto y = b.seeds.find(name);
            if (x == a.seeds.end() || y == b.seeds.end() || !(x->second == y->second))
                problems.push_back("seed of " + name + " differs");
        }
    }
    return problems;
}

namespace {

void append(std::vector<std::string>& into, const std::string& prefix, const std::vector<std::string>& from) {
    for (const auto& p : from) into.push_back(prefix + p);
}

void check_changeset(const DiagramState& before, const DiagramState& after, const ChangeSet& cs,
                     const std::string& prefix, std::vector<std::string>& problems) {
    if (cs.stats.full_enumerations != 0) problems.push_back(prefix + "engine enumerated concepts");
    if (cs.created.size() + cs.retired.size() != cs.generated.size())
        problems.push_back(prefix + "generated concept count differs from generator count");
    if (cs.redundant != cs.generated.empty()) problems.push_back(prefix + "redundancy flag inconsistent");
    if (after.version != before.version + 1 || cs.version != after.version)
        problems.push_back(prefix + "version not advanced by one");
    CompareOptions strict;
    strict.ids = true;
    try {
        const auto replayed = ifox::apply_changeset(before, cs);
        append(problems, prefix + "replay: ", compare_states(replayed, after, strict));
        const auto undone = ifox::apply_changeset(after, ifox::invert(cs));
        append(problems, prefix + "undo: ", compare_states(undone, before, strict));
    } catch (const std::exception& e) {
        problems.push_back(prefix + "replay threw: " + e.what());
    }

    // Old concepts keep their position unless a seed in their intent changed.
    std::set<std::string> touched;
    for (const auto* s : {&cs.seeds_added, &cs.seeds_removed})
        for (const auto& [name, seed] : *s) touched.insert(name);
    const auto& wider = cs.direction == Direction::Insert ? after : before;
    for (const auto& [id, cls] : cs.post_class) {
        if (cls != PostClass::Old || !before.concepts.count(id) || !after.concepts.count(id)) continue;
        const auto& intent = wider.concept_at(id).intent;
        bool depends = false;
        for (const auto& name : touched)
            if (auto m = wider.context.find_attribute(name); m && intent.test(*m)) depends = true;
        if (depends) continue;
        if (!(position(before, id) == position(after, id)))
            problems.push_back(prefix + "old concept " + std::to_string(id.value) + " moved");
    }
}

} // namespace

TrialReport run_trial(const Trial& trial, const TrialOptions& options) {
    TrialReport report;
    auto& problems = report.problems;
    try {
        const bool insert = trial.direction == Direction::Insert;
        const FormalContext start_context = insert ? trial.base : apposition(trial.base, trial.column);
        const auto start = ifox::build_state(start_context);
        report.concepts_before = start.concepts.size();

        const auto enumerations = counters().full_enumerations;
        auto [next, cs] = insert ? ifox::insert_column(start, trial.column)
                                 : ifox::remove_column(start, trial.column.name);
        if (counters().full_enumerations != enumerations) problems.push_back("engine enumerated concepts");
        if (options.corrupt && !next.edges().empty()) next.remove_edge(*next.edges().begin());
        report.concepts_after = next.concepts.size();
        report.generators = cs.generated.size();
        report.redundant = cs.redundant;

        append(problems, "oracle: ", compare_with_oracle(next));
        append(problems, "state: ", check_consistency(next));
        const FormalContext& narrow = insert ? trial.base : next.context;
        if (cs.redundant != oracle::is_redundant_column(narrow, trial.column))
            problems.push_back("redundancy flag disagrees with the oracle");
        check_changeset(start, next, cs, "changeset: ", problems);

        // Round trip back to the start.
        if (insert) {
            auto [back, undo] = ifox::remove_column(next, trial.column.name, cs.seeds_removed);
            CompareOptions o;
            o.ids = true;
            append(problems, "remove after insert: ", compare_states(back, start, o));
            check_changeset(next, back, undo, "remove after insert: ", problems);
        } else {
            auto [back, redo] = ifox::insert_column(next, trial.column, cs.seeds_removed);
            CompareOptions o;
            o.ids = true;
            for (const auto& [generated, generator] : cs.post_class)
                if (generator == PostClass::Generated) o.fresh.insert(generated);
            append(problems, "insert after remove: ", compare_states(start, back, o));
            check_changeset(next, back, redo, "insert after remove: ", problems);
        }
    } catch (const std::exception& e) {
        problems.push_back(std::string("exception: ") + e.what());
    }
    return report;
}

Trial removal_trial(const FormalContext& context, std::size_t m) {
    auto [base, column] = split_column(context, context.attributes().at(m));
    return Trial{Direction::Remove, std::move(base), std::move(column)};
}

Trial random_trial(Rng& rng, Direction direction, std::size_t max_objects, std::size_t max_attributes,
                   double density) {
    std::uniform_int_distribution<std::size_t> objects(0, max_objects);
    // Removal needs a column to remove, so base|column has at most max_attributes.
    std::uniform_int_distribution<std::size_t> attributes(0, max_attributes > 0 ? max_attributes - 1 : 0);
    Trial t;
    t.direction = direction;
    t.base = random_context(rng, objects(rng), attributes(rng), density);
    t.column = random_column(rng, t.base, "n", density);
    return t;
}

Trial shrink(const Trial& trial, const TrialOptions& options) {
    Trial best = trial;
    bool progress = true;
    while (progress) {
        progress = false;
        for (std::size_t g = 0; g < best.base.object_count() && !progress; ++g) {
            auto keep = best.base.all_objects();
            keep.reset(g);
            Trial t = best;
            t.base = restrict(best.base, keep, best.base.all_attributes());
            ObjectSet extent(keep.count());
            std::size_t k = 0;
            keep.for_each([&](std::size_t i) {
                if (best.column.extent.test(i)) extent.set(k);
                ++k;
            });
            t.column.extent = extent;
            if (!run_trial(t, options).problems.empty()) {
                best = std::move(t);
                progress = true;
            }
        }
        for (std::size_t m = 0; m < best.base.attribute_count() && !progress; ++m) {
            auto keep = best.base.all_attributes();
            keep.reset(m);
            Trial t = best;
            t.base = restrict(best.base, best.base.all_objects(), keep);
            if (!run_trial(t, options).problems.empty()) {
                best = std::move(t);
                progress = true;
            }
        }
    }
    return best;
}

std::vector<std::string> check_lemmas(Rng& rng, std::size_t samples) {
    std::vector<std::string> failures;
    std::uniform_int_distribution<std::size_t> size(1, 10);
    std::uniform_real_distribution<double> density(0.1, 0.7);
    for (std::size_t s = 0; s < samples; ++s) {
        const double d = density(rng);
        const auto k = random_context(rng, size(rng) + 2, size(rng), d);
        const auto column = random_column(rng, k, "n", d);
        const auto kc = apposition(k, column);
        const std::size_t n = k.attribute_count();
        const auto& nj = column.extent;
        auto fail = [&](const std::string& what) {
            failures.push_back("sample " + std::to_string(s) + ": " + what);
        };

        std::uniform_int_distribution<std::size_t> pick_g(0, k.object_count() - 1);
        const auto g = pick_g(rng);
        AttributeSet g_row = k.row(g);
        g_row.push_back(nj.test(g));
        if (kc.row(g) != g_row) fail("row of g in the apposition");
        if (n > 0) {
            std::uniform_int_distribution<std::size_t> pick_m(0, n - 1);
            const auto m = pick_m(rng);
            if (kc.column(m) != k.column(m)) fail("column of m in the apposition");
        }
        if (kc.column(n) != nj) fail("column of n in the apposition");

        const auto a = random_objects(rng, k.object_count(), unit(rng));
        AttributeSet b(n + 1);
        for (std::size_t i = 0; i <= n; ++i)
            if (unit(rng) < 0.3) b.set(i);
        const bool a_in_n = a.is_subset_of(nj);

        if (derive_attributes(kc, a).without(n) != derive_attributes(k, a)) fail("A' restricted to M");
        ObjectSet b_prime = derive_objects(k, b.without(n));
        if (b.test(n)) b_prime &= nj;
        if (derive_objects(kc, b) != b_prime) fail("B' in the apposition");
        ObjectSet a_jj = a_in_n ? nj : k.all_objects();
        if (closure_extent(kc, a) != (closure_extent(k, a) & a_jj)) fail("A'' in the apposition");

        // A concept of K lies inside n^J iff its J-derivation is {n}; a
        // concept of K|C does iff n is in its intent.
        const auto ext_k = closure_extent(k, a);
        const bool derives_n = ext_k.is_subset_of(nj);
        if (derives_n != derive_attributes(kc, ext_k).test(n)) fail("K concept membership in n^J");
        const auto ext_kc = closure_extent(kc, a);
        if (ext_kc.is_subset_of(nj) != derive_attributes(kc, ext_kc).test(n)) fail("K|C concept membership in n^J");
    }
    return failures;
}

} // namespace latfox::verify
