#pragma once

// Randomized checking of the incremental engine against the batch oracle.

#include "latfox/changeset.hpp"
#include "latfox/context.hpp"
#include "latfox/diagram_state.hpp"

#include <cstddef>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace latfox::verify {

using Rng = std::mt19937_64;

/// Objects g0.., attributes m0..; each cell is set with probability `density`.
FormalContext random_context(Rng& rng, std::size_t objects, std::size_t attributes, double density);
AttributeColumn random_column(Rng& rng, const FormalContext& context, std::string name, double density);

/// Keeps the listed objects and attributes, in their original order.
FormalContext restrict(const FormalContext& context, const ObjectSet& objects,
                       const AttributeSet& attributes);

/// Differences between the state and a batch computation on its context:
/// concepts, covering, labels, irreducibles and both arrow relations.
/// Concepts are matched by extent. Empty means equal.
std::vector<std::string> compare_with_oracle(const DiagramState& state);

/// Internal bookkeeping: extent index, edge symmetry, label ids, seed domain,
/// finite positions.
std::vector<std::string> check_consistency(const DiagramState& state);

struct CompareOptions {
    bool seeds = true;
    bool ids = false;                  // also require equal ids for equal extents
    std::set<ConceptId> fresh;         // ids of `a` exempt from the id check
    std::set<std::string> skip_seeds;  // seed names exempt from the seed check
};

/// Extent-keyed comparison of two states; version, id counter and change
/// classes are ignored.
std::vector<std::string> compare_states(const DiagramState& a, const DiagramState& b,
                                        const CompareOptions& options = {});

/// One randomized case. For Remove the engine starts from base|column and
/// removes the column again.
struct Trial {
    Direction direction = Direction::Insert;
    FormalContext base;
    AttributeColumn column;
};

struct TrialOptions {
    /// Negative control: damage the engine result before checking it.
    bool corrupt = false;
};

struct TrialReport {
    std::size_t concepts_before = 0;
    std::size_t concepts_after = 0;
    std::size_t generators = 0;
    bool redundant = false;
    std::vector<std::string> problems;
};

/// Oracle equivalence, change set replay, counter checks and both round
/// trips for one trial.
TrialReport run_trial(const Trial& trial, const TrialOptions& options = {});

/// Removal of attribute `m` from `context`, as a trial.
Trial removal_trial(const FormalContext& context, std::size_t m);

Trial random_trial(Rng& rng, Direction direction, std::size_t max_objects, std::size_t max_attributes,
                   double density);

/// Greedily drops objects and attributes while the trial keeps failing.
Trial shrink(const Trial& trial, const TrialOptions& options = {});

/// Apposition identities and the K|C membership criterion, on random
/// subsets of random appositions. Returns one message per failure.
std::vector<std::string> check_lemmas(Rng& rng, std::size_t samples);

} // namespace latfox::verify
