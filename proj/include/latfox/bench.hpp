#pragma once

// Random edit traces timed on the incremental path and on full rebuilds.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace latfox::bench {

struct BenchConfig {
    std::size_t objects = 60;
    std::size_t attributes = 40;
    std::size_t ops = 40;
    std::uint64_t seed = 1;
    double density = 0.25;
};

struct PathTotals {
    double milliseconds = 0.0;
    std::uint64_t full_enumerations = 0;
    std::uint64_t subset_tests = 0;
};

struct OpRecord {
    bool insert = true;
    std::string attribute;
    std::size_t concepts = 0;
    std::size_t generators = 0;
    double incremental_ms = 0.0;
    double full_ms = 0.0;
    std::uint64_t incremental_subset_tests = 0;
    std::uint64_t full_subset_tests = 0;
};

struct BenchReport {
    BenchConfig config;
    std::size_t initial_concepts = 0;
    PathTotals incremental;
    PathTotals full;
    std::vector<OpRecord> ops;
    /// Final incremental state matched a batch computation.
    bool final_state_matches = false;
};

BenchReport run(const BenchConfig& config);

nlohmann::json to_json(const BenchReport& report);
std::string to_text(const BenchReport& report);

} // namespace latfox::bench
