#include "latfox/bench.hpp"

#include "latfox/ifox.hpp"
#include "latfox/instrumentation.hpp"
#include "latfox/verification.hpp"

#include <chrono>
#include <iomanip>
#include <sstream>

namespace latfox::bench {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

} // namespace

BenchReport run(const BenchConfig& config) {
    BenchReport report;
    report.config = config;
    verify::Rng rng(config.seed);
    const auto context = verify::random_context(rng, config.objects, config.attributes, config.density);
    auto state = ifox::build_state(context);
    report.initial_concepts = state.concepts.size();

    std::bernoulli_distribution remove_coin(0.5);
    std::size_t fresh = 0;
    for (std::size_t i = 0; i < config.ops; ++i) {
        OpRecord op;
        const auto attributes = state.context.attribute_count();
        op.insert = attributes == 0 || !remove_coin(rng);
        AttributeColumn column;
        if (op.insert) {
            column = verify::random_column(rng, state.context, "x" + std::to_string(fresh++), config.density);
        } else {
            std::uniform_int_distribution<std::size_t> pick(0, attributes - 1);
            column.name = state.context.attributes()[pick(rng)];
        }
        op.attribute = column.name;

        const Counters before = counters();
        auto start = Clock::now();
        auto [next, changes] = op.insert ? ifox::insert_column(state, column) : ifox::remove_column(state, column.name);
        op.incremental_ms = ms_since(start);
        op.incremental_subset_tests = counters().subset_tests - before.subset_tests;
        report.incremental.full_enumerations += counters().full_enumerations - before.full_enumerations;

        const Counters middle = counters();
        start = Clock::now();
        const auto rebuilt = ifox::build_state(next.context);
        op.full_ms = ms_since(start);
        op.full_subset_tests = counters().subset_tests - middle.subset_tests;
        report.full.full_enumerations += counters().full_enumerations - middle.full_enumerations;

        op.concepts = next.concepts.size();
        op.generators = changes.generated.size();
        report.incremental.milliseconds += op.incremental_ms;
        report.incremental.subset_tests += op.incremental_subset_tests;
        report.full.milliseconds += op.full_ms;
        report.full.subset_tests += op.full_subset_tests;
        report.ops.push_back(op);
        state = std::move(next);
    }
    report.final_state_matches = verify::compare_with_oracle(state).empty();
    return report;
}

nlohmann::json to_json(const BenchReport& report) {
    using nlohmann::json;
    auto totals = [](const PathTotals& t) {
        return json{{"milliseconds", t.milliseconds},
                    {"fullEnumerations", t.full_enumerations},
                    {"subsetTests", t.subset_tests}};
    };
    json ops = json::array();
    for (const auto& op : report.ops)
        ops.push_back({{"op", op.insert ? "insert" : "remove"},
                       {"attribute", op.attribute},
                       {"concepts", op.concepts},
                       {"generators", op.generators},
                       {"incrementalMs", op.incremental_ms},
                       {"fullMs", op.full_ms},
                       {"incrementalSubsetTests", op.incremental_subset_tests},
                       {"fullSubsetTests", op.full_subset_tests}});
    return json{{"objects", report.config.objects},
                {"attributes", report.config.attributes},
                {"density", report.config.density},
                {"seed", report.config.seed},
                {"initialConcepts", report.initial_concepts},
                {"incremental", totals(report.incremental)},
                {"full", totals(report.full)},
                {"finalStateMatches", report.final_state_matches},
                {"ops", std::move(ops)}};
}

std::string to_text(const BenchReport& report) {
    std::ostringstream out;
    out << std::fixed << std::setprecision(3);
    out << report.config.objects << "x" << report.config.attributes << " context, density "
        << report.config.density << ", seed " << report.config.seed << ", " << report.initial_concepts
        << " concepts\n\n";
    out << " #  op      attribute  concepts  gens  incr ms   full ms\n";
    for (std::size_t i = 0; i < report.ops.size(); ++i) {
        const auto& op = report.ops[i];
        out << std::setw(2) << i << "  " << std::left << std::setw(7) << (op.insert ? "insert" : "remove")
            << " " << std::setw(10) << op.attribute << std::right << " " << std::setw(8) << op.concepts << " "
            << std::setw(5) << op.generators << " " << std::setw(8) << op.incremental_ms << " " << std::setw(9)
            << op.full_ms << "\n";
    }
    out << "\npath         total ms  full enumerations  subset tests\n";
    auto row = [&](const char* name, const PathTotals& t) {
        out << std::left << std::setw(12) << name << std::right << " " << std::setw(8) << t.milliseconds << " "
            << std::setw(18) << t.full_enumerations << " " << std::setw(13) << t.subset_tests << "\n";
    };
    row("incremental", report.incremental);
    row("full", report.full);
    out << "final state matches batch result: " << (report.final_state_matches ? "yes" : "no") << "\n";
    return out.str();
}

} // namespace latfox::bench
