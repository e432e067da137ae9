// latfox: build, edit, check, export and serve concept diagrams.
//
// Exit codes: 0 ok, 1 verification failure, 2 input error, 3 conflict.

#include "latfox/bench.hpp"
#include "latfox/cxt.hpp"
#include "latfox/errors.hpp"
#include "latfox/export.hpp"
#include "latfox/ifox.hpp"
#include "latfox/service.hpp"
#include "latfox/verification.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using namespace latfox;
using nlohmann::json;

namespace {

constexpr int kOk = 0;
constexpr int kVerifyFailed = 1;
constexpr int kInputError = 2;
constexpr int kConflict = 3;

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read " + path.string());
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    const fs::path target(path);
    const fs::path tmp = target.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        out << text;
        if (!out) throw Error("cannot write " + tmp.string());
    }
    fs::rename(tmp, target);
}

DiagramState load_diagram(const std::string& path) { return state_from_document_text(read_file(path)); }

std::vector<std::string> split_names(const std::string& text) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : text) {
        if (c == ',' || c == '\n' || c == '\r') {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    for (auto& s : out) {
        auto b = s.find_first_not_of(" \t");
        auto e = s.find_last_not_of(" \t");
        s = b == std::string::npos ? "" : s.substr(b, e - b + 1);
    }
    std::erase(out, "");
    return out;
}

std::pair<std::size_t, std::size_t> parse_size(const std::string& text) {
    auto x = text.find('x');
    try {
        if (x == std::string::npos) throw std::invalid_argument(text);
        std::size_t used = 0;
        auto a = std::stoul(text.substr(0, x), &used);
        if (used != x) throw std::invalid_argument(text);
        auto rest = text.substr(x + 1);
        auto b = std::stoul(rest, &used);
        if (used != rest.size()) throw std::invalid_argument(text);
        return {a, b};
    } catch (const std::logic_error&) {
        throw Error("size must look like 12x10, got '" + text + "'");
    }
}

json trial_line(std::size_t index, const verify::Trial& trial, const verify::TrialReport& report) {
    return json{{"trial", index},
                {"direction", trial.direction == Direction::Insert ? "insert" : "remove"},
                {"objects", trial.base.object_count()},
                {"attributes", trial.base.attribute_count() + 1},
                {"conceptsBefore", report.concepts_before},
                {"conceptsAfter", report.concepts_after},
                {"generators", report.generators},
                {"redundant", report.redundant},
                {"ok", report.problems.empty()}};
}

json counterexample(const verify::Trial& trial, const verify::TrialOptions& options) {
    const auto small = verify::shrink(trial, options);
    const auto report = verify::run_trial(small, options);
    return json{{"counterexample",
                 {{"direction", small.direction == Direction::Insert ? "insert" : "remove"},
                  {"context", write_cxt(small.base)},
                  {"column", {{"name", small.column.name}, {"extent", small.base.object_names(small.column.extent)}}},
                  {"problems", report.problems}}}};
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Incremental concept diagrams"};
    app.require_subcommand(1);

    std::uint64_t seed = 1;
    auto add_seed = [&](CLI::App* cmd) {
        cmd->add_option("--seed", seed, "Random seed")->envname("LATFOX_SEED");
    };

    std::string in_path, out_path, name, extent_spec, format = "json";
    auto* build = app.add_subcommand("build", "Build a diagram document from a CXT file");
    build->add_option("cxt", in_path, "Context file")->required();
    build->add_option("-o,--output", out_path, "Output file (default stdout)");

    auto* insert = app.add_subcommand("insert", "Insert an attribute column; prints the change set");
    insert->add_option("diagram", in_path, "Diagram document")->required();
    insert->add_option("--name", name, "New attribute")->required();
    insert->add_option("--extent", extent_spec, "Comma-separated object names, or @file")->required();
    insert->add_option("-o,--output", out_path, "Output file (default: update in place)");

    auto* remove = app.add_subcommand("remove", "Remove an attribute column; prints the change set");
    remove->add_option("diagram", in_path, "Diagram document")->required();
    remove->add_option("--name", name, "Attribute to remove")->required();
    remove->add_option("-o,--output", out_path, "Output file (default: update in place)");

    std::size_t trials = 100;
    std::string max_size = "12x10";
    std::string cxt_path;
    bool corrupt = false;
    auto* verify_cmd = app.add_subcommand("verify", "Compare the incremental engine with batch computation");
    verify_cmd->add_option("--random,--trials", trials, "Number of random trials");
    verify_cmd->add_option("--max-size", max_size, "Largest random context, objects x attributes");
    verify_cmd->add_option("--cxt", cxt_path, "Check every column of this context instead");
    verify_cmd->add_flag("--corrupt", corrupt, "Damage engine results (negative control)");
    add_seed(verify_cmd);

    std::string size = "60x40";
    std::size_t ops = 40;
    double density = 0.25;
    bool as_json = false;
    auto* bench_cmd = app.add_subcommand("bench", "Time incremental updates against full rebuilds");
    bench_cmd->add_option("--size", size, "Context size, objects x attributes");
    bench_cmd->add_option("--ops", ops, "Number of column edits");
    bench_cmd->add_option("--density", density, "Incidence density")->check(CLI::Range(0.0, 1.0));
    bench_cmd->add_flag("--json", as_json, "Machine-readable output");
    add_seed(bench_cmd);

    auto* export_cmd = app.add_subcommand("export", "Export a diagram document");
    export_cmd->add_option("diagram", in_path, "Diagram document")->required();
    export_cmd->add_option("--format", format, "json, dot or cxt")->check(CLI::IsMember({"json", "dot", "cxt"}));
    export_cmd->add_option("-o,--output", out_path, "Output file (default stdout)");

    std::string host = "127.0.0.1";
    int port = 8080;
    std::string snapshot_dir;
    auto* serve_cmd = app.add_subcommand("serve", "Run the HTTP service");
    serve_cmd->add_option("--host", host, "Address to bind");
    serve_cmd->add_option("--port", port, "Port");
    serve_cmd->add_option("--snapshot-dir", snapshot_dir, "Write all sessions here on shutdown");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kInputError;
    }

    try {
        if (*build) {
            write_output(out_path, export_json(ifox::build_state(read_cxt_file(in_path))));
            return kOk;
        }

        if (*insert || *remove) {
            const auto state = load_diagram(in_path);
            std::pair<DiagramState, ChangeSet> result;
            if (*insert) {
                const std::string text = !extent_spec.empty() && extent_spec[0] == '@'
                                             ? read_file(extent_spec.substr(1))
                                             : extent_spec;
                const auto objects = split_names(text);
                result = ifox::insert_column(state, AttributeColumn{name, state.context.object_set(objects)});
            } else {
                result = ifox::remove_column(state, name);
            }
            write_output(out_path.empty() ? in_path : out_path, export_json(result.first));
            std::cout << changeset_json(result.second, result.first.context).dump(2) << "\n";
            return kOk;
        }

        if (*verify_cmd) {
            verify::Rng rng(seed);
            verify::TrialOptions options;
            options.corrupt = corrupt;
            std::vector<verify::Trial> cases;
            if (!cxt_path.empty()) {
                const auto context = read_cxt_file(cxt_path);
                for (std::size_t m = 0; m < context.attribute_count(); ++m)
                    cases.push_back(verify::removal_trial(context, m));
                for (std::size_t i = 0; i < trials; ++i)
                    cases.push_back(verify::Trial{Direction::Insert, context,
                                                  verify::random_column(rng, context, "n", 0.2 * double(i % 3 + 1))});
            } else {
                const auto [g, m] = parse_size(max_size);
                std::uniform_int_distribution<std::size_t> objects(0, g), attributes(0, m);
                for (std::size_t i = 0; i < trials; ++i) {
                    const double d = 0.2 * double(i % 3 + 1);
                    const auto context = verify::random_context(rng, objects(rng), attributes(rng), d);
                    if (context.attribute_count() < m)
                        cases.push_back(verify::Trial{Direction::Insert, context, verify::random_column(rng, context, "n", d)});
                    if (context.attribute_count() > 0) {
                        std::uniform_int_distribution<std::size_t> pick(0, context.attribute_count() - 1);
                        cases.push_back(verify::removal_trial(context, pick(rng)));
                    }
                }
            }
            std::size_t failures = 0;
            std::optional<json> first_failure;
            for (std::size_t i = 0; i < cases.size(); ++i) {
                const auto report = verify::run_trial(cases[i], options);
                std::cout << trial_line(i, cases[i], report).dump() << "\n";
                if (!report.problems.empty()) {
                    ++failures;
                    if (!first_failure) {
                        first_failure = counterexample(cases[i], options);
                        std::cout << first_failure->dump() << "\n";
                        std::cerr << "trial " << i << " failed; minimized counterexample:\n"
                                  << (*first_failure)["counterexample"]["context"].get<std::string>() << "column "
                                  << (*first_failure)["counterexample"]["column"].dump() << "\n";
                        for (const auto& p : (*first_failure)["counterexample"]["problems"])
                            std::cerr << "  " << p.get<std::string>() << "\n";
                    }
                }
            }
            std::cout << json{{"summary", {{"trials", cases.size()}, {"failures", failures}}}}.dump() << "\n";
            return failures == 0 ? kOk : kVerifyFailed;
        }

        if (*bench_cmd) {
            const auto [g, m] = parse_size(size);
            bench::BenchConfig config{g, m, ops, seed, density};
            const auto report = bench::run(config);
            if (as_json) std::cout << bench::to_json(report).dump(2) << "\n";
            else std::cout << bench::to_text(report);
            return kOk;
        }

        if (*export_cmd) {
            const auto state = load_diagram(in_path);
            const std::string text = format == "dot"   ? export_dot(state)
                                     : format == "cxt" ? write_cxt(state.context)
                                                       : export_json(state);
            write_output(out_path, text);
            return kOk;
        }

        if (*serve_cmd) {
            std::optional<fs::path> dir;
            if (!snapshot_dir.empty()) dir = snapshot_dir;
            return service::serve(host, port, dir);
        }
    } catch (const NameCollision& e) {
        std::cerr << "conflict: " << e.what() << "\n";
        return kConflict;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    } catch (const ContractViolation& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    }
    return kOk;
}
