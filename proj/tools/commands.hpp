#pragma once

// Subcommands of the `statekit` tool. Kept in a header so the test suites
// can drive them with in-memory streams.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "statekit/laws.hpp"
#include "statekit/parser.hpp"
#include "statekit/pipeline.hpp"

namespace statekit::cli {

enum class ExitStatus : int {
    success = 0,
    failure = 1,  // a law or validation check failed
    usage = 2,    // bad flags, unreadable or malformed input
};

inline int code(ExitStatus s) { return static_cast<int>(s); }

inline std::optional<std::string> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        return std::nullopt;
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) {
        return std::nullopt;
    }
    return buf.str();
}

inline ExitStatus cmd_laws(std::uint64_t seed, std::size_t samples, const std::string& mutant,
                           std::ostream& out, std::ostream& err) {
    laws::SampleConfig cfg;
    cfg.seed = seed;
    cfg.samples = samples;
    std::vector<laws::LawReport> reports;
    if (mutant.empty()) {
        reports = laws::check_all(laws::core_triple(), cfg);
    } else if (!laws::mutants::visit(mutant, [&](const auto& t) { reports = laws::check_all(t, cfg); })) {
        err << "unknown mutant '" << mutant << "'\n";
        return ExitStatus::usage;
    }
    bool all_passed = true;
    for (const auto& r : reports) {
        out << laws::render(r);
        all_passed = all_passed && r.passed;
    }
    return all_passed ? ExitStatus::success : ExitStatus::failure;
}

template <class T, class ParseFn>
std::optional<T> load(const std::string& path, ParseFn parse_fn, std::ostream& err) {
    const auto text = read_file(path);
    if (!text) {
        err << "cannot read '" << path << "'\n";
        return std::nullopt;
    }
    auto parsed = parse_fn(*text);
    if (!parsed) {
        err << path << ": " << parsed.error().to_string() << '\n';
        return std::nullopt;
    }
    return parsed.value();
}

inline ExitStatus cmd_simulate(const std::string& scenario_path, const std::string& trace_path,
                               std::int64_t ticks, std::int64_t dt, bool xml, std::ostream& out,
                               std::ostream& err) {
    const auto sc = load<pipeline::Scenario>(scenario_path, parser::parse_scenario, err);
    if (!sc) {
        return ExitStatus::usage;
    }
    const auto trace = load<pipeline::EventTrace>(trace_path, parser::parse_trace, err);
    if (!trace) {
        return ExitStatus::usage;
    }
    if (xml) {
        for (const auto& fi : pipeline::simulate_frames(*sc, *trace, ticks, dt)) {
            out << pipeline::emit_frame_xml(fi) << '\n';
        }
    } else {
        for (const auto& frame : pipeline::simulate(*sc, *trace, ticks, dt)) {
            out << frame.line << '\n';
        }
    }
    return ExitStatus::success;
}

inline ExitStatus cmd_check(const std::string& path, const std::string& kind, std::ostream& out,
                            std::ostream& err) {
    bool ok = false;
    if (kind == "scenario") {
        ok = load<pipeline::Scenario>(path, parser::parse_scenario, err).has_value();
    } else {
        ok = load<pipeline::EventTrace>(path, parser::parse_trace, err).has_value();
    }
    if (!ok) {
        return ExitStatus::usage;
    }
    out << "OK\n";
    return ExitStatus::success;
}

/// Parses `args` (without the program name) and dispatches.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"State-threading calculus toolkit: law checks, pipeline simulation, format checks",
                 "statekit"};
    app.require_subcommand(1);

    std::uint64_t seed = 0;
    std::int64_t samples = 1000;
    std::string mutant;
    auto* laws_cmd = app.add_subcommand("laws", "Check the monad laws by random sampling");
    laws_cmd->add_option("--seed", seed, "Sampling seed");
    laws_cmd->add_option("--samples", samples, "Samples per law")->check(CLI::NonNegativeNumber);
    laws_cmd->add_option("--mutant", mutant, "Check a deliberately broken triple instead")
        ->check(CLI::IsMember(laws::mutants::names()));

    std::string scenario_path;
    std::string trace_path;
    std::int64_t ticks = 0;
    std::int64_t dt = 1;
    bool xml = false;
    auto* sim_cmd = app.add_subcommand("simulate", "Run the animation pipeline and print the frame log");
    sim_cmd->add_option("scenario", scenario_path, "Scenario file")->required();
    sim_cmd->add_option("trace", trace_path, "Event-trace file")->required();
    sim_cmd->add_option("--ticks", ticks, "Number of ticks")->required()->check(CLI::NonNegativeNumber);
    sim_cmd->add_option("--dt", dt, "Clock step in ticks")->check(CLI::PositiveNumber);
    sim_cmd->add_flag("--xml", xml, "Emit frame XML instead of the frame log");

    std::string check_path;
    std::string kind;
    auto* check_cmd = app.add_subcommand("check", "Parse and validate a scenario or trace file");
    check_cmd->add_option("--kind", kind, "scenario or trace")
        ->required()
        ->check(CLI::IsMember({"scenario", "trace"}));
    check_cmd->add_option("file", check_path, "File to check")->required();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return code(ExitStatus::success);
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return code(ExitStatus::success);
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n' << app.help();
        return code(ExitStatus::usage);
    }

    if (laws_cmd->parsed()) {
        return code(cmd_laws(seed, static_cast<std::size_t>(samples), mutant, out, err));
    }
    if (sim_cmd->parsed()) {
        return code(cmd_simulate(scenario_path, trace_path, ticks, dt, xml, out, err));
    }
    return code(cmd_check(check_path, kind, out, err));
}

}  // namespace statekit::cli
