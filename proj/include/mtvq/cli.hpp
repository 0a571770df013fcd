#pragma once

#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "error.hpp"
#include "exact_solver.hpp"
#include "graph_io.hpp"
#include "hamiltonian.hpp"
#include "presets.hpp"
#include "report.hpp"
#include "vqe.hpp"

namespace mtvq::cli {

enum ExitCode : int { kSuccess = 0, kUsage = 1, kValidation = 2, kRuntime = 3 };

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline int exit_code_for(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::Parse:
    case ErrorKind::Schema:
    case ErrorKind::Invariant:
    case ErrorKind::Range: return kValidation;
    case ErrorKind::Bound:
    case ErrorKind::Numeric:
    case ErrorKind::Io: return kRuntime;
    }
    return kRuntime;
}

struct CommandOutcome {
    int status = kSuccess;
    std::vector<std::filesystem::path> artifacts;
    std::string summary;
};

/// Where the problem comes from, plus cost-model switches shared by commands.
struct SpecSource {
    std::string preset;
    std::string file;
    std::optional<double> alpha;
    bool pairwise_length = false;
    bool round_weights = false;
};

inline ProblemInputs load_inputs(const SpecSource &source) {
    if (source.preset.empty() == source.file.empty()) {
        throw UsageError("exactly one of --preset or --file is required");
    }
    auto inputs = source.preset.empty() ? load_graph_file(source.file) : preset(source.preset);
    if (source.alpha) {
        inputs.graph = inputs.graph.with_alpha(*source.alpha);
    }
    return inputs;
}

inline ProblemSpec load_spec(const SpecSource &source) {
    CostOptions options;
    options.length_form =
        source.pairwise_length ? LengthForm::PairwiseSum : LengthForm::EndpointSum;
    options.weight_decimals = source.round_weights ? 2 : -1;
    return ProblemSpec(load_inputs(source), options);
}

/// MTVQ_THREADS, when set, caps the number of worker threads.
inline std::size_t threads_from_env() {
    const char *raw = std::getenv("MTVQ_THREADS");
    if (raw == nullptr || *raw == '\0') {
        return resolve_threads(0);
    }
    char *end = nullptr;
    const long value = std::strtol(raw, &end, 10);
    if (*end != '\0' || value < 1) {
        throw UsageError("MTVQ_THREADS must be a positive integer");
    }
    return static_cast<std::size_t>(value);
}

inline CommandOutcome cmd_presets(std::ostream &out) {
    for (const auto name : kPresetNames) {
        const ProblemSpec spec(preset(name));
        out << std::left << std::setw(14) << name << "  " << std::setw(5) << preset_topology(name)
            << "  N_i=" << spec.n_sites() << "  |t|=" << spec.n_types() << "  "
            << spec.n_qubits() << " qubits  alpha=" << spec.graph().alpha() << "\n";
    }
    return {kSuccess, {}, std::to_string(kPresetNames.size()) + " presets"};
}

inline CommandOutcome cmd_exact(const SpecSource &source, std::size_t top,
                                const std::string &out_path, std::ostream &out) {
    if (top == 0) {
        throw UsageError("--top must be at least 1");
    }
    const auto spec = load_spec(source);
    EnumerationOptions enumeration;
    enumeration.threads = threads_from_env();
    const auto entries = spectrum(spec, top, enumeration);
    CommandOutcome outcome;
    if (!out_path.empty()) {
        write_text(out_path, spectrum_json(entries));
        outcome.artifacts.emplace_back(out_path);
    }
    const auto &ground = entries.front();
    out << "ground state H = " << fixed6(ground.hamiltonian_value) << " ("
        << ground.configurations.size() << " minimizer"
        << (ground.configurations.size() == 1 ? "" : "s") << ")\n";
    out << "minimizer: " << ground.configurations.front().to_string() << "\n";
    for (std::size_t k = 1; k < entries.size(); ++k) {
        out << "level " << k << ": H = " << fixed6(entries[k].hamiltonian_value) << " ("
            << entries[k].configurations.size() << " configs)\n";
    }
    outcome.summary = "ground " + fixed6(ground.hamiltonian_value);
    return outcome;
}

struct VqeOptions {
    std::size_t iterations = 300;
    std::uint64_t shots = 1024;
    std::size_t runs = 128;
    std::uint64_t seed = 2025;
    bool resample = false;
};

inline VqeSettings to_settings(const VqeOptions &options) {
    if (options.iterations == 0) {
        throw UsageError("--iters must be at least 1");
    }
    if (options.shots == 0) {
        throw UsageError("--shots must be at least 1");
    }
    if (options.runs == 0) {
        throw UsageError("--runs must be at least 1");
    }
    VqeSettings settings;
    settings.iterations = options.iterations;
    settings.shots = options.shots;
    settings.runs = options.runs;
    settings.master_seed = options.seed;
    settings.mode = options.resample ? RunMode::Resample : RunMode::Independent;
    settings.threads = threads_from_env();
    return settings;
}

inline CommandOutcome cmd_vqe(const SpecSource &source, const VqeOptions &options,
                              const std::string &out_path, std::ostream &out) {
    const auto settings = to_settings(options);
    const auto spec = load_spec(source);
    EnumerationOptions enumeration;
    enumeration.threads = settings.threads;
    const auto ground = ground_state(spec, enumeration);
    const CostTable costs(spec);
    const auto results = run_all(costs, settings);
    const auto dist = aggregate(results);

    std::size_t successes = 0;
    for (const auto &result : results) {
        successes += is_success(result.distribution, ground) ? 1 : 0;
    }
    CommandOutcome outcome;
    if (!out_path.empty()) {
        write_text(out_path, distribution_csv(dist, costs));
        outcome.artifacts.emplace_back(out_path);
    }
    const auto top = argmax(dist);
    const bool match = is_success(dist, ground);
    out << "argmax: " << basis_string(top, dist.n_qubits) << "\n"
        << "probability: " << fixed6(dist.probabilities.at(top)) << "\n"
        << "hamiltonian: " << fixed6(costs[top]) << "\n"
        << "exact ground: " << fixed6(ground.hamiltonian_value) << "\n"
        << "runs peaking on ground state: " << successes << "/" << results.size() << "\n"
        << "match: " << (match ? "true" : "false") << "\n";
    outcome.summary = std::string("match: ") + (match ? "true" : "false");
    return outcome;
}

inline std::vector<double> parse_alpha_list(const std::string &text) {
    std::vector<double> alphas;
    std::stringstream stream(text);
    std::string item;
    while (std::getline(stream, item, ',')) {
        if (item.empty()) {
            continue;
        }
        std::size_t used = 0;
        double value = 0.0;
        try {
            value = std::stod(item, &used);
        } catch (const std::exception &) {
            throw UsageError("cannot parse alpha '" + item + "'");
        }
        if (used != item.size()) {
            throw UsageError("cannot parse alpha '" + item + "'");
        }
        alphas.push_back(value);
    }
    if (alphas.empty()) {
        throw UsageError("--alphas needs at least one value");
    }
    return alphas;
}

inline CommandOutcome cmd_sweep(const SpecSource &source, const std::string &alpha_list,
                                const VqeOptions &options, const std::string &out_path,
                                std::ostream &out) {
    const auto alphas = parse_alpha_list(alpha_list);
    const auto settings = to_settings(options);
    const auto spec = load_spec(source);
    EnumerationOptions enumeration;
    enumeration.threads = settings.threads;
    const auto rows = alpha_sweep(spec, alphas, settings, enumeration);
    CommandOutcome outcome;
    if (!out_path.empty()) {
        write_text(out_path, sweep_csv(rows));
        outcome.artifacts.emplace_back(out_path);
    }
    for (const auto &row : rows) {
        out << "alpha " << fixed6(row.alpha) << ": " << row.successes << "/" << row.runs << "\n";
    }
    outcome.summary = std::to_string(rows.size()) + " rows";
    return outcome;
}

inline CommandOutcome cmd_eval(const SpecSource &source, const std::string &bits,
                               std::ostream &out) {
    const auto spec = load_spec(source);
    const auto config = Configuration::from_string(bits);
    const auto parts = spec.evaluate(config);
    out << "ratio: " << fixed6(parts.ratio) << "\n"
        << "occupancy: " << fixed6(parts.occupancy) << "\n"
        << "balance: " << fixed6(parts.balance) << "\n"
        << "total: " << fixed6(parts.total) << "\n";
    return {kSuccess, {}, "total " + fixed6(parts.total)};
}

inline CommandOutcome cmd_export(const SpecSource &source, const std::string &out_path,
                                 std::ostream &out) {
    const auto inputs = load_inputs(source);
    const auto text = to_json(inputs);
    if (out_path.empty()) {
        out << text;
        return {kSuccess, {}, "exported"};
    }
    write_text(out_path, text);
    return {kSuccess, {out_path}, "exported"};
}

/// Runs `body`, converting failures into exit statuses and a message on `err`.
template <typename Body>
CommandOutcome guarded(Body body, std::ostream &err) {
    try {
        return body();
    } catch (const UsageError &e) {
        err << "usage error: " << e.what() << "\n";
        return {kUsage, {}, e.what()};
    } catch (const Error &e) {
        err << e.what() << "\n";
        return {exit_code_for(e.kind()), {}, e.what()};
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return {kRuntime, {}, e.what()};
    }
}

inline void add_source_options(CLI::App &cmd, SpecSource &source) {
    auto *preset_opt = cmd.add_option("--preset", source.preset, "Built-in framework name");
    auto *file_opt = cmd.add_option("--file", source.file, "Topology JSON file");
    preset_opt->excludes(file_opt);
    file_opt->excludes(preset_opt);
    cmd.add_flag("--pairwise-length", source.pairwise_length,
                 "Scale edge lengths (and the mean) by the number of linker types");
    cmd.add_flag("--round-weights", source.round_weights,
                 "Round edge weights to two decimals");
}

inline void add_vqe_options(CLI::App &cmd, VqeOptions &options) {
    cmd.add_option("--iters", options.iterations, "SPSA iterations per run")->capture_default_str();
    cmd.add_option("--shots", options.shots, "Measurement shots per circuit")->capture_default_str();
    cmd.add_option("--runs", options.runs, "Independent runs")->capture_default_str();
    cmd.add_option("--seed", options.seed, "Master seed")->capture_default_str();
    cmd.add_flag("--resample", options.resample,
                 "Optimize once and re-sample the final circuit for every run");
}

inline int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    CLI::App app{"Linker-placement Hamiltonians for multivariate frameworks: exact "
                 "enumeration and sampling VQE"};
    app.require_subcommand(1);

    SpecSource source;
    VqeOptions vqe_options;
    std::size_t top = 6;
    std::string out_path;
    std::string alphas = "0.01,0.1,0.25,0.5";
    std::string bits;
    std::optional<double> alpha;

    auto *presets_cmd = app.add_subcommand("presets", "List built-in frameworks");

    auto *exact_cmd = app.add_subcommand("exact", "Exhaustive low-energy spectrum");
    add_source_options(*exact_cmd, source);
    exact_cmd->add_option("--top", top, "Number of distinct levels")->capture_default_str();
    exact_cmd->add_option("--out", out_path, "Spectrum JSON output");
    exact_cmd->add_option("--alpha", alpha, "Override alpha for spatial edges");

    auto *vqe_cmd = app.add_subcommand("vqe", "Sampling VQE with SPSA");
    add_source_options(*vqe_cmd, source);
    add_vqe_options(*vqe_cmd, vqe_options);
    vqe_cmd->add_option("--alpha", alpha, "Override alpha for spatial edges");
    vqe_cmd->add_option("--out", out_path, "Aggregated distribution CSV");

    auto *sweep_cmd = app.add_subcommand("sweep", "Success counts across alpha values");
    add_source_options(*sweep_cmd, source);
    add_vqe_options(*sweep_cmd, vqe_options);
    sweep_cmd->add_option("--alphas", alphas, "Comma-separated alpha values")
        ->capture_default_str();
    sweep_cmd->add_option("--out", out_path, "Sweep CSV output");

    auto *eval_cmd = app.add_subcommand("eval", "Cost terms of one configuration");
    add_source_options(*eval_cmd, source);
    eval_cmd->add_option("--config", bits, "Bitstring, qubit 0 first")->required();
    eval_cmd->add_option("--alpha", alpha, "Override alpha for spatial edges");

    auto *export_cmd = app.add_subcommand("export", "Write a problem as topology JSON");
    add_source_options(*export_cmd, source);
    export_cmd->add_option("--out", out_path, "Output path (stdout when omitted)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        out << app.help();
        return kSuccess;
    } catch (const CLI::CallForAllHelp &e) {
        out << app.help("", CLI::AppFormatMode::All);
        return kSuccess;
    } catch (const CLI::ParseError &e) {
        err << "usage error: " << e.what() << "\n";
        return kUsage;
    }
    source.alpha = alpha;

    CommandOutcome outcome;
    if (presets_cmd->parsed()) {
        outcome = guarded([&] { return cmd_presets(out); }, err);
    } else if (exact_cmd->parsed()) {
        outcome = guarded([&] { return cmd_exact(source, top, out_path, out); }, err);
    } else if (vqe_cmd->parsed()) {
        outcome = guarded([&] { return cmd_vqe(source, vqe_options, out_path, out); }, err);
    } else if (sweep_cmd->parsed()) {
        outcome =
            guarded([&] { return cmd_sweep(source, alphas, vqe_options, out_path, out); }, err);
    } else if (eval_cmd->parsed()) {
        outcome = guarded([&] { return cmd_eval(source, bits, out); }, err);
    } else if (export_cmd->parsed()) {
        outcome = guarded([&] { return cmd_export(source, out_path, out); }, err);
    }
    for (const auto &artifact : outcome.artifacts) {
        out << "wrote " << artifact.string() << "\n";
    }
    return outcome.status;
}

} // namespace mtvq::cli
