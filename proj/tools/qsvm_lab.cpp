// Command-line front end: runs the classical/quantum training pipeline on a
// CSV dataset and emits a deterministic machine-readable report.

#include <chrono>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "qsvm/errors.hpp"
#include "qsvm/experiment.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitConfig = 3;
constexpr int kExitNumerical = 4;

struct CommonOptions {
    std::string data;
    std::string kernel = "linear";
    double gamma = 1.0;
    double epsK = 0.05;
    std::string t0 = "auto";
    int registerBits = 10;
    std::string evolution = "exact";
    int trotterSteps = 128;
    std::string mode = "exact";
    int shots = 1000;
    std::uint64_t seed = 42;
    std::string queries;
    double traceEstimateT = 0.0;
    std::string report = "json";
    std::string out;
};

void add_common_options(CLI::App* cmd, CommonOptions& opt, bool isRun) {
    cmd->add_option("--data", opt.data, "training CSV (features..., label)")->required();
    cmd->add_option("--kernel", opt.kernel, "linear or poly:<d>");
    cmd->add_option("--gamma", opt.gamma, "training-error penalty weight");
    cmd->add_option("--eps-k", opt.epsK, "eigenvalue filter threshold");
    cmd->add_option("--register-bits", opt.registerBits, "phase register width");
    cmd->add_option("--report", opt.report, "json, csv, or text");
    cmd->add_option("--out", opt.out, "write the report to a file instead of stdout");
    if (isRun) {
        cmd->add_option("--t0", opt.t0, "evolution time, or 'auto'");
        cmd->add_option("--evolution", opt.evolution, "exact or trotter");
        cmd->add_option("--trotter-steps", opt.trotterSteps, "slices per evolution step");
        cmd->add_option("--mode", opt.mode, "exact or sampled");
        cmd->add_option("--shots", opt.shots, "samples per measurement in sampled mode");
        cmd->add_option("--seed", opt.seed, "random seed for sampled mode");
        cmd->add_option("--queries", opt.queries, "query CSV (features only)");
        cmd->add_option("--trace-estimate", opt.traceEstimateT,
                        "also estimate tr K with this evolution time");
    }
}

qsvm::ExperimentConfig to_config(const CommonOptions& opt) {
    qsvm::ExperimentConfig config;
    config.dataPath = opt.data;

    if (opt.kernel == "linear") {
        config.kernel = qsvm::KernelSpec::linear();
    } else if (opt.kernel.rfind("poly:", 0) == 0) {
        config.kernel = qsvm::KernelSpec::polynomial(std::stoi(opt.kernel.substr(5)));
    } else {
        throw qsvm::ConfigError("unknown kernel '" + opt.kernel + "' (linear or poly:<d>)");
    }

    config.solver.gamma = opt.gamma;
    config.solver.epsK = opt.epsK;
    if (opt.t0 == "auto") {
        config.solver.t0 = 0.0;
    } else {
        try {
            config.solver.t0 = std::stod(opt.t0);
        } catch (const std::exception&) {
            throw qsvm::ConfigError("--t0 expects a number or 'auto', got '" + opt.t0 + "'");
        }
        if (config.solver.t0 <= 0.0) {
            throw qsvm::ConfigError("--t0 must be positive");
        }
    }
    config.solver.registerBits = opt.registerBits;
    config.solver.trotterSteps = opt.trotterSteps;

    if (opt.evolution == "exact") {
        config.solver.evolution = qsvm::EvolutionKind::Exact;
    } else if (opt.evolution == "trotter") {
        config.solver.evolution = qsvm::EvolutionKind::Trotter;
    } else {
        throw qsvm::ConfigError("--evolution expects exact or trotter");
    }

    if (opt.mode == "exact") {
        config.solver.mode = qsvm::SamplingMode::Exact;
    } else if (opt.mode == "sampled") {
        config.solver.mode = qsvm::SamplingMode::Sampled;
    } else {
        throw qsvm::ConfigError("--mode expects exact or sampled");
    }

    config.solver.shots = opt.shots;
    config.solver.seed = opt.seed;
    config.queriesPath = opt.queries;
    config.traceEstimateT = opt.traceEstimateT;
    config.reportFormat = opt.report;
    return config;
}

void write_output(const std::string& payload, const std::string& out) {
    if (out.empty()) {
        std::cout << payload;
        return;
    }
    std::ofstream file(out, std::ios::binary);
    if (!file) {
        throw qsvm::InputError("cannot write '" + out + "'");
    }
    file << payload;
}

int classify_error(const qsvm::Error& e) {
    if (dynamic_cast<const qsvm::InputError*>(&e)) return kExitInput;
    if (dynamic_cast<const qsvm::ConfigError*>(&e)) return kExitConfig;
    return kExitNumerical;
}

const char* error_code_name(int code) {
    switch (code) {
        case kExitInput: return "input-error";
        case kExitConfig: return "config-error";
        default: return "numerical-error";
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"quantum least-squares SVM laboratory"};
    app.require_subcommand(1);

    CommonOptions runOpt;
    CLI::App* run = app.add_subcommand("run", "train both pipelines and classify queries");
    add_common_options(run, runOpt, true);

    CommonOptions spectrumOpt;
    CLI::App* spectrum =
        app.add_subcommand("spectrum", "dump the normalized system spectrum");
    add_common_options(spectrum, spectrumOpt, false);

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            const qsvm::ExperimentConfig config = to_config(runOpt);
            const auto start = std::chrono::steady_clock::now();
            const qsvm::RunReport report = qsvm::run_experiment(config);
            const auto stop = std::chrono::steady_clock::now();
            for (const std::string& warning : report.warnings) {
                std::cerr << "warning: " << warning << "\n";
            }
            std::cerr << "timing: "
                      << std::chrono::duration<double>(stop - start).count() << " s\n";
            write_output(qsvm::emit_report(report, config.reportFormat), runOpt.out);
        } else {
            const qsvm::ExperimentConfig config = to_config(spectrumOpt);
            const qsvm::SpectrumReport report = qsvm::run_spectrum(config);
            write_output(qsvm::emit_report(report, config.reportFormat), spectrumOpt.out);
        }
    } catch (const qsvm::Error& e) {
        const int code = classify_error(e);
        std::cerr << "error[" << error_code_name(code) << "]: " << e.what() << "\n";
        return code;
    } catch (const std::exception& e) {
        std::cerr << "error[numerical-error]: " << e.what() << "\n";
        return kExitNumerical;
    }
    return kExitOk;
}
