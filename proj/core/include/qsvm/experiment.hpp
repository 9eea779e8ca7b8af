#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "qsvm/classical_svm.hpp"
#include "qsvm/qls_solver.hpp"
#include "qsvm/trace_estimator.hpp"
#include "qsvm/training_set.hpp"

namespace qsvm {

/// Everything a run needs; mirrors the command-line surface.
struct ExperimentConfig {
    std::string dataPath;
    KernelSpec kernel = KernelSpec::linear();
    SolverConfig solver;
    std::string queriesPath;      // empty means no queries
    double traceEstimateT = 0.0;  // <= 0 disables the trace estimator
    std::string reportFormat = "json";
};

struct QueryResult {
    Eigen::VectorXd query;
    int classicalLabel = 0;
    int quantumLabel = 0;
    double probability = 0.0;  // swap-test P from the quantum path
    bool agreement = false;
};

/// Deterministic record of one experiment. Every number is reproducible
/// from (config, seed); wall-clock timing is deliberately kept out and
/// reported on stderr instead.
struct RunReport {
    ExperimentConfig config;
    double t0Used = 0.0;

    // Classical ground truth.
    double b = 0.0;
    Eigen::VectorXd alpha;
    double normC = 0.0;
    std::vector<double> fhatSpectrum;  // descending

    // Quantum solve.
    Eigen::VectorXd quantumAmplitudes;
    double fidelityToClassical = 0.0;
    double fidelityToRetained = 0.0;
    double successProbability = 0.0;
    double analyticSuccessProbability = 0.0;
    std::vector<RetainedEigenvalue> retainedEigenvalues;
    double residual = 0.0;  // ||F * (sqrt(normC) * quantum) - (0, y)||

    double truncationError = 0.0;
    std::optional<TraceEstimate> traceEstimate;
    std::vector<QueryResult> queries;
    std::vector<std::string> warnings;
};

/// F^ spectrum dump for the `spectrum` subcommand.
struct SpectrumReport {
    ExperimentConfig config;
    std::vector<double> fhatSpectrum;  // descending
    double trK = 0.0;
    double trF = 0.0;
    double maxAbsEigenvalue = 0.0;
    double minAbsEigenvalue = 0.0;
    int negativeCount = 0;
    int retainedCount = 0;  // |lambda| >= epsK
    double truncationError = 0.0;
    double autoT0 = 0.0;
};

RunReport run_experiment(const ExperimentConfig& config);
SpectrumReport run_spectrum(const ExperimentConfig& config);

/// Deterministic serialization; all numbers carry 12 significant digits and
/// key order is fixed. Formats: "json", "csv", "text".
std::string emit_report(const RunReport& report, const std::string& format);
std::string emit_report(const SpectrumReport& report, const std::string& format);

}  // namespace qsvm
