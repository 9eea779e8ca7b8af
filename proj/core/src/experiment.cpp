#include "qsvm/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "qsvm/classifier.hpp"
#include "qsvm/dataset.hpp"
#include "qsvm/errors.hpp"
#include "qsvm/hamiltonian_sim.hpp"

namespace qsvm {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

/// Quantize to 12 significant digits so serialized values do not depend on
/// sub-ulp differences between runs.
double quantize(double v) {
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%.12g", v);
    return std::strtod(buffer, nullptr);
}

std::string format_number(double v) {
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%.12g", v);
    return buffer;
}

std::string mode_name(SamplingMode mode) {
    return mode == SamplingMode::Exact ? "exact" : "sampled";
}

std::string evolution_name(EvolutionKind kind) {
    return kind == EvolutionKind::Exact ? "exact" : "trotter";
}

/// Descending spectrum of the (unpadded) trace-normalized bordered matrix.
std::vector<double> fhat_spectrum_descending(const TrainingSet& training,
                                             const ExperimentConfig& config) {
    const HermitianOperator fhat =
        f_hat_operator(training, config.solver.gamma, config.kernel);
    const Spectrum spectrum = hermitian_eig(fhat);
    std::vector<double> values(spectrum.eigenvalues.data(),
                               spectrum.eigenvalues.data() + spectrum.eigenvalues.size());
    std::sort(values.begin(), values.end(), std::greater<double>());
    return values;
}

/// Classical solution restricted to the eigenbranches the register keeps:
/// eigenvalues are snapped to the gridpoints of (r, t0) and branches whose
/// snapped magnitude falls below epsK are dropped.
Eigen::VectorXd retained_classical_solution(const TrainingSet& training,
                                            const ExperimentConfig& config, double t0) {
    const HermitianOperator fhat =
        f_hat_operator(training, config.solver.gamma, config.kernel);
    const Spectrum spectrum = hermitian_eig(fhat);
    const int m = training.size();
    Eigen::VectorXd y_state = Eigen::VectorXd::Zero(m + 1);
    for (int j = 0; j < m; ++j) {
        y_state[j + 1] = training.label(j) / std::sqrt(static_cast<double>(m));
    }

    const double reg = std::pow(2.0, config.solver.registerBits);
    Eigen::VectorXcd solution = Eigen::VectorXcd::Zero(m + 1);
    const Eigen::VectorXcd y_complex = y_state.cast<Complex>();
    for (Eigen::Index i = 0; i < spectrum.eigenvalues.size(); ++i) {
        const double lambda = spectrum.eigenvalues[i];
        const double snapped = kTwoPi * std::round(lambda * t0 / kTwoPi * reg) / (reg * t0);
        if (std::abs(snapped) < config.solver.epsK) continue;
        const Eigen::VectorXcd u = spectrum.eigenvectors.col(i);
        solution += (u.dot(y_complex) / lambda) * u;
    }
    if (solution.norm() == 0.0) {
        throw EmptySolutionError("no classical eigenbranch survives the filter");
    }
    solution /= solution.norm();
    return solution.real();
}

}  // namespace

RunReport run_experiment(const ExperimentConfig& config) {
    const TrainingSet training = load_dataset(config.dataPath);

    RunReport report;
    report.config = config;

    // Classical ground truth.
    const KernelMatrix kernel = build_kernel(training, config.kernel);
    const LSSystem system =
        build_ls_system(kernel, config.solver.gamma, training.labels_as_vector());
    const SvmModel model = solve_ls(system);
    report.b = model.b;
    report.alpha = model.alpha;
    report.normC = model.normC;
    report.fhatSpectrum = fhat_spectrum_descending(training, config);
    report.truncationError = truncation_error(kernel, config.solver.epsK);

    // Quantum solve.
    const QuantumSolution solution = solve_qsvm(training, config.solver, config.kernel);
    report.t0Used = solution.t0;
    report.warnings = solution.warnings;
    report.successProbability = solution.successProbability;
    report.analyticSuccessProbability = solution.analyticSuccessProbability;
    report.retainedEigenvalues = solution.retainedEigenvalues;

    const Eigen::Index n_state = solution.state.dimension();
    report.quantumAmplitudes.resize(n_state);
    for (Eigen::Index i = 0; i < n_state; ++i) {
        const Complex amp = solution.state.amplitude(i);
        if (std::abs(amp.imag()) > 1e-9) {
            throw NumericalError("hyperplane amplitude " + std::to_string(i) +
                                 " has imaginary part " + std::to_string(amp.imag()));
        }
        report.quantumAmplitudes[i] = amp.real();
    }

    Eigen::VectorXd classical_state(n_state);
    classical_state[0] = model.b;
    classical_state.tail(model.alpha.size()) = model.alpha;
    classical_state /= classical_state.norm();
    report.fidelityToClassical =
        std::pow(report.quantumAmplitudes.dot(classical_state), 2);
    report.fidelityToRetained = std::pow(
        report.quantumAmplitudes.dot(retained_classical_solution(training, config, solution.t0)),
        2);

    const Eigen::VectorXd rescaled = std::sqrt(model.normC) * report.quantumAmplitudes;
    report.residual = (system.F * rescaled - system.rhs).norm();

    if (config.traceEstimateT > 0.0) {
        report.traceEstimate =
            trace_estimate(training, config.traceEstimateT, config.solver.mode,
                           config.solver.shots, config.solver.seed);
    }

    // Per-query classification along both paths. The quantum path reads the
    // hyperplane amplitudes directly as (b, alpha); the decision sign is
    // scale-invariant so no classical norm is injected.
    if (!config.queriesPath.empty()) {
        const auto queries = load_queries(config.queriesPath, training.dimension());
        SvmModel quantum_model;
        quantum_model.b = report.quantumAmplitudes[0];
        quantum_model.alpha = report.quantumAmplitudes.tail(n_state - 1);
        quantum_model.normC = 1.0;

        std::uint64_t query_seed = config.solver.seed;
        for (const Eigen::VectorXd& query : queries) {
            QueryResult qr;
            qr.query = query;
            qr.classicalLabel = classify_classical(model, training, config.kernel, query);
            const ClassificationResult cr = classify_quantum(
                quantum_model, training, query, config.kernel, config.solver.mode,
                config.solver.shots, ++query_seed);
            qr.quantumLabel = cr.label;
            qr.probability = cr.probability;
            qr.agreement = qr.classicalLabel == qr.quantumLabel;
            report.queries.push_back(std::move(qr));
        }
    }
    return report;
}

SpectrumReport run_spectrum(const ExperimentConfig& config) {
    const TrainingSet training = load_dataset(config.dataPath);
    const KernelMatrix kernel = build_kernel(training, config.kernel);

    SpectrumReport report;
    report.config = config;
    report.fhatSpectrum = fhat_spectrum_descending(training, config);
    report.trK = kernel.trace();
    report.trF = f_trace(kernel, config.solver.gamma);
    report.truncationError = truncation_error(kernel, config.solver.epsK);
    for (const double lambda : report.fhatSpectrum) {
        if (lambda < 0.0) ++report.negativeCount;
        if (std::abs(lambda) >= config.solver.epsK) ++report.retainedCount;
    }
    report.maxAbsEigenvalue = std::abs(report.fhatSpectrum.front());
    report.minAbsEigenvalue = std::abs(report.fhatSpectrum.front());
    for (const double lambda : report.fhatSpectrum) {
        report.maxAbsEigenvalue = std::max(report.maxAbsEigenvalue, std::abs(lambda));
        report.minAbsEigenvalue = std::min(report.minAbsEigenvalue, std::abs(lambda));
    }
    report.autoT0 = kTwoPi / 2.0 / (1.05 * report.maxAbsEigenvalue);
    return report;
}

namespace {

nlohmann::ordered_json config_json(const ExperimentConfig& config) {
    nlohmann::ordered_json j;
    j["data"] = config.dataPath;
    j["kernel"] = config.kernel.describe();
    j["gamma"] = quantize(config.solver.gamma);
    j["eps_k"] = quantize(config.solver.epsK);
    j["t0"] = config.solver.t0 > 0.0 ? nlohmann::ordered_json(quantize(config.solver.t0))
                                     : nlohmann::ordered_json("auto");
    j["register_bits"] = config.solver.registerBits;
    j["evolution"] = evolution_name(config.solver.evolution);
    j["trotter_steps"] = config.solver.trotterSteps;
    j["mode"] = mode_name(config.solver.mode);
    j["shots"] = config.solver.shots;
    j["seed"] = config.solver.seed;
    j["queries"] = config.queriesPath;
    j["trace_estimate_t"] = quantize(config.traceEstimateT);
    return j;
}

nlohmann::ordered_json vector_json(const Eigen::VectorXd& v) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(quantize(v[i]));
    return arr;
}

nlohmann::ordered_json vector_json(const std::vector<double>& v) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const double x : v) arr.push_back(quantize(x));
    return arr;
}

}  // namespace

std::string emit_report(const RunReport& report, const std::string& format) {
    if (format == "json") {
        nlohmann::ordered_json j;
        j["config"] = config_json(report.config);
        j["t0_used"] = quantize(report.t0Used);
        j["classical"] = {{"b", quantize(report.b)},
                          {"alpha", vector_json(report.alpha)},
                          {"norm_c", quantize(report.normC)}};
        j["fhat_spectrum"] = vector_json(report.fhatSpectrum);
        nlohmann::ordered_json retained = nlohmann::ordered_json::array();
        for (const auto& r : report.retainedEigenvalues) {
            retained.push_back({{"estimate", quantize(r.estimate)},
                                {"weight", quantize(r.weight)}});
        }
        j["quantum"] = {{"amplitudes", vector_json(report.quantumAmplitudes)},
                        {"fidelity_to_classical", quantize(report.fidelityToClassical)},
                        {"fidelity_to_retained", quantize(report.fidelityToRetained)},
                        {"success_probability", quantize(report.successProbability)},
                        {"analytic_success_probability",
                         quantize(report.analyticSuccessProbability)},
                        {"retained_eigenvalues", retained},
                        {"residual", quantize(report.residual)}};
        j["truncation_error"] = quantize(report.truncationError);
        if (report.traceEstimate) {
            const TraceEstimate& te = *report.traceEstimate;
            j["trace_estimate"] = {{"probability_one", quantize(te.probabilityOne)},
                                   {"estimated_trace", quantize(te.estimatedTrace)},
                                   {"exact_trace", quantize(te.exactTrace)},
                                   {"t", quantize(te.t)},
                                   {"mode", mode_name(te.mode)},
                                   {"shots", te.shots},
                                   {"small_angle_warning", te.smallAngleWarning}};
        }
        nlohmann::ordered_json queries = nlohmann::ordered_json::array();
        for (std::size_t i = 0; i < report.queries.size(); ++i) {
            const QueryResult& q = report.queries[i];
            queries.push_back({{"query_id", i},
                               {"query", vector_json(q.query)},
                               {"classical_label", q.classicalLabel},
                               {"quantum_label", q.quantumLabel},
                               {"p", quantize(q.probability)},
                               {"agreement", q.agreement}});
        }
        j["queries"] = queries;
        return j.dump(2) + "\n";
    }

    if (format == "csv") {
        std::ostringstream out;
        out << "key,value\n";
        out << "data," << report.config.dataPath << "\n";
        out << "kernel," << report.config.kernel.describe() << "\n";
        out << "gamma," << format_number(report.config.solver.gamma) << "\n";
        out << "eps_k," << format_number(report.config.solver.epsK) << "\n";
        out << "t0_used," << format_number(report.t0Used) << "\n";
        out << "register_bits," << report.config.solver.registerBits << "\n";
        out << "evolution," << evolution_name(report.config.solver.evolution) << "\n";
        out << "mode," << mode_name(report.config.solver.mode) << "\n";
        out << "seed," << report.config.solver.seed << "\n";
        out << "b," << format_number(report.b) << "\n";
        for (Eigen::Index i = 0; i < report.alpha.size(); ++i) {
            out << "alpha_" << i << "," << format_number(report.alpha[i]) << "\n";
        }
        out << "norm_c," << format_number(report.normC) << "\n";
        for (std::size_t i = 0; i < report.fhatSpectrum.size(); ++i) {
            out << "fhat_lambda_" << i << "," << format_number(report.fhatSpectrum[i]) << "\n";
        }
        for (Eigen::Index i = 0; i < report.quantumAmplitudes.size(); ++i) {
            out << "quantum_amplitude_" << i << ","
                << format_number(report.quantumAmplitudes[i]) << "\n";
        }
        out << "fidelity_to_classical," << format_number(report.fidelityToClassical) << "\n";
        out << "fidelity_to_retained," << format_number(report.fidelityToRetained) << "\n";
        out << "success_probability," << format_number(report.successProbability) << "\n";
        out << "analytic_success_probability,"
            << format_number(report.analyticSuccessProbability) << "\n";
        out << "residual," << format_number(report.residual) << "\n";
        out << "truncation_error," << format_number(report.truncationError) << "\n";
        if (report.traceEstimate) {
            out << "trace_probability_one,"
                << format_number(report.traceEstimate->probabilityOne) << "\n";
            out << "trace_estimate," << format_number(report.traceEstimate->estimatedTrace)
                << "\n";
            out << "trace_exact," << format_number(report.traceEstimate->exactTrace) << "\n";
        }
        out << "\n";
        out << "query_id,classical_label,quantum_label,P,agreement\n";
        for (std::size_t i = 0; i < report.queries.size(); ++i) {
            const QueryResult& q = report.queries[i];
            out << i << "," << q.classicalLabel << "," << q.quantumLabel << ","
                << format_number(q.probability) << "," << (q.agreement ? 1 : 0) << "\n";
        }
        return out.str();
    }

    if (format == "text") {
        std::ostringstream out;
        out << "qsvm-lab run\n";
        out << "  data:            " << report.config.dataPath << "\n";
        out << "  kernel:          " << report.config.kernel.describe() << "\n";
        out << "  gamma:           " << format_number(report.config.solver.gamma) << "\n";
        out << "  eps_k:           " << format_number(report.config.solver.epsK) << "\n";
        out << "  t0 used:         " << format_number(report.t0Used) << "\n";
        out << "  register bits:   " << report.config.solver.registerBits << "\n";
        out << "  evolution:       " << evolution_name(report.config.solver.evolution) << "\n";
        out << "  mode:            " << mode_name(report.config.solver.mode) << "\n";
        out << "  seed:            " << report.config.solver.seed << "\n";
        out << "classical model\n";
        out << "  b:               " << format_number(report.b) << "\n";
        out << "  alpha:          ";
        for (Eigen::Index i = 0; i < report.alpha.size(); ++i) {
            out << " " << format_number(report.alpha[i]);
        }
        out << "\n";
        out << "quantum solution\n";
        out << "  amplitudes:     ";
        for (Eigen::Index i = 0; i < report.quantumAmplitudes.size(); ++i) {
            out << " " << format_number(report.quantumAmplitudes[i]);
        }
        out << "\n";
        out << "  fidelity:        " << format_number(report.fidelityToClassical) << "\n";
        out << "  fidelity (ret.): " << format_number(report.fidelityToRetained) << "\n";
        out << "  success prob.:   " << format_number(report.successProbability) << "\n";
        out << "  residual:        " << format_number(report.residual) << "\n";
        out << "  retained:       ";
        for (const auto& r : report.retainedEigenvalues) {
            out << " " << format_number(r.estimate) << " (w=" << format_number(r.weight)
                << ")";
        }
        out << "\n";
        out << "  spectrum:       ";
        for (const double lambda : report.fhatSpectrum) {
            out << " " << format_number(lambda);
        }
        out << "\n";
        out << "  truncation err.: " << format_number(report.truncationError) << "\n";
        if (report.traceEstimate) {
            out << "trace estimate\n";
            out << "  P(1):            " << format_number(report.traceEstimate->probabilityOne)
                << "\n";
            out << "  tr K estimate:   "
                << format_number(report.traceEstimate->estimatedTrace) << "\n";
            out << "  tr K exact:      " << format_number(report.traceEstimate->exactTrace)
                << "\n";
        }
        if (!report.queries.empty()) {
            out << "queries (classical / quantum / P / agreement)\n";
            for (std::size_t i = 0; i < report.queries.size(); ++i) {
                const QueryResult& q = report.queries[i];
                out << "  " << i << ": " << q.classicalLabel << " / " << q.quantumLabel
                    << " / " << format_number(q.probability) << " / "
                    << (q.agreement ? "yes" : "no") << "\n";
            }
        }
        return out.str();
    }

    throw ConfigError("unknown report format '" + format + "'");
}

std::string emit_report(const SpectrumReport& report, const std::string& format) {
    if (format == "json") {
        nlohmann::ordered_json j;
        j["config"] = config_json(report.config);
        j["fhat_spectrum"] = vector_json(report.fhatSpectrum);
        j["tr_k"] = quantize(report.trK);
        j["tr_f"] = quantize(report.trF);
        j["max_abs_eigenvalue"] = quantize(report.maxAbsEigenvalue);
        j["min_abs_eigenvalue"] = quantize(report.minAbsEigenvalue);
        j["negative_count"] = report.negativeCount;
        j["retained_count"] = report.retainedCount;
        j["truncation_error"] = quantize(report.truncationError);
        j["auto_t0"] = quantize(report.autoT0);
        return j.dump(2) + "\n";
    }
    if (format == "csv") {
        std::ostringstream out;
        out << "key,value\n";
        for (std::size_t i = 0; i < report.fhatSpectrum.size(); ++i) {
            out << "fhat_lambda_" << i << "," << format_number(report.fhatSpectrum[i]) << "\n";
        }
        out << "tr_k," << format_number(report.trK) << "\n";
        out << "tr_f," << format_number(report.trF) << "\n";
        out << "max_abs_eigenvalue," << format_number(report.maxAbsEigenvalue) << "\n";
        out << "min_abs_eigenvalue," << format_number(report.minAbsEigenvalue) << "\n";
        out << "negative_count," << report.negativeCount << "\n";
        out << "retained_count," << report.retainedCount << "\n";
        out << "truncation_error," << format_number(report.truncationError) << "\n";
        out << "auto_t0," << format_number(report.autoT0) << "\n";
        return out.str();
    }
    if (format == "text") {
        std::ostringstream out;
        out << "qsvm-lab spectrum (" << report.config.dataPath << ", kernel "
            << report.config.kernel.describe() << ", gamma "
            << format_number(report.config.solver.gamma) << ")\n";
        out << "  spectrum:       ";
        for (const double lambda : report.fhatSpectrum) {
            out << " " << format_number(lambda);
        }
        out << "\n";
        out << "  tr K:            " << format_number(report.trK) << "\n";
        out << "  tr F:            " << format_number(report.trF) << "\n";
        out << "  max |lambda|:    " << format_number(report.maxAbsEigenvalue) << "\n";
        out << "  min |lambda|:    " << format_number(report.minAbsEigenvalue) << "\n";
        out << "  negative count:  " << report.negativeCount << "\n";
        out << "  retained count:  " << report.retainedCount << " (eps_k = "
            << format_number(report.config.solver.epsK) << ")\n";
        out << "  truncation err.: " << format_number(report.truncationError) << "\n";
        out << "  auto t0:         " << format_number(report.autoT0) << "\n";
        return out.str();
    }
    throw ConfigError("unknown report format '" + format + "'");
}

}  // namespace qsvm
