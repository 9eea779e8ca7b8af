#pragma once

#include <Eigen/Dense>
#include <cstdint>

#include "qsvm/classical_svm.hpp"
#include "qsvm/qls_solver.hpp"
#include "qsvm/quantum_core.hpp"
#include "qsvm/training_set.hpp"

namespace qsvm {

/// Outcome of a swap-test classification.
struct ClassificationResult {
    double probability = 0.0;   // mismatch probability P
    double innerProduct = 0.0;  // <u~|x~>, exact-mode value
    int label = 0;              // +1 iff P < 1/2
    int shotsUsed = 0;          // 0 in exact mode
};

/// Normalized tensor power of the direction of x; dimension N^d.
/// Overlaps satisfy <phi(x)|phi(y)> = <x^|y^>^d.
PureState poly_feature_state(const Eigen::VectorXd& x, int degree);

/// Hyperplane state extended over the feature register:
/// (b |0>|0> + sum_k alpha_k |phi(x_k)| |k>|phi(x_k)>) normalized.
PureState build_u_tilde(const SvmModel& model, const TrainingSet& training,
                        const KernelSpec& spec = KernelSpec::linear());

/// Query state (|0>|0> + sum_{k=1..M} |phi(x)| |k>|phi(x)>) normalized.
PureState build_x_tilde(const Eigen::VectorXd& query, int m,
                        const KernelSpec& spec = KernelSpec::linear());

/// Interference test between two equal-dimension states. Exact mode derives
/// P = (1 - <u|x>)/2 from the ancilla construction; sampled mode draws
/// Bernoulli(P) shots and reports the empirical mean.
ClassificationResult swap_test(const PureState& u, const PureState& x,
                               SamplingMode mode = SamplingMode::Exact, int shots = 0,
                               std::uint64_t seed = 0);

/// Full quantum classification of a query against a trained model.
ClassificationResult classify_quantum(const SvmModel& model, const TrainingSet& training,
                                      const Eigen::VectorXd& query,
                                      const KernelSpec& spec = KernelSpec::linear(),
                                      SamplingMode mode = SamplingMode::Exact,
                                      int shots = 0, std::uint64_t seed = 0);

}  // namespace qsvm
