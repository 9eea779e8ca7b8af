#pragma once

#include <cstdint>

#include "qsvm/qls_solver.hpp"
#include "qsvm/quantum_core.hpp"
#include "qsvm/training_set.hpp"

namespace qsvm {

/// Ancilla-measurement estimate of the kernel trace.
struct TraceEstimate {
    double probabilityOne = 0.0;  // ancilla |1> probability
    double estimatedTrace = 0.0;  // M * probabilityOne / t^2
    double exactTrace = 0.0;      // sum |x_j|^2, for diagnostics
    double t = 0.0;
    SamplingMode mode = SamplingMode::Exact;
    int shots = 0;
    std::uint64_t seed = 0;
    bool smallAngleWarning = false;  // max_j |x_j| t above the guard of 0.3
};

/// The rotated norm state (1/sqrt M) sum_j (cos(|x_j| t)|j>|0> -
/// i sin(|x_j| t)|j>|1>).
PureState norm_probe_state(const TrainingSet& training, double t);

/// Estimates tr K by evolving under the norm Hamiltonian for time t and
/// measuring the ancilla. Exact mode computes the |1> probability in closed
/// form; sampled mode draws shots. The estimator inverts the leading-order
/// small-angle formula, so it carries a bias of order (|x| t)^2.
TraceEstimate trace_estimate(const TrainingSet& training, double t,
                             SamplingMode mode = SamplingMode::Exact, int shots = 0,
                             std::uint64_t seed = 0);

}  // namespace qsvm
