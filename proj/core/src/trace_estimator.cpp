#include "qsvm/trace_estimator.hpp"

#include <cmath>
#include <string>

#include "qsvm/errors.hpp"
#include "qsvm/rng.hpp"

namespace qsvm {

PureState norm_probe_state(const TrainingSet& training, double t) {
    const int m = training.size();
    const double scale = 1.0 / std::sqrt(static_cast<double>(m));
    Eigen::VectorXcd amps(2 * m);
    for (int j = 0; j < m; ++j) {
        const double angle = training.vector(j).norm() * t;
        amps[2 * j + 0] = scale * std::cos(angle);
        amps[2 * j + 1] = Complex(0.0, -scale * std::sin(angle));
    }
    return PureState(std::move(amps), {m, 2});
}

TraceEstimate trace_estimate(const TrainingSet& training, double t, SamplingMode mode,
                             int shots, std::uint64_t seed) {
    if (t <= 0.0) {
        throw InputError("trace estimation time must be positive, got " + std::to_string(t));
    }
    const int m = training.size();
    const PureState psi = norm_probe_state(training, t);

    double p_one = 0.0;
    double max_angle = 0.0;
    for (int j = 0; j < m; ++j) {
        p_one += std::norm(psi.amplitude(2 * j + 1));
        max_angle = std::max(max_angle, training.vector(j).norm() * t);
    }

    TraceEstimate estimate;
    estimate.t = t;
    estimate.mode = mode;
    estimate.seed = seed;
    estimate.exactTrace = training.norm_chi();
    estimate.smallAngleWarning = max_angle > 0.3;

    if (mode == SamplingMode::Exact) {
        estimate.probabilityOne = p_one;
        estimate.shots = 0;
    } else {
        if (shots < 1) {
            throw ConfigError("sampled trace estimation needs shots >= 1");
        }
        Rng rng(seed);
        long hits = 0;
        for (int i = 0; i < shots; ++i) {
            if (rng.bernoulli(p_one)) ++hits;
        }
        estimate.probabilityOne = static_cast<double>(hits) / shots;
        estimate.shots = shots;
    }
    estimate.estimatedTrace = m * estimate.probabilityOne / (t * t);
    return estimate;
}

}  // namespace qsvm
