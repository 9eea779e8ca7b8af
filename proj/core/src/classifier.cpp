#include "qsvm/classifier.hpp"

#include <cmath>
#include <string>

#include "qsvm/errors.hpp"
#include "qsvm/rng.hpp"

namespace qsvm {

namespace {

constexpr Eigen::Index kDimensionCap = 1 << 14;
constexpr double kRealTol = 1e-12;

/// |x|^d, the length of the degree-d feature image of x.
double feature_norm(const Eigen::VectorXd& x, int degree) {
    return std::pow(x.norm(), degree);
}

}  // namespace

PureState poly_feature_state(const Eigen::VectorXd& x, int degree) {
    if (degree < 1) {
        throw InputError("feature degree must be >= 1, got " + std::to_string(degree));
    }
    if (x.norm() == 0.0) {
        throw InputError("cannot build a feature state from the zero vector");
    }
    const Eigen::Index n = x.size();
    Eigen::Index dim = 1;
    for (int i = 0; i < degree; ++i) {
        dim *= n;
        if (dim > kDimensionCap) {
            throw CapacityError("feature space dimension " + std::to_string(n) + "^" +
                                std::to_string(degree) + " exceeds the cap of " +
                                std::to_string(kDimensionCap));
        }
    }
    const PureState unit = PureState::normalized(x.cast<Complex>(), {n});
    PureState state = unit;
    for (int i = 1; i < degree; ++i) state = tensor(state, unit);
    return state;
}

PureState build_u_tilde(const SvmModel& model, const TrainingSet& training,
                        const KernelSpec& spec) {
    const int m = training.size();
    if (model.alpha.size() != m) {
        throw InputError("model has " + std::to_string(model.alpha.size()) +
                         " multipliers for " + std::to_string(m) + " training vectors");
    }
    const int degree = spec.effective_degree();
    const Eigen::Index feature_dim = poly_feature_state(training.vector(0), degree).dimension();
    const Eigen::Index index_dim = m + 1;
    if (index_dim * feature_dim > kDimensionCap) {
        throw CapacityError("hyperplane state dimension exceeds the cap");
    }

    Eigen::VectorXcd raw = Eigen::VectorXcd::Zero(index_dim * feature_dim);
    raw[0] = model.b;  // b |0>|0>
    for (int k = 0; k < m; ++k) {
        const PureState phi = poly_feature_state(training.vector(k), degree);
        raw.segment((k + 1) * feature_dim, feature_dim) =
            model.alpha[k] * feature_norm(training.vector(k), degree) * phi.amplitudes();
    }
    if (raw.norm() == 0.0) {
        throw NumericalError("degenerate model: b and every multiplier are zero");
    }
    return PureState::normalized(std::move(raw), {index_dim, feature_dim});
}

PureState build_x_tilde(const Eigen::VectorXd& query, int m, const KernelSpec& spec) {
    if (m < 1) {
        throw InputError("query state needs m >= 1 training slots");
    }
    if (query.norm() == 0.0) {
        throw InputError("query vector is all-zero");
    }
    const int degree = spec.effective_degree();
    const PureState phi = poly_feature_state(query, degree);
    const Eigen::Index feature_dim = phi.dimension();
    const Eigen::Index index_dim = m + 1;
    if (index_dim * feature_dim > kDimensionCap) {
        throw CapacityError("query state dimension exceeds the cap");
    }

    Eigen::VectorXcd raw = Eigen::VectorXcd::Zero(index_dim * feature_dim);
    raw[0] = 1.0;
    const double length = feature_norm(query, degree);
    for (int k = 1; k <= m; ++k) {
        raw.segment(k * feature_dim, feature_dim) = length * phi.amplitudes();
    }
    return PureState::normalized(std::move(raw), {index_dim, feature_dim});
}

ClassificationResult swap_test(const PureState& u, const PureState& x, SamplingMode mode,
                               int shots, std::uint64_t seed) {
    if (u.dimension() != x.dimension()) {
        throw InputError("swap test: state dimensions differ");
    }
    // Ancilla construction: |psi> = (|0>|u> + |1>|x>)/sqrt(2), measured
    // against |phi> = (|0> - |1>)/sqrt(2). The success amplitude on each
    // system index i is (u_i - x_i)/2.
    const Eigen::VectorXcd difference = (u.amplitudes() - x.amplitudes()) / 2.0;
    const double p_exact = difference.squaredNorm();

    const Complex overlap = u.amplitudes().dot(x.amplitudes());
    if (std::abs(overlap.imag()) > kRealTol) {
        throw InvariantViolation("swap-test overlap has imaginary part " +
                                 std::to_string(overlap.imag()));
    }
    if (std::abs(p_exact - (1.0 - overlap.real()) / 2.0) > 1e-10) {
        throw NumericalError("swap-test probability routes disagree");
    }

    ClassificationResult result;
    result.innerProduct = overlap.real();
    if (mode == SamplingMode::Exact) {
        result.probability = p_exact;
        result.shotsUsed = 0;
    } else {
        if (shots < 1) {
            throw ConfigError("sampled swap test needs shots >= 1");
        }
        Rng rng(seed);
        long hits = 0;
        for (int i = 0; i < shots; ++i) {
            if (rng.bernoulli(p_exact)) ++hits;
        }
        result.probability = static_cast<double>(hits) / shots;
        result.shotsUsed = shots;
    }
    result.label = result.probability < 0.5 ? +1 : -1;
    return result;
}

ClassificationResult classify_quantum(const SvmModel& model, const TrainingSet& training,
                                      const Eigen::VectorXd& query, const KernelSpec& spec,
                                      SamplingMode mode, int shots, std::uint64_t seed) {
    if (query.size() != training.dimension()) {
        throw InputError("query dimension " + std::to_string(query.size()) +
                         " does not match training dimension " +
                         std::to_string(training.dimension()));
    }
    const PureState u = build_u_tilde(model, training, spec);
    const PureState x = build_x_tilde(query, training.size(), spec);
    return swap_test(u, x, mode, shots, seed);
}

}  // namespace qsvm
