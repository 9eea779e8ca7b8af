#include "qsvm/qls_solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "qsvm/classical_svm.hpp"
#include "qsvm/errors.hpp"
#include "qsvm/hamiltonian_sim.hpp"
#include "qsvm/rng.hpp"

namespace qsvm {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr Eigen::Index kDimensionCap = 1 << 14;

Eigen::Index next_pow2(Eigen::Index n) {
    Eigen::Index p = 1;
    while (p < n) p <<= 1;
    return p;
}

/// In-place radix-2 transform of each row of m along the register axis:
/// out[k] = (1/sqrt(R)) * sum_tau in[tau] * exp(sign * 2*pi*i * tau * k / R).
void register_dft(Eigen::MatrixXcd& m, int sign) {
    const Eigen::Index r = m.cols();
    // Bit-reversal permutation.
    for (Eigen::Index i = 1, j = 0; i < r; ++i) {
        Eigen::Index bit = r >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) m.col(i).swap(m.col(j));
    }
    for (Eigen::Index len = 2; len <= r; len <<= 1) {
        const double angle = sign * kTwoPi / static_cast<double>(len);
        const Complex w_len = std::polar(1.0, angle);
        for (Eigen::Index start = 0; start < r; start += len) {
            Complex w = 1.0;
            for (Eigen::Index off = 0; off < len / 2; ++off) {
                const Eigen::Index a = start + off;
                const Eigen::Index b = a + len / 2;
                const Eigen::VectorXcd u = m.col(a);
                const Eigen::VectorXcd v = m.col(b) * w;
                m.col(a) = u + v;
                m.col(b) = u - v;
                w *= w_len;
            }
        }
    }
    m /= std::sqrt(static_cast<double>(r));
}

/// Tensor-factor Hadamard on every register bit (self-inverse).
void register_hadamard(Eigen::MatrixXcd& m) {
    const Eigen::Index r = m.cols();
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (Eigen::Index bit = 1; bit < r; bit <<= 1) {
        for (Eigen::Index tau = 0; tau < r; ++tau) {
            if (tau & bit) continue;
            const Eigen::VectorXcd a = m.col(tau);
            const Eigen::VectorXcd b = m.col(tau | bit);
            m.col(tau) = (a + b) * inv_sqrt2;
            m.col(tau | bit) = (a - b) * inv_sqrt2;
        }
    }
}

Eigen::MatrixXcd matrix_power(Eigen::MatrixXcd base, long exponent) {
    Eigen::MatrixXcd result = Eigen::MatrixXcd::Identity(base.rows(), base.cols());
    while (exponent > 0) {
        if (exponent & 1) result = result * base;
        base = base * base;
        exponent >>= 1;
    }
    return result;
}

}  // namespace

EvolutionPlan EvolutionPlan::exact() { return EvolutionPlan{}; }

EvolutionPlan EvolutionPlan::trotter(int steps, double identityCoeff,
                                     std::vector<HermitianOperator> parts) {
    if (steps < 1) {
        throw ConfigError("trotter evolution needs steps >= 1");
    }
    EvolutionPlan plan;
    plan.kind = EvolutionKind::Trotter;
    plan.steps = steps;
    plan.identityCoeff = identityCoeff;
    plan.parts = std::move(parts);
    return plan;
}

PhaseEstimator::PhaseEstimator(const HermitianOperator& op, int registerBits, double t0,
                               const EvolutionPlan& plan)
    : systemDim_(op.dimension()),
      registerDim_(Eigen::Index{1} << registerBits),
      registerBits_(registerBits),
      t0_(t0) {
    if (registerBits < 1 || registerBits > 20) {
        throw ConfigError("register bits must be in [1, 20], got " +
                          std::to_string(registerBits));
    }
    if (t0 <= 0.0) {
        throw ConfigError("evolution time t0 must be positive");
    }

    // Signed-phase decodability: every eigenphase must fit one half-turn.
    const Spectrum spectrum = hermitian_eig(op);
    const double max_abs =
        std::max(std::abs(spectrum.eigenvalues.minCoeff()), std::abs(spectrum.eigenvalues.maxCoeff()));
    if (max_abs * t0 > kTwoPi / 2.0 * (1.0 + 1e-12)) {
        throw ConfigError("decodability violated: max|eigenvalue| * t0 / (2*pi) = " +
                          std::to_string(max_abs * t0 / kTwoPi) + " exceeds 1/2");
    }

    Eigen::MatrixXcd step;
    if (plan.kind == EvolutionKind::Exact) {
        Eigen::VectorXcd phases(systemDim_);
        for (Eigen::Index i = 0; i < systemDim_; ++i) {
            phases[i] = std::polar(1.0, -spectrum.eigenvalues[i] * t0);
        }
        step = spectrum.eigenvectors * phases.asDiagonal() * spectrum.eigenvectors.adjoint();
    } else {
        if (plan.parts.empty()) {
            throw ConfigError("trotter evolution needs at least one split part");
        }
        const double dt = t0 / plan.steps;
        Eigen::MatrixXcd slice = Eigen::MatrixXcd::Identity(systemDim_, systemDim_);
        for (const HermitianOperator& part : plan.parts) {
            if (part.dimension() != systemDim_) {
                throw ConfigError("trotter part '" + part.label() + "' has dimension " +
                                  std::to_string(part.dimension()) + ", expected " +
                                  std::to_string(systemDim_));
            }
            // Parts are applied in list order, so each new factor multiplies
            // from the left.
            slice = Propagator(part).unitary(dt) * slice;
        }
        slice *= std::polar(1.0, -plan.identityCoeff * dt);
        step = matrix_power(std::move(slice), plan.steps);
    }

    powers_.reserve(registerBits_);
    powers_.push_back(std::move(step));
    for (int j = 1; j < registerBits_; ++j) {
        powers_.push_back(powers_.back() * powers_.back());
    }
}

double PhaseEstimator::decode(Eigen::Index k) const {
    const Eigen::Index signed_k = (k < registerDim_ / 2) ? k : k - registerDim_;
    return kTwoPi * static_cast<double>(signed_k) /
           (static_cast<double>(registerDim_) * t0_);
}

double PhaseEstimator::snap(double eigenvalue) const {
    const double gridpoint =
        std::round(eigenvalue * t0_ / kTwoPi * static_cast<double>(registerDim_));
    return kTwoPi * gridpoint / (static_cast<double>(registerDim_) * t0_);
}

PureState PhaseEstimator::forward(const PureState& input) const {
    if (input.dimension() != systemDim_) {
        throw InputError("phase estimation input dimension " +
                         std::to_string(input.dimension()) + " != operator dimension " +
                         std::to_string(systemDim_));
    }
    Eigen::MatrixXcd joint = Eigen::MatrixXcd::Zero(systemDim_, registerDim_);
    joint.col(0) = input.amplitudes();
    register_hadamard(joint);
    for (int j = 0; j < registerBits_; ++j) {
        const Eigen::Index bit = Eigen::Index{1} << j;
        for (Eigen::Index tau = 0; tau < registerDim_; ++tau) {
            if (tau & bit) joint.col(tau) = powers_[j] * joint.col(tau);
        }
    }
    register_dft(joint, +1);

    Eigen::VectorXcd flat(systemDim_ * registerDim_);
    for (Eigen::Index s = 0; s < systemDim_; ++s) {
        flat.segment(s * registerDim_, registerDim_) = joint.row(s).transpose();
    }
    Dims dims = input.dims();
    dims.push_back(registerDim_);
    return PureState(std::move(flat), std::move(dims));
}

PureState PhaseEstimator::inverse(const PureState& labeled) const {
    if (labeled.dims().size() < 2 || labeled.dims().back() != registerDim_ ||
        labeled.dimension() != systemDim_ * registerDim_) {
        throw InputError("inverse phase estimation expects dims (..., register)");
    }
    Eigen::MatrixXcd joint(systemDim_, registerDim_);
    for (Eigen::Index s = 0; s < systemDim_; ++s) {
        joint.row(s) = labeled.amplitudes().segment(s * registerDim_, registerDim_).transpose();
    }
    register_dft(joint, -1);
    for (int j = 0; j < registerBits_; ++j) {
        const Eigen::Index bit = Eigen::Index{1} << j;
        const Eigen::MatrixXcd inv = powers_[j].adjoint();
        for (Eigen::Index tau = 0; tau < registerDim_; ++tau) {
            if (tau & bit) joint.col(tau) = inv * joint.col(tau);
        }
    }
    register_hadamard(joint);

    Eigen::VectorXcd flat(systemDim_ * registerDim_);
    for (Eigen::Index s = 0; s < systemDim_; ++s) {
        flat.segment(s * registerDim_, registerDim_) = joint.row(s).transpose();
    }
    return PureState(std::move(flat), labeled.dims());
}

PureState phase_estimate(const HermitianOperator& op, const PureState& input,
                         int registerBits, double t0, const EvolutionPlan& plan) {
    return PhaseEstimator(op, registerBits, t0, plan).forward(input);
}

PureState invert_and_filter(const PureState& labeled, const PhaseEstimator& estimator,
                            double epsK, double c) {
    if (epsK <= 0.0) {
        throw ConfigError("filter threshold epsK must be positive");
    }
    if (c <= 0.0 || c > epsK * (1.0 + 1e-12)) {
        throw ConfigError("rotation constant c must satisfy 0 < c <= epsK");
    }
    const Eigen::Index reg = estimator.register_dim();
    if (labeled.dims().size() < 2 || labeled.dims().back() != reg) {
        throw InputError("invert_and_filter expects dims (..., register)");
    }
    const Eigen::Index sys = labeled.dimension() / reg;

    double retained_mass = 0.0;
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(labeled.dimension() * 2);
    for (Eigen::Index k = 0; k < reg; ++k) {
        const double lambda = estimator.decode(k);
        const bool retained = std::abs(lambda) >= epsK;
        const double succ = retained ? c / lambda : 0.0;
        const double fail = retained ? std::sqrt(std::max(0.0, 1.0 - succ * succ)) : 1.0;
        for (Eigen::Index s = 0; s < sys; ++s) {
            const Complex amp = labeled.amplitude(s * reg + k);
            out[(s * reg + k) * 2 + 1] = amp * succ;
            out[(s * reg + k) * 2 + 0] = amp * fail;
            if (retained) retained_mass += std::norm(amp);
        }
    }
    if (retained_mass <= 1e-24) {
        throw EmptySolutionError("all eigenvalue mass below filter threshold " +
                                 std::to_string(epsK));
    }

    // Uncompute the phase register inside each flag branch.
    Dims inner_dims = labeled.dims();
    for (Eigen::Index flag = 0; flag < 2; ++flag) {
        Eigen::VectorXcd branch(labeled.dimension());
        for (Eigen::Index i = 0; i < labeled.dimension(); ++i) branch[i] = out[i * 2 + flag];
        const double branch_norm = branch.norm();
        if (branch_norm > 0.0) {
            const PureState undone =
                estimator.inverse(PureState(branch / branch_norm, inner_dims));
            for (Eigen::Index i = 0; i < labeled.dimension(); ++i) {
                out[i * 2 + flag] = undone.amplitude(i) * branch_norm;
            }
        }
    }

    Dims dims = labeled.dims();
    dims.push_back(2);
    return PureState(std::move(out), std::move(dims));
}

PostSelection post_select(const PureState& filtered, const PhaseEstimator& estimator) {
    const Eigen::Index reg = estimator.register_dim();
    const Dims& dims = filtered.dims();
    if (dims.size() < 3 || dims.back() != 2 || dims[dims.size() - 2] != reg) {
        throw InputError("post_select expects dims (..., register, flag)");
    }
    const Eigen::Index sys = filtered.dimension() / (reg * 2);

    Eigen::VectorXcd projected(sys);
    for (Eigen::Index s = 0; s < sys; ++s) {
        projected[s] = filtered.amplitude((s * reg + 0) * 2 + 1);
    }
    const double probability = projected.squaredNorm();
    if (probability <= 1e-300) {
        throw EmptySolutionError("post-selection mass vanished");
    }
    Dims system_dims(dims.begin(), dims.end() - 2);
    return PostSelection{PureState(projected / std::sqrt(probability), system_dims),
                         probability};
}

QuantumSolution solve_linear_system(const HermitianOperator& op, const PureState& rhs,
                                    const SolverConfig& config, const EvolutionPlan& plan) {
    if (config.epsK <= 0.0 || config.epsK >= 1.0) {
        throw ConfigError("epsK must lie in (0,1), got " + std::to_string(config.epsK));
    }
    if (config.mode == SamplingMode::Sampled && config.shots < 1) {
        throw ConfigError("sampled mode needs shots >= 1");
    }
    const Eigen::Index joint_dim = op.dimension() * (Eigen::Index{1} << config.registerBits);
    if (joint_dim > kDimensionCap) {
        throw CapacityError("simulated dimension " + std::to_string(joint_dim) +
                            " exceeds the cap of " + std::to_string(kDimensionCap));
    }

    const Spectrum spectrum = hermitian_eig(op);
    const double max_abs = std::max(std::abs(spectrum.eigenvalues.minCoeff()),
                                    std::abs(spectrum.eigenvalues.maxCoeff()));
    if (max_abs <= 0.0) {
        throw EmptySolutionError("operator spectrum is identically zero");
    }
    const double t0 = config.t0 > 0.0 ? config.t0 : kTwoPi / 2.0 / (1.05 * max_abs);

    QuantumSolution solution{PureState::basis(1, 0), 0.0, {}, 0.0, {}, t0};

    const PhaseEstimator estimator(op, config.registerBits, t0, plan);

    const double grid_spacing = kTwoPi / (static_cast<double>(estimator.register_dim()) * t0);
    if (config.epsK < grid_spacing) {
        solution.warnings.push_back(
            "filter threshold " + std::to_string(config.epsK) +
            " lies below the register resolution " + std::to_string(grid_spacing) +
            "; small eigenvalues cannot be distinguished from zero");
    }

    // The spectrum is known classically here, so an all-filtered configuration
    // is rejected up front with the spectrum attached.
    bool any_retained = false;
    for (Eigen::Index i = 0; i < spectrum.eigenvalues.size(); ++i) {
        if (std::abs(estimator.snap(spectrum.eigenvalues[i])) >= config.epsK) {
            any_retained = true;
            break;
        }
    }
    if (!any_retained) {
        std::ostringstream oss;
        oss << "no eigenvalue survives the filter epsK = " << config.epsK << "; spectrum:";
        for (Eigen::Index i = 0; i < spectrum.eigenvalues.size(); ++i) {
            oss << " " << spectrum.eigenvalues[i];
        }
        throw EmptySolutionError(oss.str());
    }

    const double c = std::min(config.rotation_constant(), config.epsK);
    const PureState labeled = estimator.forward(rhs);

    // Register-branch weights of the eventual post-selected mass. Branches
    // below 1e-4 of that mass are leakage tails and are left out of the
    // report.
    const Eigen::Index reg = estimator.register_dim();
    std::vector<RetainedEigenvalue> retained;
    double weight_total = 0.0;
    for (Eigen::Index k = 0; k < reg; ++k) {
        const double lambda = estimator.decode(k);
        if (std::abs(lambda) < config.epsK) continue;
        double mass = 0.0;
        for (Eigen::Index s = 0; s < op.dimension(); ++s) {
            mass += std::norm(labeled.amplitude(s * reg + k));
        }
        const double weight = mass * (c / lambda) * (c / lambda);
        retained.push_back(RetainedEigenvalue{lambda, weight});
        weight_total += weight;
    }
    std::erase_if(retained, [&](const RetainedEigenvalue& r) {
        return r.weight < 1e-4 * weight_total;
    });
    double kept_total = 0.0;
    for (const RetainedEigenvalue& r : retained) kept_total += r.weight;
    for (RetainedEigenvalue& r : retained) r.weight /= kept_total;
    std::sort(retained.begin(), retained.end(),
              [](const RetainedEigenvalue& a, const RetainedEigenvalue& b) {
                  return a.estimate > b.estimate;
              });

    const PureState filtered = invert_and_filter(labeled, estimator, config.epsK, c);
    const PostSelection selected = post_select(filtered, estimator);

    solution.state = selected.state;
    solution.analyticSuccessProbability = selected.probability;
    solution.retainedEigenvalues = std::move(retained);
    if (config.mode == SamplingMode::Exact) {
        solution.successProbability = selected.probability;
    } else {
        Rng rng(config.seed);
        long successes = 0;
        for (int shot = 0; shot < config.shots; ++shot) {
            if (rng.bernoulli(selected.probability)) ++successes;
        }
        solution.successProbability = static_cast<double>(successes) / config.shots;
    }
    return solution;
}

namespace {

/// Split parts of the padded bordered matrix, in application order:
/// ridge diagonal, star coupling, embedded kernel. All scaled by 1/trF.
std::vector<HermitianOperator> fhat_split_parts(const KernelMatrix& kernel, double gamma,
                                                Eigen::Index padded) {
    const int m = kernel.size();
    const double tr_f = f_trace(kernel, gamma);

    Eigen::MatrixXcd ridge = Eigen::MatrixXcd::Zero(padded, padded);
    for (int j = 1; j <= m; ++j) ridge(j, j) = 1.0 / (gamma * tr_f);

    Eigen::MatrixXcd star = Eigen::MatrixXcd::Zero(padded, padded);
    star.block(0, 0, m + 1, m + 1) = star_matrix(m).entries() / tr_f;

    Eigen::MatrixXcd kern = Eigen::MatrixXcd::Zero(padded, padded);
    kern.block(1, 1, m, m) = kernel.entries().cast<Complex>() / tr_f;

    std::vector<HermitianOperator> parts;
    parts.emplace_back(std::move(ridge), Dims{padded}, "ridge");
    parts.emplace_back(std::move(star), Dims{padded}, "star");
    parts.emplace_back(std::move(kern), Dims{padded}, "kernel");
    return parts;
}

}  // namespace

QuantumSolution solve_qsvm(const TrainingSet& training, const SolverConfig& config,
                           const KernelSpec& spec) {
    const int m = training.size();
    const KernelMatrix kernel = build_kernel(training, spec);
    const LSSystem system = build_ls_system(kernel, config.gamma, training.labels_as_vector());
    const double tr_f = f_trace(kernel, config.gamma);

    const Eigen::Index padded = next_pow2(m + 1);
    Eigen::MatrixXcd fhat = Eigen::MatrixXcd::Zero(padded, padded);
    fhat.block(0, 0, m + 1, m + 1) = system.F.cast<Complex>() / tr_f;
    const HermitianOperator op(std::move(fhat), Dims{padded}, "F^");

    // Normalized label state (0, y)/sqrt(M); padding carries zero weight.
    Eigen::VectorXcd y_state = Eigen::VectorXcd::Zero(padded);
    for (int j = 0; j < m; ++j) {
        y_state[j + 1] = training.label(j) / std::sqrt(static_cast<double>(m));
    }
    const PureState rhs(std::move(y_state), Dims{padded});

    EvolutionPlan plan = EvolutionPlan::exact();
    if (config.evolution == EvolutionKind::Trotter) {
        plan = EvolutionPlan::trotter(config.trotterSteps, 0.0,
                                      fhat_split_parts(kernel, config.gamma, padded));
    }

    QuantumSolution padded_solution = solve_linear_system(op, rhs, config, plan);

    // Strip the padding; those directions never acquire amplitude.
    const Eigen::VectorXcd& amps = padded_solution.state.amplitudes();
    const double padding_mass = amps.tail(padded - (m + 1)).squaredNorm();
    if (padding_mass > 1e-10) {
        throw NumericalError("padding directions acquired mass " +
                             std::to_string(padding_mass));
    }
    Eigen::VectorXcd trimmed = amps.head(m + 1);
    padded_solution.state = PureState(trimmed / trimmed.norm(), Dims{m + 1});
    return padded_solution;
}

}  // namespace qsvm
