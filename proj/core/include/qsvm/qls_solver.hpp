#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "qsvm/quantum_core.hpp"
#include "qsvm/training_set.hpp"

namespace qsvm {

enum class EvolutionKind { Exact, Trotter };
enum class SamplingMode { Exact, Sampled };

/// Knobs for the quantum training solve.
struct SolverConfig {
    double gamma = 1.0;
    double epsK = 0.05;          // filter threshold on |eigenvalue|
    double t0 = 0.0;             // evolution time per controlled power; <= 0 requests auto
    int registerBits = 10;
    int trotterSteps = 128;
    EvolutionKind evolution = EvolutionKind::Exact;
    SamplingMode mode = SamplingMode::Exact;
    int shots = 1000;
    std::uint64_t seed = 42;
    double rotationC = 0.0;      // rotation constant; <= 0 means use epsK

    double rotation_constant() const { return rotationC > 0.0 ? rotationC : epsK; }
};

/// How the controlled step unitary is realized: exactly from the operator's
/// spectrum, or as a first-order split over the given Hermitian parts (plus
/// a scalar identity coefficient contributing a phase per slice).
struct EvolutionPlan {
    EvolutionKind kind = EvolutionKind::Exact;
    int steps = 1;
    double identityCoeff = 0.0;
    std::vector<HermitianOperator> parts;

    static EvolutionPlan exact();
    static EvolutionPlan trotter(int steps, double identityCoeff,
                                 std::vector<HermitianOperator> parts);
};

/// Phase estimation of exp(-i A t0) with an r-bit register.
///
/// Register value k (two's complement: k >= 2^(r-1) is negative) decodes to
/// the eigenvalue 2*pi*k / (2^r * t0). Signed decodability requires
/// max|lambda| * t0 / (2*pi) <= 1/2; the boundary value is admitted so that
/// exactly-representable half-turn phases remain usable.
class PhaseEstimator {
public:
    PhaseEstimator(const HermitianOperator& op, int registerBits, double t0,
                   const EvolutionPlan& plan = EvolutionPlan::exact());

    /// input (dim D) -> joint state with dims (input dims..., 2^r).
    PureState forward(const PureState& input) const;

    /// Exact inverse of forward's unitary on the (system, register) factor.
    PureState inverse(const PureState& labeled) const;

    double decode(Eigen::Index k) const;
    Eigen::Index register_dim() const { return registerDim_; }
    int register_bits() const { return registerBits_; }
    double t0() const { return t0_; }
    Eigen::Index system_dim() const { return systemDim_; }

    /// Nearest register gridpoint for a true eigenvalue, as a decoded value.
    double snap(double eigenvalue) const;

private:
    Eigen::Index systemDim_;
    Eigen::Index registerDim_;
    int registerBits_;
    double t0_;
    std::vector<Eigen::MatrixXcd> powers_;  // step^(2^j), j = 0..r-1
};

/// The spec'd entry point; builds an estimator and runs it.
PureState phase_estimate(const HermitianOperator& op, const PureState& input,
                         int registerBits, double t0,
                         const EvolutionPlan& plan = EvolutionPlan::exact());

/// Eigenvalue inversion with filtering. Register branches whose decoded
/// |eigenvalue| is at least epsK acquire a flag-success amplitude of
/// c / eigenvalue (signed); branches below the threshold keep their mass on
/// the flag-failure outcome. The phase register is then uncomputed by the
/// inverse estimation circuit. Output dims: (system..., register, flag).
/// Throws EmptySolutionError when no register mass survives the filter.
PureState invert_and_filter(const PureState& labeled, const PhaseEstimator& estimator,
                            double epsK, double c);

/// Projection onto (flag = success, register = 0): the post-selected system
/// state and the probability mass of that outcome.
struct PostSelection {
    PureState state;
    double probability;
};
PostSelection post_select(const PureState& filtered, const PhaseEstimator& estimator);

struct RetainedEigenvalue {
    double estimate;  // decoded gridpoint value
    double weight;    // share of post-selected mass
};

struct QuantumSolution {
    PureState state;            // dimension M + 1
    double successProbability;  // analytic in exact mode, empirical in sampled mode
    std::vector<RetainedEigenvalue> retainedEigenvalues;
    double analyticSuccessProbability;  // always the analytic mass
    std::vector<std::string> warnings;
    double t0;  // the evolution time actually used
};

/// Generic filtered quantum linear solve of op * x = rhs: phase estimation,
/// filtered inversion, uncompute, post-selection.
QuantumSolution solve_linear_system(const HermitianOperator& op, const PureState& rhs,
                                    const SolverConfig& config,
                                    const EvolutionPlan& plan);

/// Full quantum training stage. Builds the trace-normalized bordered matrix
/// for the training set, pads it to the next power of two, solves against
/// the normalized label state (0, y)/sqrt(M), and returns the hyperplane
/// state over (offset, multipliers).
QuantumSolution solve_qsvm(const TrainingSet& training, const SolverConfig& config,
                           const KernelSpec& spec = KernelSpec::linear());

}  // namespace qsvm
