#include "qsvm/hamiltonian_sim.hpp"

#include <cmath>
#include <string>

#include "qsvm/errors.hpp"

namespace qsvm {

ChiState prepare_chi(const TrainingSet& training) {
    const int m = training.size();
    const int n = training.dimension();
    const double norm_chi = training.norm_chi();
    Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(m) * n);
    const double scale = 1.0 / std::sqrt(norm_chi);
    for (int j = 0; j < m; ++j) {
        // |x_j| * (x_j / |x_j|) collapses to the raw vector.
        amps.segment(static_cast<Eigen::Index>(j) * n, n) =
            scale * training.vector(j).cast<Complex>();
    }
    return ChiState{PureState(std::move(amps), {m, n}), norm_chi};
}

DensityMatrix kernel_density(const TrainingSet& training) {
    const ChiState chi = prepare_chi(training);
    return partial_trace(DensityMatrix::from_pure(chi.state), 0);
}

DensityMatrix swap_step(const DensityMatrix& kernelState, const DensityMatrix& rho,
                        double deltaT) {
    if (kernelState.dimension() != rho.dimension()) {
        throw InputError("swap step: kernel copy dimension " +
                         std::to_string(kernelState.dimension()) + " != state dimension " +
                         std::to_string(rho.dimension()));
    }
    const Eigen::Index d = rho.dimension();
    const DensityMatrix joint = tensor(kernelState, rho);
    const DensityMatrix evolved = exact_evolve(swap_operator(d), deltaT, joint);
    return partial_trace(evolved, 1);
}

StarEigensystem star_eigensystem(int m) {
    if (m < 1) {
        throw InputError("star eigensystem needs m >= 1");
    }
    const double root = std::sqrt(static_cast<double>(m));
    Eigen::VectorXd plus = Eigen::VectorXd::Constant(m + 1, 1.0 / std::sqrt(2.0 * m));
    plus[0] = 1.0 / std::sqrt(2.0);
    Eigen::VectorXd minus = -plus;
    minus[0] = 1.0 / std::sqrt(2.0);
    return StarEigensystem{root, -root, std::move(plus), std::move(minus), m - 1};
}

HermitianOperator star_matrix(int m) {
    if (m < 1) {
        throw InputError("star matrix needs m >= 1");
    }
    Eigen::MatrixXcd j = Eigen::MatrixXcd::Zero(m + 1, m + 1);
    j.row(0).tail(m).setOnes();
    j.col(0).tail(m).setOnes();
    return HermitianOperator(std::move(j), "star(" + std::to_string(m) + ")");
}

Eigen::MatrixXcd star_unitary(int m, double theta) {
    const StarEigensystem star = star_eigensystem(m);
    const Eigen::Index d = m + 1;
    const Eigen::MatrixXcd p_plus =
        star.statePlus.cast<Complex>() * star.statePlus.cast<Complex>().adjoint();
    const Eigen::MatrixXcd p_minus =
        star.stateMinus.cast<Complex>() * star.stateMinus.cast<Complex>().adjoint();
    const Complex phase_plus = std::polar(1.0, -star.lambdaPlus * theta);
    const Complex phase_minus = std::polar(1.0, -star.lambdaMinus * theta);
    return Eigen::MatrixXcd::Identity(d, d) + (phase_plus - 1.0) * p_plus +
           (phase_minus - 1.0) * p_minus;
}

double f_trace(const KernelMatrix& kernel, double gamma) {
    return kernel.trace() + kernel.size() / gamma;
}

HermitianOperator f_hat_operator(const TrainingSet& training, double gamma,
                                 const KernelSpec& spec) {
    const KernelMatrix kernel = build_kernel(training, spec);
    const LSSystem system = build_ls_system(kernel, gamma, training.labels_as_vector());
    const double tr_f = f_trace(kernel, gamma);
    return HermitianOperator(system.F.cast<Complex>() / tr_f, "F^");
}

DensityMatrix f_hat_step(const TrainingSet& training, double gamma, double deltaT,
                         const DensityMatrix& rho) {
    if (gamma <= 0.0) {
        throw InputError("gamma must be positive, got " + std::to_string(gamma));
    }
    const int m = training.size();
    if (rho.dimension() != m + 1) {
        throw InputError("f_hat step: state dimension " + std::to_string(rho.dimension()) +
                         " != M + 1 = " + std::to_string(m + 1));
    }
    const KernelMatrix kernel = build_kernel(training, KernelSpec::linear());
    const double tr_f = f_trace(kernel, gamma);

    // Ridge term exp(-i deltaT gamma^-1 diag(0, I) / trF). Its uniform part
    // is a global phase (no-op under conjugation); the corner leaves index 0
    // with a relative phase that must be applied for the split to converge
    // to the bordered matrix at O(deltaT^2).
    Eigen::VectorXcd ridge_phases = Eigen::VectorXcd::Ones(m + 1);
    const Complex label_phase = std::polar(1.0, -deltaT / (gamma * tr_f));
    for (int j = 1; j <= m; ++j) ridge_phases[j] = label_phase;
    DensityMatrix state(ridge_phases.asDiagonal() * rho.entries() *
                            ridge_phases.conjugate().asDiagonal(),
                        rho.dims());

    // Star factor exp(-i J deltaT / trF), exact from the two eigenpairs.
    const Eigen::MatrixXcd u_star = star_unitary(m, deltaT / tr_f);
    state = DensityMatrix(u_star * state.entries() * u_star.adjoint(), rho.dims());

    // Kernel factor via the swap trick with time rescaled by trK/trF. A fresh
    // kernel copy is prepared for the slice and embedded at rows/cols 1..M;
    // row/column 0 of the environment stays zero and the trace is already 1.
    Eigen::MatrixXcd env = Eigen::MatrixXcd::Zero(m + 1, m + 1);
    env.block(1, 1, m, m) = kernel_density(training).entries();
    const DensityMatrix kernel_env(std::move(env), {m + 1});
    const double rescaled = deltaT * kernel.trace() / tr_f;
    return swap_step(kernel_env, state, rescaled);
}

TrotterPlan make_trotter_plan(double totalTime, int steps, const TrainingSet& training,
                              double gamma) {
    if (steps < 1) {
        throw InputError("trotter plan needs steps >= 1");
    }
    if (gamma <= 0.0) {
        throw InputError("gamma must be positive, got " + std::to_string(gamma));
    }
    const KernelMatrix kernel = build_kernel(training, KernelSpec::linear());
    TrotterPlan plan;
    plan.steps = steps;
    plan.deltaT = totalTime / steps;
    plan.trK = kernel.trace();
    plan.trF = f_trace(kernel, gamma);
    return plan;
}

}  // namespace qsvm
