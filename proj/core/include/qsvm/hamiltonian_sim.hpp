#pragma once

#include <Eigen/Dense>

#include "qsvm/classical_svm.hpp"
#include "qsvm/quantum_core.hpp"
#include "qsvm/training_set.hpp"

namespace qsvm {

/// Joint state of the training-index register (dimension M) and the feature
/// register (dimension N), holding every training vector in superposition
/// weighted by its norm.
struct ChiState {
    PureState state;
    double normChi;  // sum of squared training-vector norms
};

/// Bookkeeping for a sliced evolution of the bordered training matrix.
struct TrotterPlan {
    double deltaT = 0.0;
    int steps = 0;
    double trF = 0.0;
    double trK = 0.0;

    double total_time() const { return deltaT * steps; }
};

ChiState prepare_chi(const TrainingSet& training);

/// Reduced state of |chi><chi| over the index register: the trace-normalized
/// linear-kernel matrix as a density matrix.
DensityMatrix kernel_density(const TrainingSet& training);

/// One step of density-matrix exponentiation: evolve kernelState (x) rho
/// under the swap operator for deltaT and discard the kernel copy. Agrees
/// with conjugation by exp(-i K^ deltaT) up to O(deltaT^2).
DensityMatrix swap_step(const DensityMatrix& kernelState, const DensityMatrix& rho,
                        double deltaT);

/// The two nonzero eigenpairs of the (M+1)-dimensional star coupling matrix
/// (zero diagonal, ones along the first row and column).
struct StarEigensystem {
    double lambdaPlus;          // +sqrt(M)
    double lambdaMinus;         // -sqrt(M)
    Eigen::VectorXd statePlus;  // (|0> + (1/sqrt M) sum_k |k>)/sqrt 2
    Eigen::VectorXd stateMinus;
    int nullity;  // M - 1 zero eigenvalues
};

StarEigensystem star_eigensystem(int m);

/// Explicit star matrix, for oracle comparisons.
HermitianOperator star_matrix(int m);

/// exp(-i J theta) assembled from the two star eigenpairs (closed form).
Eigen::MatrixXcd star_unitary(int m, double theta);

/// Trace of the bordered matrix: tr K + M / gamma (the star block is
/// traceless and the corner entry is zero).
double f_trace(const KernelMatrix& kernel, double gamma);

/// The trace-normalized bordered training matrix as a quantum operator,
/// dimension M + 1.
HermitianOperator f_hat_operator(const TrainingSet& training, double gamma,
                                 const KernelSpec& spec = KernelSpec::linear());

/// One first-order split step of exp(-i F^ deltaT) acting on rho by
/// conjugation, with the kernel factor realized through the swap trick:
///   1. the ridge term gamma^-1 diag(0, I) is applied as exact diagonal
///      phases (its uniform part is a global phase; the corner is not);
///   2. the star factor is applied exactly from its two eigenpairs;
///   3. the kernel factor runs swap_step with time rescaled by trK/trF,
///      using a freshly prepared kernel copy.
/// The M-dimensional kernel acts on the lower-right block; the environment
/// copy is embedded as a zero first row/column (its trace is unchanged, so
/// no renormalization is needed).
DensityMatrix f_hat_step(const TrainingSet& training, double gamma, double deltaT,
                         const DensityMatrix& rho);

TrotterPlan make_trotter_plan(double totalTime, int steps, const TrainingSet& training,
                              double gamma);

}  // namespace qsvm
