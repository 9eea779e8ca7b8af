#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "qsvm/training_set.hpp"

namespace qsvm {

/// Symmetric positive-semidefinite Gram matrix of the training vectors.
/// Construction validates symmetry (1e-12), positive diagonal, and that the
/// minimum eigenvalue is above -1e-10.
class KernelMatrix {
public:
    explicit KernelMatrix(Eigen::MatrixXd entries);

    const Eigen::MatrixXd& entries() const { return entries_; }
    int size() const { return static_cast<int>(entries_.rows()); }
    double trace() const { return trace_; }

    /// Trace-normalized copy of the entries.
    Eigen::MatrixXd normalized() const { return entries_ / trace_; }

private:
    Eigen::MatrixXd entries_;
    double trace_;
};

/// The bordered linear system that training reduces to: an (M+1) x (M+1)
/// symmetric matrix with a zero corner, a row/column of ones, and a
/// regularized kernel block, paired with the right-hand side (0, y).
struct LSSystem {
    Eigen::MatrixXd F;
    Eigen::VectorXd rhs;
    double gamma;

    int size() const { return static_cast<int>(F.rows()); }  // M + 1
};

/// Trained classifier parameters.
struct SvmModel {
    double b = 0.0;
    Eigen::VectorXd alpha;
    double normC = 0.0;  // b^2 + sum alpha_k^2
};

/// Full spectral decomposition of a kernel matrix, eigenvalues descending.
/// Ties are broken by lexicographic order of the sign-canonicalized
/// eigenvectors so runs are reproducible.
struct KernelEigensystem {
    Eigen::VectorXd eigenvalues;   // descending
    Eigen::MatrixXd eigenvectors;  // column i pairs with eigenvalues[i]
};

/// Rank-one closed-form analysis of the regularized kernel inverse.
struct LowRankAnalysis {
    double lambda1 = 0.0;
    Eigen::VectorXd u1;
    double c = 0.0;                 // gamma*lambda1 / (1 + gamma*lambda1)
    Eigen::MatrixXd approxInverse;  // gamma * (I - c * u1 u1^T)
    std::optional<Eigen::VectorXd> w;  // effective normal vector when labels given
    double truncationError = 0.0;   // root-sum-square of the discarded spectrum
};

/// Gram matrix with entries (x_j . x_k)^d.
KernelMatrix build_kernel(const TrainingSet& training, const KernelSpec& spec);

/// Assembles the bordered system for penalty weight gamma and labels y.
LSSystem build_ls_system(const KernelMatrix& kernel, double gamma,
                         const Eigen::VectorXd& labels);

/// Dense Gaussian elimination with partial pivoting. Throws
/// SingularSystemError naming the pivot index if a pivot falls below 1e-13.
/// The returned model satisfies ||F*(b,alpha) - rhs|| <= 1e-9.
SvmModel solve_ls(const LSSystem& system);

/// Decision-function value sum_j alpha_j k(x_j, query) + b.
double decision_value(const SvmModel& model, const TrainingSet& training,
                      const KernelSpec& spec, const Eigen::VectorXd& query);

/// sign(decision value); zero resolves to +1.
int classify_classical(const SvmModel& model, const TrainingSet& training,
                       const KernelSpec& spec, const Eigen::VectorXd& query);

KernelEigensystem kernel_eigensystem(const KernelMatrix& kernel);

/// Sherman-Morrison rank-one approximation of (K + gamma^-1 I)^-1.
/// When labels are supplied (with their training vectors), also computes the
/// effective normal vector w = gamma * sum_m (y_m - c' u1_m) x_m.
LowRankAnalysis low_rank_inverse(const KernelMatrix& kernel, double gamma,
                                 const TrainingSet* training = nullptr);

/// Frobenius-norm error of discarding the trace-normalized kernel's
/// eigenvalues with magnitude below epsK. Computed in closed form from the
/// spectrum and cross-checked against the explicit truncated reconstruction.
double truncation_error(const KernelMatrix& kernel, double epsK);

}  // namespace qsvm
