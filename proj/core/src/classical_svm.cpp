#include "qsvm/classical_svm.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "qsvm/errors.hpp"

namespace qsvm {

namespace {

constexpr double kSymmetryTol = 1e-12;
constexpr double kPsdTol = -1e-10;
constexpr double kPivotFloor = 1e-13;
constexpr double kResidualTol = 1e-9;

/// Force the first component of magnitude > tol positive; deterministic
/// representative of the {v, -v} pair.
void canonicalize_sign(Eigen::VectorXd& v) {
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (std::abs(v[i]) > 1e-12) {
            if (v[i] < 0.0) v = -v;
            return;
        }
    }
}

bool lexicographic_less(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        if (a[i] < b[i] - 1e-12) return true;
        if (a[i] > b[i] + 1e-12) return false;
    }
    return false;
}

}  // namespace

KernelMatrix::KernelMatrix(Eigen::MatrixXd entries) : entries_(std::move(entries)) {
    if (entries_.rows() != entries_.cols() || entries_.rows() < 1) {
        throw InputError("kernel matrix must be square and nonempty");
    }
    const double asym = (entries_ - entries_.transpose()).cwiseAbs().maxCoeff();
    if (asym > kSymmetryTol) {
        throw InvariantViolation("kernel matrix asymmetric by " + std::to_string(asym));
    }
    for (Eigen::Index j = 0; j < entries_.rows(); ++j) {
        if (entries_(j, j) <= 0.0) {
            throw InvariantViolation("kernel diagonal entry " + std::to_string(j) +
                                     " is not positive");
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(entries_, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < kPsdTol) {
        throw InvariantViolation("kernel matrix not positive semidefinite; min eigenvalue " +
                                 std::to_string(es.eigenvalues().minCoeff()));
    }
    trace_ = entries_.trace();
}

KernelMatrix build_kernel(const TrainingSet& training, const KernelSpec& spec) {
    const int m = training.size();
    const int d = spec.effective_degree();
    Eigen::MatrixXd k(m, m);
    for (int j = 0; j < m; ++j) {
        for (int l = j; l < m; ++l) {
            const double dot = training.vector(j).dot(training.vector(l));
            const double value = std::pow(dot, d);
            k(j, l) = value;
            k(l, j) = value;
        }
    }
    return KernelMatrix(std::move(k));
}

LSSystem build_ls_system(const KernelMatrix& kernel, double gamma,
                         const Eigen::VectorXd& labels) {
    if (gamma <= 0.0) {
        throw InputError("gamma must be positive, got " + std::to_string(gamma));
    }
    const int m = kernel.size();
    if (labels.size() != m) {
        throw InputError("label vector length " + std::to_string(labels.size()) +
                         " does not match kernel size " + std::to_string(m));
    }
    Eigen::MatrixXd f = Eigen::MatrixXd::Zero(m + 1, m + 1);
    f.block(1, 1, m, m) = kernel.entries() + Eigen::MatrixXd::Identity(m, m) / gamma;
    f.row(0).tail(m).setOnes();
    f.col(0).tail(m).setOnes();
    Eigen::VectorXd rhs(m + 1);
    rhs[0] = 0.0;
    rhs.tail(m) = labels;
    return LSSystem{std::move(f), std::move(rhs), gamma};
}

SvmModel solve_ls(const LSSystem& system) {
    const int n = system.size();
    Eigen::MatrixXd a = system.F;
    Eigen::VectorXd x = system.rhs;

    // Gaussian elimination with partial pivoting, kept explicit so a
    // vanishing pivot can be reported by index.
    for (int col = 0; col < n; ++col) {
        int pivot_row = col;
        double pivot_mag = std::abs(a(col, col));
        for (int r = col + 1; r < n; ++r) {
            if (std::abs(a(r, col)) > pivot_mag) {
                pivot_mag = std::abs(a(r, col));
                pivot_row = r;
            }
        }
        if (pivot_mag < kPivotFloor) {
            throw SingularSystemError("system numerically singular at pivot " +
                                          std::to_string(col) + " (|pivot| = " +
                                          std::to_string(pivot_mag) + ")",
                                      col);
        }
        if (pivot_row != col) {
            a.row(col).swap(a.row(pivot_row));
            std::swap(x[col], x[pivot_row]);
        }
        for (int r = col + 1; r < n; ++r) {
            const double factor = a(r, col) / a(col, col);
            if (factor == 0.0) continue;
            a.row(r).tail(n - col) -= factor * a.row(col).tail(n - col);
            x[r] -= factor * x[col];
        }
    }
    for (int row = n - 1; row >= 0; --row) {
        double acc = x[row];
        for (int c = row + 1; c < n; ++c) acc -= a(row, c) * x[c];
        x[row] = acc / a(row, row);
    }

    const double residual = (system.F * x - system.rhs).norm();
    if (residual > kResidualTol) {
        throw NumericalError("solver residual " + std::to_string(residual) +
                             " exceeds tolerance");
    }

    SvmModel model;
    model.b = x[0];
    model.alpha = x.tail(n - 1);
    model.normC = model.b * model.b + model.alpha.squaredNorm();
    if (model.normC <= 0.0) {
        throw NumericalError("degenerate model: b and alpha all zero");
    }
    return model;
}

double decision_value(const SvmModel& model, const TrainingSet& training,
                      const KernelSpec& spec, const Eigen::VectorXd& query) {
    if (query.size() != training.dimension()) {
        throw InputError("query dimension " + std::to_string(query.size()) +
                         " does not match training dimension " +
                         std::to_string(training.dimension()));
    }
    const int d = spec.effective_degree();
    double acc = 0.0;
    for (int j = 0; j < training.size(); ++j) {
        acc += model.alpha[j] * std::pow(training.vector(j).dot(query), d);
    }
    return acc + model.b;
}

int classify_classical(const SvmModel& model, const TrainingSet& training,
                       const KernelSpec& spec, const Eigen::VectorXd& query) {
    return decision_value(model, training, spec, query) >= 0.0 ? +1 : -1;
}

KernelEigensystem kernel_eigensystem(const KernelMatrix& kernel) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(kernel.entries());
    if (es.info() != Eigen::Success) {
        throw NumericalError("kernel eigendecomposition failed to converge");
    }
    const int m = kernel.size();
    std::vector<int> order(m);
    std::iota(order.begin(), order.end(), 0);

    std::vector<Eigen::VectorXd> vecs(m);
    for (int i = 0; i < m; ++i) {
        vecs[i] = es.eigenvectors().col(i);
        canonicalize_sign(vecs[i]);
    }
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        const double la = es.eigenvalues()[a];
        const double lb = es.eigenvalues()[b];
        if (std::abs(la - lb) > 1e-12) return la > lb;
        return lexicographic_less(vecs[a], vecs[b]);
    });

    KernelEigensystem out;
    out.eigenvalues.resize(m);
    out.eigenvectors.resize(m, m);
    for (int i = 0; i < m; ++i) {
        out.eigenvalues[i] = es.eigenvalues()[order[i]];
        out.eigenvectors.col(i) = vecs[order[i]];
    }
    return out;
}

LowRankAnalysis low_rank_inverse(const KernelMatrix& kernel, double gamma,
                                 const TrainingSet* training) {
    if (gamma <= 0.0) {
        throw InputError("gamma must be positive, got " + std::to_string(gamma));
    }
    const KernelEigensystem eig = kernel_eigensystem(kernel);
    LowRankAnalysis out;
    out.lambda1 = eig.eigenvalues[0];
    if (out.lambda1 <= 0.0) {
        throw DegenerateKernelError("leading kernel eigenvalue " +
                                    std::to_string(out.lambda1) + " is not positive");
    }
    out.u1 = eig.eigenvectors.col(0);
    out.c = gamma * out.lambda1 / (1.0 + gamma * out.lambda1);
    const int m = kernel.size();
    out.approxInverse =
        gamma * (Eigen::MatrixXd::Identity(m, m) - out.c * out.u1 * out.u1.transpose());

    double discarded = 0.0;
    for (int i = 1; i < m; ++i) discarded += eig.eigenvalues[i] * eig.eigenvalues[i];
    out.truncationError = std::sqrt(discarded);

    if (training != nullptr) {
        if (training->size() != m) {
            throw InputError("training set size does not match kernel size");
        }
        const Eigen::VectorXd y = training->labels_as_vector();
        const double c_prime = out.c * out.u1.dot(y);
        Eigen::VectorXd w = Eigen::VectorXd::Zero(training->dimension());
        for (int j = 0; j < m; ++j) {
            w += (y[j] - c_prime * out.u1[j]) * training->vector(j);
        }
        out.w = gamma * w;
    }
    return out;
}

double truncation_error(const KernelMatrix& kernel, double epsK) {
    if (epsK <= 0.0 || epsK >= 1.0) {
        throw InputError("epsK must lie in (0,1), got " + std::to_string(epsK));
    }
    const KernelMatrix normalized{kernel.normalized()};
    const KernelEigensystem eig = kernel_eigensystem(normalized);
    const int m = normalized.size();

    double sum_sq = 0.0;
    Eigen::MatrixXd truncated = Eigen::MatrixXd::Zero(m, m);
    for (int i = 0; i < m; ++i) {
        const double lambda = eig.eigenvalues[i];
        if (std::abs(lambda) < epsK) {
            sum_sq += lambda * lambda;
        } else {
            const Eigen::VectorXd v = eig.eigenvectors.col(i);
            truncated += lambda * v * v.transpose();
        }
    }
    const double closed_form = std::sqrt(sum_sq);
    const double frobenius = (normalized.entries() - truncated).norm();
    if (std::abs(closed_form - frobenius) > 1e-10) {
        throw NumericalError("truncation error routes disagree: closed form " +
                             std::to_string(closed_form) + " vs Frobenius " +
                             std::to_string(frobenius));
    }
    return closed_form;
}

}  // namespace qsvm
