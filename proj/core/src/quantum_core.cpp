#include "qsvm/quantum_core.hpp"

#include <cmath>
#include <string>

#include "qsvm/errors.hpp"

namespace qsvm {

namespace {

constexpr double kNormTol = 1e-10;
constexpr double kTraceTol = 1e-10;
constexpr double kHermitianTol = 1e-12;
constexpr double kPsdTol = -1e-10;

void check_dims(const Dims& dims, Eigen::Index total, const char* kind) {
    if (dims.empty()) {
        throw InvariantViolation(std::string(kind) + ": empty subsystem list");
    }
    Eigen::Index product = 1;
    for (const Eigen::Index d : dims) {
        if (d < 1) {
            throw InvariantViolation(std::string(kind) + ": subsystem dimension " +
                                     std::to_string(d) + " < 1");
        }
        product *= d;
    }
    if (product != total) {
        throw InvariantViolation(std::string(kind) + ": subsystem dimensions multiply to " +
                                 std::to_string(product) + ", amplitude space is " +
                                 std::to_string(total));
    }
}

void check_hermitian(const Eigen::MatrixXcd& m, const char* kind) {
    if (m.rows() != m.cols() || m.rows() < 1) {
        throw InvariantViolation(std::string(kind) + ": matrix must be square and nonempty");
    }
    const double asym = (m - m.adjoint()).cwiseAbs().maxCoeff();
    if (asym > kHermitianTol) {
        throw InvariantViolation(std::string(kind) + ": not Hermitian, deviation " +
                                 std::to_string(asym));
    }
}

}  // namespace

Eigen::Index dims_product(const Dims& dims) {
    Eigen::Index product = 1;
    for (const Eigen::Index d : dims) product *= d;
    return product;
}

PureState::PureState(Eigen::VectorXcd amplitudes, Dims dims)
    : amps_(std::move(amplitudes)), dims_(std::move(dims)) {
    check_dims(dims_, amps_.size(), "pure state");
    const double norm = amps_.norm();
    if (std::abs(norm - 1.0) > kNormTol) {
        throw InvariantViolation("pure state norm " + std::to_string(norm) + " is not 1");
    }
}

PureState PureState::basis(Eigen::Index dim, Eigen::Index index) {
    if (index < 0 || index >= dim) {
        throw InputError("basis index " + std::to_string(index) + " outside dimension " +
                         std::to_string(dim));
    }
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim);
    v[index] = 1.0;
    return PureState(std::move(v), {dim});
}

PureState PureState::normalized(Eigen::VectorXcd raw, Dims dims) {
    const double norm = raw.norm();
    if (norm == 0.0) {
        throw InputError("cannot normalize the zero vector into a state");
    }
    return PureState(raw / norm, std::move(dims));
}

DensityMatrix::DensityMatrix(Eigen::MatrixXcd entries, Dims dims)
    : m_(std::move(entries)), dims_(std::move(dims)) {
    check_hermitian(m_, "density matrix");
    check_dims(dims_, m_.rows(), "density matrix");
    const double trace = m_.trace().real();
    if (std::abs(trace - 1.0) > kTraceTol) {
        throw InvariantViolation("density matrix trace " + std::to_string(trace) + " is not 1");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m_, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < kPsdTol) {
        throw InvariantViolation("density matrix min eigenvalue " +
                                 std::to_string(es.eigenvalues().minCoeff()) + " below 0");
    }
}

DensityMatrix DensityMatrix::from_pure(const PureState& psi) {
    return DensityMatrix(psi.amplitudes() * psi.amplitudes().adjoint(), psi.dims());
}

HermitianOperator::HermitianOperator(Eigen::MatrixXcd entries, std::string label)
    : m_(std::move(entries)), dims_{m_.rows()}, label_(std::move(label)) {
    check_hermitian(m_, "operator");
}

HermitianOperator::HermitianOperator(Eigen::MatrixXcd entries, Dims dims, std::string label)
    : m_(std::move(entries)), dims_(std::move(dims)), label_(std::move(label)) {
    check_hermitian(m_, "operator");
    check_dims(dims_, m_.rows(), "operator");
}

namespace {

Dims concat(const Dims& a, const Dims& b) {
    Dims out = a;
    out.insert(out.end(), b.begin(), b.end());
    return out;
}

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

}  // namespace

PureState tensor(const PureState& a, const PureState& b) {
    Eigen::VectorXcd out(a.dimension() * b.dimension());
    for (Eigen::Index i = 0; i < a.dimension(); ++i) {
        out.segment(i * b.dimension(), b.dimension()) = a.amplitude(i) * b.amplitudes();
    }
    return PureState(std::move(out), concat(a.dims(), b.dims()));
}

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
    return DensityMatrix(kron(a.entries(), b.entries()), concat(a.dims(), b.dims()));
}

HermitianOperator tensor(const HermitianOperator& a, const HermitianOperator& b) {
    return HermitianOperator(kron(a.entries(), b.entries()), concat(a.dims(), b.dims()),
                             a.label() + "(x)" + b.label());
}

DensityMatrix partial_trace(const DensityMatrix& rho, int keep) {
    const Dims& dims = rho.dims();
    if (dims.size() < 2) {
        throw InputError("partial trace needs at least two subsystems");
    }
    if (keep < 0 || keep >= static_cast<int>(dims.size())) {
        throw InputError("partial trace: subsystem index " + std::to_string(keep) +
                         " out of range");
    }
    // Split indices as (left, kept, right); trace over left and right.
    Eigen::Index left = 1, right = 1;
    for (int s = 0; s < keep; ++s) left *= dims[s];
    for (int s = keep + 1; s < static_cast<int>(dims.size()); ++s) right *= dims[s];
    const Eigen::Index d = dims[keep];

    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index j = 0; j < d; ++j) {
            Complex acc = 0.0;
            for (Eigen::Index l = 0; l < left; ++l) {
                const Eigen::Index row_base = (l * d + i) * right;
                const Eigen::Index col_base = (l * d + j) * right;
                for (Eigen::Index r = 0; r < right; ++r) {
                    acc += rho.entries()(row_base + r, col_base + r);
                }
            }
            out(i, j) = acc;
        }
    }
    return DensityMatrix(std::move(out), {d});
}

HermitianOperator swap_operator(Eigen::Index dim) {
    if (dim < 1) {
        throw InputError("swap operator dimension must be >= 1");
    }
    Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(dim * dim, dim * dim);
    for (Eigen::Index m = 0; m < dim; ++m) {
        for (Eigen::Index n = 0; n < dim; ++n) {
            s(m * dim + n, n * dim + m) = 1.0;
        }
    }
    return HermitianOperator(std::move(s), {dim, dim}, "swap(" + std::to_string(dim) + ")");
}

Spectrum hermitian_eig(const HermitianOperator& op) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(op.entries());
    if (es.info() != Eigen::Success) {
        throw NumericalError("eigendecomposition of '" + op.label() + "' failed to converge");
    }
    return Spectrum{es.eigenvalues(), es.eigenvectors()};
}

Propagator::Propagator(const HermitianOperator& op)
    : spectrum_(hermitian_eig(op)), dims_(op.dims()) {}

Eigen::MatrixXcd Propagator::unitary(double t) const {
    const Eigen::Index d = spectrum_.eigenvalues.size();
    Eigen::VectorXcd phases(d);
    for (Eigen::Index i = 0; i < d; ++i) {
        phases[i] = std::polar(1.0, -spectrum_.eigenvalues[i] * t);
    }
    return spectrum_.eigenvectors * phases.asDiagonal() * spectrum_.eigenvectors.adjoint();
}

PureState Propagator::apply(double t, const PureState& target) const {
    if (target.dimension() != spectrum_.eigenvalues.size()) {
        throw InputError("evolve: state dimension " + std::to_string(target.dimension()) +
                         " does not match operator dimension " +
                         std::to_string(spectrum_.eigenvalues.size()));
    }
    return PureState(unitary(t) * target.amplitudes(), target.dims());
}

DensityMatrix Propagator::apply(double t, const DensityMatrix& target) const {
    if (target.dimension() != spectrum_.eigenvalues.size()) {
        throw InputError("evolve: density dimension " + std::to_string(target.dimension()) +
                         " does not match operator dimension " +
                         std::to_string(spectrum_.eigenvalues.size()));
    }
    const Eigen::MatrixXcd u = unitary(t);
    return DensityMatrix(u * target.entries() * u.adjoint(), target.dims());
}

PureState exact_evolve(const HermitianOperator& op, double t, const PureState& target) {
    return Propagator(op).apply(t, target);
}

DensityMatrix exact_evolve(const HermitianOperator& op, double t, const DensityMatrix& target) {
    return Propagator(op).apply(t, target);
}

double fidelity(const PureState& a, const PureState& b) {
    if (a.dimension() != b.dimension()) {
        throw InputError("fidelity: dimensions differ");
    }
    return std::norm(a.amplitudes().dot(b.amplitudes()));
}

}  // namespace qsvm
