#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <vector>

namespace qsvm {

using Complex = std::complex<double>;

/// Subsystem dimension list. Dimensions are arbitrary positive integers;
/// powers of two appear only where an actual qubit register is claimed.
using Dims = std::vector<Eigen::Index>;

Eigen::Index dims_product(const Dims& dims);

/// Normalized complex amplitude vector over an ordered list of subsystems.
/// Constructors validate (never repair) unit norm to 1e-10.
class PureState {
public:
    PureState(Eigen::VectorXcd amplitudes, Dims dims);

    const Eigen::VectorXcd& amplitudes() const { return amps_; }
    const Dims& dims() const { return dims_; }
    Eigen::Index dimension() const { return amps_.size(); }

    Complex amplitude(Eigen::Index i) const { return amps_[i]; }

    /// Computational basis state |index> of the given dimension.
    static PureState basis(Eigen::Index dim, Eigen::Index index);

    /// Normalizes a raw amplitude vector; the one deliberate entry point
    /// that scales (state preparation), as opposed to the validating ctor.
    static PureState normalized(Eigen::VectorXcd raw, Dims dims);

private:
    Eigen::VectorXcd amps_;
    Dims dims_;
};

/// Hermitian, unit-trace, positive-semidefinite matrix over subsystems.
class DensityMatrix {
public:
    DensityMatrix(Eigen::MatrixXcd entries, Dims dims);

    const Eigen::MatrixXcd& entries() const { return m_; }
    const Dims& dims() const { return dims_; }
    Eigen::Index dimension() const { return m_.rows(); }

    static DensityMatrix from_pure(const PureState& psi);

private:
    Eigen::MatrixXcd m_;
    Dims dims_;
};

/// Hermitian matrix with a free-text label for diagnostics.
class HermitianOperator {
public:
    HermitianOperator(Eigen::MatrixXcd entries, std::string label);
    HermitianOperator(Eigen::MatrixXcd entries, Dims dims, std::string label);

    const Eigen::MatrixXcd& entries() const { return m_; }
    const Dims& dims() const { return dims_; }
    const std::string& label() const { return label_; }
    Eigen::Index dimension() const { return m_.rows(); }

private:
    Eigen::MatrixXcd m_;
    Dims dims_;
    std::string label_;
};

/// Eigenvalues ascending with matching orthonormal eigenvectors.
struct Spectrum {
    Eigen::VectorXd eigenvalues;
    Eigen::MatrixXcd eigenvectors;
};

PureState tensor(const PureState& a, const PureState& b);
DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);
HermitianOperator tensor(const HermitianOperator& a, const HermitianOperator& b);

/// Reduced state of the kept subsystem (0-based index); all other
/// subsystems are traced out.
DensityMatrix partial_trace(const DensityMatrix& rho, int keep);

/// The dim^2 x dim^2 operator exchanging two dim-dimensional subsystems.
/// It is an involution with exactly one nonzero entry per row.
HermitianOperator swap_operator(Eigen::Index dim);

/// Dense Hermitian eigendecomposition; throws on non-Hermitian input.
Spectrum hermitian_eig(const HermitianOperator& op);

/// Applies exp(-i A t) through the spectral decomposition of A.
PureState exact_evolve(const HermitianOperator& op, double t, const PureState& target);
DensityMatrix exact_evolve(const HermitianOperator& op, double t, const DensityMatrix& target);

/// |<a|b>|^2.
double fidelity(const PureState& a, const PureState& b);

/// Precomputed spectral decomposition of a Hermitian operator, for applying
/// exp(-i A t) repeatedly at different times without re-diagonalizing.
class Propagator {
public:
    explicit Propagator(const HermitianOperator& op);

    Eigen::MatrixXcd unitary(double t) const;
    PureState apply(double t, const PureState& target) const;
    DensityMatrix apply(double t, const DensityMatrix& target) const;

    const Spectrum& spectrum() const { return spectrum_; }
    const Dims& dims() const { return dims_; }

private:
    Spectrum spectrum_;
    Dims dims_;
};

}  // namespace qsvm
