#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace qsvm {

/// Labeled training data: M feature vectors of common dimension N with
/// labels in {-1, +1}. Construction validates shape, labels, and that no
/// vector is identically zero (a zero vector has no direction state).
///
/// A single training vector is accepted so component-level states can be
/// exercised at M = 1; dataset ingestion additionally requires M >= 2.
class TrainingSet {
public:
    TrainingSet(std::vector<Eigen::VectorXd> vectors, std::vector<int> labels);

    int size() const { return static_cast<int>(vectors_.size()); }       // M
    int dimension() const { return static_cast<int>(vectors_[0].size()); }  // N

    const Eigen::VectorXd& vector(int j) const { return vectors_.at(j); }
    int label(int j) const { return labels_.at(j); }
    const std::vector<Eigen::VectorXd>& vectors() const { return vectors_; }
    const std::vector<int>& labels() const { return labels_; }

    Eigen::VectorXd labels_as_vector() const;

    /// Sum of squared vector norms; the trace of the linear kernel.
    double norm_chi() const;

    /// Flips every label in place-free fashion; returns the mirrored set.
    TrainingSet with_negated_labels() const;

private:
    std::vector<Eigen::VectorXd> vectors_;
    std::vector<int> labels_;
};

enum class KernelKind { Linear, Polynomial };

/// Kernel choice. Linear is the degree-1 polynomial.
struct KernelSpec {
    KernelKind kind = KernelKind::Linear;
    int degree = 1;

    static KernelSpec linear() { return {KernelKind::Linear, 1}; }
    static KernelSpec polynomial(int d);

    /// Effective exponent applied to dot products.
    int effective_degree() const { return kind == KernelKind::Linear ? 1 : degree; }
    std::string describe() const;
};

}  // namespace qsvm
