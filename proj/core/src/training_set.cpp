#include "qsvm/training_set.hpp"

#include <cstdlib>

#include "qsvm/errors.hpp"

namespace qsvm {

TrainingSet::TrainingSet(std::vector<Eigen::VectorXd> vectors, std::vector<int> labels)
    : vectors_(std::move(vectors)), labels_(std::move(labels)) {
    if (vectors_.empty()) {
        throw InputError("training set: no vectors");
    }
    if (labels_.size() != vectors_.size()) {
        throw InputError("training set: " + std::to_string(vectors_.size()) + " vectors but " +
                         std::to_string(labels_.size()) + " labels");
    }
    const Eigen::Index n = vectors_[0].size();
    if (n < 1) {
        throw InputError("training set: feature dimension must be >= 1");
    }
    for (std::size_t j = 0; j < vectors_.size(); ++j) {
        if (vectors_[j].size() != n) {
            throw InputError("training set: vector " + std::to_string(j) + " has dimension " +
                             std::to_string(vectors_[j].size()) + ", expected " + std::to_string(n));
        }
        if (vectors_[j].norm() == 0.0) {
            throw InputError("training set: vector " + std::to_string(j) + " is all-zero");
        }
        if (labels_[j] != 1 && labels_[j] != -1) {
            throw InputError("training set: label " + std::to_string(labels_[j]) + " at index " +
                             std::to_string(j) + " is not +1 or -1");
        }
    }
}

Eigen::VectorXd TrainingSet::labels_as_vector() const {
    Eigen::VectorXd y(size());
    for (int j = 0; j < size(); ++j) y[j] = labels_[j];
    return y;
}

double TrainingSet::norm_chi() const {
    double total = 0.0;
    for (const auto& x : vectors_) total += x.squaredNorm();
    return total;
}

TrainingSet TrainingSet::with_negated_labels() const {
    std::vector<int> flipped(labels_);
    for (int& y : flipped) y = -y;
    return TrainingSet(vectors_, flipped);
}

KernelSpec KernelSpec::polynomial(int d) {
    if (d < 1) {
        throw InputError("kernel: polynomial degree must be >= 1, got " + std::to_string(d));
    }
    return {KernelKind::Polynomial, d};
}

std::string KernelSpec::describe() const {
    if (kind == KernelKind::Linear) return "linear";
    return "poly:" + std::to_string(degree);
}

}  // namespace qsvm
