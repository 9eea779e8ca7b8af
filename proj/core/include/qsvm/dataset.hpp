#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "qsvm/training_set.hpp"

namespace qsvm {

/// Parses a training CSV: N feature columns followed by one label column
/// (+1 or -1), with an optional header line. Fails with the offending line
/// number on malformed rows, inconsistent widths, or labels outside {-1,+1}.
/// At least two rows are required.
TrainingSet load_dataset(const std::string& path);

/// Parses a query CSV: N feature columns per row, optional header.
std::vector<Eigen::VectorXd> load_queries(const std::string& path, int expected_dimension);

}  // namespace qsvm
