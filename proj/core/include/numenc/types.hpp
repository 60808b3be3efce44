#pragma once

#include <Eigen/Dense>

namespace numenc {

using Eigen::MatrixXd;
using Eigen::MatrixXi;
using Eigen::VectorXd;
using Eigen::VectorXi;

enum class Task {
    Regression,
    Binary,
    Multiclass,
};

inline bool is_classification(Task t) { return t != Task::Regression; }

} // namespace numenc
