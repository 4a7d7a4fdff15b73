#pragma once

#include <Eigen/Dense>
#include <string>

namespace vbaisac {

// Plain-text complex matrix format for cross-implementation exchange:
// first line "rows cols", then one line per row of space-separated
// "re,im" pairs with 17 significant digits.

void save_complex_matrix(const std::string& path, const Eigen::MatrixXcd& m);
Eigen::MatrixXcd load_complex_matrix(const std::string& path);

std::string complex_matrix_to_string(const Eigen::MatrixXcd& m);
Eigen::MatrixXcd complex_matrix_from_string(const std::string& text);

}  // namespace vbaisac
