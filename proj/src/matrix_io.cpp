#include "vbaisac/matrix_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace vbaisac {

std::string complex_matrix_to_string(const Eigen::MatrixXcd& m) {
  std::string out;
  out += std::to_string(m.rows()) + " " + std::to_string(m.cols()) + "\n";
  char buf[96];
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      std::snprintf(buf, sizeof(buf), "%.17g,%.17g", m(r, c).real(), m(r, c).imag());
      if (c) out += ' ';
      out += buf;
    }
    out += '\n';
  }
  return out;
}

Eigen::MatrixXcd complex_matrix_from_string(const std::string& text) {
  std::istringstream in(text);
  Eigen::Index rows = 0, cols = 0;
  if (!(in >> rows >> cols) || rows < 0 || cols < 0)
    throw std::runtime_error("malformed matrix header");
  Eigen::MatrixXcd m(rows, cols);
  std::string token;
  for (Eigen::Index r = 0; r < rows; ++r)
    for (Eigen::Index c = 0; c < cols; ++c) {
      if (!(in >> token)) throw std::runtime_error("matrix data ended early");
      double re = 0.0, im = 0.0;
      if (std::sscanf(token.c_str(), "%lf,%lf", &re, &im) != 2)
        throw std::runtime_error("malformed matrix entry: " + token);
      m(r, c) = {re, im};
    }
  return m;
}

void save_complex_matrix(const std::string& path, const Eigen::MatrixXcd& m) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  f << complex_matrix_to_string(m);
}

Eigen::MatrixXcd load_complex_matrix(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open for reading: " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return complex_matrix_from_string(ss.str());
}

}  // namespace vbaisac
