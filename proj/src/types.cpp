#include "statpipe/types.hpp"

#include <cmath>
#include <string>

namespace statpipe {

namespace {

std::string entry_name(std::size_t i, std::size_t j) {
  return "(" + std::to_string(i) + ", " + std::to_string(j) + ")";
}

}  // namespace

CorrelationMatrix::CorrelationMatrix(std::size_t n) : n_(n), a_(n * n, 0.0) {
  if (n == 0) throw std::invalid_argument("correlation matrix: dimension must be positive");
  for (std::size_t i = 0; i < n; ++i) a_[i * n + i] = 1.0;
}

CorrelationMatrix CorrelationMatrix::from_rows(const std::vector<std::vector<double>> &rows) {
  CorrelationMatrix c(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.size())
      throw std::invalid_argument("correlation matrix: row " + std::to_string(i) +
                                  " has " + std::to_string(rows[i].size()) +
                                  " entries, expected " + std::to_string(rows.size()));
    for (std::size_t j = 0; j < rows.size(); ++j) c.a_[i * c.n_ + j] = rows[i][j];
  }
  c.validate();
  return c;
}

void CorrelationMatrix::set(std::size_t i, std::size_t j, double rho) {
  if (i >= n_ || j >= n_) throw std::invalid_argument("correlation matrix: index out of range");
  if (i == j && rho != 1.0)
    throw std::invalid_argument("correlation matrix: diagonal entries must be 1");
  a_[i * n_ + j] = rho;
  a_[j * n_ + i] = rho;
}

void CorrelationMatrix::validate() const {
  for (std::size_t i = 0; i < n_; ++i) {
    if (a_[i * n_ + i] != 1.0)
      throw std::invalid_argument("correlation matrix: diagonal entry " + entry_name(i, i) +
                                  " must be exactly 1");
    for (std::size_t j = 0; j < n_; ++j) {
      const double v = a_[i * n_ + j];
      if (!std::isfinite(v) || v < -1.0 || v > 1.0)
        throw std::invalid_argument("correlation matrix: entry " + entry_name(i, j) +
                                    " outside [-1, 1]");
      if (std::fabs(v - a_[j * n_ + i]) > 1e-12)
        throw std::invalid_argument("correlation matrix: entry " + entry_name(i, j) +
                                    " is not symmetric");
    }
  }
}

}  // namespace statpipe
