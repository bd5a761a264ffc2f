// Core value types shared by every statpipe module.
#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace statpipe {

// First two moments of a delay random variable.  Units: picoseconds.
struct GaussianMoments {
  double mean = 0.0;
  double std_dev = 0.0;
};

// Symmetric correlation matrix with unit diagonal, entries in [-1, 1].
// Storage is dense row-major; set() keeps the matrix symmetric.
class CorrelationMatrix {
 public:
  explicit CorrelationMatrix(std::size_t n);

  static CorrelationMatrix identity(std::size_t n) { return CorrelationMatrix(n); }
  static CorrelationMatrix from_rows(const std::vector<std::vector<double>> &rows);

  std::size_t size() const { return n_; }

  double operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

  // Sets both (i, j) and (j, i).  Diagonal writes must be exactly 1.
  void set(std::size_t i, std::size_t j, double rho);

  // Throws std::invalid_argument naming the offending entry.
  void validate() const;

  const std::vector<double> &raw() const { return a_; }

 private:
  std::size_t n_;
  std::vector<double> a_;
};

}  // namespace statpipe
