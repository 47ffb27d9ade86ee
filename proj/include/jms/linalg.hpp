#pragma once

#include <vector>

#include "jms/specfun.hpp"

namespace jms {

/// Row-major dense complex matrix, sized for the handful of unknowns of the
/// interacting recursion.
class DenseMatrix {
 public:
  explicit DenseMatrix(int n) : n_(n), a_(static_cast<std::size_t>(n) * n) {}

  int size() const { return n_; }
  cplx& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * n_ + j]; }
  cplx operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * n_ + j]; }

 private:
  int n_;
  std::vector<cplx> a_;
};

/// Solves A x = b by Gaussian elimination with partial pivoting. Throws
/// SingularityError when a pivot falls below 64 ε ‖A‖∞.
std::vector<cplx> solve_dense(DenseMatrix a, std::vector<cplx> b);

/// Determinant by the same elimination; exact zeros are returned, not thrown.
cplx determinant(DenseMatrix a);

}  // namespace jms
