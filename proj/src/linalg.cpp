#include "jms/linalg.hpp"

#include <cmath>
#include <limits>
#include <utility>

#include "jms/error.hpp"

namespace jms {

namespace {

double inf_norm(const DenseMatrix& a) {
  double best = 0.0;
  for (int i = 0; i < a.size(); ++i) {
    double row = 0.0;
    for (int j = 0; j < a.size(); ++j) row += std::abs(a(i, j));
    best = std::max(best, row);
  }
  return best;
}

int pivot_row(const DenseMatrix& a, int col) {
  int best = col;
  for (int i = col + 1; i < a.size(); ++i) {
    if (std::abs(a(i, col)) > std::abs(a(best, col))) best = i;
  }
  return best;
}

void swap_rows(DenseMatrix& a, int r1, int r2) {
  for (int j = 0; j < a.size(); ++j) std::swap(a(r1, j), a(r2, j));
}

}  // namespace

std::vector<cplx> solve_dense(DenseMatrix a, std::vector<cplx> b) {
  const int n = a.size();
  if (static_cast<int>(b.size()) != n) throw DomainError("solve_dense: dimension mismatch");
  const double tiny = 64.0 * std::numeric_limits<double>::epsilon() * inf_norm(a);

  for (int k = 0; k < n; ++k) {
    const int p = pivot_row(a, k);
    if (!(std::abs(a(p, k)) > tiny)) {
      throw SingularityError("pivot " + std::to_string(k), "solve_dense: matrix is numerically singular");
    }
    if (p != k) {
      swap_rows(a, p, k);
      std::swap(b[p], b[k]);
    }
    for (int i = k + 1; i < n; ++i) {
      const cplx f = a(i, k) / a(k, k);
      if (f == 0.0) continue;
      for (int j = k; j < n; ++j) a(i, j) -= f * a(k, j);
      b[i] -= f * b[k];
    }
  }
  std::vector<cplx> x(n);
  for (int i = n - 1; i >= 0; --i) {
    cplx acc = b[i];
    for (int j = i + 1; j < n; ++j) acc -= a(i, j) * x[j];
    x[i] = acc / a(i, i);
  }
  return x;
}

cplx determinant(DenseMatrix a) {
  const int n = a.size();
  cplx det = 1.0;
  for (int k = 0; k < n; ++k) {
    const int p = pivot_row(a, k);
    if (a(p, k) == 0.0) return 0.0;
    if (p != k) {
      swap_rows(a, p, k);
      det = -det;
    }
    det *= a(k, k);
    for (int i = k + 1; i < n; ++i) {
      const cplx f = a(i, k) / a(k, k);
      for (int j = k; j < n; ++j) a(i, j) -= f * a(k, j);
    }
  }
  return det;
}

}  // namespace jms
