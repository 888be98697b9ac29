#include "kp/linalg.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include "kp/errors.hpp"

namespace kp {

DenseMatrix::DenseMatrix(int rows, int cols)
    : rows_(rows), cols_(cols),
      entries_(static_cast<std::size_t>(rows) * cols, 0.0) {
  if (rows < 0 || cols < 0)
    throw std::invalid_argument("DenseMatrix: negative dimensions");
}

DenseMatrix::DenseMatrix(int rows, int cols, std::vector<double> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (rows < 0 || cols < 0)
    throw std::invalid_argument("DenseMatrix: negative dimensions");
  if (entries_.size() != static_cast<std::size_t>(rows) * cols)
    throw std::invalid_argument("DenseMatrix: entry count mismatch");
  validate_finite();
}

DenseMatrix DenseMatrix::identity(int n) {
  DenseMatrix I(n, n);
  for (int i = 0; i < n; ++i) I(i, i) = 1.0;
  return I;
}

void DenseMatrix::validate_finite() const {
  for (double v : entries_)
    if (!std::isfinite(v))
      throw std::domain_error("DenseMatrix: non-finite entry");
}

LUFactors lu_factor(const DenseMatrix& A) {
  if (A.rows() != A.cols())
    throw std::invalid_argument("lu_factor: matrix must be square");
  const int n = A.rows();
  LUFactors f;
  f.lu = A;
  f.pivots.resize(n);
  for (int k = 0; k < n; ++k) {
    int piv = k;
    double best = std::abs(f.lu(k, k));
    for (int i = k + 1; i < n; ++i) {
      const double v = std::abs(f.lu(i, k));
      if (v > best) {
        best = v;
        piv = i;
      }
    }
    f.pivots[k] = piv;
    if (piv != k) {
      for (int j = 0; j < n; ++j) std::swap(f.lu(k, j), f.lu(piv, j));
      f.parity = -f.parity;
    }
    const double pivot = f.lu(k, k);
    if (pivot == 0.0) {
      if (!f.singular) {
        f.singular = true;
        f.zero_pivot_index = k;
      }
      continue;  // column is already zero below the diagonal
    }
    for (int i = k + 1; i < n; ++i) {
      const double m = f.lu(i, k) / pivot;
      f.lu(i, k) = m;
      if (m == 0.0) continue;
      for (int j = k + 1; j < n; ++j) f.lu(i, j) -= m * f.lu(k, j);
    }
  }
  return f;
}

namespace {

// Solves (A^T) x = rhs given LU factors of A^T. The factorization swaps
// whole rows, so all interchanges are applied to the right-hand side before
// substitution.
std::vector<double> lu_solve(const LUFactors& f, std::vector<double> x) {
  const int n = f.lu.rows();
  if (static_cast<int>(x.size()) != n)
    throw std::invalid_argument("solve: dimension mismatch");
  if (f.singular)
    throw SingularMatrixError(f.zero_pivot_index, "solve_row_system");
  for (int k = 0; k < n; ++k)
    if (f.pivots[k] != k) std::swap(x[k], x[f.pivots[k]]);
  for (int k = 0; k < n; ++k)
    for (int i = k + 1; i < n; ++i) x[i] -= f.lu(i, k) * x[k];
  for (int i = n - 1; i >= 0; --i) {
    for (int j = i + 1; j < n; ++j) x[i] -= f.lu(i, j) * x[j];
    x[i] /= f.lu(i, i);
  }
  return x;
}

}  // namespace

std::vector<double> solve_row_system(const std::vector<double>& rhs,
                                     const DenseMatrix& A) {
  if (A.rows() != A.cols())
    throw std::invalid_argument("solve_row_system: matrix must be square");
  if (static_cast<int>(rhs.size()) != A.rows())
    throw std::invalid_argument("solve_row_system: dimension mismatch");
  const int n = A.rows();
  DenseMatrix At(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) At(j, i) = A(i, j);
  const LUFactors f = lu_factor(At);
  std::vector<double> x = lu_solve(f, rhs);

  // Iterative refinement with extended-precision residuals. The GLM systems
  // are badly scaled (the kernel part spans many orders of magnitude), where
  // plain elimination loses eps * cond_skeel; two refinement sweeps bring
  // the answer back to the accuracy of the assembled entries at O(n^2) cost.
  std::vector<double> r(n);
  for (int pass = 0; pass < 2; ++pass) {
    for (int j = 0; j < n; ++j) {
      long double acc = rhs[j];
      for (int i = 0; i < n; ++i)
        acc -= static_cast<long double>(x[i]) * A(i, j);
      r[j] = static_cast<double>(acc);
    }
    const std::vector<double> d = lu_solve(f, r);
    for (int i = 0; i < n; ++i) x[i] += d[i];
  }
  return x;
}

std::vector<double> solve_row_system(const std::vector<double>& rhs,
                                     const LUFactors& At_factors) {
  return lu_solve(At_factors, rhs);
}

double determinant(const LUFactors& f) {
  if (f.singular) return 0.0;
  double det = f.parity;
  for (int k = 0; k < f.lu.rows(); ++k) det *= f.lu(k, k);
  return det;
}

double determinant(const DenseMatrix& A) { return determinant(lu_factor(A)); }

double scaled_frobenius(const std::vector<double>& entries, double scale) {
  if (!(scale > 0.0))
    throw std::invalid_argument("scaled_frobenius: scale must be positive");
  double sum = 0.0;
  for (double v : entries) sum += v * v;
  return scale * std::sqrt(sum);
}

double scaled_frobenius(const DenseMatrix& A, double scale) {
  return scaled_frobenius(A.entries(), scale);
}

}  // namespace kp
