#pragma once

#include <cstddef>
#include <vector>

namespace kp {

/// Dense real matrix, row-major. Entries must be finite on construction;
/// a non-finite entry raises std::domain_error (grid sweeps catch this and
/// flag the offending cell).
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(int rows, int cols);
  DenseMatrix(int rows, int cols, std::vector<double> entries);

  static DenseMatrix identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  double& operator()(int i, int j) {
    return entries_[static_cast<std::size_t>(i) * cols_ + j];
  }
  double operator()(int i, int j) const {
    return entries_[static_cast<std::size_t>(i) * cols_ + j];
  }

  const std::vector<double>& entries() const { return entries_; }
  std::vector<double>& entries() { return entries_; }

  void validate_finite() const;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> entries_;
};

/// PA = LU factorization with partial pivoting, packed in place. A singular
/// input is not an error at factor time: the zero pivot is recorded and
/// surfaces as determinant 0 or as SingularMatrixError on solve.
struct LUFactors {
  DenseMatrix lu;
  std::vector<int> pivots;  // row swapped with k at step k
  int parity = 1;           // sign of the permutation
  bool singular = false;
  int zero_pivot_index = -1;
};

LUFactors lu_factor(const DenseMatrix& A);

/// Solves the row system x * A = rhs (factors A^T and back-substitutes).
/// Throws SingularMatrixError with the pivot index if A is singular.
std::vector<double> solve_row_system(const std::vector<double>& rhs,
                                     const DenseMatrix& A);
std::vector<double> solve_row_system(const std::vector<double>& rhs,
                                     const LUFactors& At_factors);

/// det(A) = parity * prod(U_kk); exactly 0 for singular input.
double determinant(const DenseMatrix& A);
double determinant(const LUFactors& factors);

/// scale * sqrt(sum of squared entries); scale must be positive.
double scaled_frobenius(const DenseMatrix& A, double scale);
double scaled_frobenius(const std::vector<double>& entries, double scale);

}  // namespace kp
