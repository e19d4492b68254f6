#ifndef LIEFORM_LINALG_FLOAT_HPP
#define LIEFORM_LINALG_FLOAT_HPP

#include <vector>

#include "lieform/base.hpp"
#include "lieform/sparse_matrix.hpp"

namespace lieform {

/// Dense big-float matrix, column-major access helpers.
struct DenseF {
  long rows = 0, cols = 0;
  std::vector<Flt> a;  // row-major
  DenseF() = default;
  DenseF(long r, long c) : rows(r), cols(c), a(r * c) {}
  Flt& at(long r, long c) { return a[r * cols + c]; }
  const Flt& at(long r, long c) const { return a[r * cols + c]; }
  static DenseF from(const SparseMatrix& m);
};

struct SvdResult {
  std::vector<Flt> singular;  // descending
  DenseF v;                   // right singular vectors as columns
};

/// One-sided Jacobi SVD (columns orthogonalized pairwise).
SvdResult jacobi_svd(DenseF m);

/// Basis (columns) of the numerical kernel: right singular vectors whose
/// singular value falls below `tol`.  A singular value within a factor of
/// 10 of the threshold on either side means the zero/nonzero split is not
/// clean, and raises a diagnostic error.
DenseF kernel_basis_f(const DenseF& m, const Flt& tol);

long rank_f(const DenseF& m, const Flt& tol);

/// Gaussian elimination with partial pivoting; throws on (numerically)
/// singular systems.
std::vector<Flt> solve_f(DenseF m, std::vector<Flt> b);

DenseF matmul_f(const DenseF& a, const DenseF& b);

Flt flt_from_string(const std::string& s);
std::string flt_to_string(const Flt& x, int digits = 40);

}  // namespace lieform

#endif
