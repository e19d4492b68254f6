#ifndef LIEFORM_SPARSE_MATRIX_HPP
#define LIEFORM_SPARSE_MATRIX_HPP

#include <utility>
#include <vector>

#include "lieform/base.hpp"

namespace lieform {

/// Sorted sparse vector: (index, value) pairs, strictly increasing index,
/// no stored zeros.
using SparseVec = std::vector<std::pair<long, Rat>>;

SparseVec sv_add(const SparseVec& a, const SparseVec& b);
SparseVec sv_axpy(const SparseVec& a, const Rat& c, const SparseVec& b);  // a + c*b
SparseVec sv_scale(const SparseVec& a, const Rat& c);
Rat sv_dot(const SparseVec& a, const SparseVec& b);
Rat sv_get(const SparseVec& a, long i);
void sv_set(SparseVec& a, long i, const Rat& v);

/// Row-major sparse rational matrix. No stored zero entries.
class SparseMatrix {
 public:
  SparseMatrix() = default;
  SparseMatrix(long rows, long cols) : rows_(rows), cols_(cols), data_(rows) {}

  static SparseMatrix identity(long n);

  long rows() const { return rows_; }
  long cols() const { return cols_; }

  const SparseVec& row(long r) const { return data_[r]; }
  SparseVec& row(long r) { return data_[r]; }

  Rat at(long r, long c) const { return sv_get(data_[r], c); }
  void set(long r, long c, const Rat& v) { sv_set(data_[r], c, v); }
  void add_at(long r, long c, const Rat& v);

  long nnz() const;
  bool is_zero() const { return nnz() == 0; }

  SparseMatrix transpose() const;
  SparseMatrix operator+(const SparseMatrix& o) const;
  SparseMatrix operator-(const SparseMatrix& o) const;
  SparseMatrix operator*(const SparseMatrix& o) const;
  SparseMatrix scaled(const Rat& c) const;
  bool operator==(const SparseMatrix& o) const;

  std::vector<Rat> apply(const std::vector<Rat>& v) const;
  SparseVec apply(const SparseVec& v) const;

  /// Rows of `below` appended under this matrix (same column count).
  SparseMatrix stacked(const SparseMatrix& below) const;

  /// Matrix whose columns are the given (dense) vectors.
  static SparseMatrix from_columns(long dim, const std::vector<std::vector<Rat>>& cols);
  static SparseMatrix from_rows(long dim, const std::vector<std::vector<Rat>>& rows);

  std::vector<Rat> dense_column(long c) const;
  std::vector<std::vector<Rat>> dense() const;

 private:
  long rows_ = 0, cols_ = 0;
  std::vector<SparseVec> data_;
};

}  // namespace lieform

#endif
