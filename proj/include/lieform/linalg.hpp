#ifndef LIEFORM_LINALG_HPP
#define LIEFORM_LINALG_HPP

#include <optional>
#include <vector>

#include "lieform/sparse_matrix.hpp"

namespace lieform {

/// Reduced row echelon form, computed in place.  Pivoting is deterministic:
/// columns are processed left to right, and among candidate rows the one
/// with the fewest nonzeros wins (ties by row index), so the parallel and
/// serial paths produce identical output.
struct Echelon {
  SparseMatrix m;               // RREF
  std::vector<long> pivot_cols; // one per pivot row, increasing
  long rank() const { return static_cast<long>(pivot_cols.size()); }
};

Echelon rref(SparseMatrix m);         // parallel row updates when enabled
Echelon rref_serial(SparseMatrix m);  // reference implementation

long rank(const SparseMatrix& m);

/// Span of rational vectors inside an ambient coordinate space.  The basis
/// is kept as the RREF rows of the generating set, which makes the
/// representation canonical: equal spans have equal bases.
class Subspace {
 public:
  Subspace() = default;
  explicit Subspace(long ambient) : ambient_(ambient) {}
  static Subspace span_of(long ambient, const std::vector<std::vector<Rat>>& gens);
  static Subspace span_rows(const SparseMatrix& rows);
  static Subspace full(long ambient);

  long ambient() const { return ambient_; }
  long dim() const { return basis_.rows(); }
  const SparseMatrix& basis_rows() const { return basis_; }
  std::vector<Rat> basis_vector(long i) const;

  bool contains(const std::vector<Rat>& v) const;
  bool contains(const Subspace& other) const;
  bool operator==(const Subspace& other) const;

  Subspace sum(const Subspace& other) const;
  Subspace intersection(const Subspace& other) const;

  /// Coordinates of v in the stored basis; empty if v is outside the span.
  std::optional<std::vector<Rat>> coordinates(const std::vector<Rat>& v) const;

 private:
  long ambient_ = 0;
  SparseMatrix basis_;  // RREF rows
};

/// Basis of { v : m v = 0 }.
Subspace kernel_basis(const SparseMatrix& m);

/// Column space of m.
Subspace image_basis(const SparseMatrix& m);

/// One solution of m x = b, if any.
std::optional<std::vector<Rat>> solve(const SparseMatrix& m, const std::vector<Rat>& b);

/// { t : <t, b>_gram = 0 for all b in s }.  gram must be symmetric
/// positive-definite on the ambient space.
Subspace orthogonal_complement(const Subspace& s, const SparseMatrix& gram);

/// Gram-orthogonal projection of v onto s.
std::vector<Rat> project_onto(const Subspace& s, const SparseMatrix& gram,
                              const std::vector<Rat>& v);

bool is_positive_definite(const SparseMatrix& sym);

/// Dense inverse; throws if singular.
SparseMatrix inverse(const SparseMatrix& m);
Rat determinant(const SparseMatrix& m);

/// Polynomials over Q, coefficients low degree first.
using Poly = std::vector<Rat>;
Poly minimal_polynomial(const SparseMatrix& m);
Rat poly_eval(const Poly& p, const Rat& x);

struct EigenSpace {
  Rat value;
  Subspace space;
};

/// Exact eigenspaces of a square matrix whose minimal polynomial splits
/// into distinct rational linear factors (true for the Casimir operators
/// used here).  Results sorted by eigenvalue.  Throws if an irreducible
/// factor of degree >= 2 remains, naming the factor.
std::vector<EigenSpace> rational_eigenspaces(const SparseMatrix& m);

}  // namespace lieform

#endif
