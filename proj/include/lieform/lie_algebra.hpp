#ifndef LIEFORM_LIE_ALGEBRA_HPP
#define LIEFORM_LIE_ALGEBRA_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lieform/linalg.hpp"
#include "lieform/root_system.hpp"
#include "lieform/sparse_matrix.hpp"

namespace lieform {

/// A compact simple Lie algebra with exact rational structure constants and
/// the positive-definite gram of minus the Killing form.  The canonical
/// construction is the compact combination of a Chevalley basis,
///    h_a = i H_a   (a simple),
///    e_a = i (E_a + E_{-a}),   f_a = E_a - E_{-a}   (a positive),
/// which keeps every structure constant an integer.
class LieAlgebraData {
 public:
  std::string name;                 // CLI-facing name (su3, so5, ...) or oracle tag
  std::optional<RootDatum> datum;   // present for root-datum constructions
  long dim = 0;
  std::vector<std::string> labels;

  // [b_i, b_j]; the full table is stored, so concurrent reads are safe
  const SparseVec& bracket(long i, long j) const { return brackets_[i * dim + j]; }
  std::vector<Rat> bracket(const std::vector<Rat>& x, const std::vector<Rat>& y) const;

  const SparseMatrix& killing_gram() const { return gram_; }
  const SparseMatrix& killing_gram_inverse() const;
  SparseMatrix ad_matrix(long i) const;

  /// Structural verification: antisymmetry is built in; this checks the
  /// Jacobi identity on all triples, recomputes the Killing gram from ad
  /// traces, checks positive-definiteness, and checks simplicity (the
  /// centralizer of the adjoint representation is one-dimensional).
  void verify_structure() const;

  /// upper[i][j - i - 1] = [b_i, b_j] for i < j; the lower half is filled in
  /// by antisymmetry.
  void set_brackets(const std::vector<std::vector<SparseVec>>& upper);
  void compute_killing();

 private:
  std::vector<SparseVec> brackets_;  // dim x dim table
  SparseMatrix gram_;
  std::shared_ptr<SparseMatrix> gram_inv_;  // filled by compute_killing
};

using AlgebraPtr = std::shared_ptr<const LieAlgebraData>;

/// Names accepted by build_algebra under the default guardrail.
std::vector<std::string> supported_algebras();

/// Root-datum construction (Chevalley basis, compact combination).
/// Accepts su<N>, so<2k+1>, sp<N>, g2, f4; the dimension guardrail applies.
AlgebraPtr build_algebra(const std::string& name, const Limits& limits = {});

/// Independent cross-check: the same algebra from an explicit matrix
/// realization (su(n): antihermitian traceless; so(n): antisymmetric;
/// sp(n): quaternionic antihermitian as complex 2n x 2n).  g2 has no
/// matrix oracle.
AlgebraPtr matrix_oracle(const std::string& name, const Limits& limits = {});

/// The outer involution for the su family (complex conjugation of the
/// defining realization: h -> -h, e -> -e, f -> f in the compact Chevalley
/// basis).  Returns the matrix on g, or nullopt when no outer automorphism
/// is implemented for the type.
std::optional<SparseMatrix> outer_automorphism(const LieAlgebraData& g);

/// Weights from Onishchik-Vinberg's decomposition of the complexified
/// g_perp, translated to our Bourbaki labels.  su(n+1) contributes two
/// conjugate constituents; everything else one.
std::vector<std::vector<long>> gperp_highest_weights(const LieAlgebraData& g);

/// Highest weight of the maximal isotypic constituent of g (x) g_perp and
/// the realification factor (2 for the su family, else 1).
std::pair<std::vector<long>, int> rmax_weight(const LieAlgebraData& g);

}  // namespace lieform

#endif
