#ifndef LIEFORM_RECOGNIZE_HPP
#define LIEFORM_RECOGNIZE_HPP

#include <optional>

#include "lieform/exterior.hpp"

namespace lieform {

/// Verdict of the pointwise 3-form classifier.  `stab_dim` and the Killing
/// signature describe the stabilizer of the nondegenerate core; kernel_dim
/// counts the split-off degenerate directions.
struct FormTypeReport {
  std::string verdict;  // cartan(<name>) | g2_type | sl_type | product_type | zero | unrecognized
  long stab_dim = -1;
  long kernel_dim = 0;
  std::string killing_signature;  // negative-definite | indefinite | degenerate | n/a
  std::string details;
};

/// Lie algebra of the GL(n) stabilizer of a k-vector: all A with
/// (derivation action of A)(phi) = 0, as a subspace of the n x n matrix
/// coordinates (row-major).  Metric-free and exact.
Subspace stabilizer_algebra(const MV& phi, long ambient_dim);

/// Exact catalogue classifier for 3-forms.  Basis-change invariant; the
/// optional metric is currently informational (all tests are metric-free).
FormTypeReport classify_3form(const MV& phi, long ambient_dim,
                              const std::optional<SparseMatrix>& metric = std::nullopt);

/// Float-backend variant for inputs with non-rational coefficients: rank
/// thresholds replace exact kernels, and compact-type (Cartan) confirmation
/// is not attempted.
FormTypeReport classify_3form_float(const MVF& phi, long ambient_dim, const Flt& tol);

struct SubspaceVerdict {
  bool bracket_closed = false;
  bool restricted_form_multisymplectic = false;
  bool induced_bracket_semisimple = false;  // nondegenerate (compact) Killing
  long subalgebra_dim = 0;
  bool strongly_associative() const {
    return bracket_closed && restricted_form_multisymplectic;
  }
};

/// Definition-level test of a subspace V of g: closure under the bracket,
/// multi-symplecticity of the restricted Cartan form, and semisimplicity of
/// the induced bracket.
SubspaceVerdict subspace_test(const Exterior& ex, const Subspace& V);

/// d_g(Lambda^2_{(*omega)+}) = d_g(g_perp) as a subspace of Lambda^3; the
/// identification of the plus part with g_perp is asserted.
Subspace coassoc_system_space(const Exterior& ex);

/// Does the 3-form (metric-dual 3-vector) theta restrict to zero on V?
bool restricts_to_zero(const Exterior& ex, const MV& theta, const Subspace& V);

}  // namespace lieform

#endif
