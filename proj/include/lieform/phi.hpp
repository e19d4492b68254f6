#ifndef LIEFORM_PHI_HPP
#define LIEFORM_PHI_HPP

#include "lieform/exterior.hpp"

namespace lieform {

/// Harmonic (= invariant) forms per degree, Betti numbers, and the primitive
/// generator degrees read off the Poincare polynomial.
struct InvariantAlgebra {
  std::vector<long> betti;                 // index 0..n; -1 = not computed
  std::vector<int> computed_degrees;       // degrees with an explicit harmonic basis
  std::map<int, Subspace> harmonic;        // for computed degrees
  std::vector<int> primitive_degrees;      // meaningful when complete
  bool complete = false;

  bool poincare_matches(const std::vector<int>& generator_degrees) const;
};

InvariantAlgebra invariant_forms(const Exterior& ex);

/// True iff v -> v -| phi has zero kernel (exact rank).  Throws on the zero
/// form.
bool multisymplectic_check(const Exterior& ex, const MV& phi);

/// Per-degree splitting Lambda^k = plus_k (+) minus_k induced by an
/// invariant form phi: plus_k = ker(phi ^ .), minus_k its gram complement.
struct PhiSplit {
  MV phi;
  std::vector<long> plus_dim, minus_dim;   // index 0..n
  std::map<int, Subspace> plus, minus;     // degrees within the guardrail
  std::vector<int> skipped_degrees;
};

/// Checks d_g(phi) = 0 = delta_g(phi) first, then computes the splitting and
/// verifies the star-free duality rank(L_phi on Lambda^k) =
/// rank(L_phi on Lambda^{n-l-k}) plus the vanishing band at high degree.
PhiSplit phi_split(const Exterior& ex, const MV& phi);

/// Exact anticommutation checks of L_phi against d_g and delta_g on every
/// degree: (-1)^{l+1} L d + d L = 0 and the same with delta.
struct CommutationReport {
  bool d_ok = false, delta_ok = false;
  std::vector<int> skipped_degrees;
};
CommutationReport verify_commutation(const Exterior& ex, const MV& phi);

struct Corollary56Report {
  bool lambda2_star_minus_is_dg = false;    // (5.12)
  bool lambda2_omega_minus_full = false;    // (5.13)
  bool lambda3_star_minus_is_line = false;  // (5.14)
  bool d_gperp_in_omega_minus3 = false;     // (5.15)
  bool wedge_band_in_plus = false;          // (5.16), all degrees checked
};
Corollary56Report corollary_5_6(const Exterior& ex);

/// Scalar of the equivariant map beta -> *(beta ^ phi) ^ phi on the minus
/// space at degree n - l - 1, float backend.  not_applicable when that
/// degree is negative (e.g. su2 with the Cartan form).
struct XiResult {
  bool applicable = false;
  Flt constant;
  Flt max_offdiag;   // after removing c * Id
  long space_dim = 0;
};
XiResult xi_constant(const Exterior& ex, const MV& phi);

struct SigmaReport {
  bool applicable = false;
  Rat det_sigma;
  std::map<int, int> primitive_signs;  // degree -> +-1
  bool commutes_with_laplacian = false;
  bool involution_on_harmonics = false;
};
SigmaReport sigma_action_on_primitives(const Exterior& ex);

/// The four-row dimension table of the splittings by omega and *omega, plus
/// the Lambda^4 four-way decomposition checks specific to su(3).
struct SplitTable {
  std::vector<long> star_minus, star_plus, omega_minus, omega_plus;  // 0..n
  bool su3_checks_run = false;
  bool lambda4_fourway_ok = false;   // dims 8+27+8+27 with direct sum
  bool eq_5_22_ok = false;
  bool eq_5_23_ok = false;
};
SplitTable example_5_7_table(const Exterior& ex);

/// Harmonic generator of a 1-dimensional harmonic space, normalized to the
/// canonical basis vector of the subspace.
MV harmonic_generator(const Exterior& ex, int degree);

}  // namespace lieform

#endif
