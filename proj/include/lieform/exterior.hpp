#ifndef LIEFORM_EXTERIOR_HPP
#define LIEFORM_EXTERIOR_HPP

#include <functional>
#include <mutex>

#include "lieform/lie_algebra.hpp"
#include "lieform/linalg_float.hpp"
#include "lieform/multivector.hpp"

namespace lieform {

/// Which scalar backend star-dependent operations may use.  The exact
/// backend is the default; hodge_star requires the float backend and
/// otherwise points the caller at rational_star.
enum class Backend { exact, bigfloat };
Backend active_backend();
void set_active_backend(Backend b);

struct SpaceDesc {
  std::string algebra;
  std::string kind;  // "lambda^k" or "g(x)gperp"
  long dim = 0;
};

struct LinOp {
  SpaceDesc domain, codomain;
  SparseMatrix matrix;
};

/// Exterior algebra of a compact simple Lie algebra: index tables, the
/// induced metric, the invariant differential d_g and codifferential
/// delta_g, the so(g)-action of 2-vectors, and the star operators.
///
/// Conventions.  Multivector coefficients live in the basis wedges of the
/// algebra basis; the inner product on Lambda^k is the minor form of the
/// (positive) gram of minus the Killing form.  The Cartan 3-form is stored
/// as the metric-dual trivector, i.e. <omega, x^y^z> = <x,[y,z]>, which is
/// what makes the contraction identities (x -| omega = d_g x and friends)
/// hold in a non-orthonormal basis.
class Exterior {
 public:
  explicit Exterior(AlgebraPtr g, Limits limits = {});

  const LieAlgebraData& algebra() const { return *g_; }
  AlgebraPtr algebra_ptr() const { return g_; }
  const Limits& limits() const { return limits_; }
  long n() const { return g_->dim; }
  long dim_lambda(int k) const { return binomial(n(), k); }
  void check_exterior(int k) const;

  const std::vector<Mask>& basis(int k) const;
  long pos(int k, Mask m) const;
  MV from_coords(int k, const std::vector<Rat>& v) const;
  std::vector<Rat> coords(const MV& a) const;

  const SparseMatrix& gram1() const { return g_->killing_gram(); }
  const SparseMatrix& induced_gram(int k) const;
  Rat pairing(const MV& a, const MV& b) const;
  Rat det_gram1() const;

  /// Gram-aware contraction (interior product by the metric dual of v).
  MV contract(const std::vector<Rat>& v, const MV& a) const;
  MV contract(const MV& v, const MV& a) const;

  MV d(const MV& a) const;
  MV delta(const MV& a) const;

  /// Derivation extension of ad(b_i) (resp. ad(x)) to Lambda^k.
  MV ad_action(long i, const MV& a) const;
  MV ad_action(const std::vector<Rat>& x, const MV& a) const;

  /// so(g) matrix of a 2-vector under the metric identification, and its
  /// derivation extension.  The sign convention is pinned by requiring
  /// rho(tau)(omega) = d_g(tau) for every 2-vector; the constructor
  /// re-verifies this on a full basis of Lambda^2 per algebra.
  SparseMatrix rho_so_matrix(const MV& tau) const;
  MV rho_action(const MV& tau, const MV& a) const;

  const MV& omega() const { return omega_; }

  // operator matrices; assembly is column-parallel with a serial reference
  SparseMatrix assemble(int dom_deg, int cod_deg,
                        const std::function<MV(const MV&)>& f) const;
  SparseMatrix assemble_serial(int dom_deg, int cod_deg,
                               const std::function<MV(const MV&)>& f) const;
  SparseMatrix assemble_on(const std::vector<MV>& domain, int cod_deg,
                           const std::function<MV(const MV&)>& f) const;

  LinOp matrix_d(int k) const;
  LinOp matrix_delta(int k) const;
  LinOp matrix_wedge(const MV& phi, int k) const;  // L_phi on Lambda^k
  LinOp laplacian(int k) const;

  /// Harmonic forms = ker d intersect ker delta on Lambda^k.
  Subspace harmonic(int k) const;

  /// Casimir on Lambda^k, normalized so the adjoint module has eigenvalue 1.
  SparseMatrix casimir_lambda(int k) const;

  /// sqrt(det G) times the Hodge star; exact rational, orientation from the
  /// construction order of the basis.
  MV rational_star(const MV& a) const;
  /// Unit-volume Hodge star; float backend only.
  MVF hodge_star(const MV& a) const;

 private:
  MV dual_vector_mv(long a) const;  // sum_j G^{ja} b_j
  void verify_rho_convention() const;

  AlgebraPtr g_;
  Limits limits_;
  MV omega_;
  std::vector<MV> iota_omega_;  // plain slot contractions of omega
  mutable std::mutex cache_mu_;
  mutable std::map<int, std::vector<Mask>> basis_;
  mutable std::map<int, std::map<Mask, long>> pos_;
  mutable std::map<int, std::shared_ptr<SparseMatrix>> gram_;
};

}  // namespace lieform

#endif
