#ifndef LIEFORM_TORSION_HPP
#define LIEFORM_TORSION_HPP

#include "lieform/exterior.hpp"

namespace lieform {

/// Lambda^2 = d_g(g) (+) g_perp, with g_perp = ker(delta_g).
struct Lambda2Split {
  Subspace g_part;
  Subspace g_perp;
};

/// Lambda^3 = <omega> (+) d_g(g_perp) (+) delta_g(Lambda^4), pairwise
/// gram-orthogonal.
struct Lambda3Split {
  Subspace omega_line;
  Subspace d_part;
  Subspace delta_part;
};

/// The operator algebra on g (x) g_perp.  Tensor indices are lexicographic:
/// t = i * dim(g_perp) + j with i over the algebra basis and j over the
/// canonical (RREF) basis of g_perp.
class TorsionOps {
 public:
  explicit TorsionOps(const Exterior& ex);

  const Exterior& ext() const { return ex_; }
  const Lambda2Split& lambda2() const { return l2_; }
  long perp_dim() const { return l2_.g_perp.dim(); }
  long tensor_dim() const { return ex_.n() * perp_dim(); }

  /// Coordinates in the g_perp basis of a 2-vector lying in g_perp.
  std::vector<Rat> perp_coords(const MV& tau) const;
  MV perp_vector(long j) const;  // j-th basis 2-vector of g_perp

  /// Gram-orthogonal projection Lambda^2 -> g_perp, in g_perp coordinates.
  std::vector<Rat> project_perp(const MV& w) const;

  const SparseMatrix& tensor_gram() const { return tensor_gram_; }

  /// D_+ : g (x) g_perp -> Lambda^4 and D_- : g (x) g_perp -> Lambda^2.
  /// Both construction routes (through the so(g)-action on omega, and the
  /// factorized v ^ d_g(tau) / v -| d_g(tau)) are assembled and must agree
  /// entry-exact; the returned operator is that common matrix.
  const LinOp& d_plus() const { return d_plus_; }
  const LinOp& d_minus() const { return d_minus_; }

  /// Theta : Lambda^3 -> g (x) g_perp.
  const LinOp& theta() const { return theta_; }
  std::vector<Rat> theta_of(const MV& t) const;

  Lambda3Split split_lambda3() const;

  SparseMatrix casimir_tensor() const;

  /// Maximal-Casimir isotypic component of g (x) g_perp; dimension checked
  /// against the Weyl-formula oracle (realified per type).
  Subspace r_max() const;

  struct WHarSplit {
    Subspace w_har;       // ker D_+ intersect ker D_-
    Subspace perp_dplus;  // orthocomplement of w_har inside ker D_+
    Subspace perp_dminus; // orthocomplement of w_har inside ker D_-
  };
  WHarSplit w_har_split() const;

 private:
  SparseMatrix assemble_tensor_action(long x) const;  // L_x on g (x) g_perp

  const Exterior& ex_;
  Lambda2Split l2_;
  SparseMatrix perp_basis_;     // rows: g_perp basis in Lambda^2 coords
  SparseMatrix perp_coord_map_; // w -> coordinates, for w in span
  SparseMatrix proj_perp_map_;  // gram projection in g_perp coords
  SparseMatrix tensor_gram_;
  LinOp d_plus_, d_minus_, theta_;
};

/// sum_{ij} G^{ij} b_i ^ rho(b_j ^ x)(theta)   (equals 3 x ^ theta)
MV sum_wedge_rho(const Exterior& ex, const std::vector<Rat>& x, const MV& theta);
/// sum_{ij} G^{ij} b_i -| rho(b_j ^ x)(omega)  (equals -2 d_g x)
MV sum_contract_rho_omega(const Exterior& ex, const std::vector<Rat>& x);

}  // namespace lieform

#endif
