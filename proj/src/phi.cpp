#include "lieform/phi.hpp"

#include <algorithm>

namespace lieform {

bool InvariantAlgebra::poincare_matches(const std::vector<int>& generator_degrees) const {
  if (!complete) return false;
  std::vector<long> poly{1};
  for (int d : generator_degrees) {
    std::vector<long> next(poly.size() + d, 0);
    for (size_t i = 0; i < poly.size(); ++i) {
      next[i] += poly[i];
      next[i + d] += poly[i];
    }
    poly = std::move(next);
  }
  if (poly.size() != betti.size()) return false;
  for (size_t i = 0; i < poly.size(); ++i)
    if (poly[i] != betti[i]) return false;
  return true;
}

InvariantAlgebra invariant_forms(const Exterior& ex) {
  const long n = ex.n();
  InvariantAlgebra out;
  out.betti.assign(n + 1, -1);
  for (int k = 0; k <= n; ++k) {
    if (ex.dim_lambda(k) > ex.limits().exterior_dim) continue;
    Subspace h = ex.harmonic(k);
    out.betti[k] = h.dim();
    out.computed_degrees.push_back(k);
    out.harmonic.emplace(k, std::move(h));
  }
  // Poincare duality fills what the guardrail skipped
  for (int k = 0; k <= n; ++k)
    if (out.betti[k] < 0 && out.betti[n - k] >= 0) out.betti[k] = out.betti[n - k];
  out.complete = std::all_of(out.betti.begin(), out.betti.end(), [](long b) { return b >= 0; });
  if (out.complete) {
    // peel generators off the Poincare polynomial
    std::vector<long> poly(out.betti.begin(), out.betti.end());
    while (true) {
      int d = 0;
      for (size_t i = 1; i < poly.size(); ++i)
        if (poly[i] != 0) { d = static_cast<int>(i); break; }
      if (d == 0) break;
      out.primitive_degrees.push_back(d);
      // exact division by (1 + t^d)
      std::vector<long> quot(poly.size() - d, 0);
      std::vector<long> rem = poly;
      for (long i = 0; i + d < static_cast<long>(poly.size()); ++i) {
        quot[i] = rem[i];
        rem[i + d] -= rem[i];
        rem[i] = 0;
      }
      bool exact = std::all_of(rem.begin(), rem.end(), [](long x) { return x == 0; });
      if (!exact) throw std::logic_error("Betti sequence is not an exterior algebra pattern");
      quot.resize(poly.size() - d);
      poly = std::move(quot);
    }
  }
  return out;
}

bool multisymplectic_check(const Exterior& ex, const MV& phi) {
  if (phi.is_zero()) throw UsageError("multisymplectic_check: zero form");
  const long n = ex.n();
  std::vector<std::vector<Rat>> cols;
  for (long i = 0; i < n; ++i) {
    std::vector<Rat> e(n, Rat(0));
    e[i] = 1;
    MV c = ex.contract(e, phi);
    std::vector<Rat> col(ex.dim_lambda(phi.deg - 1), Rat(0));
    for (const auto& [m, v] : c.terms) col[ex.pos(phi.deg - 1, m)] = v;
    cols.push_back(std::move(col));
  }
  SparseMatrix L = SparseMatrix::from_columns(ex.dim_lambda(phi.deg - 1), cols);
  return kernel_basis(L).dim() == 0;
}

namespace {
void require_invariant(const Exterior& ex, const MV& phi) {
  if (!ex.d(phi).is_zero() || !ex.delta(phi).is_zero())
    throw UsageError("phi is not invariant (d phi != 0 or delta phi != 0)");
}
}  // namespace

PhiSplit phi_split(const Exterior& ex, const MV& phi) {
  require_invariant(ex, phi);
  const long n = ex.n();
  const int l = phi.deg;
  PhiSplit out;
  out.phi = phi;
  out.plus_dim.assign(n + 1, -1);
  out.minus_dim.assign(n + 1, -1);
  std::vector<long> rank_l(n + 1, -1);
  for (int k = 0; k <= n; ++k) {
    if (ex.dim_lambda(k) > ex.limits().exterior_dim) {
      out.skipped_degrees.push_back(k);
      continue;
    }
    SparseMatrix L = ex.matrix_wedge(phi, k).matrix;
    Subspace plus = kernel_basis(L);
    Subspace minus = orthogonal_complement(plus, ex.induced_gram(k));
    rank_l[k] = ex.dim_lambda(k) - plus.dim();
    if (minus.dim() != rank_l[k])
      throw std::logic_error("phi splitting: complement dimension mismatch");
    out.plus_dim[k] = plus.dim();
    out.minus_dim[k] = minus.dim();
    out.plus.emplace(k, std::move(plus));
    out.minus.emplace(k, std::move(minus));
  }
  // star-free duality: dim minus_k = rank(L_phi on Lambda^{n-l-k}); and the
  // vanishing band minus_k = 0 for k >= n-l+1
  for (int k = 0; k <= n; ++k) {
    if (out.minus_dim[k] < 0) continue;
    int dual = static_cast<int>(n) - l - k;
    if (dual >= 0 && rank_l[dual] >= 0 && out.minus_dim[k] != rank_l[dual])
      throw std::logic_error("phi splitting: star-free duality fails at degree " +
                             std::to_string(k));
    if (dual < 0 && out.minus_dim[k] != 0)
      throw std::logic_error("phi splitting: vanishing band fails at degree " +
                             std::to_string(k));
  }
  return out;
}

CommutationReport verify_commutation(const Exterior& ex, const MV& phi) {
  require_invariant(ex, phi);
  const long n = ex.n();
  const int l = phi.deg;
  const Rat sign = (l % 2 == 0) ? Rat(-1) : Rat(1);  // (-1)^{l+1}
  CommutationReport rep;
  rep.d_ok = rep.delta_ok = true;
  for (int k = 0; k <= n; ++k) {
    if (ex.dim_lambda(k) > ex.limits().exterior_dim ||
        ex.dim_lambda(k + 1) > ex.limits().exterior_dim) {
      rep.skipped_degrees.push_back(k);
      continue;
    }
    // (-1)^{l+1} L_phi d + d L_phi = 0 on Lambda^k
    if (k < n) {
      SparseMatrix a = ex.matrix_wedge(phi, k + 1).matrix * ex.matrix_d(k).matrix;
      SparseMatrix b = ex.matrix_d(k + l <= n ? k + l : static_cast<int>(n)).matrix *
                       ex.matrix_wedge(phi, k).matrix;
      if (k + l > n) b = SparseMatrix(a.rows(), a.cols());
      if (!(a.scaled(sign) + b).is_zero()) rep.d_ok = false;
    }
    if (k >= 1) {
      SparseMatrix a = ex.matrix_wedge(phi, k - 1).matrix * ex.matrix_delta(k).matrix;
      SparseMatrix b = (k + l <= n)
                           ? ex.matrix_delta(k + l).matrix * ex.matrix_wedge(phi, k).matrix
                           : SparseMatrix(ex.dim_lambda(k + l - 1), ex.dim_lambda(k));
      if (!(a.scaled(sign) + b).is_zero()) rep.delta_ok = false;
    }
  }
  return rep;
}

Corollary56Report corollary_5_6(const Exterior& ex) {
  const long n = ex.n();
  Corollary56Report rep;
  MV omega = ex.omega();
  MV star_omega = ex.rational_star(omega);  // scale-free statements only

  // (5.12): minus part of Lambda^2 under *omega equals d_g(Lambda^1)
  {
    SparseMatrix L = ex.matrix_wedge(star_omega, 2).matrix;
    Subspace plus = kernel_basis(L);
    Subspace minus = orthogonal_complement(plus, ex.induced_gram(2));
    Subspace dg = image_basis(ex.matrix_d(1).matrix);
    rep.lambda2_star_minus_is_dg = (minus == dg);
  }
  // (5.13): L_omega injective on Lambda^2 (minus part is everything)
  {
    SparseMatrix L = ex.matrix_wedge(omega, 2).matrix;
    rep.lambda2_omega_minus_full = (kernel_basis(L).dim() == 0);
  }
  // (5.14): minus part of Lambda^3 under *omega is the omega line
  {
    SparseMatrix L = ex.matrix_wedge(star_omega, 3).matrix;
    Subspace plus = kernel_basis(L);
    Subspace minus = orthogonal_complement(plus, ex.induced_gram(3));
    rep.lambda3_star_minus_is_line =
        (minus.dim() == 1 && minus.contains(ex.coords(omega)));
  }
  // (5.15): d_g(g_perp) inside the omega-minus part of Lambda^3
  {
    SparseMatrix L3 = ex.matrix_wedge(omega, 3).matrix;
    Subspace plus = kernel_basis(L3);
    Subspace minus = orthogonal_complement(plus, ex.induced_gram(3));
    Subspace gperp = kernel_basis(ex.matrix_delta(2).matrix);
    bool ok = true;
    for (long j = 0; j < gperp.dim(); ++j) {
      MV tau = ex.from_coords(2, gperp.basis_vector(j));
      if (!minus.contains(ex.coords(ex.d(tau)))) ok = false;
    }
    rep.d_gperp_in_omega_minus3 = ok;
  }
  // (5.16): Lambda^{k-3} ^ omega inside the omega-plus part of Lambda^k
  {
    bool ok = true;
    for (int k = 3; k <= n; ++k) {
      if (ex.dim_lambda(k - 3) > ex.limits().exterior_dim) continue;
      for (Mask m : ex.basis(k - 3)) {
        MV a(static_cast<int>(n), k - 3);
        a.terms[m] = Rat(1);
        MV w = wedge(a, omega);
        if (w.is_zero()) continue;
        // membership in the plus part is wedging to zero against omega
        if (!wedge(w, omega).is_zero()) { ok = false; break; }
      }
    }
    rep.wedge_band_in_plus = ok;
  }
  return rep;
}

XiResult xi_constant(const Exterior& ex, const MV& phi) {
  if (active_backend() != Backend::bigfloat)
    throw std::runtime_error("xi_constant requires the float backend");
  require_invariant(ex, phi);
  const long n = ex.n();
  const int l = phi.deg;
  XiResult res;
  const int k = static_cast<int>(n) - l - 1;
  if (k < 0) return res;  // not applicable
  res.applicable = true;

  SparseMatrix L = ex.matrix_wedge(phi, k).matrix;
  Subspace plus = kernel_basis(L);
  Subspace minus = orthogonal_complement(plus, ex.induced_gram(k));
  res.space_dim = minus.dim();
  if (minus.dim() == 0) throw std::runtime_error("xi_constant: empty minus space");

  // columns of Xi(beta_i) and *(beta_i) in Lambda^{l+1} coordinates
  const long cod = ex.dim_lambda(l + 1);
  DenseF xi(cod, minus.dim()), st(cod, minus.dim());
  Flt scale = 1 / sqrt(Flt(ex.det_gram1()));
  for (long j = 0; j < minus.dim(); ++j) {
    MV beta = ex.from_coords(k, minus.basis_vector(j));
    MV xib = wedge(ex.rational_star(wedge(beta, phi)), phi);  // sqrt(detG) * Xi
    MV sb = ex.rational_star(beta);
    for (const auto& [m, c] : xib.terms) xi.at(ex.pos(l + 1, m), j) = Flt(c) * scale;
    for (const auto& [m, c] : sb.terms) st.at(ex.pos(l + 1, m), j) = Flt(c) * scale;
  }
  // M = (st^T st)^{-1} st^T xi must be c * Id
  DenseF stt(minus.dim(), cod);
  for (long r = 0; r < cod; ++r)
    for (long c = 0; c < minus.dim(); ++c) stt.at(c, r) = st.at(r, c);
  DenseF gramm = matmul_f(stt, st), rhs = matmul_f(stt, xi);
  // solve gramm * M = rhs column by column
  DenseF M(minus.dim(), minus.dim());
  for (long c = 0; c < minus.dim(); ++c) {
    std::vector<Flt> b(minus.dim());
    for (long r = 0; r < minus.dim(); ++r) b[r] = rhs.at(r, c);
    auto x = solve_f(gramm, std::move(b));
    for (long r = 0; r < minus.dim(); ++r) M.at(r, c) = x[r];
  }
  // residual ||st*M - xi|| must be negligible (Xi lands in the span of *beta)
  DenseF recon = matmul_f(st, M);
  Flt resid = 0, norm = 0;
  for (size_t i = 0; i < recon.a.size(); ++i) {
    resid = std::max(resid, Flt(abs(recon.a[i] - xi.a[i])));
    norm = std::max(norm, Flt(abs(xi.a[i])));
  }
  Flt c0 = 0;
  for (long r = 0; r < minus.dim(); ++r) c0 += M.at(r, r);
  c0 /= minus.dim();
  Flt offd = resid;
  for (long r = 0; r < minus.dim(); ++r)
    for (long c = 0; c < minus.dim(); ++c) {
      Flt dev = abs(M.at(r, c) - (r == c ? c0 : Flt(0)));
      if (dev > offd) offd = dev;
    }
  res.constant = c0;
  res.max_offdiag = offd;
  Flt tol("1e-25");
  if (norm == 0 || abs(c0) <= tol)
    throw std::runtime_error("xi_constant: operator is not a nonzero multiple of the identity");
  if (offd > tol * norm)
    throw std::runtime_error("xi_constant: off-identity deviation above tolerance");
  return res;
}

MV harmonic_generator(const Exterior& ex, int degree) {
  Subspace h = ex.harmonic(degree);
  if (h.dim() != 1)
    throw std::runtime_error("harmonic space at degree " + std::to_string(degree) +
                             " is not one-dimensional");
  return ex.from_coords(degree, h.basis_vector(0));
}

SigmaReport sigma_action_on_primitives(const Exterior& ex) {
  SigmaReport rep;
  auto sig = outer_automorphism(ex.algebra());
  if (!sig) return rep;
  rep.applicable = true;
  rep.det_sigma = determinant(*sig);
  std::vector<std::vector<Rat>> cols;
  for (long c = 0; c < ex.n(); ++c) cols.push_back(sig->dense_column(c));

  InvariantAlgebra inv = invariant_forms(ex);
  for (int d : inv.primitive_degrees) {
    if (!inv.harmonic.count(d)) continue;
    const Subspace& h = inv.harmonic.at(d);
    if (h.dim() != 1) continue;  // primitive degrees carry a line for su(n)
    MV x = ex.from_coords(d, h.basis_vector(0));
    MV sx = pushforward(cols, x);
    MV diff_plus = sx - x, diff_minus = sx + x;
    if (diff_plus.is_zero()) rep.primitive_signs[d] = 1;
    else if (diff_minus.is_zero()) rep.primitive_signs[d] = -1;
    else throw std::logic_error("sigma does not act by a sign on a primitive generator");
  }
  // sigma commutes with the Laplacian (checked on low degrees) and squares
  // to the identity on harmonic spaces
  rep.commutes_with_laplacian = true;
  rep.involution_on_harmonics = true;
  for (int k : inv.computed_degrees) {
    if (k > 4) break;
    SparseMatrix lap = ex.laplacian(k).matrix;
    // matrix of sigma on Lambda^k
    std::vector<std::vector<Rat>> scols;
    for (Mask m : ex.basis(k)) {
      MV e(static_cast<int>(ex.n()), k);
      e.terms[m] = Rat(1);
      scols.push_back(ex.coords(pushforward(cols, e)));
    }
    SparseMatrix S = SparseMatrix::from_columns(ex.dim_lambda(k), scols);
    if (!(lap * S == S * lap)) rep.commutes_with_laplacian = false;
    if (!(S * S == SparseMatrix::identity(ex.dim_lambda(k))))
      rep.involution_on_harmonics = false;
  }
  return rep;
}

SplitTable example_5_7_table(const Exterior& ex) {
  const long n = ex.n();
  SplitTable tab;
  MV omega = ex.omega();
  MV star_omega = ex.rational_star(omega);
  PhiSplit s_star = phi_split(ex, star_omega);
  PhiSplit s_om = phi_split(ex, omega);
  tab.star_minus = s_star.minus_dim;
  tab.star_plus = s_star.plus_dim;
  tab.omega_minus = s_om.minus_dim;
  tab.omega_plus = s_om.plus_dim;
  if (ex.algebra().name != "su3") return tab;

  tab.su3_checks_run = true;
  // Lambda^4 = (L1 ^ omega) (+) delta(L5_27) + *(L1 ^ omega) (+) d(L3_27)
  std::vector<std::vector<Rat>> w1;
  for (long i = 0; i < n; ++i)
    w1.push_back(ex.coords(wedge(mv_basis_vector(static_cast<int>(n), static_cast<int>(i)), omega)));
  Subspace P1 = Subspace::span_of(ex.dim_lambda(4), w1);
  std::vector<std::vector<Rat>> w2;
  for (long i = 0; i < P1.dim(); ++i)
    w2.push_back(ex.coords(ex.rational_star(ex.from_coords(4, P1.basis_vector(i)))));
  Subspace P2 = Subspace::span_of(ex.dim_lambda(4), w2);

  // Lambda^3_27: the 27-dimensional Casimir block inside delta(Lambda^4)
  Subspace delta_part = image_basis(ex.matrix_delta(4).matrix);
  auto eig = rational_eigenspaces(ex.casimir_lambda(3));
  Subspace l27(ex.dim_lambda(3));
  for (const auto& es : eig) {
    Subspace cap = delta_part.intersection(es.space);
    if (cap.dim() == 27) l27 = cap;
  }
  if (l27.dim() != 27) throw std::logic_error("27-dimensional block not found in Lambda^3");

  std::vector<std::vector<Rat>> w3, w4;
  for (long i = 0; i < l27.dim(); ++i) {
    MV b = ex.from_coords(3, l27.basis_vector(i));
    w3.push_back(ex.coords(ex.d(b)));                                // d(L3_27)
    w4.push_back(ex.coords(ex.delta(ex.rational_star(b))));          // delta(L5_27)
  }
  Subspace P3 = Subspace::span_of(ex.dim_lambda(4), w3);
  Subspace P4 = Subspace::span_of(ex.dim_lambda(4), w4);
  long total = P1.dim() + P2.dim() + P3.dim() + P4.dim();
  Subspace sum = P1.sum(P2).sum(P3).sum(P4);
  tab.lambda4_fourway_ok =
      (P1.dim() == 8 && P2.dim() == 8 && P3.dim() == 27 && P4.dim() == 27 &&
       total == 70 && sum.dim() == 70);

  // (5.22): delta(Lambda^4_{omega-}) inside Lambda^3_{omega-}
  {
    const Subspace& m4 = s_om.minus.at(4);
    const Subspace& m3 = s_om.minus.at(3);
    bool ok = true;
    for (long i = 0; i < m4.dim(); ++i) {
      MV b = ex.from_coords(4, m4.basis_vector(i));
      if (!m3.contains(ex.coords(ex.delta(b)))) ok = false;
    }
    tab.eq_5_22_ok = ok;
  }
  // (5.23): delta(Lambda^4_{omega+} ^ ker d) = Lambda^3_27, inside plus_3
  {
    const Subspace& p4 = s_om.plus.at(4);
    Subspace kd = kernel_basis(ex.matrix_d(4).matrix);
    Subspace dom = p4.intersection(kd);
    std::vector<std::vector<Rat>> img;
    for (long i = 0; i < dom.dim(); ++i)
      img.push_back(ex.coords(ex.delta(ex.from_coords(4, dom.basis_vector(i)))));
    Subspace image = Subspace::span_of(ex.dim_lambda(3), img);
    tab.eq_5_23_ok = (image == l27) && s_om.plus.at(3).contains(image);
  }
  return tab;
}

}  // namespace lieform
