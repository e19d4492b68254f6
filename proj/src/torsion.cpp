#include "lieform/torsion.hpp"

namespace lieform {

TorsionOps::TorsionOps(const Exterior& ex) : ex_(ex) {
  const long n = ex.n();
  if (n * (n - 1) / 2 > ex.limits().exterior_dim)
    throw GuardrailError("Lambda^2 over guardrail for " + ex.algebra().name);

  l2_.g_perp = kernel_basis(ex.matrix_delta(2).matrix);
  l2_.g_part = image_basis(ex.matrix_d(1).matrix);
  const long perp = l2_.g_perp.dim();
  if (l2_.g_part.dim() != n || perp != n * (n - 1) / 2 - n)
    throw std::logic_error("Lambda^2 splitting has unexpected dimensions");
  if (l2_.g_part.sum(l2_.g_perp).dim() != n * (n - 1) / 2)
    throw std::logic_error("Lambda^2 is not the direct sum d_g(g) + g_perp");

  perp_basis_ = l2_.g_perp.basis_rows();
  // coordinates for vectors already in the span: C = (B B^T)^{-1} B
  perp_coord_map_ = inverse(perp_basis_ * perp_basis_.transpose()) * perp_basis_;
  // gram projection onto g_perp, in g_perp coordinates: (B G B^T)^{-1} B G
  const SparseMatrix& g2 = ex.induced_gram(2);
  proj_perp_map_ = inverse(perp_basis_ * g2 * perp_basis_.transpose()) * (perp_basis_ * g2);

  // tensor gram: G (x) (B G2 B^T)
  SparseMatrix perp_gram = perp_basis_ * g2 * perp_basis_.transpose();
  const SparseMatrix& G = ex.gram1();
  tensor_gram_ = SparseMatrix(n * perp, n * perp);
  for (long i = 0; i < n; ++i)
    for (const auto& [k, gv] : G.row(i))
      for (long j = 0; j < perp; ++j)
        for (const auto& [l, pv] : perp_gram.row(j))
          tensor_gram_.row(i * perp + j).emplace_back(k * perp + l, gv * pv);
  // rows built in order (k,l) not sorted when G rows unsorted; normalize
  for (long r = 0; r < n * perp; ++r) {
    auto& row = tensor_gram_.row(r);
    std::sort(row.begin(), row.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
  }

  if (n * perp > ex.limits().tensor_dim)
    throw GuardrailError("g(x)gperp dimension " + std::to_string(n * perp) +
                         " > guardrail " + std::to_string(ex.limits().tensor_dim));

  // D_+/D_- columns over tensor basis b_i (x) tau_j, two routes each
  const long tdim = n * perp;
  std::vector<MV> dtau(perp), rho_omega(perp);
  for (long j = 0; j < perp; ++j) {
    MV tau = perp_vector(j);
    dtau[j] = ex.d(tau);
    rho_omega[j] = ex.rho_action(tau, ex.omega());
    if (!(dtau[j] - rho_omega[j]).is_zero())
      throw std::logic_error("rho(tau)(omega) != d_g tau on g_perp");
  }
  auto assemble_pair = [&](bool plus) {
    const int cod = plus ? 4 : 2;
    ex.check_exterior(cod);
    std::vector<std::vector<Rat>> colsA;
    const auto& cb = ex.basis(cod);
    for (long i = 0; i < n; ++i) {
      MV v = mv_basis_vector(static_cast<int>(n), static_cast<int>(i));
      for (long j = 0; j < perp; ++j) {
        MV a = plus ? wedge(v, rho_omega[j]) : ex.contract(v, rho_omega[j]);
        MV b = plus ? wedge(v, dtau[j]) : ex.contract(v, dtau[j]);
        if (!(a - b).is_zero())
          throw std::logic_error("the two constructions of D_+/D_- disagree");
        std::vector<Rat> col(cb.size(), Rat(0));
        for (const auto& [m, c] : a.terms) col[ex.pos(cod, m)] = c;
        colsA.push_back(std::move(col));
      }
    }
    LinOp op;
    op.domain = {ex.algebra().name, "g(x)gperp", tdim};
    op.codomain = {ex.algebra().name, "lambda^" + std::to_string(cod),
                   ex.dim_lambda(cod)};
    op.matrix = SparseMatrix::from_columns(static_cast<long>(cb.size()), colsA);
    return op;
  };
  d_plus_ = assemble_pair(true);
  d_minus_ = assemble_pair(false);

  // Theta columns over the Lambda^3 basis
  ex.check_exterior(3);
  const SparseMatrix& gi = ex.algebra().killing_gram_inverse();
  auto theta_col = [&](const MV& t) {
    // p_j = coords of Pi_perp(b_j -| t); column = sum_j G^{ij} p_j at (i, *)
    std::vector<Rat> col(tdim, Rat(0));
    for (long j = 0; j < n; ++j) {
      std::vector<Rat> bj(n, Rat(0));
      bj[j] = 1;
      MV cj = ex.contract(bj, t);
      if (cj.is_zero()) continue;
      std::vector<Rat> w(ex.dim_lambda(2), Rat(0));
      for (const auto& [m, c] : cj.terms) w[ex.pos(2, m)] = c;
      std::vector<Rat> pj = proj_perp_map_.apply(w);
      for (long i = 0; i < n; ++i) {
        Rat gij = gi.at(i, j);
        if (gij == 0) continue;
        for (long t2 = 0; t2 < perp; ++t2)
          if (pj[t2] != 0) col[i * perp + t2] += gij * pj[t2];
      }
    }
    return col;
  };
  std::vector<std::vector<Rat>> tcols;
  for (Mask m : ex.basis(3)) {
    MV e(static_cast<int>(n), 3);
    e.terms[m] = Rat(1);
    tcols.push_back(theta_col(e));
  }
  theta_.domain = {ex.algebra().name, "lambda^3", ex.dim_lambda(3)};
  theta_.codomain = {ex.algebra().name, "g(x)gperp", tdim};
  theta_.matrix = SparseMatrix::from_columns(tdim, tcols);
}

std::vector<Rat> TorsionOps::perp_coords(const MV& tau) const {
  std::vector<Rat> w(ex_.dim_lambda(2), Rat(0));
  for (const auto& [m, c] : tau.terms) w[ex_.pos(2, m)] = c;
  return perp_coord_map_.apply(w);
}

MV TorsionOps::perp_vector(long j) const {
  std::vector<Rat> row(ex_.dim_lambda(2), Rat(0));
  for (const auto& [c, v] : perp_basis_.row(j)) row[c] = v;
  return ex_.from_coords(2, row);
}

std::vector<Rat> TorsionOps::project_perp(const MV& w) const {
  std::vector<Rat> v(ex_.dim_lambda(2), Rat(0));
  for (const auto& [m, c] : w.terms) v[ex_.pos(2, m)] = c;
  return proj_perp_map_.apply(v);
}

std::vector<Rat> TorsionOps::theta_of(const MV& t) const {
  std::vector<Rat> coords(ex_.dim_lambda(3), Rat(0));
  for (const auto& [m, c] : t.terms) coords[ex_.pos(3, m)] = c;
  return theta_.matrix.apply(coords);
}

Lambda3Split TorsionOps::split_lambda3() const {
  ex_.check_exterior(4);
  Lambda3Split out;
  out.omega_line = Subspace::span_of(ex_.dim_lambda(3), {ex_.coords(ex_.omega())});
  // d_g(g_perp)
  std::vector<std::vector<Rat>> dgens;
  for (long j = 0; j < perp_dim(); ++j) dgens.push_back(ex_.coords(ex_.d(perp_vector(j))));
  out.d_part = Subspace::span_of(ex_.dim_lambda(3), dgens);
  out.delta_part = image_basis(ex_.matrix_delta(4).matrix);
  // structural checks
  long total = out.omega_line.dim() + out.d_part.dim() + out.delta_part.dim();
  if (total != ex_.dim_lambda(3) ||
      out.omega_line.sum(out.d_part).sum(out.delta_part).dim() != ex_.dim_lambda(3))
    throw std::logic_error("Lambda^3 triple splitting failed");
  return out;
}

SparseMatrix TorsionOps::assemble_tensor_action(long x) const {
  const long n = ex_.n(), perp = perp_dim();
  // ad_x on g
  SparseMatrix a1 = ex_.algebra().ad_matrix(x);
  // action on g_perp coordinates
  std::vector<std::vector<Rat>> cols;
  for (long j = 0; j < perp; ++j) cols.push_back(perp_coords(ex_.ad_action(x, perp_vector(j))));
  SparseMatrix a2 = SparseMatrix::from_columns(perp, cols);
  SparseMatrix out(n * perp, n * perp);
  for (long i = 0; i < n; ++i) {
    for (long j = 0; j < perp; ++j) {
      SparseVec& row = out.row(i * perp + j);
      for (const auto& [k, v] : a1.row(i)) row.emplace_back(k * perp + j, v);
      for (const auto& [l, v] : a2.row(j)) row.emplace_back(i * perp + l, v);
      std::sort(row.begin(), row.end(),
                [](const auto& a, const auto& b) { return a.first < b.first; });
      // merge duplicates (i*perp+j can coincide only if k==i and l==j)
      SparseVec merged;
      for (const auto& e : row) {
        if (!merged.empty() && merged.back().first == e.first) merged.back().second += e.second;
        else merged.push_back(e);
      }
      merged.erase(std::remove_if(merged.begin(), merged.end(),
                                  [](const auto& e) { return e.second == 0; }),
                   merged.end());
      row = std::move(merged);
    }
  }
  return out;
}

SparseMatrix TorsionOps::casimir_tensor() const {
  const long n = ex_.n();
  const long tdim = tensor_dim();
  std::vector<SparseMatrix> L(n);
  for (long x = 0; x < n; ++x) L[x] = assemble_tensor_action(x);
  const SparseMatrix& gi = ex_.algebra().killing_gram_inverse();
  SparseMatrix acc(tdim, tdim);
  for (long i = 0; i < n; ++i)
    for (const auto& [j, gv] : gi.row(i)) acc = acc + (L[i] * L[j]).scaled(-gv);
  return acc;
}

Subspace TorsionOps::r_max() const {
  auto [lam, factor] = rmax_weight(ex_.algebra());
  mpz_class expected = weyl_dim(*ex_.algebra().datum, lam) * factor;
  Rat expected_value = casimir_eigenvalue(*ex_.algebra().datum, lam);
  Subspace top_space;
  if (tensor_dim() <= 400) {
    auto eig = rational_eigenspaces(casimir_tensor());
    const EigenSpace& top = eig.back();
    if (!(top.value == expected_value))
      throw std::runtime_error("maximal Casimir eigenvalue mismatch vs weight oracle");
    top_space = top.space;
  } else {
    // large spaces: single kernel at the oracle eigenvalue (the full spectrum
    // is not needed; the dimension check below still flags ambiguity)
    SparseMatrix m = casimir_tensor();
    top_space = kernel_basis(m - SparseMatrix::identity(m.rows()).scaled(expected_value));
  }
  if (top_space.dim() != expected)
    throw std::runtime_error(
        "maximal Casimir eigenspace has dimension " + std::to_string(top_space.dim()) +
        " but the Weyl oracle expects " + expected.get_str() +
        " (ambiguous isotypic block)");
  return top_space;
}

TorsionOps::WHarSplit TorsionOps::w_har_split() const {
  WHarSplit out;
  Subspace ker_p = kernel_basis(d_plus_.matrix);
  Subspace ker_m = kernel_basis(d_minus_.matrix);
  out.w_har = ker_p.intersection(ker_m);
  auto perp_inside = [&](const Subspace& ker) {
    // vectors of ker orthogonal to w_har: kernel of [ker-membership; W G]
    SparseMatrix wg = out.w_har.basis_rows() * tensor_gram_;
    // solution must lie in ker: parametrize ker and restrict
    SparseMatrix kb = ker.basis_rows();        // rows span ker
    SparseMatrix sys = wg * kb.transpose();    // conditions on coefficients
    Subspace coef = kernel_basis(sys);
    std::vector<std::vector<Rat>> gens;
    for (long i = 0; i < coef.dim(); ++i) {
      std::vector<Rat> c = coef.basis_vector(i);
      std::vector<Rat> v(tensor_dim(), Rat(0));
      for (long r = 0; r < kb.rows(); ++r)
        if (c[r] != 0)
          for (const auto& [col, val] : kb.row(r)) v[col] += c[r] * val;
      gens.push_back(std::move(v));
    }
    return Subspace::span_of(tensor_dim(), gens);
  };
  out.perp_dplus = perp_inside(ker_p);
  out.perp_dminus = perp_inside(ker_m);
  return out;
}

MV sum_wedge_rho(const Exterior& ex, const std::vector<Rat>& x, const MV& theta) {
  const long n = ex.n();
  const SparseMatrix& gi = ex.algebra().killing_gram_inverse();
  MV xv(static_cast<int>(n), 1);
  for (long i = 0; i < n; ++i)
    if (x[i] != 0) xv.terms[Mask(1) << i] = x[i];
  MV out(static_cast<int>(n), theta.deg + 1);
  for (long j = 0; j < n; ++j) {
    MV bj = mv_basis_vector(static_cast<int>(n), static_cast<int>(j));
    MV tau = wedge(bj, xv);
    if (tau.is_zero()) continue;
    MV act = ex.rho_action(tau, theta);
    if (act.is_zero()) continue;
    for (const auto& [i, gv] : gi.row(j)) {
      MV bi = mv_basis_vector(static_cast<int>(n), static_cast<int>(i));
      out += wedge(bi, act).scaled(gv);
    }
  }
  return out;
}

MV sum_contract_rho_omega(const Exterior& ex, const std::vector<Rat>& x) {
  const long n = ex.n();
  const SparseMatrix& gi = ex.algebra().killing_gram_inverse();
  MV xv(static_cast<int>(n), 1);
  for (long i = 0; i < n; ++i)
    if (x[i] != 0) xv.terms[Mask(1) << i] = x[i];
  MV out(static_cast<int>(n), 2);
  for (long j = 0; j < n; ++j) {
    MV bj = mv_basis_vector(static_cast<int>(n), static_cast<int>(j));
    MV tau = wedge(bj, xv);
    if (tau.is_zero()) continue;
    MV act = ex.rho_action(tau, ex.omega());
    if (act.is_zero()) continue;
    for (const auto& [i, gv] : gi.row(j)) {
      std::vector<Rat> bi(n, Rat(0));
      bi[i] = 1;
      out += ex.contract(bi, act).scaled(gv);
    }
  }
  return out;
}

}  // namespace lieform
