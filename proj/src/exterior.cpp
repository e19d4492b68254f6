#include "lieform/exterior.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

#include <atomic>

namespace lieform {

namespace {
std::atomic<Backend> g_backend{Backend::exact};
}

Backend active_backend() { return g_backend.load(std::memory_order_relaxed); }
void set_active_backend(Backend b) {
  if (b == Backend::bigfloat && mpf_get_default_prec() < 128) set_float_precision(128);
  g_backend.store(b, std::memory_order_relaxed);
}

Exterior::Exterior(AlgebraPtr g, Limits limits) : g_(std::move(g)), limits_(limits) {
  const long nn = n();
  if (nn > 62) throw GuardrailError("exterior algebra limited to dim <= 62");
  // omega as the metric-dual trivector: (1/3) sum_{a<b} [b_a,b_b] ^ ga ^ gb,
  // with ga the a-th column of the inverse gram read as a vector
  MV acc(static_cast<int>(nn), 3);
  for (long a = 0; a < nn; ++a) {
    MV da = dual_vector_mv(a);
    for (long b = a + 1; b < nn; ++b) {
      const SparseVec& br = g_->bracket(a, b);
      if (br.empty()) continue;
      MV brm(static_cast<int>(nn), 1);
      for (const auto& [k, v] : br) brm.terms[Mask(1) << k] = v;
      acc += wedge(wedge(brm, da), dual_vector_mv(b));
    }
  }
  omega_ = acc.scaled(rat(1, 3));
  // check the defining property <omega, b_i ^ b_j ^ b_k> = <b_i, [b_j, b_k]>
  for (long i = 0; i < nn && i < 6; ++i)
    for (long j = i + 1; j < nn; ++j)
      for (long k = j + 1; k < nn; ++k) {
        MV w(static_cast<int>(nn), 3);
        w.terms[(Mask(1) << i) | (Mask(1) << j) | (Mask(1) << k)] = Rat(1);
        Rat lhs = pairing(omega_, w);
        SparseVec bjk = g_->bracket(j, k);
        Rat rhs = 0;
        for (const auto& [m, v] : bjk) rhs += g_->killing_gram().at(i, m) * v;
        if (lhs != rhs) throw std::logic_error("cartan form dualization failed");
      }
  iota_omega_.resize(nn);
  for (long j = 0; j < nn; ++j) iota_omega_[j] = iota(static_cast<int>(j), omega_);
  verify_rho_convention();
}

void Exterior::check_exterior(int k) const {
  if (dim_lambda(k) > limits_.exterior_dim)
    throw GuardrailError("Lambda^" + std::to_string(k) + "(" + g_->name + ") has dimension " +
                         std::to_string(dim_lambda(k)) + " > guardrail " +
                         std::to_string(limits_.exterior_dim));
}

const std::vector<Mask>& Exterior::basis(int k) const {
  std::lock_guard<std::mutex> lock(cache_mu_);
  auto it = basis_.find(k);
  if (it != basis_.end()) return it->second;
  std::vector<Mask> masks;
  masks.reserve(dim_lambda(k));
  // enumerate k-subsets of 0..n-1 in increasing mask order
  if (k == 0) masks.push_back(0);
  else if (k <= n()) {
    Mask m = (Mask(1) << k) - 1;
    Mask top = Mask(1) << n();
    while (m < top) {
      masks.push_back(m);
      Mask c = m & -m, r = m + c;  // Gosper's hack
      m = (((r ^ m) >> 2) / c) | r;
    }
  }
  auto& slot = basis_[k];
  slot = std::move(masks);
  auto& pm = pos_[k];
  for (long i = 0; i < static_cast<long>(slot.size()); ++i) pm[slot[i]] = i;
  return slot;
}

long Exterior::pos(int k, Mask m) const {
  basis(k);
  std::lock_guard<std::mutex> lock(cache_mu_);
  return pos_.at(k).at(m);
}

MV Exterior::from_coords(int k, const std::vector<Rat>& v) const {
  const auto& b = basis(k);
  MV out(static_cast<int>(n()), k);
  for (size_t i = 0; i < b.size(); ++i)
    if (v[i] != 0) out.terms[b[i]] = v[i];
  return out;
}

std::vector<Rat> Exterior::coords(const MV& a) const {
  const auto& b = basis(a.deg);
  std::vector<Rat> v(b.size(), Rat(0));
  for (const auto& [m, c] : a.terms) v[pos(a.deg, m)] = c;
  return v;
}

const SparseMatrix& Exterior::induced_gram(int k) const {
  {
    std::lock_guard<std::mutex> lock(cache_mu_);
    auto it = gram_.find(k);
    if (it != gram_.end()) return *it->second;
  }
  const auto& bs = basis(k);
  const long dim = static_cast<long>(bs.size());
  auto G = g_->killing_gram().dense();
  // support masks weed out zero minors early
  std::vector<Mask> support(n(), 0);
  for (long i = 0; i < n(); ++i)
    for (long j = 0; j < n(); ++j)
      if (G[i][j] != 0) support[i] |= Mask(1) << j;

  auto minor_det = [&](Mask I, Mask J) {
    auto ri = mask_indices(I);
    auto cj = mask_indices(J);
    const int kk = static_cast<int>(ri.size());
    std::vector<std::vector<Rat>> a(kk, std::vector<Rat>(kk));
    for (int r = 0; r < kk; ++r)
      for (int c = 0; c < kk; ++c) a[r][c] = G[ri[r]][cj[c]];
    // small dense determinant
    Rat det = 1;
    for (int p = 0; p < kk; ++p) {
      int piv = -1;
      for (int r = p; r < kk; ++r)
        if (a[r][p] != 0) { piv = r; break; }
      if (piv < 0) return Rat(0);
      if (piv != p) { std::swap(a[piv], a[p]); det = -det; }
      det *= a[p][p];
      for (int r = p + 1; r < kk; ++r) {
        if (a[r][p] == 0) continue;
        Rat f = a[r][p] / a[p][p];
        for (int c = p; c < kk; ++c) a[r][c] -= f * a[p][c];
      }
    }
    return det;
  };

  std::vector<std::vector<std::pair<long, Rat>>> rows(dim);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 8) if (parallel_enabled() && dim > 32)
#endif
  for (long r = 0; r < dim; ++r) {
    Mask cover = 0;
    for (int i : mask_indices(bs[r])) cover |= support[i];
    for (long c = 0; c < dim; ++c) {
      if ((bs[c] & ~cover) != 0) continue;
      Rat dv = minor_det(bs[r], bs[c]);
      if (dv != 0) rows[r].emplace_back(c, dv);
    }
  }
  auto gk = std::make_shared<SparseMatrix>(dim, dim);
  for (long r = 0; r < dim; ++r) gk->row(r) = std::move(rows[r]);
  std::lock_guard<std::mutex> lock(cache_mu_);
  auto [it, fresh] = gram_.emplace(k, gk);
  return *it->second;
}

Rat Exterior::pairing(const MV& a, const MV& b) const {
  if (a.deg != b.deg) return Rat(0);
  const auto G = g_->killing_gram();
  Rat s = 0;
  for (const auto& [ma, ca] : a.terms) {
    auto ri = mask_indices(ma);
    const int kk = static_cast<int>(ri.size());
    for (const auto& [mb, cb] : b.terms) {
      auto cj = mask_indices(mb);
      std::vector<std::vector<Rat>> m(kk, std::vector<Rat>(kk));
      for (int r = 0; r < kk; ++r)
        for (int c = 0; c < kk; ++c) m[r][c] = G.at(ri[r], cj[c]);
      // determinant
      Rat det = 1;
      bool zero = false;
      for (int p = 0; p < kk && !zero; ++p) {
        int piv = -1;
        for (int r = p; r < kk; ++r)
          if (m[r][p] != 0) { piv = r; break; }
        if (piv < 0) { zero = true; break; }
        if (piv != p) { std::swap(m[piv], m[p]); det = -det; }
        det *= m[p][p];
        for (int r = p + 1; r < kk; ++r) {
          if (m[r][p] == 0) continue;
          Rat f = m[r][p] / m[p][p];
          for (int c = p; c < kk; ++c) m[r][c] -= f * m[p][c];
        }
      }
      if (!zero && kk >= 0) s += ca * cb * det;
    }
  }
  return s;
}

Rat Exterior::det_gram1() const { return determinant(g_->killing_gram()); }

MV Exterior::dual_vector_mv(long a) const {
  const SparseMatrix& gi = g_->killing_gram_inverse();
  MV out(static_cast<int>(n()), 1);
  for (long j = 0; j < n(); ++j) {
    Rat v = gi.at(j, a);
    if (v != 0) out.terms[Mask(1) << j] = v;
  }
  return out;
}

MV Exterior::contract(const std::vector<Rat>& v, const MV& a) const {
  // iota by the covector G v
  MV out(static_cast<int>(n()), a.deg > 0 ? a.deg - 1 : 0);
  if (a.deg == 0) return out;
  std::vector<Rat> w = g_->killing_gram().apply(v);
  for (long i = 0; i < n(); ++i) {
    if (w[i] == 0) continue;
    MV part = iota(static_cast<int>(i), a);
    out += part.scaled(w[i]);
  }
  return out;
}

MV Exterior::contract(const MV& v, const MV& a) const {
  if (v.deg != 1) throw UsageError("contract: first argument must have degree 1");
  if (v.n != a.n) throw UsageError("contract: ambient space mismatch");
  std::vector<Rat> dense(n(), Rat(0));
  for (const auto& [m, c] : v.terms) dense[std::countr_zero(m)] = c;
  return contract(dense, a);
}

MV Exterior::d(const MV& a) const {
  // sum_{j,m} G_{jm} iota_j(omega) ^ iota_m(a)
  MV out(static_cast<int>(n()), a.deg + 1);
  if (a.deg == 0) return out;
  const SparseMatrix& G = g_->killing_gram();
  for (long mi = 0; mi < n(); ++mi) {
    MV im = iota(static_cast<int>(mi), a);
    if (im.is_zero()) continue;
    for (const auto& [j, gv] : G.row(mi))
      out += wedge(iota_omega_[j], im).scaled(gv);
  }
  return out;
}

MV Exterior::delta(const MV& a) const {
  MV out(static_cast<int>(n()), a.deg >= 1 ? a.deg - 1 : 0);
  if (a.deg < 2) return out;  // degree 1 -> 0, degree 0 -> 0
  for (const auto& [m, c] : a.terms) {
    auto idx = mask_indices(m);
    const int k = static_cast<int>(idx.size());
    for (int s = 0; s < k; ++s)
      for (int t = s + 1; t < k; ++t) {
        const SparseVec& br = g_->bracket(idx[s], idx[t]);
        if (br.empty()) continue;
        Mask rest = m & ~(Mask(1) << idx[s]) & ~(Mask(1) << idx[t]);
        Rat sign = ((s + t + 1) % 2 == 0) ? c : -c;
        for (const auto& [b, v] : br) {
          Mask bb = Mask(1) << b;
          if (rest & bb) continue;
          Rat coef = sign * v * shuffle_sign(bb, rest);
          out.add_term(bb | rest, coef);
        }
      }
  }
  return out;
}

MV Exterior::ad_action(long i, const MV& a) const {
  MV out(static_cast<int>(n()), a.deg);
  for (const auto& [m, c] : a.terms) {
    for (int p : mask_indices(m)) {
      const SparseVec& br = g_->bracket(i, p);
      if (br.empty()) continue;
      Mask bit = Mask(1) << p;
      int below = std::popcount(m & (bit - 1));
      Mask rest = m & ~bit;
      Rat sign = (below % 2 == 0) ? c : -c;
      for (const auto& [b, v] : br) {
        Mask bb = Mask(1) << b;
        if (rest & bb) continue;
        out.add_term(bb | rest, sign * v * shuffle_sign(bb, rest));
      }
    }
  }
  return out;
}

MV Exterior::ad_action(const std::vector<Rat>& x, const MV& a) const {
  MV out(static_cast<int>(n()), a.deg);
  for (long i = 0; i < n(); ++i)
    if (x[i] != 0) out += ad_action(i, a).scaled(x[i]);
  return out;
}

SparseMatrix Exterior::rho_so_matrix(const MV& tau) const {
  if (tau.deg != 2) throw UsageError("rho: argument must be a 2-vector");
  const SparseMatrix& G = g_->killing_gram();
  SparseMatrix A(n(), n());
  for (const auto& [m, c] : tau.terms) {
    auto uv = mask_indices(m);
    long u = uv[0], w = uv[1];
    // u^w acts as x -> <u,x> w - <w,x> u; this orientation is the one that
    // satisfies rho(tau)(omega) = d_g(tau) (checked per algebra below)
    for (long col = 0; col < n(); ++col) {
      Rat gw = G.at(w, col), gu = G.at(u, col);
      if (gu != 0) A.add_at(w, col, c * gu);
      if (gw != 0) A.add_at(u, col, -c * gw);
    }
  }
  return A;
}

MV Exterior::rho_action(const MV& tau, const MV& a) const {
  SparseMatrix A = rho_so_matrix(tau);
  MV out(static_cast<int>(n()), a.deg);
  for (const auto& [m, c] : a.terms) {
    for (int p : mask_indices(m)) {
      Mask bit = Mask(1) << p;
      int below = std::popcount(m & (bit - 1));
      Mask rest = m & ~bit;
      Rat sign = (below % 2 == 0) ? c : -c;
      // column p of A
      for (long r = 0; r < n(); ++r) {
        Rat v = A.at(r, p);
        if (v == 0) continue;
        Mask bb = Mask(1) << r;
        if (rest & bb) continue;
        out.add_term(bb | rest, sign * v * shuffle_sign(bb, rest));
      }
    }
  }
  return out;
}

void Exterior::verify_rho_convention() const {
  // rho(tau)(omega) = d_g(tau) on a full basis of Lambda^2
  for (long i = 0; i < n(); ++i)
    for (long j = i + 1; j < n(); ++j) {
      MV tau(static_cast<int>(n()), 2);
      tau.terms[(Mask(1) << i) | (Mask(1) << j)] = Rat(1);
      MV lhs = rho_action(tau, omega_);
      MV rhs = d(tau);
      if (!(lhs - rhs).is_zero())
        throw std::logic_error(g_->name + ": rho sign convention violates d_g(tau) identity");
    }
}

SparseMatrix Exterior::assemble_on(const std::vector<MV>& domain, int cod_deg,
                                   const std::function<MV(const MV&)>& f) const {
  basis(cod_deg);  // warm the cache before the parallel region
  const std::map<Mask, long>* pm;
  {
    std::lock_guard<std::mutex> lock(cache_mu_);
    pm = &pos_.at(cod_deg);
  }
  const long R = dim_lambda(cod_deg);
  const long C = static_cast<long>(domain.size());
  std::vector<std::vector<std::pair<long, Rat>>> cols(C);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (parallel_enabled() && C > 8)
#endif
  for (long c = 0; c < C; ++c) {
    MV img = f(domain[c]);
    for (const auto& [m, v] : img.terms) cols[c].emplace_back(pm->at(m), v);
  }
  SparseMatrix out(R, C);
  for (long c = 0; c < C; ++c)
    for (const auto& [r, v] : cols[c]) out.row(r).emplace_back(c, v);
  return out;
}

SparseMatrix Exterior::assemble(int dom_deg, int cod_deg,
                                const std::function<MV(const MV&)>& f) const {
  const auto& bs = basis(dom_deg);
  std::vector<MV> dom;
  dom.reserve(bs.size());
  for (Mask m : bs) {
    MV e(static_cast<int>(n()), dom_deg);
    e.terms[m] = Rat(1);
    dom.push_back(std::move(e));
  }
  return assemble_on(dom, cod_deg, f);
}

SparseMatrix Exterior::assemble_serial(int dom_deg, int cod_deg,
                                       const std::function<MV(const MV&)>& f) const {
  bool was = parallel_enabled();
  set_parallel_enabled(false);
  SparseMatrix out = assemble(dom_deg, cod_deg, f);
  set_parallel_enabled(was);
  return out;
}

LinOp Exterior::matrix_d(int k) const {
  check_exterior(k);
  LinOp op;
  op.domain = {g_->name, "lambda^" + std::to_string(k), dim_lambda(k)};
  op.codomain = {g_->name, "lambda^" + std::to_string(k + 1), dim_lambda(k + 1)};
  op.matrix = assemble(k, k + 1, [this](const MV& a) { return d(a); });
  return op;
}

LinOp Exterior::matrix_delta(int k) const {
  check_exterior(k);
  LinOp op;
  op.domain = {g_->name, "lambda^" + std::to_string(k), dim_lambda(k)};
  op.codomain = {g_->name, "lambda^" + std::to_string(k - 1), dim_lambda(k - 1)};
  op.matrix = assemble(k, k - 1, [this](const MV& a) { return delta(a); });
  return op;
}

LinOp Exterior::matrix_wedge(const MV& phi, int k) const {
  check_exterior(k);
  int cod = k + phi.deg;
  LinOp op;
  op.domain = {g_->name, "lambda^" + std::to_string(k), dim_lambda(k)};
  op.codomain = {g_->name, "lambda^" + std::to_string(cod), dim_lambda(cod)};
  op.matrix = assemble(k, cod <= n() ? cod : 0, [this, &phi](const MV& a) { return wedge(phi, a); });
  if (cod > n()) op.matrix = SparseMatrix(0, dim_lambda(k));
  return op;
}

LinOp Exterior::laplacian(int k) const {
  check_exterior(k);
  LinOp op;
  op.domain = {g_->name, "lambda^" + std::to_string(k), dim_lambda(k)};
  op.codomain = op.domain;
  SparseMatrix acc(dim_lambda(k), dim_lambda(k));
  if (k < n()) acc = acc + matrix_delta(k + 1).matrix * matrix_d(k).matrix;
  if (k > 0) acc = acc + matrix_d(k - 1).matrix * matrix_delta(k).matrix;
  op.matrix = std::move(acc);
  return op;
}

Subspace Exterior::harmonic(int k) const {
  check_exterior(k);
  SparseMatrix stacked = matrix_d(k).matrix;
  if (k > 0) stacked = stacked.stacked(matrix_delta(k).matrix);
  return kernel_basis(stacked);
}

SparseMatrix Exterior::casimir_lambda(int k) const {
  check_exterior(k);
  const SparseMatrix& gi = g_->killing_gram_inverse();
  const auto& bs = basis(k);
  std::vector<MV> dom;
  dom.reserve(bs.size());
  for (Mask m : bs) {
    MV e(static_cast<int>(n()), k);
    e.terms[m] = Rat(1);
    dom.push_back(std::move(e));
  }
  auto f = [&](const MV& a) {
    MV out(static_cast<int>(n()), k);
    for (long j = 0; j < n(); ++j) {
      MV lj = ad_action(j, a);
      if (lj.is_zero()) continue;
      for (const auto& [i, gv] : gi.row(j))
        out += ad_action(i, lj).scaled(-gv);  // adjoint module normalized to +1
    }
    return out;
  };
  return assemble_on(dom, k, f);
}

MV Exterior::rational_star(const MV& a) const {
  const int k = a.deg;
  const long dim = dim_lambda(k);
  if (dim > limits_.exterior_dim)
    throw GuardrailError("rational_star: Lambda^" + std::to_string(k) + " over guardrail");
  const SparseMatrix& Gk = induced_gram(k);
  std::vector<Rat> z = coords(a);
  std::vector<Rat> gz(dim, Rat(0));
  for (long r = 0; r < dim; ++r)
    for (const auto& [c, v] : Gk.row(r))
      if (z[c] != 0) gz[r] += v * z[c];
  const auto& bs = basis(k);
  Mask full = (n() == 62) ? ~Mask(0) >> 2 : ((Mask(1) << n()) - 1);
  MV out(static_cast<int>(n()), static_cast<int>(n()) - k);
  for (long i = 0; i < dim; ++i) {
    if (gz[i] == 0) continue;
    Mask I = bs[i], J = full & ~I;
    out.add_term(J, Rat(shuffle_sign(I, J)) * gz[i]);
  }
  return out;
}

MVF Exterior::hodge_star(const MV& a) const {
  if (active_backend() != Backend::bigfloat)
    throw std::runtime_error(
        "hodge_star requires the float backend (--backend float); "
        "exact-backend callers should use rational_star, which differs by the "
        "factor sqrt(det G)");
  MV rs = rational_star(a);
  Flt scale = 1 / sqrt(Flt(det_gram1()));
  MVF out(rs.n, rs.deg);
  for (const auto& [m, c] : rs.terms) out.terms[m] = Flt(c) * scale;
  return out;
}

}  // namespace lieform
