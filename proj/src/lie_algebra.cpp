#include "lieform/lie_algebra.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace lieform {

std::vector<Rat> LieAlgebraData::bracket(const std::vector<Rat>& x,
                                         const std::vector<Rat>& y) const {
  std::vector<Rat> out(dim, Rat(0));
  for (long i = 0; i < dim; ++i) {
    if (x[i] == 0) continue;
    for (long j = 0; j < dim; ++j) {
      if (y[j] == 0 || i == j) continue;
      Rat c = x[i] * y[j];
      for (const auto& [k, v] : bracket(i, j)) out[k] += c * v;
    }
  }
  return out;
}

const SparseMatrix& LieAlgebraData::killing_gram_inverse() const {
  if (!gram_inv_) throw std::logic_error("killing gram not computed");
  return *gram_inv_;
}

SparseMatrix LieAlgebraData::ad_matrix(long i) const {
  SparseMatrix m(dim, dim);
  for (long j = 0; j < dim; ++j)
    for (const auto& [k, v] : bracket(i, j)) m.add_at(k, j, v);
  return m;
}

void LieAlgebraData::set_brackets(const std::vector<std::vector<SparseVec>>& upper) {
  brackets_.assign(dim * dim, SparseVec{});
  for (long i = 0; i < dim; ++i)
    for (long j = i + 1; j < dim; ++j) {
      brackets_[i * dim + j] = upper[i][j - i - 1];
      brackets_[j * dim + i] = sv_scale(upper[i][j - i - 1], Rat(-1));
    }
}

void LieAlgebraData::compute_killing() {
  std::vector<SparseMatrix> ad(dim);
  for (long i = 0; i < dim; ++i) ad[i] = ad_matrix(i);
  gram_ = SparseMatrix(dim, dim);
  for (long i = 0; i < dim; ++i) {
    for (long j = i; j < dim; ++j) {
      // -tr(ad_i ad_j)
      Rat tr = 0;
      for (long p = 0; p < dim; ++p)
        for (const auto& [q, v] : ad[i].row(p)) tr += v * ad[j].at(q, p);
      if (tr != 0) {
        gram_.set(i, j, -tr);
        if (i != j) gram_.set(j, i, -tr);
      }
    }
  }
  gram_inv_ = std::make_shared<SparseMatrix>(inverse(gram_));
}

void LieAlgebraData::verify_structure() const {
  // Jacobi on all basis triples
  for (long i = 0; i < dim; ++i)
    for (long j = i + 1; j < dim; ++j)
      for (long k = j + 1; k < dim; ++k) {
        std::vector<Rat> acc(dim, Rat(0));
        auto add_term = [&](long a, const SparseVec& bc) {
          for (const auto& [m, v] : bc)
            for (const auto& [l, w] : bracket(a, m)) acc[l] += v * w;
        };
        add_term(i, bracket(j, k));
        add_term(j, bracket(k, i));
        add_term(k, bracket(i, j));
        for (const auto& x : acc)
          if (x != 0) throw std::logic_error(name + ": Jacobi identity fails");
      }
  // Killing gram recomputation
  LieAlgebraData copy = *this;
  copy.compute_killing();
  if (!(copy.gram_ == gram_)) throw std::logic_error(name + ": stored Killing gram is stale");
  if (!is_positive_definite(gram_))
    throw std::logic_error(name + ": Killing gram not positive-definite (not a compact form)");
  // simplicity: centralizer of the adjoint representation is 1-dimensional
  std::vector<SparseMatrix> ad(dim);
  for (long i = 0; i < dim; ++i) ad[i] = ad_matrix(i);
  SparseMatrix sys(dim * dim * dim, dim * dim);
  long row = 0;
  for (long t = 0; t < dim; ++t) {
    // [X, ad_t] = 0: sum_k X[p][k] ad_t[k][q] - ad_t[p][k] X[k][q] = 0
    for (long p = 0; p < dim; ++p)
      for (long q = 0; q < dim; ++q) {
        SparseVec r;
        for (long k = 0; k < dim; ++k) {
          Rat a = ad[t].at(k, q);
          if (a != 0) sv_set(r, p * dim + k, sv_get(r, p * dim + k) + a);
          Rat b = ad[t].at(p, k);
          if (b != 0) sv_set(r, k * dim + q, sv_get(r, k * dim + q) - b);
        }
        sys.row(row++) = std::move(r);
      }
  }
  if (kernel_basis(sys).dim() != 1)
    throw std::logic_error(name + ": adjoint centralizer is not 1-dimensional (not simple)");
}

// ---------------------------------------------------------------- builders

namespace {

struct ParsedName {
  LieType type;
  int rank;  // Cartan rank
};

ParsedName parse_name(const std::string& name) {
  auto num_after = [&](size_t k) {
    if (name.size() <= k) throw UsageError("bad algebra name: " + name);
    for (size_t i = k; i < name.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(name[i])))
        throw UsageError("bad algebra name: " + name);
    return std::stoi(name.substr(k));
  };
  if (name == "g2") return {LieType::G2, 2};
  if (name == "f4") return {LieType::F4, 4};
  if (name.rfind("su", 0) == 0) {
    int n = num_after(2);
    if (n < 2) throw UsageError("su(n) needs n >= 2");
    return {LieType::A, n - 1};
  }
  if (name.rfind("so", 0) == 0) {
    int n = num_after(2);
    if (n < 5 || n % 2 == 0)
      throw UsageError("so(n): only odd n >= 5 is constructed from root data here");
    return {LieType::B, (n - 1) / 2};
  }
  if (name.rfind("sp", 0) == 0) {
    int n = num_after(2);
    if (n < 2) throw UsageError("sp(n) needs n >= 2");
    return {LieType::C, n};
  }
  throw UsageError("unsupported algebra '" + name +
                   "'; supported: su2 su3 su4 so5 so7 sp2 g2 (and config-extensible variants)");
}

std::string root_label(const RootDatum& rd, int idx) {
  std::ostringstream os;
  const auto& r = rd.positive[idx];
  for (int i = 0; i < rd.rank; ++i) {
    if (r[i] == 0) continue;
    if (os.tellp() > 0) os << "+";
    if (r[i] != 1) os << r[i];
    os << "a" << (i + 1);
  }
  return os.str();
}

}  // namespace

std::vector<std::string> supported_algebras() {
  return {"su2", "su3", "su4", "so5", "so7", "sp2", "g2"};
}

AlgebraPtr build_algebra(const std::string& name, const Limits& limits) {
  ParsedName pn = parse_name(name);
  RootDatum rd = build_root_datum(pn.type, pn.rank);
  if (rd.algebra_dim() > limits.algebra_dim)
    throw GuardrailError("algebra " + name + " has dimension " +
                         std::to_string(rd.algebra_dim()) + " > guardrail " +
                         std::to_string(limits.algebra_dim));
  ChevalleyConstants chev(rd);

  const int r = rd.rank;
  const int P = rd.num_positive();
  const long n = rd.algebra_dim();
  auto E = [&](int idx) { return r + idx; };        // e_alpha block
  auto F = [&](int idx) { return r + P + idx; };    // f_alpha block

  // coroot of a positive root over the simple coroots: c_i = m_i d_i / d_alpha
  auto coroot = [&](int idx) {
    std::vector<long> c(r);
    long dd = rd.pairing(rd.positive[idx], rd.positive[idx]) / 2;
    for (int i = 0; i < r; ++i) {
      long num = static_cast<long>(rd.positive[idx][i]) * rd.sym[i];
      if (num % dd != 0) throw std::logic_error("coroot expansion not integral");
      c[i] = num / dd;
    }
    return c;
  };

  // sum/difference of positive roots, as signed reference (or none)
  auto signed_root = [&](const std::vector<int>& v)
      -> std::optional<ChevalleyConstants::Root> {
    bool nonneg = std::all_of(v.begin(), v.end(), [](int x) { return x >= 0; });
    bool nonpos = std::all_of(v.begin(), v.end(), [](int x) { return x <= 0; });
    if (nonneg && rd.is_positive_root(v)) return ChevalleyConstants::Root{rd.index_of.at(v), false};
    if (nonpos) {
      std::vector<int> m(v);
      for (auto& x : m) x = -x;
      if (rd.is_positive_root(m)) return ChevalleyConstants::Root{rd.index_of.at(m), true};
    }
    return std::nullopt;
  };

  std::vector<std::vector<SparseVec>> br(n);
  for (long i = 0; i < n; ++i) br[i].resize(n - i - 1);
  auto put = [&](long i, long j, SparseVec v) {
    if (i < j) br[i][j - i - 1] = std::move(v);
    else br[j][i - j - 1] = sv_scale(v, Rat(-1));
  };

  for (int i = 0; i < r; ++i) {
    for (int a = 0; a < P; ++a) {
      long ca = rd.cartan_pairing(i, rd.positive[a]);
      SparseVec he, hf;
      if (ca != 0) {
        he.emplace_back(F(a), Rat(-ca));  // [h_i, e_a] = -<a, a_i^vee> f_a
        hf.emplace_back(E(a), Rat(ca));   // [h_i, f_a] =  <a, a_i^vee> e_a
      }
      put(i, E(a), std::move(he));
      put(i, F(a), std::move(hf));
    }
  }
  for (int a = 0; a < P; ++a) {
    // [e_a, f_a] = -2 i H_a = -2 sum c_i h_i
    SparseVec ef;
    auto c = coroot(a);
    for (int i = 0; i < r; ++i)
      if (c[i] != 0) ef.emplace_back(i, Rat(-2 * c[i]));
    put(E(a), F(a), std::move(ef));
  }
  using RR = ChevalleyConstants::Root;
  for (int a = 0; a < P; ++a) {
    for (int b = a + 1; b < P; ++b) {
      std::vector<int> sum(r), dif(r);
      for (int i = 0; i < r; ++i) {
        sum[i] = rd.positive[a][i] + rd.positive[b][i];
        dif[i] = rd.positive[a][i] - rd.positive[b][i];
      }
      auto s = signed_root(sum);  // always positive if a root
      auto d = signed_root(dif);
      Rat n_ab = chev.structure_constant(RR{a, false}, RR{b, false});
      Rat n_amb = chev.structure_constant(RR{a, false}, RR{b, true});  // N_{a,-b}
      // f-with-sign: E_g - E_{-g} = f_g (g>0) or -f_{-g} (g<0)
      auto fhat = [&](const std::optional<RR>& g, const Rat& coef, SparseVec& out) {
        if (!g || coef == 0) return;
        sv_set(out, F(g->idx), sv_get(out, F(g->idx)) + (g->neg ? -coef : coef));
      };
      auto ehat = [&](const std::optional<RR>& g, const Rat& coef, SparseVec& out) {
        if (!g || coef == 0) return;
        sv_set(out, E(g->idx), sv_get(out, E(g->idx)) + coef);
      };
      SparseVec ee, ff, ef, fe;
      // [e_a, e_b] = -N_{a,b} fhat(a+b) - N_{a,-b} fhat(a-b)
      fhat(s, -n_ab, ee);
      fhat(d, -n_amb, ee);
      // [f_a, f_b] = N_{a,b} fhat(a+b) - N_{a,-b} fhat(a-b)
      fhat(s, n_ab, ff);
      fhat(d, -n_amb, ff);
      // [e_a, f_b] = N_{a,b} ehat(a+b) - N_{a,-b} ehat(a-b)
      ehat(s, n_ab, ef);
      ehat(d, -n_amb, ef);
      // [e_b, f_a] = N_{b,a} ehat(a+b) - N_{b,-a} ehat(b-a)
      Rat n_ba = -n_ab;
      Rat n_bma = chev.structure_constant(RR{b, false}, RR{a, true});
      ehat(s, n_ba, fe);
      ehat(d, -n_bma, fe);  // ehat is symmetric in the sign of its root
      put(E(a), E(b), std::move(ee));
      put(F(a), F(b), std::move(ff));
      put(E(a), F(b), std::move(ef));
      put(E(b), F(a), std::move(fe));
    }
  }

  auto g = std::make_shared<LieAlgebraData>();
  g->name = name;
  g->datum = rd;
  g->dim = n;
  for (int i = 0; i < r; ++i) g->labels.push_back("h_a" + std::to_string(i + 1));
  for (int a = 0; a < P; ++a) g->labels.push_back("e_" + root_label(rd, a));
  for (int a = 0; a < P; ++a) g->labels.push_back("f_" + root_label(rd, a));
  g->set_brackets(std::move(br));
  g->compute_killing();
  g->verify_structure();
  return g;
}

// ------------------------------------------------------------ matrix oracle

namespace {

// complex n x n matrix with exact rational parts
struct CMat {
  long n = 0;
  std::vector<Rat> re, im;
  explicit CMat(long n_) : n(n_), re(n_ * n_, Rat(0)), im(n_ * n_, Rat(0)) {}
  Rat& r(long i, long j) { return re[i * n + j]; }
  Rat& i_(long i, long j) { return im[i * n + j]; }
};

CMat cbracket(const CMat& a, const CMat& b) {
  CMat out(a.n);
  for (long i = 0; i < a.n; ++i)
    for (long k = 0; k < a.n; ++k) {
      Rat ar = a.re[i * a.n + k], ai = a.im[i * a.n + k];
      Rat br = b.re[i * a.n + k], bi = b.im[i * a.n + k];
      if (ar == 0 && ai == 0 && br == 0 && bi == 0) continue;
      for (long j = 0; j < a.n; ++j) {
        // a*b part
        Rat xr = b.re[k * a.n + j], xi = b.im[k * a.n + j];
        if (!(ar == 0 && ai == 0) && !(xr == 0 && xi == 0)) {
          out.re[i * a.n + j] += ar * xr - ai * xi;
          out.im[i * a.n + j] += ar * xi + ai * xr;
        }
        // -b*a part
        Rat yr = a.re[k * a.n + j], yi = a.im[k * a.n + j];
        if (!(br == 0 && bi == 0) && !(yr == 0 && yi == 0)) {
          out.re[i * a.n + j] -= br * yr - bi * yi;
          out.im[i * a.n + j] -= br * yi + bi * yr;
        }
      }
    }
  return out;
}

std::vector<Rat> cvec(const CMat& m) {
  std::vector<Rat> v;
  v.reserve(2 * m.n * m.n);
  v.insert(v.end(), m.re.begin(), m.re.end());
  v.insert(v.end(), m.im.begin(), m.im.end());
  return v;
}

std::vector<CMat> su_basis(long n) {
  std::vector<CMat> basis;
  for (long j = 0; j < n; ++j)
    for (long k = j + 1; k < n; ++k) {
      CMat a(n);
      a.r(j, k) = 1;
      a.r(k, j) = -1;
      basis.push_back(a);  // E_jk - E_kj
      CMat s(n);
      s.i_(j, k) = 1;
      s.i_(k, j) = 1;
      basis.push_back(s);  // i(E_jk + E_kj)
    }
  for (long j = 0; j + 1 < n; ++j) {
    CMat d(n);
    d.i_(j, j) = 1;
    d.i_(j + 1, j + 1) = -1;
    basis.push_back(d);  // i(E_jj - E_{j+1,j+1})
  }
  return basis;
}

std::vector<CMat> so_basis(long n) {
  std::vector<CMat> basis;
  for (long j = 0; j < n; ++j)
    for (long k = j + 1; k < n; ++k) {
      CMat a(n);
      a.r(j, k) = 1;
      a.r(k, j) = -1;
      basis.push_back(a);
    }
  return basis;
}

// sp(n) compact: 2n x 2n complex X = [[A, B], [-conj(B), conj(A)]],
// A antihermitian, B symmetric
std::vector<CMat> sp_basis(long n) {
  std::vector<CMat> basis;
  auto emplaceA = [&](const CMat& a) {
    CMat m(2 * n);
    for (long i = 0; i < n; ++i)
      for (long j = 0; j < n; ++j) {
        m.re[i * 2 * n + j] = a.re[i * n + j];
        m.im[i * 2 * n + j] = a.im[i * n + j];
        m.re[(n + i) * 2 * n + (n + j)] = a.re[i * n + j];
        m.im[(n + i) * 2 * n + (n + j)] = -a.im[i * n + j];
      }
    basis.push_back(m);
  };
  auto emplaceB = [&](const CMat& b) {
    CMat m(2 * n);
    for (long i = 0; i < n; ++i)
      for (long j = 0; j < n; ++j) {
        m.re[i * 2 * n + (n + j)] = b.re[i * n + j];
        m.im[i * 2 * n + (n + j)] = b.im[i * n + j];
        m.re[(n + i) * 2 * n + j] = -b.re[i * n + j];
        m.im[(n + i) * 2 * n + j] = b.im[i * n + j];
      }
    basis.push_back(m);
  };
  // u(n) part
  for (long j = 0; j < n; ++j)
    for (long k = j + 1; k < n; ++k) {
      CMat a(n);
      a.r(j, k) = 1;
      a.r(k, j) = -1;
      emplaceA(a);
      CMat s(n);
      s.i_(j, k) = 1;
      s.i_(k, j) = 1;
      emplaceA(s);
    }
  for (long j = 0; j < n; ++j) {
    CMat d(n);
    d.i_(j, j) = 1;
    emplaceA(d);
  }
  // symmetric B part (real and imaginary)
  for (long j = 0; j < n; ++j)
    for (long k = j; k < n; ++k) {
      CMat b(n);
      b.r(j, k) = 1;
      b.r(k, j) = 1;
      emplaceB(b);
      CMat c(n);
      c.i_(j, k) = 1;
      c.i_(k, j) = 1;
      emplaceB(c);
    }
  return basis;
}

}  // namespace

AlgebraPtr matrix_oracle(const std::string& name, const Limits& limits) {
  ParsedName pn = parse_name(name);
  std::vector<CMat> basis;
  if (name.rfind("su", 0) == 0) basis = su_basis(std::stol(name.substr(2)));
  else if (name.rfind("so", 0) == 0) basis = so_basis(std::stol(name.substr(2)));
  else if (name.rfind("sp", 0) == 0) basis = sp_basis(std::stol(name.substr(2)));
  else throw UsageError("matrix oracle not configured for " + name);
  (void)pn;

  const long dim = static_cast<long>(basis.size());
  if (dim > limits.algebra_dim)
    throw GuardrailError("oracle dimension " + std::to_string(dim) + " over guardrail");
  const long amb = 2 * basis[0].n * basis[0].n;
  SparseMatrix V(amb, dim);
  for (long c = 0; c < dim; ++c) {
    auto v = cvec(basis[c]);
    for (long r = 0; r < amb; ++r)
      if (v[r] != 0) V.row(r).emplace_back(c, v[r]);
  }
  std::vector<std::vector<SparseVec>> br(dim);
  for (long i = 0; i < dim; ++i) br[i].resize(dim - i - 1);
  for (long i = 0; i < dim; ++i)
    for (long j = i + 1; j < dim; ++j) {
      CMat b = cbracket(basis[i], basis[j]);
      auto x = solve(V, cvec(b));
      if (!x) throw std::logic_error("oracle bracket not in span of basis");
      SparseVec row;
      for (long k = 0; k < dim; ++k)
        if ((*x)[k] != 0) row.emplace_back(k, (*x)[k]);
      br[i][j - i - 1] = std::move(row);
    }

  auto g = std::make_shared<LieAlgebraData>();
  g->name = name + ":oracle";
  g->dim = dim;
  for (long i = 0; i < dim; ++i) g->labels.push_back("m" + std::to_string(i + 1));
  g->set_brackets(std::move(br));
  g->compute_killing();
  g->verify_structure();
  return g;
}

std::optional<SparseMatrix> outer_automorphism(const LieAlgebraData& g) {
  if (!g.datum || g.datum->type != LieType::A) return std::nullopt;
  const int r = g.datum->rank;
  const int P = g.datum->num_positive();
  SparseMatrix s(g.dim, g.dim);
  for (int i = 0; i < r + P; ++i) s.set(i, i, Rat(-1));         // h and e blocks
  for (int i = r + P; i < g.dim; ++i) s.set(i, i, Rat(1));      // f block
  // sanity: automorphism and isometry
  for (long i = 0; i < g.dim; ++i)
    for (long j = i + 1; j < g.dim; ++j) {
      std::vector<Rat> sx = s.dense_column(i), sy = s.dense_column(j);
      std::vector<Rat> lhs = g.bracket(sx, sy);
      std::vector<Rat> rhs(g.dim, Rat(0));
      for (const auto& [k, v] : g.bracket(i, j)) {
        std::vector<Rat> sk = s.dense_column(k);
        for (long m = 0; m < g.dim; ++m) rhs[m] += v * sk[m];
      }
      if (lhs != rhs) throw std::logic_error("outer involution is not an automorphism");
    }
  if (!(s.transpose() * g.killing_gram() * s == g.killing_gram()))
    throw std::logic_error("outer involution is not a Killing isometry");
  return s;
}

std::vector<std::vector<long>> gperp_highest_weights(const LieAlgebraData& g) {
  if (!g.datum) throw UsageError("weights need a root-datum construction");
  const RootDatum& rd = *g.datum;
  if (rd.type == LieType::A && rd.rank == 1) return {};  // g_perp = 0 for su(2)
  // The highest vectors of the complexified g_perp are v_delta ^ v_{delta - a}
  // over simple roots a with (delta, a) != 0, delta the highest root; so the
  // constituent highest weights are 2 delta - a.  Two conjugates for the A
  // series, one component otherwise.
  std::vector<long> theta = rd.fundamental_coords(rd.highest_root());
  std::vector<std::vector<long>> out;
  for (int i = 0; i < rd.rank; ++i) {
    if (theta[i] == 0) continue;
    std::vector<int> simple(rd.rank, 0);
    simple[i] = 1;
    std::vector<long> alpha = rd.fundamental_coords(simple);
    std::vector<long> hw(rd.rank);
    for (int j = 0; j < rd.rank; ++j) hw[j] = 2 * theta[j] - alpha[j];
    out.push_back(std::move(hw));
  }
  if (out.empty() || out.size() > 2) throw std::logic_error("unexpected g_perp structure");
  return out;
}

std::pair<std::vector<long>, int> rmax_weight(const LieAlgebraData& g) {
  auto ws = gperp_highest_weights(g);
  if (ws.empty()) throw UsageError(g.name + ": g_perp is zero, no maximal constituent");
  const RootDatum& rd = *g.datum;
  std::vector<long> delta = rd.fundamental_coords(rd.highest_root());
  std::vector<long> lam = ws.front();
  for (int i = 0; i < rd.rank; ++i) lam[i] += delta[i];
  int factor = (rd.type == LieType::A) ? 2 : 1;
  return {lam, factor};
}

}  // namespace lieform
