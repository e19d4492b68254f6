#include "lieform/root_system.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace lieform {

std::string lie_type_name(LieType t, int rank) {
  switch (t) {
    case LieType::A: return "A" + std::to_string(rank);
    case LieType::B: return "B" + std::to_string(rank);
    case LieType::C: return "C" + std::to_string(rank);
    case LieType::D: return "D" + std::to_string(rank);
    case LieType::G2: return "G2";
    case LieType::F4: return "F4";
  }
  return "?";
}

long RootDatum::pairing(const std::vector<int>& x, const std::vector<int>& y) const {
  // (x, y) = sum_i m_i(x) * d_i * <y, alpha_i^vee>
  long s = 0;
  for (int i = 0; i < rank; ++i) {
    if (x[i] == 0) continue;
    s += static_cast<long>(x[i]) * sym[i] * cartan_pairing(i, y);
  }
  return s;
}

int RootDatum::cartan_pairing(int i, const std::vector<int>& beta) const {
  int s = 0;
  for (int j = 0; j < rank; ++j) s += cartan[i][j] * beta[j];
  return s;
}

int RootDatum::height(const std::vector<int>& coords) const {
  return std::accumulate(coords.begin(), coords.end(), 0);
}

std::vector<long> RootDatum::fundamental_coords(const std::vector<int>& root_coords) const {
  std::vector<long> out(rank);
  for (int i = 0; i < rank; ++i) out[i] = cartan_pairing(i, root_coords);
  return out;
}

namespace {

std::vector<std::vector<int>> cartan_matrix(LieType t, int n) {
  auto chain = [&](int len) {
    std::vector<std::vector<int>> a(len, std::vector<int>(len, 0));
    for (int i = 0; i < len; ++i) {
      a[i][i] = 2;
      if (i + 1 < len) a[i][i + 1] = -1, a[i + 1][i] = -1;
    }
    return a;
  };
  switch (t) {
    case LieType::A: return chain(n);
    case LieType::B: {
      auto a = chain(n);
      a[n - 1][n - 2] = -2;  // <alpha_{n-1}, alpha_n^vee>, short last node
      return a;
    }
    case LieType::C: {
      auto a = chain(n);
      a[n - 2][n - 1] = -2;  // long last node
      return a;
    }
    case LieType::D: {
      auto a = chain(n);
      a[n - 1][n - 2] = a[n - 2][n - 1] = 0;
      a[n - 1][n - 3] = a[n - 3][n - 1] = -1;
      return a;
    }
    case LieType::G2:
      // alpha_1 long, alpha_2 short
      return {{2, -1}, {-3, 2}};
    case LieType::F4: {
      auto a = chain(4);
      a[2][1] = -2;  // alpha_1, alpha_2 long; alpha_3, alpha_4 short
      return a;
    }
  }
  throw std::logic_error("cartan_matrix");
}

std::vector<int> symmetrizers(LieType t, int n) {
  switch (t) {
    case LieType::A:
    case LieType::D: return std::vector<int>(n, 1);
    case LieType::B: {
      std::vector<int> d(n, 2);
      d[n - 1] = 1;
      return d;
    }
    case LieType::C: {
      std::vector<int> d(n, 1);
      d[n - 1] = 2;
      return d;
    }
    case LieType::G2: return {3, 1};
    case LieType::F4: return {2, 2, 1, 1};
  }
  throw std::logic_error("symmetrizers");
}

int expected_positive_count(LieType t, int n) {
  switch (t) {
    case LieType::A: return n * (n + 1) / 2;
    case LieType::B:
    case LieType::C: return n * n;
    case LieType::D: return n * (n - 1);
    case LieType::G2: return 6;
    case LieType::F4: return 24;
  }
  throw std::logic_error("expected_positive_count");
}

}  // namespace

RootDatum build_root_datum(LieType type, int rank) {
  switch (type) {
    case LieType::A: if (rank < 1) throw UsageError("A_n needs n >= 1"); break;
    case LieType::B: if (rank < 2) throw UsageError("B_n needs n >= 2"); break;
    case LieType::C: if (rank < 2) throw UsageError("C_n needs n >= 2"); break;
    case LieType::D: if (rank < 3) throw UsageError("D_n needs n >= 3"); break;
    case LieType::G2: rank = 2; break;
    case LieType::F4: rank = 4; break;
  }
  RootDatum rd;
  rd.type = type;
  rd.rank = rank;
  rd.cartan = cartan_matrix(type, rank);
  rd.sym = symmetrizers(type, rank);

  // symmetry of d_i * a_ij is a basic consistency check on the tables
  for (int i = 0; i < rank; ++i)
    for (int j = 0; j < rank; ++j)
      if (rd.sym[i] * rd.cartan[i][j] != rd.sym[j] * rd.cartan[j][i])
        throw std::logic_error("cartan/symmetrizer mismatch");

  // generate positive roots by height, using root strings through simple roots
  std::set<std::vector<int>> all;
  std::vector<std::vector<int>> frontier;
  for (int i = 0; i < rank; ++i) {
    std::vector<int> e(rank, 0);
    e[i] = 1;
    all.insert(e);
    frontier.push_back(e);
  }
  while (!frontier.empty()) {
    std::vector<std::vector<int>> next;
    for (const auto& beta : frontier) {
      for (int i = 0; i < rank; ++i) {
        // p = steps down the alpha_i-string through beta
        int p = 0;
        std::vector<int> down = beta;
        while (true) {
          down[i] -= 1;
          bool nonneg = std::all_of(down.begin(), down.end(), [](int x) { return x >= 0; });
          bool zero = std::all_of(down.begin(), down.end(), [](int x) { return x == 0; });
          if (zero || !nonneg || !all.count(down)) break;
          ++p;
        }
        int q = p - rd.cartan_pairing(i, beta);
        if (q > 0) {
          std::vector<int> up = beta;
          up[i] += 1;
          if (all.insert(up).second) next.push_back(up);
        }
      }
    }
    frontier = std::move(next);
  }
  rd.positive.assign(all.begin(), all.end());
  std::sort(rd.positive.begin(), rd.positive.end(), [&](const auto& a, const auto& b) {
    int ha = rd.height(a), hb = rd.height(b);
    if (ha != hb) return ha < hb;
    return a < b;
  });
  if (static_cast<int>(rd.positive.size()) != expected_positive_count(type, rank))
    throw std::logic_error("positive root count mismatch for " + lie_type_name(type, rank));
  for (int i = 0; i < rd.num_positive(); ++i) rd.index_of[rd.positive[i]] = i;
  return rd;
}

mpz_class weyl_dim(const RootDatum& rd, const std::vector<long>& weight) {
  if (static_cast<int>(weight.size()) != rd.rank)
    throw UsageError("weyl_dim: weight has wrong rank");
  for (long w : weight)
    if (w < 0) throw UsageError("weyl_dim: weight not dominant integral");
  // (lambda + rho, alpha) = sum_i m_i(alpha) (l_i + 1) d_i ; rho has l_i = 0
  Rat prod = 1;
  for (const auto& alpha : rd.positive) {
    long num = 0, den = 0;
    for (int i = 0; i < rd.rank; ++i) {
      num += static_cast<long>(alpha[i]) * (weight[i] + 1) * rd.sym[i];
      den += static_cast<long>(alpha[i]) * rd.sym[i];
    }
    prod *= rat(num, den);
  }
  prod.canonicalize();
  if (prod.get_den() != 1) throw std::logic_error("weyl_dim: non-integral result");
  return prod.get_num();
}

Rat casimir_eigenvalue(const RootDatum& rd, const std::vector<long>& weight) {
  // (lambda, lambda + 2 rho) / (theta, theta + 2 rho) in any fixed scale.
  // (pi_i, pi_j) = d_j * (A^{-1})_{ji}; (pi_i, alpha_j) = delta_ij d_i.
  const int r = rd.rank;
  // invert the Cartan matrix over Q
  std::vector<std::vector<Rat>> a(r, std::vector<Rat>(r)), inv(r, std::vector<Rat>(r));
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < r; ++j) a[i][j] = rd.cartan[i][j];
    inv[i][i] = 1;
  }
  for (int k = 0; k < r; ++k) {
    int piv = k;
    while (a[piv][k] == 0) ++piv;
    std::swap(a[piv], a[k]);
    std::swap(inv[piv], inv[k]);
    Rat f = a[k][k];
    for (int j = 0; j < r; ++j) a[k][j] /= f, inv[k][j] /= f;
    for (int i = 0; i < r; ++i) {
      if (i == k || a[i][k] == 0) continue;
      Rat g = a[i][k];
      for (int j = 0; j < r; ++j) a[i][j] -= g * a[k][j], inv[i][j] -= g * inv[k][j];
    }
  }
  auto pair_ww = [&](const std::vector<long>& x, const std::vector<long>& y) {
    Rat s = 0;
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j)
        if (x[i] != 0 && y[j] != 0) s += Rat(x[i]) * Rat(y[j]) * Rat(rd.sym[j]) * inv[j][i];
    return s;
  };
  auto value = [&](const std::vector<long>& lam) {
    std::vector<long> shifted(lam);
    for (auto& x : shifted) x += 2;  // lambda + 2 rho
    return pair_ww(lam, shifted);
  };
  std::vector<long> theta = rd.fundamental_coords(rd.highest_root());
  Rat res = value(weight) / value(theta);
  res.canonicalize();
  return res;
}

// ------------------------------------------------------- Chevalley constants

ChevalleyConstants::ChevalleyConstants(const RootDatum& rd) : rd_(rd) {
  const int P = rd.num_positive();
  // process sums by the fixed root order; extraspecial pair seeds the sign
  for (int g = 0; g < P; ++g) {
    const auto& gamma = rd.positive[g];
    if (rd.height(gamma) < 2) continue;
    std::vector<std::pair<int, int>> special;
    for (int a = 0; a < P; ++a) {
      std::vector<int> bc(rd.rank);
      bool ok = true;
      for (int i = 0; i < rd.rank; ++i) {
        bc[i] = gamma[i] - rd.positive[a][i];
        if (bc[i] < 0) ok = false;
      }
      if (!ok) continue;
      auto it = rd.index_of.find(bc);
      if (it == rd.index_of.end()) continue;
      int b = it->second;
      if (a < b) special.emplace_back(a, b);
    }
    if (special.empty()) throw std::logic_error("no special pair for a non-simple root");
    std::sort(special.begin(), special.end());
    auto [xi, eta] = special.front();
    npos_[{xi, eta}] = string_down(xi, eta) + 1;
    for (size_t s = 1; s < special.size(); ++s) {
      auto [al, be] = special[s];
      // four-root identity on (xi, eta, -al, -be)
      long gg = rd.pairing(gamma, gamma);
      Rat acc = 0;
      {
        // N_{eta,-al} * N_{xi,-be} / (eta - al, eta - al)
        Rat t1 = n_mixed(eta, al);
        if (t1 != 0) {
          Rat t2 = n_mixed(xi, be);
          if (t2 != 0) {
            std::vector<int> d(rd.rank);
            for (int i = 0; i < rd.rank; ++i) d[i] = rd.positive[eta][i] - rd.positive[al][i];
            // eta - al is a root here (both factors nonzero)
            std::vector<int> ad(d);
            for (auto& x : ad) x = std::abs(x);
            acc += t1 * t2 / Rat(rd.pairing(d, d));
          }
        }
      }
      {
        // N_{-al,xi} * N_{eta,-be} / (xi - al, xi - al)
        Rat t1 = -n_mixed(xi, al);  // N_{-al, xi} = -N_{xi, -al}
        if (t1 != 0) {
          Rat t2 = n_mixed(eta, be);
          if (t2 != 0) {
            std::vector<int> d(rd.rank);
            for (int i = 0; i < rd.rank; ++i) d[i] = rd.positive[xi][i] - rd.positive[al][i];
            acc += t1 * t2 / Rat(rd.pairing(d, d));
          }
        }
      }
      Rat n = acc * Rat(gg) / Rat(npos_.at({xi, eta}));
      n.canonicalize();
      if (n.get_den() != 1) throw std::logic_error("non-integral structure constant");
      long nv = n.get_num().get_si();
      if (std::abs(nv) != string_down(al, be) + 1)
        throw std::logic_error("structure constant magnitude != p+1");
      npos_[{al, be}] = nv;
    }
  }
}

int ChevalleyConstants::string_down(int a_idx, int b_idx) const {
  int p = 0;
  std::vector<int> cur = rd_.positive[b_idx];
  const auto& a = rd_.positive[a_idx];
  while (true) {
    for (int i = 0; i < rd_.rank; ++i) cur[i] -= a[i];
    bool all_nonneg = std::all_of(cur.begin(), cur.end(), [](int x) { return x >= 0; });
    bool all_nonpos = std::all_of(cur.begin(), cur.end(), [](int x) { return x <= 0; });
    std::vector<int> abs_cur = cur;
    if (all_nonpos) for (auto& x : abs_cur) x = -x;
    if ((all_nonneg || all_nonpos) && rd_.is_positive_root(abs_cur)) ++p;
    else break;
  }
  return p;
}

std::vector<int> ChevalleyConstants::coords_of(Root r) const {
  std::vector<int> c = rd_.positive[r.idx];
  if (r.neg)
    for (auto& x : c) x = -x;
  return c;
}

Rat ChevalleyConstants::n_mixed(int x, int y) const {
  // N_{x, -y} via the 3-root identity; reduces to positive pairs
  if (x == y) return 0;
  std::vector<int> d(rd_.rank);
  bool pos = true, neg = true;
  for (int i = 0; i < rd_.rank; ++i) {
    d[i] = rd_.positive[x][i] - rd_.positive[y][i];
    if (d[i] < 0) pos = false;
    if (d[i] > 0) neg = false;
  }
  if (pos && rd_.is_positive_root(d)) {
    int delta = rd_.index_of.at(d);
    auto it = npos_.find({std::min(y, delta), std::max(y, delta)});
    if (it == npos_.end()) return 0;
    long n = (y < delta) ? it->second : -it->second;  // N antisymmetric
    long dd = rd_.pairing(d, d);
    long xx = rd_.pairing(rd_.positive[x], rd_.positive[x]);
    return rat(-n * dd, xx);
  }
  if (neg) {
    std::vector<int> md(d);
    for (auto& v : md) v = -v;
    if (rd_.is_positive_root(md)) {
      int delta = rd_.index_of.at(md);
      auto it = npos_.find({std::min(x, delta), std::max(x, delta)});
      if (it == npos_.end()) return 0;
      long n = (x < delta) ? it->second : -it->second;
      long dd = rd_.pairing(md, md);
      long yy = rd_.pairing(rd_.positive[y], rd_.positive[y]);
      return rat(-n * dd, yy);
    }
  }
  return 0;
}

Rat ChevalleyConstants::structure_constant(Root a, Root b) const {
  if (a.idx == b.idx && a.neg == b.neg) return 0;
  if (!a.neg && !b.neg) {
    auto it = npos_.find({std::min(a.idx, b.idx), std::max(a.idx, b.idx)});
    if (it == npos_.end()) return 0;
    return Rat((a.idx < b.idx) ? it->second : -it->second);
  }
  if (a.neg && b.neg) return -structure_constant({a.idx, false}, {b.idx, false});
  if (!a.neg && b.neg) return n_mixed(a.idx, b.idx);
  return -n_mixed(b.idx, a.idx);  // N_{-x, y} = -N_{y, -x}
}

}  // namespace lieform
