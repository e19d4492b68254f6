#ifndef LIEFORM_MULTIVECTOR_HPP
#define LIEFORM_MULTIVECTOR_HPP

#include <bit>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "lieform/base.hpp"

namespace lieform {

/// Index sets are bitmasks over basis positions 0..n-1 (n <= 63); the JSON
/// form uses 1-based strictly increasing index tuples.
using Mask = std::uint64_t;

inline int mask_degree(Mask m) { return std::popcount(m); }
std::vector<int> mask_indices(Mask m);     // 0-based, increasing
Mask mask_of(const std::vector<int>& idx); // 0-based

/// Sign of e_I ^ e_J as a reordering of e_{I union J}; masks must be disjoint.
int shuffle_sign(Mask a, Mask b);

/// Sparse degree-k element of Lambda^k of an n-dimensional space.
template <class K>
struct MultiVec {
  int n = 0;
  int deg = 0;
  std::map<Mask, K> terms;  // no zero coefficients stored

  MultiVec() = default;
  MultiVec(int n_, int deg_) : n(n_), deg(deg_) {}

  bool is_zero() const { return terms.empty(); }

  void add_term(Mask m, const K& c) {
    if (c == 0) return;
    auto [it, fresh] = terms.try_emplace(m, c);
    if (!fresh) {
      it->second += c;
      if (it->second == 0) terms.erase(it);
    }
  }

  MultiVec& operator+=(const MultiVec& o) {
    for (const auto& [m, c] : o.terms) add_term(m, c);
    return *this;
  }
  MultiVec operator+(const MultiVec& o) const {
    MultiVec r = *this;
    r += o;
    return r;
  }
  MultiVec operator-(const MultiVec& o) const {
    MultiVec r = *this;
    for (const auto& [m, c] : o.terms) r.add_term(m, -c);
    return r;
  }
  MultiVec scaled(const K& c) const {
    MultiVec r(n, deg);
    if (c == 0) return r;
    for (const auto& [m, v] : terms) r.terms[m] = c * v;
    return r;
  }
};

using MV = MultiVec<Rat>;
using MVF = MultiVec<Flt>;

template <class K>
MultiVec<K> wedge(const MultiVec<K>& a, const MultiVec<K>& b) {
  if (a.n != b.n) throw UsageError("wedge: ambient space mismatch");
  MultiVec<K> out(a.n, a.deg + b.deg);
  if (out.deg > a.n) return out;  // graded dimension zero
  for (const auto& [ma, ca] : a.terms)
    for (const auto& [mb, cb] : b.terms) {
      if (ma & mb) continue;
      K prod = ca * cb;
      if (shuffle_sign(ma, mb) < 0) prod = -prod;
      out.add_term(ma | mb, prod);
    }
  return out;
}

/// Plain slot contraction by the i-th basis covector.
template <class K>
MultiVec<K> iota(int i, const MultiVec<K>& a) {
  MultiVec<K> out(a.n, a.deg - 1);
  if (a.deg == 0) return out;
  const Mask bit = Mask(1) << i;
  for (const auto& [m, c] : a.terms) {
    if (!(m & bit)) continue;
    int below = std::popcount(m & (bit - 1));
    out.add_term(m & ~bit, (below % 2 == 0) ? c : -c);
  }
  return out;
}

/// Coefficient vector in the fixed mask order of `basis_masks`.
template <class K>
std::vector<K> coords_in(const MultiVec<K>& a, const std::vector<Mask>& basis_masks,
                         const std::map<Mask, long>& pos) {
  std::vector<K> v(basis_masks.size(), K(0));
  for (const auto& [m, c] : a.terms) v[pos.at(m)] = c;
  return v;
}

MV mv_basis_vector(int n, int i);

/// Push a multivector through a linear map on degree 1 (matrix columns are
/// images of basis vectors, given densely).
MV pushforward(const std::vector<std::vector<Rat>>& columns, const MV& a);

std::string mv_to_string(const MV& a, const std::vector<std::string>& labels = {});

MVF to_float(const MV& a);

}  // namespace lieform

#endif
