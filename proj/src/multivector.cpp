#include "lieform/multivector.hpp"

#include <sstream>

namespace lieform {

std::vector<int> mask_indices(Mask m) {
  std::vector<int> out;
  while (m) {
    int i = std::countr_zero(m);
    out.push_back(i);
    m &= m - 1;
  }
  return out;
}

Mask mask_of(const std::vector<int>& idx) {
  Mask m = 0;
  for (int i : idx) m |= Mask(1) << i;
  return m;
}

int shuffle_sign(Mask a, Mask b) {
  // inversions between a and b: for each bit of b, count bits of a above it
  int inv = 0;
  Mask bb = b;
  while (bb) {
    int j = std::countr_zero(bb);
    inv += std::popcount(a >> (j + 1));
    bb &= bb - 1;
  }
  return (inv % 2 == 0) ? 1 : -1;
}

MV mv_basis_vector(int n, int i) {
  MV v(n, 1);
  v.terms[Mask(1) << i] = Rat(1);
  return v;
}

MV pushforward(const std::vector<std::vector<Rat>>& columns, const MV& a) {
  const int n = static_cast<int>(columns.size());
  MV out(n, a.deg);
  for (const auto& [m, c] : a.terms) {
    MV acc(n, 0);
    acc.terms[0] = c;
    for (int i : mask_indices(m)) {
      MV img(n, 1);
      for (int r = 0; r < n; ++r)
        if (columns[i][r] != 0) img.terms[Mask(1) << r] = columns[i][r];
      acc = wedge(acc, img);
    }
    out += acc;
  }
  return out;
}

std::string mv_to_string(const MV& a, const std::vector<std::string>& labels) {
  if (a.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : a.terms) {
    if (!first) os << " + ";
    first = false;
    os << rat_to_string(c) << "*";
    bool dot = false;
    for (int i : mask_indices(m)) {
      if (dot) os << "^";
      dot = true;
      if (static_cast<size_t>(i) < labels.size()) os << labels[i];
      else os << "e" << (i + 1);
    }
  }
  return os.str();
}

MVF to_float(const MV& a) {
  MVF out(a.n, a.deg);
  for (const auto& [m, c] : a.terms) out.terms[m] = Flt(c);
  return out;
}

}  // namespace lieform
