#include "lieform/linalg_float.hpp"

#include <algorithm>
#include <sstream>

namespace lieform {

DenseF DenseF::from(const SparseMatrix& m) {
  DenseF d(m.rows(), m.cols());
  for (long r = 0; r < m.rows(); ++r)
    for (const auto& [c, v] : m.row(r)) d.at(r, c) = Flt(v);
  return d;
}

SvdResult jacobi_svd(DenseF m) {
  const long R = m.rows, C = m.cols;
  DenseF v(C, C);
  for (long i = 0; i < C; ++i) v.at(i, i) = 1;

  // machine epsilon at the working precision
  Flt eps = 1;
  for (unsigned long i = 0; i + 4 < mpf_get_default_prec(); ++i) eps /= 2;

  for (int sweep = 0; sweep < 60; ++sweep) {
    bool rotated = false;
    for (long p = 0; p < C; ++p) {
      for (long q = p + 1; q < C; ++q) {
        Flt app = 0, aqq = 0, apq = 0;
        for (long r = 0; r < R; ++r) {
          app += m.at(r, p) * m.at(r, p);
          aqq += m.at(r, q) * m.at(r, q);
          apq += m.at(r, p) * m.at(r, q);
        }
        if (apq == 0) continue;
        Flt bound = sqrt(app * aqq) * eps * 64;
        if (abs(apq) <= bound) continue;
        rotated = true;
        // Jacobi rotation annihilating the (p,q) inner product
        Flt tau = (aqq - app) / (2 * apq);
        Flt t;
        if (tau >= 0) t = 1 / (tau + sqrt(1 + tau * tau));
        else t = -1 / (-tau + sqrt(1 + tau * tau));
        Flt c = 1 / sqrt(1 + t * t);
        Flt s = c * t;
        for (long r = 0; r < R; ++r) {
          Flt x = m.at(r, p), y = m.at(r, q);
          m.at(r, p) = c * x - s * y;
          m.at(r, q) = s * x + c * y;
        }
        for (long r = 0; r < C; ++r) {
          Flt x = v.at(r, p), y = v.at(r, q);
          v.at(r, p) = c * x - s * y;
          v.at(r, q) = s * x + c * y;
        }
      }
    }
    if (!rotated) break;
  }

  std::vector<Flt> sv(C);
  for (long c = 0; c < C; ++c) {
    Flt s = 0;
    for (long r = 0; r < R; ++r) s += m.at(r, c) * m.at(r, c);
    sv[c] = sqrt(s);
  }
  // sort descending, permuting v alongside
  std::vector<long> idx(C);
  for (long i = 0; i < C; ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](long a, long b) { return sv[a] > sv[b]; });
  SvdResult out;
  out.v = DenseF(C, C);
  out.singular.resize(C);
  for (long c = 0; c < C; ++c) {
    out.singular[c] = sv[idx[c]];
    for (long r = 0; r < C; ++r) out.v.at(r, c) = v.at(r, idx[c]);
  }
  return out;
}

namespace {
void check_gap(const std::vector<Flt>& sv, const Flt& tol) {
  for (const auto& s : sv) {
    if (s > tol / 10 && s < tol * 10)
      throw std::runtime_error(
          "float kernel: ill-conditioned singular value near the zero threshold "
          "(sigma = " + flt_to_string(s, 8) + ", tol = " + flt_to_string(tol, 8) + ")");
  }
}
}  // namespace

DenseF kernel_basis_f(const DenseF& m, const Flt& tol) {
  SvdResult s = jacobi_svd(m);
  check_gap(s.singular, tol);
  long k = 0;
  for (const auto& x : s.singular)
    if (x < tol) ++k;
  DenseF out(m.cols, k);
  long j = 0;
  for (long c = 0; c < m.cols; ++c) {
    if (s.singular[c] >= tol) continue;
    for (long r = 0; r < m.cols; ++r) out.at(r, j) = s.v.at(r, c);
    ++j;
  }
  return out;
}

long rank_f(const DenseF& m, const Flt& tol) {
  SvdResult s = jacobi_svd(m);
  check_gap(s.singular, tol);
  long r = 0;
  for (const auto& x : s.singular)
    if (x >= tol) ++r;
  return r;
}

std::vector<Flt> solve_f(DenseF m, std::vector<Flt> b) {
  const long n = m.rows;
  if (m.cols != n) throw std::runtime_error("solve_f: not square");
  for (long k = 0; k < n; ++k) {
    long piv = k;
    for (long r = k + 1; r < n; ++r)
      if (abs(m.at(r, k)) > abs(m.at(piv, k))) piv = r;
    if (m.at(piv, k) == 0) throw std::runtime_error("solve_f: singular");
    if (piv != k) {
      for (long c = 0; c < n; ++c) std::swap(m.at(piv, c), m.at(k, c));
      std::swap(b[piv], b[k]);
    }
    for (long r = k + 1; r < n; ++r) {
      if (m.at(r, k) == 0) continue;
      Flt f = m.at(r, k) / m.at(k, k);
      for (long c = k; c < n; ++c) m.at(r, c) -= f * m.at(k, c);
      b[r] -= f * b[k];
    }
  }
  std::vector<Flt> x(n);
  for (long r = n - 1; r >= 0; --r) {
    Flt s = b[r];
    for (long c = r + 1; c < n; ++c) s -= m.at(r, c) * x[c];
    x[r] = s / m.at(r, r);
  }
  return x;
}

DenseF matmul_f(const DenseF& a, const DenseF& b) {
  DenseF out(a.rows, b.cols);
  for (long r = 0; r < a.rows; ++r)
    for (long k = 0; k < a.cols; ++k) {
      if (a.at(r, k) == 0) continue;
      for (long c = 0; c < b.cols; ++c) out.at(r, c) += a.at(r, k) * b.at(k, c);
    }
  return out;
}

Flt flt_from_string(const std::string& s) {
  Flt x;
  if (x.set_str(s, 10) != 0) throw UsageError("bad float literal: " + s);
  return x;
}

std::string flt_to_string(const Flt& x, int digits) {
  mp_exp_t exp;
  std::string mant = x.get_str(exp, 10, digits);
  std::ostringstream os;
  bool neg = !mant.empty() && mant[0] == '-';
  std::string d = neg ? mant.substr(1) : mant;
  if (d.empty()) return "0";
  os << (neg ? "-" : "") << "0." << d << "e" << exp;
  return os.str();
}

}  // namespace lieform
