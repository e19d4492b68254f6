#include "lieform/sparse_matrix.hpp"

#include <algorithm>

namespace lieform {

SparseVec sv_add(const SparseVec& a, const SparseVec& b) { return sv_axpy(a, Rat(1), b); }

SparseVec sv_axpy(const SparseVec& a, const Rat& c, const SparseVec& b) {
  SparseVec out;
  out.reserve(a.size() + b.size());
  size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j >= b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i >= a.size() || b[j].first < a[i].first) {
      Rat v = c * b[j].second;
      if (v != 0) out.emplace_back(b[j].first, v);
      ++j;
    } else {
      Rat v = a[i].second + c * b[j].second;
      if (v != 0) out.emplace_back(a[i].first, v);
      ++i, ++j;
    }
  }
  return out;
}

SparseVec sv_scale(const SparseVec& a, const Rat& c) {
  if (c == 0) return {};
  SparseVec out = a;
  for (auto& e : out) e.second *= c;
  return out;
}

Rat sv_dot(const SparseVec& a, const SparseVec& b) {
  Rat s = 0;
  size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i].first < b[j].first) ++i;
    else if (b[j].first < a[i].first) ++j;
    else s += a[i++].second * b[j++].second;
  }
  return s;
}

Rat sv_get(const SparseVec& a, long i) {
  auto it = std::lower_bound(a.begin(), a.end(), i,
                             [](const auto& p, long k) { return p.first < k; });
  if (it != a.end() && it->first == i) return it->second;
  return Rat(0);
}

void sv_set(SparseVec& a, long i, const Rat& v) {
  auto it = std::lower_bound(a.begin(), a.end(), i,
                             [](const auto& p, long k) { return p.first < k; });
  if (it != a.end() && it->first == i) {
    if (v == 0) a.erase(it);
    else it->second = v;
  } else if (v != 0) {
    a.insert(it, {i, v});
  }
}

SparseMatrix SparseMatrix::identity(long n) {
  SparseMatrix m(n, n);
  for (long i = 0; i < n; ++i) m.data_[i] = {{i, Rat(1)}};
  return m;
}

void SparseMatrix::add_at(long r, long c, const Rat& v) {
  if (v == 0) return;
  Rat cur = sv_get(data_[r], c);
  sv_set(data_[r], c, cur + v);
}

long SparseMatrix::nnz() const {
  long s = 0;
  for (const auto& r : data_) s += static_cast<long>(r.size());
  return s;
}

SparseMatrix SparseMatrix::transpose() const {
  SparseMatrix t(cols_, rows_);
  for (long r = 0; r < rows_; ++r)
    for (const auto& [c, v] : data_[r]) t.data_[c].emplace_back(r, v);
  return t;  // per-row order is increasing since r increases
}

SparseMatrix SparseMatrix::operator+(const SparseMatrix& o) const {
  SparseMatrix out(rows_, cols_);
  for (long r = 0; r < rows_; ++r) out.data_[r] = sv_add(data_[r], o.data_[r]);
  return out;
}

SparseMatrix SparseMatrix::operator-(const SparseMatrix& o) const {
  SparseMatrix out(rows_, cols_);
  for (long r = 0; r < rows_; ++r) out.data_[r] = sv_axpy(data_[r], Rat(-1), o.data_[r]);
  return out;
}

SparseMatrix SparseMatrix::operator*(const SparseMatrix& o) const {
  SparseMatrix out(rows_, o.cols_);
  for (long r = 0; r < rows_; ++r) {
    SparseVec acc;
    for (const auto& [k, v] : data_[r]) acc = sv_axpy(acc, v, o.data_[k]);
    out.data_[r] = std::move(acc);
  }
  return out;
}

SparseMatrix SparseMatrix::scaled(const Rat& c) const {
  SparseMatrix out(rows_, cols_);
  for (long r = 0; r < rows_; ++r) out.data_[r] = sv_scale(data_[r], c);
  return out;
}

bool SparseMatrix::operator==(const SparseMatrix& o) const {
  return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
}

std::vector<Rat> SparseMatrix::apply(const std::vector<Rat>& v) const {
  std::vector<Rat> out(rows_, Rat(0));
  for (long r = 0; r < rows_; ++r)
    for (const auto& [c, x] : data_[r]) out[r] += x * v[c];
  return out;
}

SparseVec SparseMatrix::apply(const SparseVec& v) const {
  // column-combination view: result = sum_c v_c * col_c; do it row-wise
  SparseVec out;
  for (long r = 0; r < rows_; ++r) {
    Rat s = sv_dot(data_[r], v);
    if (s != 0) out.emplace_back(r, s);
  }
  return out;
}

SparseMatrix SparseMatrix::stacked(const SparseMatrix& below) const {
  SparseMatrix out(rows_ + below.rows_, cols_);
  for (long r = 0; r < rows_; ++r) out.data_[r] = data_[r];
  for (long r = 0; r < below.rows_; ++r) out.data_[rows_ + r] = below.data_[r];
  return out;
}

SparseMatrix SparseMatrix::from_columns(long dim, const std::vector<std::vector<Rat>>& cols) {
  SparseMatrix out(dim, static_cast<long>(cols.size()));
  for (long c = 0; c < static_cast<long>(cols.size()); ++c)
    for (long r = 0; r < dim; ++r)
      if (cols[c][r] != 0) out.data_[r].emplace_back(c, cols[c][r]);
  return out;
}

SparseMatrix SparseMatrix::from_rows(long dim, const std::vector<std::vector<Rat>>& rows) {
  SparseMatrix out(static_cast<long>(rows.size()), dim);
  for (long r = 0; r < static_cast<long>(rows.size()); ++r)
    for (long c = 0; c < dim; ++c)
      if (rows[r][c] != 0) out.data_[r].emplace_back(c, rows[r][c]);
  return out;
}

std::vector<Rat> SparseMatrix::dense_column(long c) const {
  std::vector<Rat> out(rows_, Rat(0));
  for (long r = 0; r < rows_; ++r) out[r] = at(r, c);
  return out;
}

std::vector<std::vector<Rat>> SparseMatrix::dense() const {
  std::vector<std::vector<Rat>> out(rows_, std::vector<Rat>(cols_, Rat(0)));
  for (long r = 0; r < rows_; ++r)
    for (const auto& [c, v] : data_[r]) out[r][c] = v;
  return out;
}

}  // namespace lieform
