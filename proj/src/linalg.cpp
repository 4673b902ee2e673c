#include "hkr/linalg.hpp"

#include <algorithm>

#include "hkr/errors.hpp"

namespace hkr {

namespace {

// Scratch dense row; touched tracks nonzero candidates.
struct Dense {
  std::vector<CycNum> v;
  std::vector<char> nz;
  explicit Dense(uint32_t n) : v(n), nz(n, 0) {}
  void load(const SparseRow& r) {
    for (const auto& [c, x] : r) {
      v[c] = x;
      nz[c] = 1;
    }
  }
  SparseRow dump_from(uint32_t start) {
    SparseRow out;
    for (uint32_t c = start; c < v.size(); ++c) {
      if (!nz[c]) continue;
      if (!v[c].is_zero()) out.emplace_back(c, v[c]);
      v[c] = CycNum();
      nz[c] = 0;
    }
    return out;
  }
};

}  // namespace

SparseRow Echelon::reduce(const SparseRow& row) const {
  Dense d(ncols_);
  d.load(row);
  for (uint32_t c = 0; c < ncols_; ++c) {
    if (!d.nz[c] || d.v[c].is_zero()) continue;
    int pr = pivot_of_col_[c];
    if (pr < 0) continue;
    CycNum f = d.v[c];
    for (const auto& [cc, x] : rows_[pr]) {
      d.v[cc] -= f * x;
      d.nz[cc] = 1;
    }
  }
  return d.dump_from(0);
}

bool Echelon::add(const SparseRow& row) {
  SparseRow r = reduce(row);
  if (r.empty()) return false;
  CycNum inv = r.front().second.inverse();
  for (auto& [c, x] : r) x *= inv;
  uint32_t pc = r.front().first;
  pivot_of_col_[pc] = static_cast<int>(rows_.size());
  pivot_col_.push_back(pc);
  rows_.push_back(std::move(r));
  return true;
}

std::vector<std::vector<CycNum>> Echelon::null_space() const {
  // Order pivots by column descending for back substitution.
  std::vector<size_t> order(rows_.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](size_t a, size_t b) { return pivot_col_[a] > pivot_col_[b]; });
  std::vector<std::vector<CycNum>> basis;
  for (uint32_t f = 0; f < ncols_; ++f) {
    if (pivot_of_col_[f] >= 0) continue;
    std::vector<CycNum> x(ncols_);
    x[f] = CycNum(1);
    for (size_t i : order) {
      CycNum s;
      for (const auto& [c, a] : rows_[i])
        if (c != pivot_col_[i]) s += a * x[c];
      x[pivot_col_[i]] = -s;
    }
    basis.push_back(std::move(x));
  }
  return basis;
}

std::optional<std::vector<CycNum>> solve_linear(const std::vector<SparseRow>& rows,
                                                const std::vector<CycNum>& rhs, uint32_t ncols) {
  Echelon e(ncols + 1);
  for (size_t i = 0; i < rows.size(); ++i) {
    SparseRow r = rows[i];
    if (!rhs[i].is_zero()) r.emplace_back(ncols, rhs[i]);
    e.add(r);
  }
  if (e.pivot_row(ncols) >= 0) return std::nullopt;
  std::vector<CycNum> x(ncols + 1);
  x[ncols] = CycNum(-1);
  std::vector<std::pair<uint32_t, size_t>> piv;
  for (size_t i = 0; i < e.rows().size(); ++i) piv.emplace_back(e.rows()[i].front().first, i);
  std::sort(piv.rbegin(), piv.rend());
  for (auto [pc, i] : piv) {
    CycNum s;
    for (const auto& [c, a] : e.rows()[i])
      if (c != pc) s += a * x[c];
    x[pc] = -s;
  }
  x.pop_back();
  return x;
}

std::vector<std::vector<CycNum>> null_space(const std::vector<SparseRow>& rows, uint32_t ncols) {
  Echelon e(ncols);
  for (const auto& r : rows) e.add(r);
  return e.null_space();
}

std::optional<Matrix> invert_matrix(const Matrix& m) {
  size_t n = m.size();
  Matrix a = m;
  Matrix inv(n, std::vector<CycNum>(n));
  for (size_t i = 0; i < n; ++i) inv[i][i] = CycNum(1);
  for (size_t col = 0; col < n; ++col) {
    size_t piv = col;
    while (piv < n && a[piv][col].is_zero()) ++piv;
    if (piv == n) return std::nullopt;
    std::swap(a[piv], a[col]);
    std::swap(inv[piv], inv[col]);
    CycNum f = a[col][col].inverse();
    for (size_t j = 0; j < n; ++j) {
      a[col][j] *= f;
      inv[col][j] *= f;
    }
    for (size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col].is_zero()) continue;
      CycNum g = a[r][col];
      for (size_t j = 0; j < n; ++j) {
        a[r][j] -= g * a[col][j];
        inv[r][j] -= g * inv[col][j];
      }
    }
  }
  return inv;
}

Matrix mat_mul(const Matrix& a, const Matrix& b) {
  size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
  Matrix c(n, std::vector<CycNum>(m));
  for (size_t i = 0; i < n; ++i)
    for (size_t l = 0; l < k; ++l) {
      if (a[i][l].is_zero()) continue;
      for (size_t j = 0; j < m; ++j) c[i][j] += a[i][l] * b[l][j];
    }
  return c;
}

}  // namespace hkr
