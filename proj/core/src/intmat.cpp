#include "twistrack/intmat.hpp"

#include <algorithm>
#include <cstdlib>

namespace twr {

namespace {

i64 checked(i128 v) {
  require(v <= INT64_MAX && v >= INT64_MIN, Errc::Overflow, "integer matrix overflow");
  return (i64)v;
}

void row_addmul(IMat& m, int dst, int src, i64 c) {
  for (int j = 0; j < m.cols; ++j) m.at(dst, j) = checked((i128)m.at(dst, j) + (i128)c * m.at(src, j));
}

void col_addmul(IMat& m, int dst, int src, i64 c) {
  for (int i = 0; i < m.rows; ++i) m.at(i, dst) = checked((i128)m.at(i, dst) + (i128)c * m.at(i, src));
}

void row_swap(IMat& m, int i, int j) {
  for (int c = 0; c < m.cols; ++c) std::swap(m.at(i, c), m.at(j, c));
}

void col_swap(IMat& m, int i, int j) {
  for (int r = 0; r < m.rows; ++r) std::swap(m.at(r, i), m.at(r, j));
}

void row_negate(IMat& m, int i) {
  for (int c = 0; c < m.cols; ++c) m.at(i, c) = -m.at(i, c);
}

}  // namespace

IMat IMat::identity(int n) {
  IMat m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IMat imat_mul(const IMat& x, const IMat& y) {
  require(x.cols == y.rows, Errc::InternalInconsistency, "imat_mul shape mismatch");
  IMat r(x.rows, y.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int k = 0; k < x.cols; ++k) {
      i64 v = x.at(i, k);
      if (!v) continue;
      for (int j = 0; j < y.cols; ++j)
        r.at(i, j) = checked((i128)r.at(i, j) + (i128)v * y.at(k, j));
    }
  return r;
}

std::vector<i64> imat_apply_row(const std::vector<i64>& v, const IMat& m) {
  require(static_cast<int>(v.size()) == m.rows, Errc::InternalInconsistency, "row apply shape mismatch");
  std::vector<i64> r(m.cols, 0);
  for (int i = 0; i < m.rows; ++i) {
    if (!v[i]) continue;
    for (int j = 0; j < m.cols; ++j) r[j] = checked((i128)r[j] + (i128)v[i] * m.at(i, j));
  }
  return r;
}

void smith_normal_form(IMat& a, IMat* u, IMat* v, IMat* vinv) {
  if (u) *u = IMat::identity(a.rows);
  if (v) *v = IMat::identity(a.cols);
  if (vinv) *vinv = IMat::identity(a.cols);
  int t = 0;
  const int n = std::min(a.rows, a.cols);
  while (t < n) {
    // locate smallest nonzero pivot in the trailing block
    int pi = -1, pj = -1;
    i64 best = 0;
    for (int i = t; i < a.rows; ++i)
      for (int j = t; j < a.cols; ++j) {
        i64 x = std::abs(a.at(i, j));
        if (x != 0 && (pi < 0 || x < best)) {
          best = x;
          pi = i;
          pj = j;
        }
      }
    if (pi < 0) break;
    if (pi != t) {
      row_swap(a, pi, t);
      if (u) row_swap(*u, pi, t);
    }
    if (pj != t) {
      col_swap(a, pj, t);
      if (v) col_swap(*v, pj, t);
      if (vinv) row_swap(*vinv, pj, t);
    }
    bool clean = true;
    for (int i = t + 1; i < a.rows; ++i) {
      if (a.at(i, t) == 0) continue;
      i64 c = -(a.at(i, t) / a.at(t, t));
      row_addmul(a, i, t, c);
      if (u) row_addmul(*u, i, t, c);
      if (a.at(i, t) != 0) clean = false;
    }
    for (int j = t + 1; j < a.cols; ++j) {
      if (a.at(t, j) == 0) continue;
      i64 c = -(a.at(t, j) / a.at(t, t));
      col_addmul(a, j, t, c);
      if (v) col_addmul(*v, j, t, c);
      if (vinv) row_addmul(*vinv, t, j, -c);
      if (a.at(t, j) != 0) clean = false;
    }
    if (!clean) continue;  // remainders became new smaller pivots
    // divisibility pass: pivot must divide the rest of the block
    bool again = false;
    for (int i = t + 1; i < a.rows && !again; ++i)
      for (int j = t + 1; j < a.cols && !again; ++j)
        if (a.at(i, j) % a.at(t, t) != 0) {
          row_addmul(a, t, i, 1);
          if (u) row_addmul(*u, t, i, 1);
          again = true;
        }
    if (again) continue;
    if (a.at(t, t) < 0) {
      row_negate(a, t);
      if (u) row_negate(*u, t);
    }
    ++t;
  }
}

IMat row_lattice_basis(const IMat& a, IMat* track) {
  IMat m = a;
  IMat t = IMat::identity(a.rows);
  int pivot_row = 0;
  for (int col = 0; col < m.cols && pivot_row < m.rows; ++col) {
    // gcd out the column below pivot_row
    while (true) {
      int best = -1;
      i64 bv = 0;
      for (int i = pivot_row; i < m.rows; ++i) {
        i64 x = std::abs(m.at(i, col));
        if (x && (best < 0 || x < bv)) {
          best = i;
          bv = x;
        }
      }
      if (best < 0) break;
      if (best != pivot_row) {
        row_swap(m, best, pivot_row);
        row_swap(t, best, pivot_row);
      }
      bool done = true;
      for (int i = pivot_row + 1; i < m.rows; ++i) {
        if (m.at(i, col) == 0) continue;
        i64 c = -(m.at(i, col) / m.at(pivot_row, col));
        row_addmul(m, i, pivot_row, c);
        row_addmul(t, i, pivot_row, c);
        if (m.at(i, col) != 0) done = false;
      }
      if (done) break;
    }
    if (m.at(pivot_row, col) != 0) {
      if (m.at(pivot_row, col) < 0) {
        row_negate(m, pivot_row);
        row_negate(t, pivot_row);
      }
      ++pivot_row;
    }
  }
  m.rows = pivot_row;
  m.a.resize(static_cast<size_t>(pivot_row) * m.cols);
  if (track) {
    t.rows = pivot_row;
    t.a.resize(static_cast<size_t>(pivot_row) * t.cols);
    *track = t;
  }
  return m;
}

IMat integer_kernel(const IMat& a) {
  // Kernel via SNF: y*A = 0 <=> (y*U^-1)*(UAV) = 0; rows of U beyond the rank
  // span the kernel since (UAV) = D.
  IMat d = a;
  IMat u;
  smith_normal_form(d, &u, nullptr);
  int rank = 0;
  for (int i = 0; i < std::min(d.rows, d.cols); ++i)
    if (d.at(i, i) != 0) ++rank;
  IMat k(a.rows - rank, a.rows);
  for (int i = rank; i < a.rows; ++i)
    for (int j = 0; j < a.rows; ++j) k.at(i - rank, j) = u.at(i, j);
  return k;
}

}  // namespace twr
