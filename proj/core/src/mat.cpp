#include "twistrack/mat.hpp"

#include <sstream>

namespace twr {

Mat Mat::zero(const Field* f, int n) {
  require(n >= 1 && n <= kMaxDim, Errc::PreconditionViolated, "dimension out of range");
  Mat m;
  m.F = f;
  m.n = n;
  return m;
}

Mat Mat::identity(const Field* f, int n) {
  Mat m = zero(f, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = f->one();
  return m;
}

Mat Mat::scalar(const Field* f, int n, Fe c) {
  Mat m = zero(f, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = c;
  return m;
}

Mat Mat::diag(const Field* f, const std::vector<Fe>& d) {
  Mat m = zero(f, static_cast<int>(d.size()));
  for (size_t i = 0; i < d.size(); ++i) m.e[i * d.size() + i] = d[i];
  return m;
}

Mat mul(const Mat& a, const Mat& b) {
  const Field* f = a.F;
  const int n = a.n;
  Mat r = Mat::zero(f, n);
  if (f->is_prime_field()) {
    const i64 p = f->p();
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        i64 acc = 0;
        for (int k = 0; k < n; ++k) acc += a.e[i * n + k] * b.e[k * n + j];
        r.e[i * n + j] = acc % p;
      }
  } else {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        Fe acc = 0;
        for (int k = 0; k < n; ++k) acc = f->add(acc, f->mul(a.e[i * n + k], b.e[k * n + j]));
        r.e[i * n + j] = acc;
      }
  }
  return r;
}

Mat transpose(const Mat& a) {
  Mat r = Mat::zero(a.F, a.n);
  for (int i = 0; i < a.n; ++i)
    for (int j = 0; j < a.n; ++j) r.at(j, i) = a.at(i, j);
  return r;
}

Mat scalar_mul(const Mat& a, Fe c) {
  Mat r = a;
  for (int i = 0; i < a.n * a.n; ++i) r.e[i] = a.F->mul(r.e[i], c);
  return r;
}

Fe det(const Mat& a) {
  const Field* f = a.F;
  Mat m = a;
  const int n = a.n;
  Fe d = f->one();
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int i = col; i < n; ++i)
      if (m.at(i, col) != 0) {
        piv = i;
        break;
      }
    if (piv < 0) return f->zero();
    if (piv != col) {
      for (int j = 0; j < n; ++j) std::swap(m.at(piv, j), m.at(col, j));
      d = f->neg(d);
    }
    d = f->mul(d, m.at(col, col));
    Fe ip = f->inv(m.at(col, col));
    for (int i = col + 1; i < n; ++i) {
      Fe c = f->mul(m.at(i, col), ip);
      if (c == 0) continue;
      for (int j = col; j < n; ++j) m.at(i, j) = f->sub(m.at(i, j), f->mul(c, m.at(col, j)));
    }
  }
  return d;
}

Mat inverse(const Mat& a) {
  const Field* f = a.F;
  const int n = a.n;
  Mat m = a, inv = Mat::identity(f, n);
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int i = col; i < n; ++i)
      if (m.at(i, col) != 0) {
        piv = i;
        break;
      }
    require(piv >= 0, Errc::Singular, "matrix is singular");
    if (piv != col)
      for (int j = 0; j < n; ++j) {
        std::swap(m.at(piv, j), m.at(col, j));
        std::swap(inv.at(piv, j), inv.at(col, j));
      }
    Fe ip = f->inv(m.at(col, col));
    for (int j = 0; j < n; ++j) {
      m.at(col, j) = f->mul(m.at(col, j), ip);
      inv.at(col, j) = f->mul(inv.at(col, j), ip);
    }
    for (int i = 0; i < n; ++i) {
      if (i == col || m.at(i, col) == 0) continue;
      Fe c = m.at(i, col);
      for (int j = 0; j < n; ++j) {
        m.at(i, j) = f->sub(m.at(i, j), f->mul(c, m.at(col, j)));
        inv.at(i, j) = f->sub(inv.at(i, j), f->mul(c, inv.at(col, j)));
      }
    }
  }
  return inv;
}

Mat mat_pow(const Mat& a, i64 k) {
  require(k >= 0, Errc::PreconditionViolated, "mat_pow needs k >= 0");
  Mat r = Mat::identity(a.F, a.n), b = a;
  while (k > 0) {
    if (k & 1) r = mul(r, b);
    b = mul(b, b);
    k >>= 1;
  }
  return r;
}

bool is_scalar(const Mat& a, Fe* c) {
  Fe d = a.at(0, 0);
  if (d == 0) return false;
  for (int i = 0; i < a.n; ++i)
    for (int j = 0; j < a.n; ++j) {
      if (i == j && a.at(i, j) != d) return false;
      if (i != j && a.at(i, j) != 0) return false;
    }
  if (c) *c = d;
  return true;
}

bool is_identity(const Mat& a) {
  Fe c;
  return is_scalar(a, &c) && c == a.F->one();
}

Mat proj_canon(const Mat& x) {
  for (int i = 0; i < x.n * x.n; ++i) {
    if (x.e[i] == 0) continue;
    if (x.e[i] == x.F->one()) return x;
    return scalar_mul(x, x.F->inv(x.e[i]));
  }
  fail(Errc::Singular, "projective representative of the zero matrix");
}

i64 pgl_exponent_bound(const Field* f, int n) {
  i64 b = 1;
  for (int k = 1; k <= n; ++k) b = lcm_checked(b, ipow_checked(f->q(), k) - 1);
  i64 pe = 1;
  while (pe < n) pe *= f->p();
  return lcm_checked(b, pe);
}

i64 proj_order(const Mat& x) {
  const i64 cap = pgl_exponent_bound(x.F, x.n);
  Mat y = x;
  for (i64 k = 1; k <= cap; ++k) {
    if (is_scalar(y)) return k;
    y = mul(y, x);
  }
  fail(Errc::InternalInconsistency, "projective order exceeds the exponent bound");
}

bool psl_membership(const Mat& x) {
  Fe d = det(x);
  require(d != 0, Errc::Singular, "membership of a singular matrix");
  const Field* f = x.F;
  i64 g = gcd_i64(x.n, f->q() - 1);
  return f->dlog(d) % g == 0;
}

bool key_fits(i64 q, int n) {
  i128 v = 1;
  for (int i = 0; i < n * n; ++i) {
    v *= q;
    if (v > (((i128)1) << 126)) return false;
  }
  return true;
}

Key128 pack_mat(const Mat& a) {
  const i64 q = a.F->q();
  unsigned __int128 v = 0;
  for (int i = a.n * a.n - 1; i >= 0; --i) v = v * (unsigned __int128)q + (unsigned __int128)a.e[i];
  Key128 k;
  k.lo = static_cast<u64>(v);
  k.hi = static_cast<u64>(v >> 64);
  return k;
}

Mat unpack_mat(const Field* f, int n, Key128 k) {
  unsigned __int128 v = ((unsigned __int128)k.hi << 64) | k.lo;
  const i64 q = f->q();
  Mat m = Mat::zero(f, n);
  for (int i = 0; i < n * n; ++i) {
    m.e[i] = static_cast<Fe>(v % (unsigned __int128)q);
    v /= (unsigned __int128)q;
  }
  return m;
}

std::string mat_to_string(const Mat& a, bool full_elems) {
  std::ostringstream os;
  for (int i = 0; i < a.n; ++i) {
    if (i) os << ";";
    for (int j = 0; j < a.n; ++j) {
      if (j) os << ",";
      if (full_elems)
        os << a.F->to_string(a.at(i, j));
      else
        os << a.at(i, j);
    }
  }
  return os.str();
}

Mat mat_parse(const Field* f, int n, const std::string& s) {
  Mat m = Mat::zero(f, n);
  std::istringstream rows(s);
  std::string row;
  int i = 0;
  while (std::getline(rows, row, ';')) {
    require(i < n, Errc::PreconditionViolated, "too many matrix rows");
    // entries use the ffield serialization "p^m:c0,c1,..."; with extension
    // entries the ';'-split already isolated rows, so split entries on the
    // separators between serialized elements by counting
    std::vector<std::string> toks;
    std::string cur;
    int depth = 0;
    for (char c : row) {
      if (c == ',' && depth == 0 && f->m() == 1) {
        toks.push_back(cur);
        cur.clear();
      } else {
        cur.push_back(c);
      }
    }
    if (f->m() == 1) {
      toks.push_back(cur);
    } else {
      // entries are "p^m:c0,..,c{m-1}" — fixed coefficient count
      std::vector<std::string> parts;
      std::istringstream is(row);
      std::string t;
      while (std::getline(is, t, ',')) parts.push_back(t);
      require(parts.size() % f->m() == 0, Errc::PreconditionViolated, "bad entry count");
      toks.clear();
      for (size_t a0 = 0; a0 < parts.size(); a0 += f->m()) {
        std::string e = parts[a0];
        for (int k = 1; k < f->m(); ++k) e += "," + parts[a0 + k];
        toks.push_back(e);
      }
    }
    require(static_cast<int>(toks.size()) == n, Errc::PreconditionViolated, "bad matrix row width");
    for (int j = 0; j < n; ++j) m.at(i, j) = f->parse(toks[j]);
    ++i;
  }
  require(i == n, Errc::PreconditionViolated, "bad matrix row count");
  return m;
}

}  // namespace twr
