#ifndef TWISTRACK_MAT_HPP
#define TWISTRACK_MAT_HPP

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "twistrack/field.hpp"

namespace twr {

constexpr int kMaxDim = 8;

// Square matrix over a finite field, value type. The Field is borrowed; the
// owning FieldPtr must outlive every matrix built over it.
struct Mat {
  const Field* F = nullptr;
  int n = 0;
  std::array<Fe, kMaxDim * kMaxDim> e{};

  Fe& at(int i, int j) { return e[static_cast<size_t>(i) * n + j]; }
  Fe at(int i, int j) const { return e[static_cast<size_t>(i) * n + j]; }

  static Mat zero(const Field* f, int n);
  static Mat identity(const Field* f, int n);
  static Mat scalar(const Field* f, int n, Fe c);
  static Mat diag(const Field* f, const std::vector<Fe>& d);

  bool operator==(const Mat& o) const { return n == o.n && e == o.e; }
  bool operator<(const Mat& o) const { return e < o.e; }
};

Mat mul(const Mat& a, const Mat& b);
Mat transpose(const Mat& a);
Mat scalar_mul(const Mat& a, Fe c);
Fe det(const Mat& a);
Mat inverse(const Mat& a);            // Singular if not invertible
Mat mat_pow(const Mat& a, i64 k);     // k >= 0
bool is_scalar(const Mat& a, Fe* c = nullptr);
bool is_identity(const Mat& a);

// Canonical projective representative: the scalar multiple whose first
// nonzero row-major entry is 1. Idempotent; Singular on the zero matrix.
Mat proj_canon(const Mat& x);

// Least k >= 1 with x^k scalar, capped by the ambient exponent bound.
i64 proj_order(const Mat& x);
// Exponent bound used as the proj_order cap: lcm(q^k - 1, k <= n) * p^ceil.
i64 pgl_exponent_bound(const Field* f, int n);

// det(rep) in (F_q^x)^n, i.e. some scalar multiple lands in SL.
bool psl_membership(const Mat& proj_rep);

// 128-bit packed key, base-q digits row-major. Total order = numeric.
struct Key128 {
  u64 lo = 0, hi = 0;
  friend bool operator==(const Key128& a, const Key128& b) { return a.lo == b.lo && a.hi == b.hi; }
  friend bool operator<(const Key128& a, const Key128& b) {
    return a.hi != b.hi ? a.hi < b.hi : a.lo < b.lo;
  }
  friend bool operator!=(const Key128& a, const Key128& b) { return !(a == b); }
};

struct Key128Hash {
  size_t operator()(const Key128& k) const {
    u64 x = k.lo ^ (k.hi * 0x9e3779b97f4a7c15ULL);
    x ^= x >> 33;
    x *= 0xff51afd7ed558ccdULL;
    x ^= x >> 33;
    return static_cast<size_t>(x);
  }
};

// Whether n x n matrices over GF(q) pack into 128 bits.
bool key_fits(i64 q, int n);
Key128 pack_mat(const Mat& a);
Mat unpack_mat(const Field* f, int n, Key128 k);

std::string mat_to_string(const Mat& a, bool full_elems = false);
Mat mat_parse(const Field* f, int n, const std::string& s);

}  // namespace twr

#endif
