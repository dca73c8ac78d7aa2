#ifndef TWISTRACK_FIELD_HPP
#define TWISTRACK_FIELD_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "twistrack/errors.hpp"

namespace twr {

using i64 = std::int64_t;
using u64 = std::uint64_t;
using i128 = __int128;

// Elements of GF(p^m) are handled as indices in [0, q): the index encodes the
// reduced polynomial coefficients little-endian in base p, so index arithmetic
// and coefficient-vector arithmetic are two views of the same value. Index 0
// is zero, index 1 is one.
using Fe = i64;

i64 ipow_checked(i64 base, int exp);
bool is_prime_i64(i64 n);
std::vector<i64> factor_i64(i64 n, i64 cap);  // prime factors, ascending, with multiplicity
i64 gcd_i64(i64 a, i64 b);
i64 lcm_checked(i64 a, i64 b);
i64 mod_inverse(i64 a, i64 m);

// GF(p^m) for odd p, with a monic irreducible modulus over GF(p).
// Immutable after construction; shareable across threads.
class Field {
 public:
  // Deterministic modulus when none is given: the scan over monic degree-m
  // polynomials X^m + a, a = 0,1,2,... (a encoding the lower coefficients
  // little-endian in base p) stops at the first irreducible one.
  static std::shared_ptr<const Field> make(i64 p, int m,
                                           std::optional<std::vector<i64>> modulus = std::nullopt);

  i64 p() const { return p_; }
  int m() const { return m_; }
  i64 q() const { return q_; }
  const std::vector<i64>& modulus() const { return modulus_; }
  std::string modulus_string() const;  // e.g. "X^2+2X+2 over GF(3)"

  bool is_prime_field() const { return m_ == 1; }

  Fe zero() const { return 0; }
  Fe one() const { return 1; }
  Fe from_int(i64 c) const;             // embeds c mod p (prime-subfield constant)
  std::vector<i64> coeffs(Fe x) const;  // little-endian, length m
  Fe from_coeffs(const std::vector<i64>& c) const;

  Fe add(Fe a, Fe b) const;
  Fe sub(Fe a, Fe b) const;
  Fe neg(Fe a) const;
  Fe mul(Fe a, Fe b) const;
  Fe inv(Fe a) const;
  Fe pow(Fe a, i64 e) const;  // e may be negative for nonzero a

  // x^(q0^j) for a subfield order q0; Frobenius relative to GF(q0).
  Fe frobenius(Fe x, i64 q0, int j) const;

  i64 elem_order(Fe x) const;  // multiplicative order; ZeroElement on 0
  Fe generator() const;        // first index of order q-1

  // discrete log base generator(); x != 0
  i64 dlog(Fe x) const;

  std::string to_string(Fe x) const;               // "p^m:c0,c1,..."
  Fe parse(const std::string& s) const;            // accepts bare index or full form

  ~Field();

 private:
  Field() = default;
  void build(i64 p, int m, std::optional<std::vector<i64>> modulus);
  Fe mul_poly(Fe a, Fe b) const;

  i64 p_ = 0;
  int m_ = 0;
  i64 q_ = 0;
  std::vector<i64> modulus_;  // length m+1, monic
  // log/exp tables for q <= table limit; exp_ has 2(q-1) entries so that
  // exp_[la+lb] needs no reduction.
  std::vector<i64> log_, exp_;
  mutable i64 generator_ = -1;
  std::vector<i64> qm1_factors_;  // distinct prime factors of q-1
};

using FieldPtr = std::shared_ptr<const Field>;

// (b)_a = 1 + a + a^2 + ... + a^(b-1), exact; Overflow past 64-bit magnitude.
i64 q_bracket(i64 b, i64 a);

// Extension GF(q^k) of base = GF(p^m), built over the prime field with degree
// m*k, plus the explicit embedding of the base field.
class Tower {
 public:
  Tower(FieldPtr base, int k);

  const FieldPtr& base() const { return base_; }
  const FieldPtr& ext() const { return ext_; }
  int k() const { return k_; }

  Fe embed(Fe base_elem) const;
  bool in_base_image(Fe ext_elem) const;
  Fe retract(Fe ext_elem) const;  // inverse of embed; InternalInconsistency if not in image

  // x^(q^j) where q = base order.
  Fe frobenius(Fe x, int j) const { return ext_->frobenius(x, base_->q(), j); }
  // Norm map GF(q^k) -> GF(q), returned as a base-field element.
  Fe norm_to_base(Fe x) const;

 private:
  FieldPtr base_;
  FieldPtr ext_;
  int k_;
  Fe root_;                    // image of the base field's X-class
  std::vector<Fe> embed_tbl_;  // index by base element when base q small
};

}  // namespace twr

#endif
