#ifndef TWISTRACK_AUTOS_HPP
#define TWISTRACK_AUTOS_HPP

#include <optional>
#include <string>
#include <vector>

#include "twistrack/mat.hpp"

namespace twr {

// The anti-diagonal sign matrix with (i, n+1-i) entry (-1)^(i-1).
Mat j_matrix(const Field* f, int n);

// x -> J (x^-1)^T J^-1.
Mat theta_apply(const Mat& x);
Mat theta_apply_proj(const Mat& x);  // canonicalized

// psi = Ad(t) o theta^a o Fr_p^b acting on a fixed matrix group level.
// Application is structural: entrywise p-power, then the J-formula, then
// conjugation; canonicalization when the level is projective.
struct Automorphism {
  const Field* F = nullptr;
  int n = 0;
  bool projective = false;
  std::optional<Mat> inner;  // canonical rep when projective
  int graph_power = 0;       // 0 or 1
  int frob_power = 0;        // Fr_p^b

  static Automorphism identity(const Field* f, int n, bool projective);
  static Automorphism theta(const Field* f, int n, bool projective);

  bool is_structural_identity() const { return !inner && graph_power == 0 && frob_power == 0; }
  Mat apply(const Mat& x) const;
  Automorphism composed_with(const Automorphism& rhs) const;  // this ∘ rhs

  // Least k >= 1 fixing every generator, certified; cap guards wrong setups.
  int order_on(const std::vector<Mat>& gens, int cap = 4096) const;

  std::string descriptor() const;  // "ad:<mat>*theta*frob^b" fragments
};

// Descriptor grammar: components `theta`, `frob^b`, `ad:<matrix>` joined by
// `*`, applied right-to-left.
Automorphism parse_automorphism(const Field* f, int n, bool projective, const std::string& s);

Mat twisted_act(const Mat& g, const Mat& x, const Automorphism& psi);
Mat norm_psi(const Mat& x, const Automorphism& psi, int ell);
// y ▷ z = y psi(z y^-1)
Mat rack_op(const Mat& y, const Mat& z, const Automorphism& psi);

// Elements (h, k) of H ⋊ <psi> with product (h1,k1)(h2,k2) = (h1 psi^k1(h2), k1+k2 mod ell).
struct SdElem {
  Mat h;
  int k = 0;
  bool operator==(const SdElem& o) const { return k == o.k && h == o.h; }
};

struct Semidirect {
  Automorphism psi;
  int ell = 1;  // |psi|, certified by the caller

  SdElem id() const { return {Mat::identity(psi.F, psi.n), 0}; }
  SdElem make(const Mat& h, int k) const;
  SdElem mul(const SdElem& a, const SdElem& b) const;
  SdElem inv(const SdElem& a) const;
  i64 order(const SdElem& a, i64 cap) const;
};

// For x in H and (|psi|, p) = 1: the unique u (p-element) and s
// ((psi,p)-regular) with x = u s = s psi(u), computed inside H ⋊ <psi>.
struct PsiPDecomposition {
  Mat u, s;
  i64 full_order;  // |x psi|
};
PsiPDecomposition psi_p_decompose(const Mat& x, const Automorphism& psi, int ell);

// x in PGL_n(q) is theta-semisimple iff |x theta| is coprime to p.
bool is_theta_semisimple(const Mat& proj_x);

}  // namespace twr

#endif
