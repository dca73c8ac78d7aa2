#ifndef TWISTRACK_TORUS_HPP
#define TWISTRACK_TORUS_HPP

#include <optional>
#include <vector>

#include "twistrack/abelian.hpp"
#include "twistrack/mat.hpp"
#include "twistrack/weyl.hpp"

namespace twr {

// The fixed group T^{F_w} of the w-twisted maximal torus at SL level,
// presented on the ambient product of the F(j): one coordinate per
// eps_j = 0 pair side, one per eps_j = 1 block. Exponents refer to fixed
// generators of each factor; zhat functionals are in those coordinates.
struct TorusGroup {
  int n = 0;
  i64 q = 0;
  PartitionSignature sig;
  std::vector<i64> ambient;          // factor orders
  std::vector<int> coord_block;      // ambient coordinate -> block index
  FinAb group;                       // the subgroup 𝕋^{F_w}

  i64 order() const { return group.order(); }
};

TorusGroup torus_group(int n, i64 q, const PartitionSignature& sig);

// K_w: elements whose zhat_j all equal one common n-th root of unity in F_q.
FinAb k_subgroup(int n, i64 q, const PartitionSignature& sig);

// Image of gamma = (zhat_1^d, zhat_1 zhat_2^-1, ..., zhat_{r-1} zhat_r^-1).
struct GammaImage {
  std::vector<i64> cod_moduli;
  FinAb image;
  // preimage in 𝕋 (ambient exponents) of an element realizing the exponent
  std::vector<i64> max_order_preimage;
};
GammaImage gamma_image(int n, i64 q, const PartitionSignature& sig);

struct TorusCriterion {
  std::optional<i64> witness_order;
  std::vector<i64> gamma_element;   // codomain exponents
  std::vector<i64> torus_element;   // ambient preimage
};

// An element of Im gamma of even order > 4, if any.
TorusCriterion zeta_criterion(int n, i64 q, const PartitionSignature& sig);
// An element with z^4 != 1 (order not dividing 4), if any.
TorusCriterion two_orbits_criterion(int n, i64 q, const PartitionSignature& sig);

// Brute-force counts over honest field tuples (independent oracle for the
// lattice route). Throws ScaleTooLarge past the cap.
i64 torus_order_bruteforce(int n, i64 q, const PartitionSignature& sig, u64 cap = 20'000'000);
i64 k_order_bruteforce(int n, i64 q, const PartitionSignature& sig, u64 cap = 20'000'000);

// Rational realization of the torus inside GL_n(q): each eps=0 block embeds
// GF(q^l)^x twice (multiplication matrices and their J-mirror), each eps=1
// block embeds GF(q^{2l})^x in a basis that makes the subgroup theta-stable
// with theta acting as z -> z^{-q^l}. Certified at construction.
class RealizedTorus {
 public:
  RealizedTorus(FieldPtr base, int n, PartitionSignature sig);

  const std::vector<i64>& ambient() const { return ambient_; }
  bool has_middle() const { return has_middle_; }

  // GL-level element from ambient exponents (+ middle exponent when n odd).
  Mat realize_gl(const std::vector<i64>& e, i64 mid_exp = 0) const;
  // SL-level element: for n odd the middle coordinate is solved from the
  // determinant relation; for n even e must satisfy the det-1 condition.
  Mat realize_sl(const std::vector<i64>& e) const;

  // 𝕋^{F_w} as the honest det = 1 exponent lattice.
  const FinAb& sl_lattice() const { return sl_; }
  // Realized generator matrices of 𝕋^{F_w}.
  std::vector<Mat> sl_generator_mats() const;
  // Every GL-level torus point, projectivized and canonicalized.
  std::vector<Key128> pgl_points(u64 cap) const;
  // Every SL-level (det 1) torus matrix.
  std::vector<Mat> sl_points(u64 cap) const;

  const FieldPtr& field() const { return base_; }

 private:
  FieldPtr base_;
  int n_;
  PartitionSignature sig_;
  std::vector<i64> ambient_;
  std::vector<Mat> coord_gens_;
  std::vector<i64> det_dlogs_;
  bool has_middle_ = false;
  Mat middle_gen_;
  FinAb sl_;
  void certify();
};

// Order + exponent certification of realized vs. abstract presentation, with
// matrix-closure verification up to `cap` elements.
struct TorusRealizationCheck {
  i64 abstract_order, realized_order;
  i64 abstract_exponent, realized_exponent;
  bool consistent;
};
TorusRealizationCheck certify_realization(const RealizedTorus& rt, const TorusGroup& tg, u64 cap);

}  // namespace twr

#endif
