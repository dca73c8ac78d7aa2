#ifndef TWISTRACK_ABELIAN_HPP
#define TWISTRACK_ABELIAN_HPP

#include <string>
#include <vector>

#include "twistrack/intmat.hpp"

namespace twr {

// A finitely generated (finite) abelian group presented inside a fixed
// ambient product of cyclic groups: G = (span(gens) + L0) / L0 where
// L0 = diag(moduli). Elements are ambient exponent vectors taken mod moduli.
// Everything is reduced to invariant factors through Smith normal form.
class FinAb {
 public:
  // Full ambient product.
  static FinAb product(std::vector<i64> moduli);
  // Subgroup generated by the given ambient vectors.
  static FinAb subgroup(std::vector<i64> moduli, const IMat& gens);

  const std::vector<i64>& moduli() const { return moduli_; }
  int ambient_rank() const { return static_cast<int>(moduli_.size()); }

  i64 order() const { return order_; }
  i64 exponent() const { return exponent_; }
  // Invariant factors > 1 in divisibility order d1 | d2 | ...
  const std::vector<i64>& invariant_factors() const { return inv_; }

  // Order of an ambient element (no membership requirement; L0 is diagonal).
  i64 element_order(const std::vector<i64>& v) const;
  // An element of the subgroup realizing exponent(), reduced mod moduli.
  std::vector<i64> max_order_element() const;
  // Generators g_i (ambient vectors) with G = ⊕ <g_i>, |g_i| = inv_[i].
  std::vector<std::vector<i64>> cyclic_generators() const;
  // Expresses basis rows as combos of the original gens rows (provenance for
  // pulling image witnesses back through a homomorphism).
  std::vector<i64> max_order_combo() const { return combo_; }

  std::vector<i64> reduce(std::vector<i64> v) const;
  std::string describe() const;  // e.g. "Z2 x Z40"

 private:
  std::vector<i64> moduli_;
  IMat basis_;           // echelon basis of span(gens)+L0, square full rank
  IMat basis_combo_;     // basis = basis_combo_ * [gens; diag(moduli)]
  int n_gens_ = 0;       // number of original generator rows
  std::vector<i64> inv_;
  i64 order_ = 1;
  i64 exponent_ = 1;
  IMat q_vinv_;          // from SNF of the relation matrix C
  std::vector<i64> combo_;  // max-order element as combo of original gens
  std::vector<std::vector<i64>> cyc_gens_;
  std::vector<std::vector<i64>> cyc_combos_;
};

// Homomorphism between ambient products given by a matrix (row vector * map).
struct AbHom {
  std::vector<i64> dom_moduli, cod_moduli;
  IMat map;  // dom_rank x cod_rank

  std::vector<i64> apply(const std::vector<i64>& v) const;
  // Image of a subgroup, with witness pullback support.
  FinAb image(const FinAb& dom_subgroup) const;
};

// Kernel-style solver: the set {x : x * eqs = 0 in ⊕ Z_{rhs_moduli}} as a
// subgroup of the ambient product `moduli`.
FinAb congruence_subgroup(std::vector<i64> moduli, const IMat& eqs,
                          const std::vector<i64>& rhs_moduli);

}  // namespace twr

#endif
