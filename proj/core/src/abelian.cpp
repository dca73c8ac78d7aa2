#include "twistrack/abelian.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace twr {

namespace {

// Solve y * B = t for upper-triangular full-rank B; divisions must be exact.
std::vector<i64> solve_upper(const IMat& b, const std::vector<i64>& t) {
  const int k = b.cols;
  std::vector<i64> y(k, 0);
  for (int j = 0; j < k; ++j) {
    i128 acc = t[j];
    for (int i = 0; i < j; ++i) acc -= (i128)y[i] * b.at(i, j);
    require(b.at(j, j) != 0, Errc::InternalInconsistency, "lattice basis not full rank");
    require(acc % b.at(j, j) == 0, Errc::InternalInconsistency, "non-integral lattice solve");
    i128 yj = acc / b.at(j, j);
    require(yj <= INT64_MAX && yj >= INT64_MIN, Errc::Overflow, "lattice solve overflow");
    y[j] = (i64)yj;
  }
  return y;
}

}  // namespace

FinAb FinAb::product(std::vector<i64> moduli) {
  return subgroup(std::move(moduli), IMat::identity(0));
}

FinAb FinAb::subgroup(std::vector<i64> moduli, const IMat& gens) {
  FinAb g;
  g.moduli_ = std::move(moduli);
  const int k = g.ambient_rank();
  g.n_gens_ = gens.rows;
  if (k == 0) return g;
  if (g.n_gens_ == 0) {
    // ambient product itself: generators are the unit vectors
    IMat id = IMat::identity(k);
    return subgroup(g.moduli_, id);
  }
  require(gens.cols == k, Errc::InternalInconsistency, "generator arity mismatch");

  IMat stacked(gens.rows + k, k);
  for (int i = 0; i < gens.rows; ++i)
    for (int j = 0; j < k; ++j) stacked.at(i, j) = gens.at(i, j);
  for (int i = 0; i < k; ++i) stacked.at(gens.rows + i, i) = g.moduli_[i];

  g.basis_ = row_lattice_basis(stacked, &g.basis_combo_);
  require(g.basis_.rows == k, Errc::InternalInconsistency, "subgroup lattice not full rank");

  // order = det(diag(moduli)) / det(basis)
  i128 num = 1, den = 1;
  for (int i = 0; i < k; ++i) {
    num *= g.moduli_[i];
    den *= g.basis_.at(i, i);
    require(num <= (i128)INT64_MAX * INT64_MAX, Errc::Overflow, "group order overflow");
  }
  require(den != 0 && num % den == 0, Errc::InternalInconsistency, "index computation failed");
  i128 ord = num / den;
  require(ord <= INT64_MAX, Errc::Overflow, "group order exceeds 64-bit range");
  g.order_ = (i64)ord;

  // relations of Z^k (basis coords): rows m_i e_i expressed in the basis
  IMat c(k, k);
  for (int i = 0; i < k; ++i) {
    std::vector<i64> t(k, 0);
    t[i] = g.moduli_[i];
    auto y = solve_upper(g.basis_, t);
    for (int j = 0; j < k; ++j) c.at(i, j) = y[j];
  }
  IMat d = c, v, vinv;
  smith_normal_form(d, nullptr, &v, &vinv);
  g.q_vinv_ = vinv;
  i128 check = 1;
  for (int i = 0; i < k; ++i) {
    i64 di = d.at(i, i);
    require(di > 0, Errc::InternalInconsistency, "torsion group with zero invariant");
    check *= di;
    if (di > 1) g.inv_.push_back(di);
  }
  require(check == ord, Errc::InternalInconsistency, "invariant factors disagree with index");
  g.exponent_ = g.inv_.empty() ? 1 : g.inv_.back();

  // cyclic generators and the exponent witness, with provenance
  for (int i = 0; i < k; ++i) {
    if (d.at(i, i) <= 1) continue;
    std::vector<i64> e(k, 0);
    e[i] = 1;
    auto x = imat_apply_row(e, vinv);            // basis coordinates
    auto amb = imat_apply_row(x, g.basis_);      // ambient vector
    auto full = imat_apply_row(x, g.basis_combo_);
    std::vector<i64> combo(full.begin(), full.begin() + g.n_gens_);
    g.cyc_gens_.push_back(g.reduce(amb));
    g.cyc_combos_.push_back(combo);
    require(g.element_order(amb) == d.at(i, i), Errc::InternalInconsistency,
            "cyclic generator order mismatch");
  }
  if (!g.cyc_gens_.empty()) g.combo_ = g.cyc_combos_.back();
  else g.combo_.assign(g.n_gens_, 0);
  return g;
}

i64 FinAb::element_order(const std::vector<i64>& v) const {
  i64 ord = 1;
  for (int i = 0; i < ambient_rank(); ++i) {
    i64 m = moduli_[i];
    i64 r = ((v[i] % m) + m) % m;
    ord = lcm_checked(ord, m / gcd_i64(m, r == 0 ? m : r));
  }
  return ord;
}

std::vector<i64> FinAb::max_order_element() const {
  if (cyc_gens_.empty()) return std::vector<i64>(ambient_rank(), 0);
  return cyc_gens_.back();
}

std::vector<std::vector<i64>> FinAb::cyclic_generators() const { return cyc_gens_; }

std::vector<i64> FinAb::reduce(std::vector<i64> v) const {
  for (int i = 0; i < ambient_rank(); ++i) {
    i64 m = moduli_[i];
    v[i] = ((v[i] % m) + m) % m;
  }
  return v;
}

std::string FinAb::describe() const {
  if (inv_.empty()) return "1";
  std::ostringstream os;
  for (size_t i = 0; i < inv_.size(); ++i) {
    if (i) os << " x ";
    os << "Z" << inv_[i];
  }
  return os.str();
}

std::vector<i64> AbHom::apply(const std::vector<i64>& v) const {
  auto w = imat_apply_row(v, map);
  for (size_t i = 0; i < cod_moduli.size(); ++i) {
    i64 m = cod_moduli[i];
    w[i] = ((w[i] % m) + m) % m;
  }
  return w;
}

FinAb AbHom::image(const FinAb& dom_subgroup) const {
  // Image generated by the images of the domain's cyclic generators.
  auto gens = dom_subgroup.cyclic_generators();
  IMat rows(static_cast<int>(gens.size()), static_cast<int>(cod_moduli.size()));
  for (size_t i = 0; i < gens.size(); ++i) {
    auto w = apply(gens[i]);
    for (size_t j = 0; j < w.size(); ++j) rows.at(static_cast<int>(i), static_cast<int>(j)) = w[j];
  }
  return FinAb::subgroup(cod_moduli, rows);
}

FinAb congruence_subgroup(std::vector<i64> moduli, const IMat& eqs,
                          const std::vector<i64>& rhs_moduli) {
  const int k = static_cast<int>(moduli.size());
  const int r = static_cast<int>(rhs_moduli.size());
  require(eqs.rows == k && eqs.cols == r, Errc::InternalInconsistency, "congruence shape mismatch");
  IMat e(k + r, r);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < r; ++j) e.at(i, j) = eqs.at(i, j);
  for (int j = 0; j < r; ++j) e.at(k + j, j) = rhs_moduli[j];
  IMat ker = integer_kernel(e);
  IMat gens(ker.rows, k);
  for (int i = 0; i < ker.rows; ++i)
    for (int j = 0; j < k; ++j) gens.at(i, j) = ker.at(i, j);
  return FinAb::subgroup(std::move(moduli), gens);
}

}  // namespace twr
