#include "twistrack/rack.hpp"

namespace twr {

MatTwistModel make_mat_model(const MatGroup& g, Automorphism psi) {
  require(psi.projective == g.projective, Errc::PreconditionViolated,
          "automorphism level must match the group level");
  int ell = psi.order_on(g.gens);
  return MatTwistModel{&g, std::move(psi), ell};
}

FinAb abelian_twisted_orbit(const std::vector<i64>& moduli, const IMat& psi_matrix) {
  const int k = static_cast<int>(moduli.size());
  require(psi_matrix.rows == k && psi_matrix.cols == k, Errc::PreconditionViolated,
          "psi matrix shape mismatch");
  IMat gamma(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) gamma.at(i, j) = (i == j ? 1 : 0) - psi_matrix.at(i, j);
  AbHom h{moduli, moduli, gamma};
  return h.image(FinAb::product(moduli));
}

}  // namespace twr
