#include "twistrack/torus.hpp"

#include <algorithm>
#include <functional>

#include "twistrack/autos.hpp"

namespace twr {

namespace {

struct AmbientLayout {
  std::vector<i64> moduli;
  std::vector<int> coord_block;
  // per block: first ambient coordinate, coordinate count (1 or 2)
  std::vector<int> block_first;
  std::vector<int> block_ncoords;
};

AmbientLayout layout(int /*n*/, i64 q, const PartitionSignature& sig) {
  AmbientLayout a;
  for (int j = 0; j < sig.r(); ++j) {
    a.block_first.push_back(static_cast<int>(a.moduli.size()));
    i64 m = ipow_checked(q, sig.lambda[j]) - 1;
    if (sig.eps[j] == 0) {
      a.moduli.push_back(m);
      a.moduli.push_back(m);
      a.coord_block.push_back(j);
      a.coord_block.push_back(j);
      a.block_ncoords.push_back(2);
    } else {
      a.moduli.push_back(ipow_checked(q, 2 * sig.lambda[j]) - 1);
      a.coord_block.push_back(j);
      a.block_ncoords.push_back(1);
    }
  }
  return a;
}

}  // namespace

TorusGroup torus_group(int n, i64 q, const PartitionSignature& sig) {
  sig.validate();
  require(sig.n == n, Errc::InvalidSignature, "signature n mismatch");
  AmbientLayout a = layout(n, q, sig);
  TorusGroup t;
  t.n = n;
  t.q = q;
  t.sig = sig;
  t.ambient = a.moduli;
  t.coord_block = a.coord_block;
  if (n % 2 == 1) {
    t.group = FinAb::product(a.moduli);
  } else {
    // one norm relation: sum of zhat exponents = 0 in Z_{q-1}
    IMat eqs(static_cast<int>(a.moduli.size()), 1);
    for (int i = 0; i < eqs.rows; ++i) eqs.at(i, 0) = 1;
    t.group = congruence_subgroup(a.moduli, eqs, {q - 1});
  }
  return t;
}

FinAb k_subgroup(int n, i64 q, const PartitionSignature& sig) {
  sig.validate();
  AmbientLayout a = layout(n, q, sig);
  const int k = static_cast<int>(a.moduli.size());
  const int r = sig.r();
  // variables (e_1..e_k, t); conditions:
  //   zhat_j(e) = t * R_j   in Z_{q^{lambda_j}-1}
  //   n t = 0               in Z_{q-1}        (zeta in mu_n(F_q))
  //   sum zhat_j(e) = 0     in Z_{q-1}        (membership, n even)
  std::vector<i64> vars = a.moduli;
  vars.push_back(q - 1);
  const bool even = (n % 2 == 0);
  int ncond = r + 1 + (even ? 1 : 0);
  IMat eqs(k + 1, ncond);
  std::vector<i64> rhs;
  for (int j = 0; j < r; ++j) {
    i64 mj = ipow_checked(q, sig.lambda[j]) - 1;
    for (int c = 0; c < a.block_ncoords[j]; ++c) eqs.at(a.block_first[j] + c, j) = 1;
    eqs.at(k, j) = -((mj) / (q - 1));
    rhs.push_back(mj);
  }
  eqs.at(k, r) = n;
  rhs.push_back(q - 1);
  if (even) {
    for (int i = 0; i < k; ++i) eqs.at(i, r + 1) = 1;
    rhs.push_back(q - 1);
  }
  FinAb extended = congruence_subgroup(vars, eqs, rhs);
  // project out t
  IMat proj(k + 1, k);
  for (int i = 0; i < k; ++i) proj.at(i, i) = 1;
  AbHom h{vars, a.moduli, proj};
  return h.image(extended);
}

GammaImage gamma_image(int n, i64 q, const PartitionSignature& sig) {
  TorusGroup t = torus_group(n, q, sig);
  AmbientLayout a = layout(n, q, sig);
  const int k = static_cast<int>(a.moduli.size());
  const int r = sig.r();
  const i64 d = gcd_i64(n, q - 1);
  GammaImage gi;
  gi.cod_moduli.push_back(ipow_checked(q, sig.lambda[0]) - 1);
  for (int j = 0; j + 1 < r; ++j) {
    i64 l = lcm_checked(sig.lambda[j], sig.lambda[j + 1]);
    gi.cod_moduli.push_back(ipow_checked(q, l) - 1);
  }
  IMat map(k, r);
  // first component: zhat_1^d
  for (int c = 0; c < a.block_ncoords[0]; ++c) map.at(a.block_first[0] + c, 0) = d;
  for (int j = 0; j + 1 < r; ++j) {
    i64 l = lcm_checked(sig.lambda[j], sig.lambda[j + 1]);
    i64 big = ipow_checked(q, l) - 1;
    i64 ej = big / (ipow_checked(q, sig.lambda[j]) - 1);
    i64 ej1 = big / (ipow_checked(q, sig.lambda[j + 1]) - 1);
    for (int c = 0; c < a.block_ncoords[j]; ++c) map.at(a.block_first[j] + c, j + 1) = ej;
    for (int c = 0; c < a.block_ncoords[j + 1]; ++c) map.at(a.block_first[j + 1] + c, j + 1) = -ej1;
  }
  AbHom h{a.moduli, gi.cod_moduli, map};
  gi.image = h.image(t.group);
  // pull the exponent witness back through the domain's cyclic generators
  auto dom_gens = t.group.cyclic_generators();
  auto combo = gi.image.max_order_combo();
  std::vector<i64> pre(k, 0);
  for (size_t i = 0; i < combo.size() && i < dom_gens.size(); ++i)
    for (int c = 0; c < k; ++c) pre[c] += combo[i] * dom_gens[i][c];
  gi.max_order_preimage = t.group.reduce(pre);
  if (gi.image.exponent() > 1) {
    require(gi.image.element_order(h.apply(gi.max_order_preimage)) == gi.image.exponent(),
            Errc::InternalInconsistency, "gamma witness pullback failed");
  }
  return gi;
}

TorusCriterion zeta_criterion(int n, i64 q, const PartitionSignature& sig) {
  GammaImage gi = gamma_image(n, q, sig);
  TorusCriterion c;
  i64 e = gi.image.exponent();
  if (e % 2 == 0 && e > 4) {
    c.witness_order = e;
    c.gamma_element = gi.image.max_order_element();
    c.torus_element = gi.max_order_preimage;
  }
  return c;
}

TorusCriterion two_orbits_criterion(int n, i64 q, const PartitionSignature& sig) {
  GammaImage gi = gamma_image(n, q, sig);
  TorusCriterion c;
  i64 e = gi.image.exponent();
  if (4 % e != 0) {  // some order fails to divide 4 iff the exponent does
    c.witness_order = e;
    c.gamma_element = gi.image.max_order_element();
    c.torus_element = gi.max_order_preimage;
  }
  return c;
}

i64 torus_order_bruteforce(int n, i64 q, const PartitionSignature& sig, u64 cap) {
  sig.validate();
  // factor p^m out of q
  i64 p = factor_i64(q, 1000)[0];
  int m = 0;
  for (i64 t = q; t > 1; t /= p) ++m;
  FieldPtr base = Field::make(p, m);
  const int r = sig.r();
  std::vector<Tower> towers;
  std::vector<Fe> gens;
  u64 total = 1;
  for (int j = 0; j < r; ++j) {
    towers.emplace_back(base, sig.eps[j] == 0 ? sig.lambda[j] : 2 * sig.lambda[j]);
    gens.push_back(towers.back().ext()->generator());
    u64 fj = static_cast<u64>(towers.back().ext()->q() - 1);
    if (sig.eps[j] == 0) fj *= fj;
    require(total <= cap / std::max<u64>(fj, 1), Errc::ScaleTooLarge, "brute-force cap exceeded");
    total *= fj;
  }
  if (n % 2 == 1) return static_cast<i64>(total);  // free product, relation solves z

  // n even: count tuples with prod_j N(zhat_j) = 1 in F_q
  i64 count = 0;
  std::vector<i64> idx(r, 0);
  std::function<void(int, Fe)> rec = [&](int j, Fe acc) {
    if (j == r) {
      if (acc == base->one()) ++count;
      return;
    }
    const Tower& tw = towers[j];
    if (sig.eps[j] == 0) {
      i64 sub = tw.ext()->q() - 1;
      // N(x y) runs over the norm of every pair
      for (i64 ax = 0; ax < sub; ++ax)
        for (i64 ay = 0; ay < sub; ++ay) {
          Fe x = tw.ext()->pow(gens[j], ax);
          Fe y = tw.ext()->pow(gens[j], ay);
          Fe nrm = tw.norm_to_base(tw.ext()->mul(x, y));
          rec(j + 1, base->mul(acc, nrm));
        }
    } else {
      i64 sub = tw.ext()->q() - 1;
      for (i64 az = 0; az < sub; ++az) {
        Fe z = tw.ext()->pow(gens[j], az);
        rec(j + 1, base->mul(acc, tw.norm_to_base(z)));
      }
    }
  };
  rec(0, base->one());
  return count;
}

i64 k_order_bruteforce(int n, i64 q, const PartitionSignature& sig, u64 cap) {
  sig.validate();
  i64 p = factor_i64(q, 1000)[0];
  int m = 0;
  for (i64 t = q; t > 1; t /= p) ++m;
  FieldPtr base = Field::make(p, m);
  const int r = sig.r();
  std::vector<Tower> towers;
  u64 total = 1;
  for (int j = 0; j < r; ++j) {
    towers.emplace_back(base, sig.eps[j] == 0 ? sig.lambda[j] : 2 * sig.lambda[j]);
    u64 fj = static_cast<u64>(towers.back().ext()->q() - 1);
    if (sig.eps[j] == 0) fj *= fj;
    require(total <= cap / std::max<u64>(fj, 1), Errc::ScaleTooLarge, "brute-force cap exceeded");
    total *= fj;
  }
  // roots of unity mu_n(F_q)
  std::vector<Fe> mu;
  for (Fe z = 1; z < base->q(); ++z)
    if (base->pow(z, n) == base->one()) mu.push_back(z);

  const bool even = (n % 2 == 0);
  i64 count = 0;
  // iterate over zeta, then over tuples with zhat_j = zeta, checking the
  // membership relation for n even
  for (Fe zeta : mu) {
    std::function<void(int, Fe, i64)> rec = [&](int j, Fe acc, i64 ways) {
      if (j == r) {
        if (!even || acc == base->one()) count += ways;
        return;
      }
      const Tower& tw = towers[j];
      Fe zemb = tw.embed(zeta);
      if (sig.eps[j] == 0) {
        // zhat = x*y = zeta: q^lambda - 1 solutions (x free, y = zeta/x)
        i64 sols = tw.ext()->q() - 1;
        Fe nrm = tw.norm_to_base(zemb);
        rec(j + 1, base->mul(acc, nrm), ways * sols);
      } else {
        // zhat = z^{1+q^lambda} = zeta_embedded: count solutions z
        i64 e = 1 + ipow_checked(q, sig.lambda[j]);
        i64 big = tw.ext()->q() - 1;
        // z = g^c with c*e = dlog(zeta) mod big
        i64 target = tw.ext()->dlog(zemb);
        i64 g = gcd_i64(e, big);
        if (target % g != 0) {
          // no solutions down this branch
        } else {
          Fe nrm = tw.norm_to_base(zemb);  // = N(z)^... wait: N(z)^? recompute below
          // zhat = z^{1+q^l}; N_{E/F_q}(z) = z^{(2l)_q} = zhat^{(l)_q}
          i64 lam_q = q_bracket(sig.lambda[j], q);
          Fe nz = tw.retract(tw.ext()->pow(zemb, lam_q));
          (void)nrm;
          rec(j + 1, base->mul(acc, nz), ways * g);
        }
      }
    };
    rec(0, base->one(), 1);
  }
  return count;
}

// ---------------------------------------------------------------------------
// Rational realization

namespace {

// F_q-linear structure on an extension E = GF(q^k) with a chosen E-basis.
struct FqStruct {
  const Tower* tw;
  std::vector<Fe> basis;              // E-elements, k of them
  std::vector<std::vector<i64>> inv;  // (mk x mk) inverse over F_p
  int k, mdeg;
  i64 p;

  FqStruct(const Tower& t, std::vector<Fe> b) : tw(&t), basis(std::move(b)) {
    k = static_cast<int>(basis.size());
    p = t.base()->p();
    mdeg = t.base()->m();
    const int dim = k * mdeg;
    require(t.ext()->m() == dim, Errc::InternalInconsistency, "basis size mismatch");
    // columns: F_p digits of embed(base power c) * b_i
    std::vector<std::vector<i64>> a(dim, std::vector<i64>(dim, 0));
    for (int i = 0; i < k; ++i)
      for (int c = 0; c < mdeg; ++c) {
        Fe qc = ipow_checked(p, c);  // base-field power-basis element (index p^c)
        Fe col = t.ext()->mul(t.embed(qc), basis[i]);
        auto digits = t.ext()->coeffs(col);
        for (int d = 0; d < dim; ++d) a[d][i * mdeg + c] = digits[d];
      }
    // invert a mod p
    std::vector<std::vector<i64>> id(dim, std::vector<i64>(dim, 0));
    for (int d = 0; d < dim; ++d) id[d][d] = 1;
    for (int col = 0; col < dim; ++col) {
      int piv = -1;
      for (int row = col; row < dim; ++row)
        if (a[row][col] % p != 0) {
          piv = row;
          break;
        }
      require(piv >= 0, Errc::InternalInconsistency, "basis is not a basis");
      std::swap(a[piv], a[col]);
      std::swap(id[piv], id[col]);
      i64 ipv = mod_inverse(a[col][col], p);
      for (int j = 0; j < dim; ++j) {
        a[col][j] = a[col][j] * ipv % p;
        id[col][j] = id[col][j] * ipv % p;
      }
      for (int row = 0; row < dim; ++row) {
        if (row == col) continue;
        i64 c = a[row][col] % p;
        if (!c) continue;
        for (int j = 0; j < dim; ++j) {
          a[row][j] = ((a[row][j] - c * a[col][j]) % p + p) % p;
          id[row][j] = ((id[row][j] - c * id[col][j]) % p + p) % p;
        }
      }
    }
    inv = std::move(id);
  }

  // coordinates over F_q of an E element w.r.t. the basis
  std::vector<Fe> coords(Fe x) const {
    const int dim = k * mdeg;
    auto digits = tw->ext()->coeffs(x);
    std::vector<i64> y(dim, 0);
    for (int r = 0; r < dim; ++r) {
      i64 acc = 0;
      for (int c = 0; c < dim; ++c) acc += inv[r][c] * digits[c];
      y[r] = acc % p;
    }
    std::vector<Fe> out(k);
    for (int i = 0; i < k; ++i) {
      std::vector<i64> ccoef(mdeg);
      for (int c = 0; c < mdeg; ++c) ccoef[c] = y[i * mdeg + c];
      out[i] = tw->base()->from_coeffs(ccoef);
    }
    return out;
  }

  // multiplication-by-z matrix over F_q in this basis
  Mat mult_matrix(Fe z) const {
    Mat m = Mat::zero(tw->base().get(), k);
    for (int i = 0; i < k; ++i) {
      auto col = coords(tw->ext()->mul(z, basis[i]));
      for (int r = 0; r < k; ++r) m.at(r, i) = col[r];
    }
    return m;
  }
};

std::vector<Fe> power_basis(const Tower& t, int k) {
  std::vector<Fe> b(k);
  Fe u = t.ext()->m() == 1 ? t.ext()->one() : static_cast<Fe>(t.ext()->p());  // X-class
  Fe cur = t.ext()->one();
  for (int i = 0; i < k; ++i) {
    b[i] = cur;
    cur = t.ext()->mul(cur, u);
  }
  return b;
}

// Symplectic basis for an alternating nondegenerate Gram matrix over F_q:
// returns column vectors (v1, w1, v2, w2, ...) with Gram blocks [[0,1],[-1,0]].
std::vector<std::vector<Fe>> symplectic_basis(const Field* f, const Mat& gram) {
  const int n = gram.n;
  auto form = [&](const std::vector<Fe>& x, const std::vector<Fe>& y) {
    Fe acc = 0;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) acc = f->add(acc, f->mul(x[a], f->mul(gram.at(a, b), y[b])));
    return acc;
  };
  std::vector<std::vector<Fe>> rest;
  for (int i = 0; i < n; ++i) {
    std::vector<Fe> e(n, 0);
    e[i] = f->one();
    rest.push_back(e);
  }
  std::vector<std::vector<Fe>> out;
  while (!rest.empty()) {
    auto v = rest.front();
    rest.erase(rest.begin());
    bool zero = true;
    for (Fe c : v) zero = zero && (c == 0);
    if (zero) continue;
    int wi = -1;
    for (size_t i = 0; i < rest.size(); ++i)
      if (form(v, rest[i]) != 0) {
        wi = static_cast<int>(i);
        break;
      }
    require(wi >= 0, Errc::InternalInconsistency, "degenerate symplectic reduction");
    auto w = rest[wi];
    rest.erase(rest.begin() + wi);
    Fe c = form(v, w);
    Fe ci = f->inv(c);
    for (auto& x : w) x = f->mul(x, ci);
    for (auto& u : rest) {
      Fe a = form(u, w), b = form(u, v);
      // u' = u - a v + b w
      for (int t = 0; t < n; ++t)
        u[t] = f->add(f->sub(u[t], f->mul(a, v[t])), f->mul(b, w[t]));
    }
    out.push_back(v);
    out.push_back(w);
  }
  require(static_cast<int>(out.size()) == n, Errc::InternalInconsistency, "symplectic basis incomplete");
  return out;
}

Mat cols_to_mat(const Field* f, const std::vector<std::vector<Fe>>& cols) {
  Mat m = Mat::zero(f, static_cast<int>(cols.size()));
  for (size_t i = 0; i < cols.size(); ++i)
    for (size_t r = 0; r < cols.size(); ++r) m.at(static_cast<int>(r), static_cast<int>(i)) = cols[i][r];
  return m;
}

}  // namespace

RealizedTorus::RealizedTorus(FieldPtr base, int n, PartitionSignature sig)
    : base_(std::move(base)), n_(n), sig_(std::move(sig)) {
  sig_.validate();
  require(sig_.n == n_, Errc::InvalidSignature, "signature n mismatch");
  const Field* Q = base_.get();
  const i64 q = Q->q();
  AmbientLayout a = layout(n_, q, sig_);
  ambient_ = a.moduli;
  middle_gen_ = Mat::zero(Q, n_);
  has_middle_ = (n_ % 2 == 1);
  const int h = n_ / 2;

  int istart = 0;  // i_{j-1}, 0-based offset of the block
  for (int j = 0; j < sig_.r(); ++j) {
    const int lam = sig_.lambda[j];
    auto glob = [&](int local) {  // local 0-based within 2*lam
      return local < lam ? istart + local : n_ - istart - 2 * lam + local;
    };
    if (sig_.eps[j] == 0) {
      Tower tw(base_, lam);
      FqStruct st(tw, power_basis(tw, lam));
      Mat mg = st.mult_matrix(tw.ext()->generator());
      // x side
      Mat gx = Mat::identity(Q, n_);
      for (int r = 0; r < lam; ++r)
        for (int c = 0; c < lam; ++c) gx.at(glob(r), glob(c)) = mg.at(r, c);
      coord_gens_.push_back(gx);
      // y side: J_lam * M(g)^T * J_lam^-1 on the mirror coordinates
      Mat jl = j_matrix(Q, lam);
      Mat my = mul(mul(jl, transpose(mg)), inverse(jl));
      Mat gy = Mat::identity(Q, n_);
      for (int r = 0; r < lam; ++r)
        for (int c = 0; c < lam; ++c) gy.at(glob(lam + r), glob(lam + c)) = my.at(r, c);
      coord_gens_.push_back(gy);
    } else {
      const int k2 = 2 * lam;
      Tower tw(base_, k2);
      const Field* E = tw.ext().get();
      FqStruct pow_st(tw, power_basis(tw, k2));
      Fe xi = E->generator();
      i64 qlam = ipow_checked(q, lam);
      // c with c^{q^lam} = -c
      Fe cc = E->pow(xi, (qlam + 1) / 2);
      require(E->frobenius(cc, q, lam) == E->neg(cc), Errc::CertificationFailed,
              "trace-form twist constant failed");
      auto trace_form = [&](Fe u, Fe v) {
        Fe x = E->mul(cc, E->mul(u, E->frobenius(v, q, lam)));
        Fe acc = 0;
        Fe cur = x;
        for (int t = 0; t < k2; ++t) {
          acc = E->add(acc, cur);
          cur = E->pow(cur, q);
        }
        return tw.retract(acc);
      };
      Mat gram = Mat::zero(Q, k2);
      for (int r = 0; r < k2; ++r)
        for (int c = 0; c < k2; ++c) gram.at(r, c) = trace_form(pow_st.basis[r], pow_st.basis[c]);
      auto sa = symplectic_basis(Q, gram);
      // target -J_{2lam}: pairs (e_i, (-1)^i e_{2l+1-i}), 1-based i
      std::vector<std::vector<Fe>> st_cols;
      for (int i = 1; i <= lam; ++i) {
        std::vector<Fe> v(k2, 0), w(k2, 0);
        v[i - 1] = Q->one();
        w[k2 - i] = (i % 2 == 0) ? Q->one() : Q->neg(Q->one());
        st_cols.push_back(v);
        st_cols.push_back(w);
      }
      Mat sA = cols_to_mat(Q, sa), sT = cols_to_mat(Q, st_cols);
      Mat pmat = mul(sA, inverse(sT));
      // verify the congruence: P^T Gram P = -J
      Mat check = mul(mul(transpose(pmat), gram), pmat);
      Mat mj = scalar_mul(j_matrix(Q, k2), Q->neg(Q->one()));
      require(check == mj, Errc::CertificationFailed, "symplectic congruence failed");
      // basis vectors b_i = sum_r P[r][i] * u^r
      std::vector<Fe> bb(k2);
      for (int i = 0; i < k2; ++i) {
        Fe acc = 0;
        for (int r = 0; r < k2; ++r)
          acc = E->add(acc, E->mul(tw.embed(pmat.at(r, i)), pow_st.basis[r]));
        bb[i] = acc;
      }
      FqStruct bst(tw, bb);
      Mat mz = bst.mult_matrix(xi);
      Mat gz = Mat::identity(Q, n_);
      for (int r = 0; r < k2; ++r)
        for (int c = 0; c < k2; ++c) gz.at(glob(r), glob(c)) = mz.at(r, c);
      coord_gens_.push_back(gz);
    }
    istart += lam;
  }
  if (has_middle_) {
    middle_gen_ = Mat::identity(Q, n_);
    middle_gen_.at(h, h) = Q->generator();
  }
  for (const auto& g : coord_gens_) det_dlogs_.push_back(Q->dlog(det(g)));

  if (n_ % 2 == 1) {
    sl_ = FinAb::product(ambient_);
  } else {
    IMat eqs(static_cast<int>(ambient_.size()), 1);
    for (size_t i = 0; i < ambient_.size(); ++i) eqs.at(static_cast<int>(i), 0) = det_dlogs_[i];
    sl_ = congruence_subgroup(ambient_, eqs, {q - 1});
  }
  certify();
}

void RealizedTorus::certify() {
  const Field* Q = base_.get();
  const i64 q = Q->q();
  int ci = 0;
  for (int j = 0; j < sig_.r(); ++j) {
    const int lam = sig_.lambda[j];
    if (sig_.eps[j] == 0) {
      const Mat &gx = coord_gens_[ci], &gy = coord_gens_[ci + 1];
      require(mul(theta_apply(gx), gy) == Mat::identity(Q, n_), Errc::CertificationFailed,
              "theta does not swap the split-block pair");
      require(mul(theta_apply(gy), gx) == Mat::identity(Q, n_), Errc::CertificationFailed,
              "theta does not swap the split-block pair");
      ci += 2;
    } else {
      const Mat& gz = coord_gens_[ci];
      Mat lhs = theta_apply(gz);
      Mat rhs = mat_pow(gz, ipow_checked(q, lam));
      require(mul(lhs, rhs) == Mat::identity(Q, n_), Errc::CertificationFailed,
              "theta is not z -> z^{-q^lambda} on the twisted block");
      ci += 1;
    }
  }
  // generator orders equal the ambient moduli
  for (size_t i = 0; i < coord_gens_.size(); ++i) {
    require(is_identity(mat_pow(coord_gens_[i], ambient_[i])), Errc::CertificationFailed,
            "realized generator order too large");
    for (i64 pr : factor_i64(ambient_[i], 1'000'000))
      if (ambient_[i] % pr == 0)
        require(!is_identity(mat_pow(coord_gens_[i], ambient_[i] / pr)), Errc::CertificationFailed,
                "realized generator order too small");
  }
  if (has_middle_) {
    require(mul(theta_apply(middle_gen_), middle_gen_) == Mat::identity(Q, n_),
            Errc::CertificationFailed, "theta on the middle coordinate");
  }
}

Mat RealizedTorus::realize_gl(const std::vector<i64>& e, i64 mid_exp) const {
  require(e.size() == ambient_.size(), Errc::PreconditionViolated, "exponent arity mismatch");
  Mat m = Mat::identity(base_.get(), n_);
  for (size_t i = 0; i < e.size(); ++i) {
    i64 ei = ((e[i] % ambient_[i]) + ambient_[i]) % ambient_[i];
    if (ei) m = mul(m, mat_pow(coord_gens_[i], ei));
  }
  if (has_middle_ && mid_exp) {
    i64 me = ((mid_exp % (base_->q() - 1)) + base_->q() - 1) % (base_->q() - 1);
    m = mul(m, mat_pow(middle_gen_, me));
  }
  return m;
}

Mat RealizedTorus::realize_sl(const std::vector<i64>& e) const {
  Mat m = realize_gl(e, 0);
  if (has_middle_) {
    Fe d = det(m);
    const int h = n_ / 2;
    m.at(h, h) = base_->mul(m.at(h, h), base_->inv(d));
  }
  require(det(m) == base_->one(), Errc::PreconditionViolated, "exponents do not satisfy det = 1");
  return m;
}

std::vector<Mat> RealizedTorus::sl_generator_mats() const {
  std::vector<Mat> out;
  for (const auto& g : sl_.cyclic_generators()) out.push_back(realize_sl(g));
  return out;
}

std::vector<Key128> RealizedTorus::pgl_points(u64 cap) const {
  u64 total = has_middle_ ? static_cast<u64>(base_->q() - 1) : 1;
  for (i64 m : ambient_) total *= static_cast<u64>(m);
  require(total <= cap, Errc::ScaleTooLarge, "torus enumeration exceeds cap");
  std::vector<Key128> out;
  std::vector<i64> e(ambient_.size(), 0);
  std::function<void(size_t, Mat)> rec = [&](size_t i, Mat acc) {
    if (i == ambient_.size()) {
      if (has_middle_) {
        Mat cur = acc;
        for (i64 z = 0; z < base_->q() - 1; ++z) {
          out.push_back(pack_mat(proj_canon(cur)));
          cur = mul(cur, middle_gen_);
        }
      } else {
        out.push_back(pack_mat(proj_canon(acc)));
      }
      return;
    }
    Mat cur = acc;
    for (i64 v = 0; v < ambient_[i]; ++v) {
      rec(i + 1, cur);
      cur = mul(cur, coord_gens_[i]);
    }
  };
  rec(0, Mat::identity(base_.get(), n_));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Mat> RealizedTorus::sl_points(u64 cap) const {
  u64 total = 1;
  for (i64 m : ambient_) total *= static_cast<u64>(m);
  require(total <= cap, Errc::ScaleTooLarge, "torus enumeration exceeds cap");
  std::vector<Mat> out;
  std::function<void(size_t, Mat)> rec = [&](size_t i, Mat acc) {
    if (i == ambient_.size()) {
      if (has_middle_) {
        Fe d = det(acc);
        const int hh = n_ / 2;
        acc.at(hh, hh) = base_->mul(acc.at(hh, hh), base_->inv(d));
        out.push_back(acc);
      } else if (det(acc) == base_->one()) {
        out.push_back(acc);
      }
      return;
    }
    Mat cur = acc;
    for (i64 v = 0; v < ambient_[i]; ++v) {
      rec(i + 1, cur);
      cur = mul(cur, coord_gens_[i]);
    }
  };
  rec(0, Mat::identity(base_.get(), n_));
  return out;
}

TorusRealizationCheck certify_realization(const RealizedTorus& rt, const TorusGroup& tg, u64 cap) {
  TorusRealizationCheck c{};
  c.abstract_order = tg.group.order();
  c.abstract_exponent = tg.group.exponent();
  c.realized_order = rt.sl_lattice().order();
  c.realized_exponent = rt.sl_lattice().exponent();
  // matrix-level verification
  auto pts = rt.sl_points(cap);
  std::vector<Key128> keys;
  keys.reserve(pts.size());
  for (const auto& m : pts) keys.push_back(pack_mat(m));
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  i64 matrix_exponent = 1;
  for (const auto& g : rt.sl_generator_mats()) {
    i64 o = 1;
    Mat y = g;
    while (!is_identity(y)) {
      y = mul(y, g);
      ++o;
      require(o <= (i64)cap * 4, Errc::InternalInconsistency, "matrix order runaway");
    }
    matrix_exponent = lcm_checked(matrix_exponent, o);
  }
  c.consistent = (c.abstract_order == c.realized_order) &&
                 (c.abstract_exponent == c.realized_exponent) &&
                 (static_cast<i64>(keys.size()) == c.abstract_order) &&
                 (matrix_exponent == c.abstract_exponent);
  return c;
}

}  // namespace twr
