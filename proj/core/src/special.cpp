#include "twistrack/special.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "twistrack/autos.hpp"
#include "twistrack/config.hpp"

namespace twr {

Mat block_m(const Field* f, const Mat& a2, Fe e, Fe fcoef) {
  require(a2.n == 2, Errc::PreconditionViolated, "block_m needs a 2x2 block");
  Mat j2 = j_matrix(f, 2);
  Mat br = mul(mul(j2, transpose(a2)), inverse(j2));
  Mat m = Mat::zero(f, 4);
  for (int i = 0; i < 2; ++i)
    for (int jx = 0; jx < 2; ++jx) {
      m.at(i, jx) = a2.at(i, jx);
      m.at(2 + i, 2 + jx) = br.at(i, jx);
    }
  m.at(0, 2) = e;
  m.at(1, 3) = e;
  m.at(2, 0) = fcoef;
  m.at(3, 1) = fcoef;
  return m;
}

Mat u_map(const Mat& x, const Mat& t) {
  const Field* f = x.F;
  Mat j = j_matrix(f, x.n);
  return mul(mul(mul(x, t), mul(j, transpose(x))), mul(j, t));
}

std::optional<std::tuple<Mat, Fe, Fe>> m_shape_of(const Mat& proj_x) {
  const Field* f = proj_x.F;
  require(proj_x.n == 4, Errc::PreconditionViolated, "m-shape is a 4x4 notion");
  // try every scalar multiple; the shape constrains corners and the block tie
  for (Fe c = 1; c < f->q(); ++c) {
    Mat y = scalar_mul(proj_x, c);
    if (y.at(0, 2) != y.at(1, 3) || y.at(0, 3) != 0 || y.at(1, 2) != 0) continue;
    if (y.at(2, 0) != y.at(3, 1) || y.at(2, 1) != 0 || y.at(3, 0) != 0) continue;
    Mat a = Mat::zero(f, 2);
    a.at(0, 0) = y.at(0, 0);
    a.at(0, 1) = y.at(0, 1);
    a.at(1, 0) = y.at(1, 0);
    a.at(1, 1) = y.at(1, 1);
    if (block_m(f, a, y.at(0, 2), y.at(2, 0)) == y) return std::make_tuple(a, y.at(0, 2), y.at(2, 0));
  }
  return std::nullopt;
}

H2Witness h2_witness(i64 q) {
  require(q % 4 == 3 && q != 3 && q != 7, Errc::PreconditionViolated,
          "h2 construction needs q = 3 (mod 4), q not 3 or 7");
  i64 p = factor_i64(q, 100000)[0];
  int m = 0;
  for (i64 t = q; t > 1; t /= p) ++m;
  FieldPtr base = Field::make(p, m);
  Tower tw(base, 2);
  const Field* E = tw.ext().get();
  Fe xi = E->generator();
  Fe a = E->pow(xi, (q - 1) / 2);
  Fe ai = E->inv(a);
  // the three conditions of the construction
  Fe z0 = a, z1 = E->neg(ai);
  Fe detz = E->mul(E->mul(z0, z1), E->mul(z1, z0));
  require(detz == E->one(), Errc::CertificationFailed, "det z != 1");
  require(a != E->neg(ai), Errc::CertificationFailed, "xi^{(q-1)/2} = -xi^{(1-q)/2}");
  Fe trz = E->mul(E->from_int(2), E->sub(a, ai));
  require(tw.in_base_image(trz), Errc::CertificationFailed, "Tr z is not in the base field");
  Fe tr_base = tw.retract(trz);

  const Field* Q = base.get();
  Mat a2 = Mat::zero(Q, 2);
  a2.at(0, 0) = Q->mul(tr_base, Q->inv(Q->from_int(2)));
  a2.at(0, 1) = Q->one();
  a2.at(1, 0) = Q->one();
  Mat x = block_m(Q, a2, Q->zero(), Q->zero());
  // u_1(x) = x^2 up to the center (the sign J^-1 = -J contributes)
  require(proj_canon(u_map(x, Mat::identity(Q, 4))) == proj_canon(mul(x, x)),
          Errc::CertificationFailed, "u_1 does not square the witness");
  H2Witness w;
  w.x = proj_canon(x);
  w.proj_order_x = proj_order(x);
  w.proj_order_x2 = proj_order(mul(x, x));
  w.trace = Q->to_string(tr_base);
  require(w.proj_order_x == q + 1, Errc::CertificationFailed, "projective order of x is not q+1");
  require(w.proj_order_x2 == (q + 1) / 2 && w.proj_order_x2 % 2 == 0 && w.proj_order_x2 > 4,
          Errc::CertificationFailed, "projective order of x^2 is not (q+1)/2 even > 4");
  return w;
}

Psl43Scan psl43_scan() {
  FieldPtr base = Field::make(3, 1);
  const Field* Q = base.get();
  Psl43Scan out{0, {}, 0, true};
  for (i64 aidx = 0; aidx < 81; ++aidx) {
    Mat a = Mat::zero(Q, 2);
    i64 t = aidx;
    for (int k = 0; k < 4; ++k) {
      a.e[k] = t % 3;
      t /= 3;
    }
    for (Fe e = 0; e < 3; ++e)
      for (Fe f = 0; f < 3; ++f) {
        Mat y = block_m(Q, a, e, f);
        Fe dy = det(y);
        Fe delta = Q->sub(det(a), Q->mul(e, f));
        if (dy != Q->mul(delta, delta)) out.identities_verified = false;
        if (dy != Q->one()) continue;
        ++out.invertible_count;
        // trace identity and the quadratic annihilation
        Fe tra = Q->add(a.at(0, 0), a.at(1, 1));
        Fe tryy = 0;
        for (int k = 0; k < 4; ++k) tryy = Q->add(tryy, y.at(k, k));
        if (tryy != Q->mul(Q->from_int(2), tra)) out.identities_verified = false;
        Mat lhs = mul(y, y);
        Mat rhs = scalar_mul(y, tra);
        Mat dd = Mat::scalar(Q, 4, delta);
        bool ann = true;
        for (int k = 0; k < 16; ++k)
          if (Q->add(Q->sub(lhs.e[k], rhs.e[k]), dd.e[k]) != 0) ann = false;
        if (!ann) out.identities_verified = false;
        if (delta != Q->one() && delta != Q->sub(Q->zero(), Q->one()))
          out.identities_verified = false;
        i64 o = proj_order(y);
        out.max_proj_order = std::max(out.max_proj_order, o);
        out.histogram[o]++;
      }
  }
  return out;
}

MissingClassRep missing_class_rep(int n, i64 q) {
  require(n % 2 == 0, Errc::PreconditionViolated, "the open class lives at even n");
  const int h = n / 2;
  require(h % 2 == 1, Errc::HEven, "h even is covered elsewhere; no open class");
  i64 p = factor_i64(q, 100000)[0];
  int m = 0;
  for (i64 t = q; t > 1; t /= p) ++m;
  FieldPtr base = Field::make(p, m);
  MissingClassRep out;
  out.eta_exponent = (1 + ipow_checked(q, h)) / 2;
  PartitionSignature sig{n, {h}, {1}};
  RealizedTorus rt(base, n, sig);
  Mat teta = rt.realize_gl({out.eta_exponent});
  out.rep = proj_canon(teta);
  Automorphism th = Automorphism::theta(base.get(), n, true);
  Semidirect sd{th, 2};
  out.rep_theta_order = sd.order(sd.make(out.rep, 1), 4 * pgl_exponent_bound(base.get(), n));
  out.theta_semisimple = is_theta_semisimple(out.rep);
  require(out.rep_theta_order == 2, Errc::CertificationFailed,
          "pi(t_eta) theta is not an involution");
  require(out.theta_semisimple, Errc::CertificationFailed, "representative is not theta-semisimple");
  return out;
}

namespace {

// Deterministic theta-fixed det-1 monomial representative of w.
Mat monomial_rep(const Field* f, const Perm& w) {
  const int n = w.degree();
  for (int mask = 0; mask < (1 << n); ++mask) {
    Mat m = Mat::zero(f, n);
    for (int j = 0; j < n; ++j) {
      Fe v = (mask >> j) & 1 ? f->neg(f->one()) : f->one();
      m.at(w(j), j) = v;
    }
    if (det(m) != f->one()) continue;
    if (theta_apply(m) == m) return m;
  }
  fail(Errc::InternalInconsistency, "no theta-fixed monomial representative found");
}

}  // namespace

QuestionOutcome question_search(int n, i64 q, u64 budget) {
  require(n % 2 == 0 && (n / 2) % 2 == 1, Errc::PreconditionViolated,
          "the question concerns n = 2h with h odd");
  const int h = n / 2;
  i64 p = factor_i64(q, 100000)[0];
  int mdeg = 0;
  for (i64 t = q; t > 1; t /= p) ++mdeg;

  Perm w = sigma({h}, {1}, n);
  FieldPtr base = Field::make(p, mdeg);
  Mat wdot_small = monomial_rep(base.get(), w);
  int bigN = static_cast<int>(proj_order(wdot_small));
  require(bigN % n == 0 || n % bigN == 0, Errc::InternalInconsistency, "unexpected twist period");
  if (bigN % n != 0) bigN = n;  // need GF(q^n) inside the working field
  Tower tw(base, bigN);
  const Field* E = tw.ext().get();
  const i64 qe = q;

  // lift the monomial into E and set up t_eta
  Mat wdot = Mat::zero(E, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) wdot.at(i, j) = tw.embed(wdot_small.at(i, j));
  Fe zeta_big = E->generator();
  // eta in GF(q^n) inside E: power the subfield generator
  i64 sub_order = ipow_checked(q, n) - 1;
  Fe zeta_n = E->pow(zeta_big, (E->q() - 1) / sub_order);
  Fe eta = E->pow(zeta_n, (1 + ipow_checked(q, h)) / 2);
  std::vector<Fe> diag_entries(n);
  for (int i = 0; i < h; ++i) diag_entries[i] = E->frobenius(eta, qe, i);
  for (int i = 0; i < h; ++i) diag_entries[h + i] = E->frobenius(eta, qe, 2 * h - 1 - i);
  Mat s = Mat::diag(E, diag_entries);

  // F_p-basis of the fixed space {A : Frob_q(A) = wdot^-1 A wdot}; the
  // unknowns are the F_p digits of the matrix entries.
  const int pdim = n * n * E->m();
  Mat winv = inverse(wdot);
  auto entry_index = [&](int i, int j, int d) { return (i * n + j) * E->m() + d; };
  // Frob(A)_{ij} - (w^-1 A w)_{ij} = 0. Build by probing basis matrices.
  std::vector<std::vector<i64>> cols(pdim, std::vector<i64>(pdim, 0));
  for (int bi = 0; bi < n; ++bi)
    for (int bj = 0; bj < n; ++bj)
      for (int bd = 0; bd < E->m(); ++bd) {
        Mat probe = Mat::zero(E, n);
        std::vector<i64> digits(E->m(), 0);
        digits[bd] = 1;
        probe.at(bi, bj) = E->from_coeffs(digits);
        // image = Frob_q(probe) - winv * probe * wdot
        Mat img = probe;
        for (int k = 0; k < n * n; ++k) img.e[k] = E->pow(img.e[k], qe);
        Mat conj = mul(mul(winv, probe), wdot);
        int col = entry_index(bi, bj, bd);
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) {
            auto di = E->coeffs(E->sub(img.at(i, j), conj.at(i, j)));
            for (int d = 0; d < E->m(); ++d) cols[entry_index(i, j, d)][col] = di[d];
          }
      }
  // kernel over F_p
  std::vector<std::vector<i64>> mat = cols;
  std::vector<int> pivot_col_of_row;
  std::vector<int> col_pivot(pdim, -1);
  int rank = 0;
  for (int col = 0; col < pdim && rank < pdim; ++col) {
    int piv = -1;
    for (int rr = rank; rr < pdim; ++rr)
      if (mat[rr][col] % p != 0) {
        piv = rr;
        break;
      }
    if (piv < 0) continue;
    std::swap(mat[piv], mat[rank]);
    i64 ipv = mod_inverse(mat[rank][col], p);
    for (int c = 0; c < pdim; ++c) mat[rank][c] = mat[rank][c] * ipv % p;
    for (int rr = 0; rr < pdim; ++rr) {
      if (rr == rank) continue;
      i64 cc = mat[rr][col] % p;
      if (!cc) continue;
      for (int c = 0; c < pdim; ++c) mat[rr][c] = ((mat[rr][c] - cc * mat[rank][c]) % p + p) % p;
    }
    col_pivot[col] = rank;
    pivot_col_of_row.push_back(col);
    ++rank;
  }
  std::vector<Mat> basis;  // F_p-basis of the fixed space
  for (int col = 0; col < pdim; ++col) {
    if (col_pivot[col] >= 0) continue;
    std::vector<i64> sol(pdim, 0);
    sol[col] = 1;
    for (int rr = 0; rr < rank; ++rr) {
      i64 v = mat[rr][col] % p;
      if (v) sol[pivot_col_of_row[rr]] = (p - v) % p;
    }
    Mat a = Mat::zero(E, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        std::vector<i64> digs(E->m());
        for (int d = 0; d < E->m(); ++d) digs[d] = sol[entry_index(i, j, d)];
        a.at(i, j) = E->from_coeffs(digs);
      }
    basis.push_back(a);
  }
  require(!basis.empty(), Errc::InternalInconsistency, "empty twisted fixed space");

  Mat jmat = j_matrix(E, n);
  QuestionOutcome out{false, 0, std::nullopt, "", {}};
  i64 order_cap = 4 * (ipow_checked(q, n) - 1);
  auto consider = [&](const Mat& cand) -> bool {
    Fe d = det(cand);
    if (d == 0) return false;
    Mat a = cand;
    if (d != E->one()) {
      // fix the determinant with a torus element of norm det^-1
      if (!tw.in_base_image(d)) return false;
      i64 dl = E->dlog(E->inv(d));
      // norm of zeta_n^k is zeta_n^{k (n)_q}; solve k (n)_q * step = dl
      i64 nq = q_bracket(n, q);
      i64 step = (E->q() - 1) / sub_order;
      // want zeta_big^{step * k * nq} = det^{-1}: step*nq*k = dl mod E.q()-1
      i64 aa = (i64)(((i128)step * nq) % (E->q() - 1));
      i64 g = gcd_i64(aa, E->q() - 1);
      if (dl % g != 0) return false;
      i64 sol = (i64)((i128)(dl / g) * mod_inverse(aa / g, (E->q() - 1) / g) % ((E->q() - 1) / g));
      Fe zk = E->pow(zeta_n, sol);
      std::vector<Fe> td(n);
      for (int i = 0; i < h; ++i) td[i] = E->frobenius(zk, qe, i);
      for (int i = 0; i < h; ++i) td[h + i] = E->frobenius(zk, qe, 2 * h - 1 - i);
      a = mul(a, Mat::diag(E, td));
      if (det(a) != E->one()) return false;
    }
    ++out.tried;
    Mat ma = mul(mul(mul(jmat, a), jmat), mul(transpose(a), s));
    Mat y = ma;
    for (i64 o = 1; o <= order_cap; ++o) {
      if (is_scalar(y)) {
        out.order_histogram[o]++;
        if (o % 2 == 0 && o > 4) {
          out.witness_order = o;
          out.witness_matrix = mat_to_string(a);
          return true;
        }
        return false;
      }
      y = mul(y, ma);
    }
    return false;
  };

  // structured phase: torus elements t_a and monomial normalizer pieces
  std::vector<Mat> structured;
  for (i64 k = 0; k < std::min<i64>(sub_order, 512); ++k) {
    Fe a0 = E->pow(zeta_n, k);
    std::vector<Fe> td(n);
    for (int i = 0; i < h; ++i) td[i] = E->frobenius(a0, qe, i);
    for (int i = 0; i < h; ++i) td[h + i] = E->frobenius(a0, qe, 2 * h - 1 - i);
    structured.push_back(Mat::diag(E, td));
  }
  structured.push_back(wdot);
  for (auto& c : structured)
    if (out.tried < budget && consider(c)) return out;

  {
    // small spaces: exhaust all F_p combinations when affordable
    u64 total = 1;
    bool small = true;
    for (size_t i = 0; i < basis.size(); ++i) {
      total *= static_cast<u64>(p);
      if (total > budget) {
        small = false;
        break;
      }
    }
    if (small) {
      std::vector<i64> coef(basis.size(), 0);
      bool done = false;
      while (!done) {
        Mat cand = Mat::zero(E, n);
        for (size_t i = 0; i < basis.size(); ++i)
          if (coef[i]) {
            Fe c = E->from_int(coef[i]);
            for (int k = 0; k < n * n; ++k) cand.e[k] = E->add(cand.e[k], E->mul(c, basis[i].e[k]));
          }
        if (consider(cand)) return out;
        // increment
        size_t pos = 0;
        while (pos < coef.size()) {
          if (++coef[pos] < p) break;
          coef[pos++] = 0;
        }
        if (pos == coef.size()) done = true;
      }
      out.exhaustive = true;
      return out;
    }
  }

  std::mt19937_64 rng(0x7115ead5eedULL + static_cast<u64>(n) * 1000003 + static_cast<u64>(q));
  while (out.tried < budget) {
    Mat cand = Mat::zero(E, n);
    for (const auto& b : basis) {
      i64 c = static_cast<i64>(rng() % static_cast<u64>(p));
      if (!c) continue;
      Fe cf = E->from_int(c);
      for (int k = 0; k < n * n; ++k) cand.e[k] = E->add(cand.e[k], E->mul(cf, b.e[k]));
    }
    if (consider(cand)) return out;
  }
  return out;
}

UnipotentWitness unipotent_witness(int n, i64 q, bool eta_square) {
  require(n % 2 == 0 && n > 2, Errc::PreconditionViolated, "needs even n > 2");
  require(q > 3, Errc::PreconditionViolated, "needs q > 3");
  i64 p = factor_i64(q, 100000)[0];
  int m = 0;
  for (i64 t = q; t > 1; t /= p) ++m;
  FieldPtr base = Field::make(p, m);
  const Field* Q = base.get();
  Fe eta = eta_square ? Q->one() : Q->generator();

  Mat u = Mat::identity(Q, n);
  u.at(0, n - 1) = eta;
  require(theta_apply(u) == u, Errc::CertificationFailed, "u is not theta-fixed");

  Mat g = Mat::identity(Q, n);
  if (n > 4 || q % 4 == 3) {
    g.at(0, 0) = Q->neg(Q->one());
    g.at(1, 1) = Q->neg(Q->one());
  } else {
    // n = 4, q = 1 (mod 4): diag(1, xi, 1, xi^-1) with xi^2 != 1, (xi eta)^2 != 2
    Fe two = Q->from_int(2);
    Fe xi = 0;
    for (Fe c = 2; c < Q->q(); ++c) {
      Fe c2 = Q->mul(c, c);
      Fe ce = Q->mul(c, eta);
      if (c2 != Q->one() && Q->mul(ce, ce) != two) {
        xi = c;
        break;
      }
    }
    require(xi != 0, Errc::CertificationFailed, "no admissible xi");
    g.at(1, 1) = xi;
    g.at(3, 3) = Q->inv(xi);
  }

  Automorphism th = Automorphism::theta(Q, n, true);
  Mat pu = proj_canon(u);
  Mat pv = twisted_act(proj_canon(g), pu, th);
  require(theta_apply_proj(pv) == pv, Errc::CertificationFailed, "v is not theta-fixed in PGL");

  Mat sigma_mat = Mat::zero(Q, n);
  sigma_mat.at(0, n - 1) = Q->one();
  sigma_mat.at(n - 1, 0) = Q->neg(Q->one());
  for (int i = 1; i + 1 < n; ++i) sigma_mat.at(i, i) = Q->one();
  require(det(sigma_mat) == Q->one() && theta_apply(sigma_mat) == sigma_mat,
          Errc::CertificationFailed, "sigma is not a theta-fixed SL element");

  Mat ps = twisted_act(proj_canon(sigma_mat), pv, th);
  require(theta_apply_proj(ps) == ps, Errc::CertificationFailed, "s is not theta-fixed in PGL");

  // the rack inequality r |> (s |> (r |> s)) != s
  Mat t1 = rack_op(pu, ps, th);
  Mat t2 = rack_op(ps, t1, th);
  Mat t3 = rack_op(pu, t2, th);
  require(!(t3 == ps), Errc::CertificationFailed, "rack inequality failed");

  // subracks: conjugacy classes under the projective symplectic group
  MatGroup sp = make_group(GroupKind::Sp, n, base);
  MatGroup psp;
  psp.kind = GroupKind::Sp;
  psp.n = n;
  psp.field = base;
  psp.projective = true;
  for (const auto& gg : sp.gens) psp.gens.push_back(proj_canon(gg));
  MatTwistModel model = make_mat_model(psp, th);
  auto orb_r = orbit_enumerate(model, pu, Config::global().orbit_cap,
                               Config::global().effective_threads());
  require(!orb_r.contains(pack_mat(ps)), Errc::CertificationFailed,
          "subracks are not disjoint");
  auto orb_s = orbit_enumerate(model, ps, Config::global().orbit_cap,
                               Config::global().effective_threads());
  // closure of the decomposable union on a sample (full when small)
  u64 checks = 0;
  for (const auto& rk : orb_r.keys) {
    Mat rr = unpack_mat(Q, n, rk);
    for (const auto& sk : orb_s.keys) {
      Mat ss = unpack_mat(Q, n, sk);
      require(orb_s.contains(pack_mat(rack_op(rr, ss, th))), Errc::CertificationFailed,
              "R |> S escaped S");
      require(orb_r.contains(pack_mat(rack_op(ss, rr, th))), Errc::CertificationFailed,
              "S |> R escaped R");
      if (++checks >= 20000) break;
    }
    if (checks >= 20000) break;
  }
  UnipotentWitness w;
  w.r = pu;
  w.s = ps;
  w.subrack_r = orb_r.size();
  w.subrack_s = orb_s.size();
  w.certified = true;
  return w;
}

RegularUnipotentWitness regular_unipotent_odd(int n, i64 q) {
  require(n % 2 == 1 && n > 3, Errc::PreconditionViolated, "needs odd n > 3");
  require(n <= 7 && q <= 7, Errc::ScaleTooLarge, "desk scale only");
  i64 p = factor_i64(q, 100000)[0];
  int m = 0;
  for (i64 t = q; t > 1; t /= p) ++m;
  FieldPtr base = Field::make(p, m);
  const Field* Q = base.get();
  MatGroup so = make_group(GroupKind::SO, n, base);

  // deterministic short-word search for a regular unipotent element
  auto is_regular_unipotent = [&](const Mat& x) {
    Mat d = x;
    for (int i = 0; i < n; ++i) d.at(i, i) = Q->sub(d.at(i, i), Q->one());
    Mat acc = d;
    for (int k = 1; k < n - 1; ++k) acc = mul(acc, d);
    bool nz = false;
    for (int k = 0; k < n * n; ++k) nz = nz || (acc.e[k] != 0);
    if (!nz) return false;  // (x-1)^{n-1} = 0: not regular
    acc = mul(acc, d);
    for (int k = 0; k < n * n; ++k)
      if (acc.e[k] != 0) return false;  // (x-1)^n != 0: not unipotent
    return true;
  };
  std::optional<Mat> ureg;
  std::vector<Mat> layer = {Mat::identity(Q, n)};
  KeySet seen(1024);
  seen.insert(pack_mat(layer[0]));
  for (int depth = 0; depth < 4 && !ureg; ++depth) {
    std::vector<Mat> next;
    for (const auto& x : layer) {
      for (const auto& gg : so.gens) {
        Mat y = mul(x, gg);
        if (!seen.insert(pack_mat(y))) continue;
        if (is_regular_unipotent(y)) {
          ureg = y;
          break;
        }
        if (next.size() < 20000) next.push_back(y);
      }
      if (ureg) break;
    }
    layer = std::move(next);
  }
  require(ureg.has_value(), Errc::Budget, "no regular unipotent found in the word ball");

  MatTwistModel model{&so, Automorphism::identity(Q, n, false), 1};
  auto orbit = orbit_enumerate(model, *ureg, Config::global().orbit_cap,
                               Config::global().effective_threads());
  SearchBudget budget;
  budget.max_pairs = 3'000'000;
  budget.subrack_cap = 500'000;
  auto w = typeD_search(model, orbit, budget);
  require(w.has_value(), Errc::Budget, "no witness within budget");
  RegularUnipotentWitness out;
  out.u = *ureg;
  out.r = w->r;
  out.s = w->s;
  out.subrack_r = w->subrack_r.size();
  out.subrack_s = w->subrack_s.size();
  out.certified = true;
  return out;
}

}  // namespace twr
