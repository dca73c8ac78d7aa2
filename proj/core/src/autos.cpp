#include "twistrack/autos.hpp"

#include <sstream>

namespace twr {

Mat j_matrix(const Field* f, int n) {
  Mat j = Mat::zero(f, n);
  Fe c = f->one();
  for (int i = 0; i < n; ++i) {
    j.at(i, n - 1 - i) = c;
    c = f->neg(c);
  }
  return j;
}

Mat theta_apply(const Mat& x) {
  Mat j = j_matrix(x.F, x.n);
  return mul(mul(j, transpose(inverse(x))), inverse(j));
}

Mat theta_apply_proj(const Mat& x) { return proj_canon(theta_apply(x)); }

Automorphism Automorphism::identity(const Field* f, int n, bool projective) {
  Automorphism a;
  a.F = f;
  a.n = n;
  a.projective = projective;
  return a;
}

Automorphism Automorphism::theta(const Field* f, int n, bool projective) {
  Automorphism a = identity(f, n, projective);
  a.graph_power = 1;
  return a;
}

Mat Automorphism::apply(const Mat& x) const {
  Mat y = x;
  if (frob_power > 0) {
    i64 pb = 1;
    for (int i = 0; i < frob_power; ++i) pb *= F->p();
    for (int i = 0; i < y.n * y.n; ++i) y.e[i] = F->pow(y.e[i], pb);
  }
  if (graph_power % 2 != 0) y = theta_apply(y);
  if (inner) y = mul(mul(*inner, y), inverse(*inner));
  return projective ? proj_canon(y) : y;
}

Automorphism Automorphism::composed_with(const Automorphism& rhs) const {
  // Only the combinations the CLI grammar can produce need to stay closed;
  // theta and Frobenius commute, Ad(t) stays leftmost:
  //   (Ad(t1) θ^a1 Fr^b1) ∘ (Ad(t2) θ^a2 Fr^b2)
  // = Ad(t1 · (θ^a1 Fr^b1)(t2)) θ^(a1+a2) Fr^(b1+b2).
  Automorphism r = identity(F, n, projective);
  r.graph_power = (graph_power + rhs.graph_power) % 2;
  r.frob_power = frob_power + rhs.frob_power;
  if (inner || rhs.inner) {
    Mat t = Mat::identity(F, n);
    if (rhs.inner) {
      Automorphism outer = identity(F, n, projective);
      outer.graph_power = graph_power;
      outer.frob_power = frob_power;
      t = outer.apply(*rhs.inner);
    }
    if (inner) t = mul(*inner, t);
    r.inner = projective ? proj_canon(t) : t;
  }
  return r;
}

int Automorphism::order_on(const std::vector<Mat>& gens, int cap) const {
  std::vector<Mat> cur = gens;
  for (int k = 1; k <= cap; ++k) {
    bool all_fixed = true;
    for (size_t i = 0; i < gens.size(); ++i) {
      cur[i] = apply(cur[i]);
      Mat want = projective ? proj_canon(gens[i]) : gens[i];
      if (!(cur[i] == want)) all_fixed = false;
    }
    if (all_fixed) return k;
  }
  fail(Errc::InternalInconsistency, "automorphism order exceeds cap; wrong setup?");
}

std::string Automorphism::descriptor() const {
  std::vector<std::string> parts;
  if (inner) parts.push_back("ad:" + mat_to_string(*inner));
  if (graph_power % 2) parts.push_back("theta");
  if (frob_power) parts.push_back("frob^" + std::to_string(frob_power));
  if (parts.empty()) return "id";
  std::string s = parts[0];
  for (size_t i = 1; i < parts.size(); ++i) s += "*" + parts[i];
  return s;
}

Automorphism parse_automorphism(const Field* f, int n, bool projective, const std::string& s) {
  Automorphism acc = Automorphism::identity(f, n, projective);
  std::istringstream is(s);
  std::string tok;
  std::vector<std::string> toks;
  while (std::getline(is, tok, '*')) toks.push_back(tok);
  // right-to-left application => compose left-to-right over the token list
  for (const auto& t : toks) {
    Automorphism part = Automorphism::identity(f, n, projective);
    if (t == "id") {
    } else if (t == "theta") {
      part.graph_power = 1;
    } else if (t.rfind("frob", 0) == 0) {
      int b = 1;
      auto caret = t.find('^');
      if (caret != std::string::npos) b = std::stoi(t.substr(caret + 1));
      require(b >= 0, Errc::Usage, "bad frobenius power");
      part.frob_power = b;
    } else if (t.rfind("ad:", 0) == 0) {
      Mat m = mat_parse(f, n, t.substr(3));
      part.inner = projective ? proj_canon(m) : m;
    } else {
      fail(Errc::Usage, "bad automorphism component: " + t);
    }
    acc = acc.composed_with(part);
  }
  return acc;
}

Mat twisted_act(const Mat& g, const Mat& x, const Automorphism& psi) {
  Mat r = mul(mul(g, x), inverse(psi.apply(g)));
  return psi.projective ? proj_canon(r) : r;
}

Mat norm_psi(const Mat& x, const Automorphism& psi, int ell) {
  Mat acc = x, cur = x;
  for (int i = 1; i < ell; ++i) {
    cur = psi.apply(cur);
    acc = mul(acc, cur);
  }
  return psi.projective ? proj_canon(acc) : acc;
}

Mat rack_op(const Mat& y, const Mat& z, const Automorphism& psi) {
  Mat r = mul(y, psi.apply(mul(z, inverse(y))));
  return psi.projective ? proj_canon(r) : r;
}

SdElem Semidirect::make(const Mat& h, int k) const {
  return {psi.projective ? proj_canon(h) : h, ((k % ell) + ell) % ell};
}

SdElem Semidirect::mul(const SdElem& a, const SdElem& b) const {
  Mat hb = b.h;
  for (int i = 0; i < a.k; ++i) hb = psi.apply(hb);
  Mat h = twr::mul(a.h, hb);
  return {psi.projective ? proj_canon(h) : h, (a.k + b.k) % ell};
}

SdElem Semidirect::inv(const SdElem& a) const {
  // (h,k)^-1 = (psi^{-k}(h^-1), -k); psi^{-k} = psi^{ell-k}
  Mat hi = inverse(a.h);
  int back = (ell - a.k) % ell;
  for (int i = 0; i < back; ++i) hi = psi.apply(hi);
  return {psi.projective ? proj_canon(hi) : hi, back};
}

i64 Semidirect::order(const SdElem& a, i64 cap) const {
  SdElem x = a;
  for (i64 k = 1; k <= cap; ++k) {
    if (x.k == 0 && (psi.projective ? is_scalar(x.h) : is_identity(x.h))) return k;
    x = mul(x, a);
  }
  fail(Errc::InternalInconsistency, "semidirect order exceeds cap");
}

PsiPDecomposition psi_p_decompose(const Mat& x, const Automorphism& psi, int ell) {
  const Field* f = psi.F;
  const i64 p = f->p();
  require(gcd_i64(ell, p) == 1, Errc::OrderNotCoprime,
          "|psi| divisible by p; the (psi,p) decomposition needs (|psi|, p) = 1");
  Semidirect sd{psi, ell};
  SdElem g = sd.make(x, 1);
  i64 cap = lcm_checked(pgl_exponent_bound(f, psi.n), ell) * 2;
  i64 k = sd.order(g, cap);
  i64 pa = 1;
  i64 m = k;
  while (m % p == 0) {
    m /= p;
    pa *= p;
  }
  // alpha*pa = 1 (mod m), beta*m = 1 (mod pa)
  i64 alpha = m == 1 ? 0 : mod_inverse(pa % m, m);
  i64 beta = pa == 1 ? 0 : mod_inverse(m % pa, pa);
  auto power = [&](i64 e) {
    SdElem r = sd.id(), b = g;
    while (e > 0) {
      if (e & 1) r = sd.mul(r, b);
      b = sd.mul(b, b);
      e >>= 1;
    }
    return r;
  };
  SdElem up = power((i64)((i128)beta * m % k));   // p-part, lands in H
  SdElem sp = power((i64)((i128)alpha * pa % k)); // p'-part, psi-component 1
  require(up.k == 0, Errc::InternalInconsistency, "p-part escaped the group");
  require(sp.k == 1 % ell, Errc::InternalInconsistency, "p'-part has wrong twist");
  PsiPDecomposition out{up.h, sp.h, k};
  // x = u s and the cross commutation x = s psi(u)
  Mat us = mul(out.u, out.s);
  Mat spu = mul(out.s, psi.apply(out.u));
  Mat want = psi.projective ? proj_canon(x) : x;
  if (psi.projective) {
    us = proj_canon(us);
    spu = proj_canon(spu);
  }
  require(us == want && spu == want, Errc::InternalInconsistency, "decomposition failed to verify");
  return out;
}

bool is_theta_semisimple(const Mat& proj_x) {
  const Field* f = proj_x.F;
  Automorphism th = Automorphism::theta(f, proj_x.n, true);
  Semidirect sd{th, 2};
  i64 cap = pgl_exponent_bound(f, proj_x.n) * 2;
  i64 ord = sd.order(sd.make(proj_canon(proj_x), 1), cap);
  return ord % f->p() != 0;
}

}  // namespace twr
