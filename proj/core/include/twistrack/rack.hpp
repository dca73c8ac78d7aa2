#ifndef TWISTRACK_RACK_HPP
#define TWISTRACK_RACK_HPP

#include <algorithm>
#include <optional>
#include <vector>

#include "twistrack/abelian.hpp"
#include "twistrack/autos.hpp"
#include "twistrack/groups.hpp"
#include "twistrack/keyset.hpp"
#include "twistrack/parallel.hpp"
#include "twistrack/perm.hpp"

namespace twr {

// A group model provides: Elem, id(), mul, inv, eq via keys, twist (the
// acting automorphism psi), twist_order, key/unkey, and the acting
// generators. The rack algorithms below are written against this surface.

struct MatTwistModel {
  using Elem = Mat;
  const MatGroup* group;
  Automorphism psi;
  int ell;  // |psi| certified against the acting generators

  Elem id() const { return group->id(); }
  Elem mul(const Elem& a, const Elem& b) const { return group->norm(twr::mul(a, b)); }
  Elem inv(const Elem& a) const { return group->norm(inverse(a)); }
  Elem twist(const Elem& a) const { return psi.apply(a); }
  int twist_order() const { return ell; }
  Key128 key(const Elem& a) const { return pack_mat(a); }
  Elem unkey(const Key128& k) const { return unpack_mat(group->F(), group->n, k); }
  const std::vector<Elem>& acting() const { return group->gens; }
};

MatTwistModel make_mat_model(const MatGroup& g, Automorphism psi);

struct PermModel {
  using Elem = Perm;
  int degree;
  std::vector<Perm> acting_gens;

  Elem id() const { return Perm(degree); }
  Elem mul(const Elem& a, const Elem& b) const { return a * b; }
  Elem inv(const Elem& a) const { return a.inverse(); }
  Elem twist(const Elem& a) const { return a; }
  int twist_order() const { return 1; }
  Key128 key(const Elem& a) const { return Key128{a.key(), 0}; }
  Elem unkey(const Key128& k) const { return Perm::from_key(k.lo, degree); }
  const std::vector<Elem>& acting() const { return acting_gens; }
};

struct SdModel {
  using Elem = SdElem;
  Semidirect sd;
  std::vector<SdElem> acting_gens;

  Elem id() const { return sd.id(); }
  Elem mul(const Elem& a, const Elem& b) const { return sd.mul(a, b); }
  Elem inv(const Elem& a) const { return sd.inv(a); }
  Elem twist(const Elem& a) const { return a; }  // ordinary conjugacy inside H x| <psi>
  int twist_order() const { return 1; }
  Key128 key(const Elem& a) const {
    Key128 k = pack_mat(a.h);
    unsigned __int128 v = (((unsigned __int128)k.hi << 64) | k.lo);
    v = v * (unsigned __int128)sd.ell + (unsigned __int128)a.k;
    return Key128{static_cast<u64>(v), static_cast<u64>(v >> 64)};
  }
  Elem unkey(const Key128& k) const {
    unsigned __int128 v = (((unsigned __int128)k.hi << 64) | k.lo);
    int kk = static_cast<int>(v % (unsigned __int128)sd.ell);
    v /= (unsigned __int128)sd.ell;
    Key128 mk{static_cast<u64>(v), static_cast<u64>(v >> 64)};
    return SdElem{unpack_mat(sd.psi.F, sd.psi.n, mk), kk};
  }
  const std::vector<Elem>& acting() const { return acting_gens; }
};

template <class M>
typename M::Elem model_rack_op(const M& m, const typename M::Elem& y, const typename M::Elem& z) {
  return m.mul(y, m.twist(m.mul(z, m.inv(y))));
}

template <class M>
typename M::Elem model_twisted_act(const M& m, const typename M::Elem& g,
                                   const typename M::Elem& x) {
  return m.mul(m.mul(g, x), m.inv(m.twist(g)));
}

template <class M>
i64 model_order(const M& m, const typename M::Elem& x, i64 cap = 1'000'000) {
  Key128 idk = m.key(m.id());
  typename M::Elem y = x;
  for (i64 k = 1; k <= cap; ++k) {
    if (m.key(y) == idk) return k;
    y = m.mul(y, x);
  }
  fail(Errc::InternalInconsistency, "element order exceeded cap");
}

// Enumerated twisted orbit, sorted by canonical key.
template <class M>
struct OrbitT {
  std::vector<Key128> keys;  // sorted
  typename M::Elem base;
  bool contains(const Key128& k) const {
    return std::binary_search(keys.begin(), keys.end(), k);
  }
  size_t size() const { return keys.size(); }
};

// BFS closure of {x} under g ._psi for the acting generators and their
// inverses. Deterministic: level-synchronous with ordered merges.
template <class M>
OrbitT<M> orbit_enumerate(const M& m, const typename M::Elem& x, u64 cap, int workers = 1) {
  using Elem = typename M::Elem;
  std::vector<std::pair<Elem, Elem>> act;  // (g, psi(g)^-1)
  for (const auto& g : m.acting()) {
    act.push_back({g, m.inv(m.twist(g))});
    Elem gi = m.inv(g);
    act.push_back({gi, m.inv(m.twist(gi))});
  }
  KeySet seen(1024);
  std::vector<Key128> frontier, all;
  Key128 k0 = m.key(x);
  seen.insert(k0);
  frontier.push_back(k0);
  all.push_back(k0);
  while (!frontier.empty()) {
    std::vector<std::vector<Key128>> parts(std::max(workers, 1));
    parallel_chunks(frontier.size(), workers, [&](size_t b, size_t e, int w) {
      auto& local = parts[w];
      for (size_t i = b; i < e; ++i) {
        Elem y = m.unkey(frontier[i]);
        for (const auto& [g, tgi] : act) local.push_back(m.key(m.mul(m.mul(g, y), tgi)));
      }
    });
    std::vector<Key128> next;
    for (auto& part : parts)
      for (const auto& k : part)
        if (seen.insert(k)) {
          require(all.size() < cap, Errc::Budget, "orbit exceeds cap");
          next.push_back(k);
          all.push_back(k);
        }
    frontier = std::move(next);
  }
  std::sort(all.begin(), all.end());
  OrbitT<M> o;
  o.keys = std::move(all);
  o.base = x;
  return o;
}

// Orbit of x under the twisted action of an explicit generator list (used for
// orbits under the psi-stable closure L = <r, s, psi(r), ...>).
template <class M>
std::optional<std::vector<Key128>> orbit_under(const M& m, const typename M::Elem& x,
                                               const std::vector<typename M::Elem>& gens,
                                               u64 cap, const Key128* reject = nullptr) {
  using Elem = typename M::Elem;
  std::vector<std::pair<Elem, Elem>> act;
  for (const auto& g : gens) {
    act.push_back({g, m.inv(m.twist(g))});
    Elem gi = m.inv(g);
    act.push_back({gi, m.inv(m.twist(gi))});
  }
  KeySet seen(256);
  std::vector<Key128> frontier, all;
  Key128 k0 = m.key(x);
  if (reject && k0 == *reject) return std::nullopt;
  seen.insert(k0);
  frontier.push_back(k0);
  all.push_back(k0);
  while (!frontier.empty()) {
    std::vector<Key128> next;
    for (const auto& fk : frontier) {
      Elem y = m.unkey(fk);
      for (const auto& [g, tgi] : act) {
        Key128 k = m.key(m.mul(m.mul(g, y), tgi));
        if (reject && k == *reject) return std::nullopt;  // collided with the other orbit
        if (seen.insert(k)) {
          if (all.size() >= cap) fail(Errc::Budget, "subrack orbit exceeds cap");
          next.push_back(k);
          all.push_back(k);
        }
      }
    }
    frontier = std::move(next);
  }
  std::sort(all.begin(), all.end());
  return all;
}

template <class M>
struct TypeDWitnessT {
  typename M::Elem r, s;
  std::vector<Key128> subrack_r, subrack_s;
  typename M::Elem lhs, rhs;  // the two sides of the defining inequality
};

struct SearchBudget {
  u64 max_pairs = 50'000'000;
  u64 subrack_cap = 2'000'000;
  bool exhausted = false;  // set by the search: every pair was examined
};

// Both sides of r psi(s) psi^2(r) psi^3(s) != s psi(r) psi^2(s) psi^3(r).
template <class M>
std::pair<typename M::Elem, typename M::Elem> typeD_inequality_sides(
    const M& m, const typename M::Elem& r, const typename M::Elem& s) {
  auto p1r = m.twist(r), p1s = m.twist(s);
  auto p2r = m.twist(p1r), p2s = m.twist(p1s);
  auto p3r = m.twist(p2r), p3s = m.twist(p2s);
  auto lhs = m.mul(m.mul(r, p1s), m.mul(p2r, p3s));
  auto rhs = m.mul(m.mul(s, p1r), m.mul(p2s, p3r));
  return {lhs, rhs};
}

// The decomposable-subrack test for one candidate pair.
template <class M>
std::optional<TypeDWitnessT<M>> try_pair(const M& m, const typename M::Elem& r,
                                         const typename M::Elem& s, u64 subrack_cap) {
  auto [lhs, rhs] = typeD_inequality_sides(m, r, s);
  if (m.key(lhs) == m.key(rhs)) return std::nullopt;
  // psi-stable closure generators of <r, s>
  std::vector<typename M::Elem> lgens;
  auto cr = r, cs = s;
  for (int i = 0; i < m.twist_order(); ++i) {
    lgens.push_back(cr);
    lgens.push_back(cs);
    cr = m.twist(cr);
    cs = m.twist(cs);
  }
  Key128 sk = m.key(s);
  std::optional<std::vector<Key128>> orb_r;
  try {
    orb_r = orbit_under(m, r, lgens, subrack_cap, &sk);
  } catch (const Error& e) {
    if (e.code() == Errc::Budget) return std::nullopt;  // undecided pair, skip
    throw;
  }
  if (!orb_r) return std::nullopt;  // s lies in the r-orbit: not disjoint
  auto orb_s = orbit_under(m, s, lgens, subrack_cap, nullptr);
  TypeDWitnessT<M> w{r, s, std::move(*orb_r), std::move(*orb_s), lhs, rhs};
  return w;
}

// Scans pairs from the orbit in deterministic order: probe pairs
// (base, g._psi base) first, then all unordered pairs by key order.
template <class M>
std::optional<TypeDWitnessT<M>> typeD_search(const M& m, const OrbitT<M>& orbit,
                                             SearchBudget& budget) {
  budget.exhausted = false;
  u64 used = 0;
  // probe phase
  for (const auto& g : m.acting()) {
    if (used >= budget.max_pairs) return std::nullopt;
    ++used;
    auto s = model_twisted_act(m, g, orbit.base);
    if (m.key(s) == m.key(orbit.base)) continue;
    if (auto w = try_pair(m, orbit.base, s, budget.subrack_cap)) return w;
  }
  // full scan
  const size_t n = orbit.keys.size();
  for (size_t i = 0; i < n; ++i) {
    auto r = m.unkey(orbit.keys[i]);
    for (size_t j = i + 1; j < n; ++j) {
      if (used >= budget.max_pairs) return std::nullopt;
      ++used;
      auto s = m.unkey(orbit.keys[j]);
      if (auto w = try_pair(m, r, s, budget.subrack_cap)) return w;
    }
  }
  budget.exhausted = true;
  return std::nullopt;
}

// Lemma-style involution criterion: for an involution s with class taken
// under a normal acting subgroup, type D holds iff some r in the class has
// |rs| even and > 4. Exhaustive scan, so `none` certifies NOT type D.
template <class M>
std::optional<typename M::Elem> involution_typeD(const M& m, const typename M::Elem& s,
                                                 u64 orbit_cap, bool* exhausted = nullptr,
                                                 int workers = 1) {
  Key128 idk = m.key(m.id());
  require(!(m.key(s) == idk), Errc::NotInvolution, "s must be a non-trivial involution");
  require(m.key(m.mul(s, s)) == idk, Errc::NotInvolution, "s is not an involution");
  auto orbit = orbit_enumerate(m, s, orbit_cap, workers);
  if (exhausted) *exhausted = true;
  for (const auto& k : orbit.keys) {
    auto r = m.unkey(k);
    auto t = m.mul(r, s);
    i64 ord = model_order(m, t);
    if (ord % 2 == 0 && ord > 4) return r;
  }
  return std::nullopt;
}

// Image of gamma: b -> b psi(b)^-1 on an abelian group given in exponent
// coordinates; psi_matrix is the exponent action of psi.
FinAb abelian_twisted_orbit(const std::vector<i64>& moduli, const IMat& psi_matrix);

}  // namespace twr

#endif
