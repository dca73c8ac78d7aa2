#include "twistrack/oracle.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "twistrack/config.hpp"
#include "twistrack/torus.hpp"

namespace twr {

namespace {

constexpr const char* kCacheVersion = "twistrack-cache-v1";

std::string cache_path(const MatGroup& g) {
  const Config& cfg = Config::global();
  if (cfg.cache_dir.empty()) return {};
  std::string name = std::string(group_kind_name(g.kind)) + "_n" + std::to_string(g.n) + "_q" +
                     std::to_string(g.F()->q()) + ".keys";
  return cfg.cache_dir + "/" + name;
}

std::optional<std::vector<Key128>> load_cache(const MatGroup& g) {
  std::string path = cache_path(g);
  if (path.empty()) return std::nullopt;
  std::ifstream in(path, std::ios::binary);
  if (!in.good()) return std::nullopt;
  std::string header;
  std::getline(in, header);
  std::string want = std::string(kCacheVersion) + " " + group_kind_name(g.kind) + " " +
                     std::to_string(g.n) + " " + std::to_string(g.F()->q()) + " [" +
                     g.F()->modulus_string() + "]";
  if (header.rfind(want, 0) != 0) return std::nullopt;
  u64 count = 0;
  in.read(reinterpret_cast<char*>(&count), sizeof(count));
  std::vector<Key128> keys(count);
  in.read(reinterpret_cast<char*>(keys.data()), static_cast<std::streamsize>(count * sizeof(Key128)));
  if (!in.good()) return std::nullopt;
  // verification: expected size and sampled closure membership
  i64 expect = group_order(g.kind, g.n, g.F()->q());
  if (static_cast<i64>(count) != expect) return std::nullopt;
  for (u64 s = 0; s < std::min<u64>(count, 16); ++s) {
    u64 i = (s * 2654435761u) % count;
    u64 j = (s * 40503u + 7) % count;
    Mat a = unpack_mat(g.F(), g.n, keys[i]);
    Mat b = unpack_mat(g.F(), g.n, keys[j]);
    Key128 k = pack_mat(g.norm(mul(a, b)));
    if (!std::binary_search(keys.begin(), keys.end(), k)) return std::nullopt;
  }
  return keys;
}

void store_cache(const MatGroup& g, const std::vector<Key128>& keys) {
  std::string path = cache_path(g);
  if (path.empty()) return;
  std::error_code ec;
  std::filesystem::create_directories(Config::global().cache_dir, ec);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out.good()) return;
  out << kCacheVersion << " " << group_kind_name(g.kind) << " " << g.n << " " << g.F()->q() << " ["
      << g.F()->modulus_string() << "]\n";
  u64 count = keys.size();
  out.write(reinterpret_cast<const char*>(&count), sizeof(count));
  out.write(reinterpret_cast<const char*>(keys.data()),
            static_cast<std::streamsize>(count * sizeof(Key128)));
}

}  // namespace

std::vector<Key128> enumerate_group(const MatGroup& g, u64 cap, int workers) {
  if (auto cached = load_cache(g)) return *cached;
  i64 expect = group_order(g.kind, g.n, g.F()->q());
  require(static_cast<u64>(expect) <= cap, Errc::Budget,
          "group order " + std::to_string(expect) + " exceeds cap");
  auto keys = closure_keys(g, cap, workers);
  require(static_cast<i64>(keys.size()) == expect, Errc::InternalInconsistency,
          "closure size disagrees with the order formula");
  store_cache(g, keys);
  return keys;
}

std::uint32_t TwistedPartition::id_of(const Key128& k) const {
  auto it = std::lower_bound(universe.begin(), universe.end(), k);
  if (it == universe.end() || !(*it == k)) return KeyMap::kAbsent;
  return orbit_id[static_cast<size_t>(it - universe.begin())];
}

TwistedPartition twisted_class_partition(const MatGroup& ambient, const Automorphism& psi,
                                         const std::vector<Mat>& acting_gens,
                                         std::vector<Key128> universe, int workers) {
  std::sort(universe.begin(), universe.end());
  TwistedPartition part;
  part.universe = std::move(universe);
  part.orbit_id.assign(part.universe.size(), KeyMap::kAbsent);
  const Field* f = ambient.F();
  const int n = ambient.n;

  std::vector<std::pair<Mat, Mat>> act;
  for (const auto& g : acting_gens) {
    act.push_back({g, ambient.norm(inverse(psi.apply(g)))});
    Mat gi = ambient.norm(inverse(g));
    act.push_back({gi, ambient.norm(inverse(psi.apply(gi)))});
  }
  // direct position table when keys are compact (they are for the oracle
  // scales); binary search otherwise
  constexpr u64 kDirectLimit = 1ull << 27;
  bool compact = !part.universe.empty() && part.universe.back().hi == 0 &&
                 part.universe.back().lo < kDirectLimit;
  std::vector<std::uint32_t> direct;
  if (compact) {
    direct.assign(static_cast<size_t>(part.universe.back().lo) + 1, KeyMap::kAbsent);
    for (size_t i = 0; i < part.universe.size(); ++i)
      direct[static_cast<size_t>(part.universe[i].lo)] = static_cast<std::uint32_t>(i);
  }
  auto index_of = [&](const Key128& k) -> size_t {
    if (compact) {
      std::uint32_t i = k.hi == 0 && k.lo < direct.size() ? direct[static_cast<size_t>(k.lo)]
                                                          : KeyMap::kAbsent;
      require(i != KeyMap::kAbsent, Errc::InternalInconsistency, "twisted image left the universe");
      return i;
    }
    auto it = std::lower_bound(part.universe.begin(), part.universe.end(), k);
    require(it != part.universe.end() && *it == k, Errc::InternalInconsistency,
            "twisted image left the universe");
    return static_cast<size_t>(it - part.universe.begin());
  };

  std::uint32_t next_id = 0;
  std::vector<Key128> frontier, next;
  for (size_t start = 0; start < part.universe.size(); ++start) {
    if (part.orbit_id[start] != KeyMap::kAbsent) continue;
    std::uint32_t id = next_id++;
    part.reps.push_back(part.universe[start]);
    part.orbit_id[start] = id;
    u64 size = 1;
    frontier.assign(1, part.universe[start]);
    while (!frontier.empty()) {
      std::vector<std::vector<Key128>> parts(std::max(workers, 1));
      parallel_chunks(frontier.size(), workers, [&](size_t b, size_t e, int w) {
        auto& local = parts[w];
        for (size_t i = b; i < e; ++i) {
          Mat x = unpack_mat(f, n, frontier[i]);
          for (const auto& [g, tgi] : act) local.push_back(pack_mat(ambient.norm(mul(mul(g, x), tgi))));
        }
      });
      next.clear();
      for (auto& p : parts)
        for (const auto& k : p) {
          size_t idx = index_of(k);
          if (part.orbit_id[idx] == KeyMap::kAbsent) {
            part.orbit_id[idx] = id;
            next.push_back(k);
            ++size;
          }
        }
      frontier.swap(next);
    }
    part.sizes.push_back(size);
  }
  return part;
}

Theorem51Report theorem51_check(int n, i64 q, int workers) {
  require((n == 3 && (q == 3 || q == 5)) || (n == 4 && q == 3), Errc::Budget,
          "theorem51_check runs at oracle scale: (3,3), (3,5), (4,3)");
  i64 p = factor_i64(q, 100000)[0];
  int m = 0;
  for (i64 t = q; t > 1; t /= p) ++m;
  FieldPtr base = Field::make(p, m);
  MatGroup pgl = make_group(GroupKind::PGL, n, base);
  MatGroup psl = make_group(GroupKind::PSL, n, base);
  Automorphism th = Automorphism::theta(base.get(), n, true);

  Theorem51Report rep;
  auto universe = enumerate_group(pgl, Config::global().closure_cap, workers);
  rep.pgl_order = static_cast<i64>(universe.size());
  auto part = twisted_class_partition(pgl, th, psl.gens, std::move(universe), workers);
  rep.twisted_class_count = static_cast<i64>(part.reps.size());

  // theta-semisimple classes: p coprime to |x theta|, tested on one rep each
  std::vector<bool> theta_ss(part.reps.size(), false);
  for (size_t i = 0; i < part.reps.size(); ++i) {
    Mat x = unpack_mat(base.get(), n, part.reps[i]);
    Mat y = proj_canon(mul(x, theta_apply(x)));  // (x theta)^2 up to center
    theta_ss[i] = (proj_order(y) % p) != 0;
    if (theta_ss[i]) ++rep.theta_semisimple_class_count;
  }

  // realized tori, projected to PGL
  std::vector<bool> covered(part.reps.size(), false);
  for (const auto& sig : conjugacy_reps(n)) {
    RealizedTorus rt(base, n, sig);
    for (const auto& k : rt.pgl_points(1'000'000)) {
      auto id = part.id_of(k);
      require(id != KeyMap::kAbsent, Errc::InternalInconsistency, "torus point outside PGL");
      covered[id] = true;
    }
  }
  rep.covered_class_count = 0;
  bool ok = true;
  for (size_t i = 0; i < part.reps.size(); ++i) {
    if (covered[i]) ++rep.covered_class_count;
    if (theta_ss[i] && !covered[i]) ok = false;
  }
  // the realized tori consist of theta-semisimple points, so coverage can
  // only ever hit theta-semisimple classes; the theorem is the converse
  rep.holds = ok;
  return rep;
}

ExhaustiveTypeD exhaustive_typeD(const MatTwistModel& model, const OrbitT<MatTwistModel>& orbit,
                                 bool orbit_is_full_class, u64 pair_cap) {
  const MatGroup& g = *model.group;
  Semidirect sd{model.psi, model.ell};
  ExhaustiveTypeD out;

  SdModel sdm;
  sdm.sd = sd;
  for (const auto& gg : g.gens) sdm.acting_gens.push_back(sd.make(gg, 0));
  if (model.ell > 1) require(key_fits(g.F()->q(), g.n), Errc::ScaleTooLarge, "keys too wide");

  SdElem base = sd.make(orbit.base, 1);
  i64 cap = lcm_checked(pgl_exponent_bound(g.F(), g.n), model.ell) * 2;
  i64 base_order = sd.order(base, cap);

  if (base_order == 2) {
    // the embedded class consists of involutions: linear scan equivalence
    bool found = false;
    std::string rwit;
    for (const auto& k : orbit.keys) {
      Mat y = model.unkey(k);
      SdElem r = sd.make(y, 1);
      SdElem t = sd.mul(r, base);
      i64 o = sd.order(t, cap);
      if (o % 2 == 0 && o > 4) {
        found = true;
        rwit = mat_to_string(y);
        break;
      }
    }
    out.is_type_d = found;
    out.definite = found || orbit_is_full_class;
    out.certificate = found ? "involution witness |r s| even > 4"
                            : (orbit_is_full_class ? "exhaustive involution scan over the class"
                                                   : "no witness in the given subrack");
    if (found) {
      out.witness_r = rwit;
      out.witness_s = mat_to_string(orbit.base);
    }
    return out;
  }

  require(orbit.size() <= Config::global().exhaustive_orbit_cap, Errc::Budget,
          "pair scan is quadratic; orbit too large");
  // general case: scan pairs in the embedded ordinary class
  OrbitT<SdModel> emb;
  emb.base = base;
  for (const auto& k : orbit.keys) emb.keys.push_back(sdm.key(sd.make(model.unkey(k), 1)));
  std::sort(emb.keys.begin(), emb.keys.end());
  SearchBudget budget;
  budget.max_pairs = pair_cap;
  budget.subrack_cap = Config::global().subgroup_cap;
  auto w = typeD_search(sdm, emb, budget);
  out.is_type_d = w.has_value();
  out.definite = w.has_value() || (budget.exhausted && orbit_is_full_class);
  if (w) {
    out.witness_r = mat_to_string(w->r.h);
    out.witness_s = mat_to_string(w->s.h);
    out.certificate = "pair witness with disjoint subracks";
  } else {
    out.certificate = budget.exhausted ? "exhausted all pairs" : "budget exceeded";
  }
  return out;
}

i64 semidirect_coset_class_count(const MatGroup& g, const Automorphism& theta, int workers) {
  auto keys = enumerate_group(g, Config::global().closure_cap, workers);
  Semidirect sd{theta, 2};
  SdModel sdm;
  sdm.sd = sd;
  for (const auto& gg : g.gens) sdm.acting_gens.push_back(sd.make(gg, 0));
  sdm.acting_gens.push_back(sd.make(Mat::identity(g.F(), g.n), 1));

  // partition the coset {(h, 1)} under conjugation by the whole semidirect
  // product; count the classes
  KeySet seen(keys.size() * 2);
  i64 classes = 0;
  std::vector<SdElem> frontier, next;
  for (const auto& k0 : keys) {
    SdElem x0 = sd.make(unpack_mat(g.F(), g.n, k0), 1);
    Key128 kk0 = sdm.key(x0);
    if (seen.contains(kk0)) continue;
    ++classes;
    seen.insert(kk0);
    frontier.assign(1, x0);
    while (!frontier.empty()) {
      next.clear();
      for (const auto& x : frontier) {
        for (const auto& gg : sdm.acting_gens) {
          SdElem y = sd.mul(sd.mul(gg, x), sd.inv(gg));
          Key128 yk = sdm.key(y);
          if (seen.insert(yk)) next.push_back(y);
        }
      }
      frontier.swap(next);
    }
  }
  (void)workers;
  return classes;
}

}  // namespace twr
