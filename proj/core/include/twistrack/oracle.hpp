#ifndef TWISTRACK_ORACLE_HPP
#define TWISTRACK_ORACLE_HPP

#include <optional>
#include <string>
#include <vector>

#include "twistrack/rack.hpp"

namespace twr {

// Full group closure, cached on disk when a cache directory is configured.
// Cache entries are keyed by (kind, n, q, modulus, code version) and verified
// on load by size and sampled membership.
std::vector<Key128> enumerate_group(const MatGroup& g, u64 cap, int workers);

struct TwistedPartition {
  std::vector<Key128> universe;       // sorted keys of the partitioned set
  std::vector<std::uint32_t> orbit_id;  // parallel to universe
  std::vector<Key128> reps;           // orbit representatives (first seen key)
  std::vector<u64> sizes;
  std::uint32_t id_of(const Key128& k) const;
};

// Partition `universe` into orbits of g . x = g x psi(g)^-1 under the acting
// generators (a subgroup of the group the universe lives in).
TwistedPartition twisted_class_partition(const MatGroup& ambient, const Automorphism& psi,
                                         const std::vector<Mat>& acting_gens,
                                         std::vector<Key128> universe, int workers);

struct Theorem51Report {
  i64 pgl_order = 0;
  i64 twisted_class_count = 0;
  i64 theta_semisimple_class_count = 0;
  i64 covered_class_count = 0;
  bool holds = false;
};
// Every theta-semisimple class of PGL_n(q) under twisted PSL-conjugation
// meets the union of the realized tori.
Theorem51Report theorem51_check(int n, i64 q, int workers);

struct ExhaustiveTypeD {
  bool is_type_d = false;
  bool definite = false;  // certificate covers the whole class
  std::string certificate;
  std::optional<std::string> witness_r, witness_s;
};

// Decides type D for the twisted orbit by embedding it into H x| <psi> where
// the subrack criterion is an equivalence. Definite only when `orbit` is the
// full twisted class of its base point under the acting group.
ExhaustiveTypeD exhaustive_typeD(const MatTwistModel& model, const OrbitT<MatTwistModel>& orbit,
                                 bool orbit_is_full_class, u64 pair_cap);

// Number of ordinary conjugacy classes of H x| <theta> meeting the twisted
// coset, for the cross-count sanity check.
i64 semidirect_coset_class_count(const MatGroup& g, const Automorphism& theta, int workers);

}  // namespace twr

#endif
