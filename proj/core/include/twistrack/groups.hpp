#ifndef TWISTRACK_GROUPS_HPP
#define TWISTRACK_GROUPS_HPP

#include <string>
#include <vector>

#include "twistrack/mat.hpp"

namespace twr {

enum class GroupKind { GL, SL, Sp, SO, PGL, PSL };

const char* group_kind_name(GroupKind k);
GroupKind parse_group_kind(const std::string& s);

// Order by the standard formulas.
i64 group_order(GroupKind kind, int n, i64 q);

// A finite matrix group given by generators. For projective kinds the
// elements are canonical projective representatives.
struct MatGroup {
  GroupKind kind;
  int n;
  FieldPtr field;
  bool projective;
  std::vector<Mat> gens;

  const Field* F() const { return field.get(); }
  Mat norm(const Mat& m) const { return projective ? proj_canon(m) : m; }
  Mat id() const { return Mat::identity(F(), n); }
};

// Generating sets: SL via elementary transvections plus a torus generator;
// Sp/SO as the theta-fixed isometry groups of the J form (generators
// validated against g J g^T = J and det 1); PSL/PGL as projective images.
MatGroup make_group(GroupKind kind, int n, FieldPtr field);

// Deterministic level-synchronous closure BFS. Returns sorted packed keys.
std::vector<Key128> closure_keys(const MatGroup& g, u64 cap, int workers);

// Membership of θ-fixed points: g J g^T = J (the Sp/SO condition).
bool preserves_j_form(const Mat& g);

}  // namespace twr

#endif
