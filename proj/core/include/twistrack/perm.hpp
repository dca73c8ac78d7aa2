#ifndef TWISTRACK_PERM_HPP
#define TWISTRACK_PERM_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "twistrack/errors.hpp"
#include "twistrack/field.hpp"

namespace twr {

// Permutations of {1..n}, stored 0-based. Composition is right-to-left:
// (a*b)(i) = a(b(i)).
class Perm {
 public:
  Perm() = default;
  explicit Perm(int n) : img_(n) {
    for (int i = 0; i < n; ++i) img_[i] = i;
  }
  static Perm from_images(std::vector<int> img) {
    Perm p;
    p.img_ = std::move(img);
    return p;
  }
  // One cycle (1-based entries) inside S_n.
  static Perm cycle(int n, const std::vector<int>& cyc);
  static Perm transposition(int n, int a, int b);

  int degree() const { return static_cast<int>(img_.size()); }
  int operator()(int i) const { return img_[i]; }  // 0-based
  bool is_identity() const;

  Perm operator*(const Perm& o) const;
  Perm inverse() const;
  bool operator==(const Perm& o) const { return img_ == o.img_; }
  bool operator<(const Perm& o) const { return img_ < o.img_; }

  u64 key() const;  // packed, degree <= 16
  static Perm from_key(u64 k, int n);

  std::vector<std::vector<int>> cycles(bool with_fixed = false) const;  // 1-based
  std::vector<int> cycle_type() const;  // sorted descending, incl. fixed points
  i64 order() const;
  std::string to_string() const;  // cycle notation, 1-based

 private:
  std::vector<int> img_;
};

}  // namespace twr

#endif
