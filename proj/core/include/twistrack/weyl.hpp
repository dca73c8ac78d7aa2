#ifndef TWISTRACK_WEYL_HPP
#define TWISTRACK_WEYL_HPP

#include <optional>
#include <string>
#include <vector>

#include "twistrack/perm.hpp"

namespace twr {

// A conjugacy-class label for the theta-fixed Weyl group S_h wr Z_2 inside
// S_n: a partition lambda of h = floor(n/2) plus an admissible sign vector.
struct PartitionSignature {
  int n = 0;
  std::vector<int> lambda;  // weakly decreasing positive parts, sum = h
  std::vector<int> eps;     // 0/1 per part

  int h() const { return n / 2; }
  int r() const { return static_cast<int>(lambda.size()); }
  bool lambda_is_one() const;
  void validate() const;  // InvalidSignature on violation
  std::string to_string() const;  // "lambda=2,1;eps=1,0"
  static PartitionSignature parse(int n, const std::string& s);
};

// Longest element: i -> n+1-i.
Perm longest_element(int n);

// theta on W: conjugation by the longest element.
Perm weyl_theta(const Perm& w);

// All sign vectors admissible for lambda, lexicographic (0 before 1).
std::vector<std::vector<int>> admissible_eps(const std::vector<int>& lambda);

// eps^j = (1,...,1,0,...,0) with j trailing zeros, for lambda = (1,...,1).
std::vector<int> eps_with_trailing_zeros(int h, int j);

// Embedding of the class representative into S_n (block cycle form).
Perm sigma(const std::vector<int>& lambda, const std::vector<int>& eps, int n);

// Complete irredundant list of W^theta class representatives.
std::vector<PartitionSignature> conjugacy_reps(int n);

// Brute-force conjugacy-class count of the centralizer of w0 in S_n.
i64 wtheta_class_count_bruteforce(int n);

// Exhaustive type-D decision for the S_n class of the given cycle type
// (ordinary conjugation; the criterion is an equivalence here).
bool sym_class_typeD(int n, const std::vector<int>& cycle_type);

std::vector<std::vector<int>> partitions_of(int h);

}  // namespace twr

#endif
