#ifndef TWISTRACK_SPECIAL_HPP
#define TWISTRACK_SPECIAL_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "twistrack/mat.hpp"
#include "twistrack/rack.hpp"
#include "twistrack/torus.hpp"

namespace twr {

// Block witness matrices over GF(q), n = 4:
//   m(A,e,f) = [ A        e*id_2 ]
//              [ f*id_2   J2 A^T J2^-1 ]
Mat block_m(const Field* f, const Mat& a2, Fe e, Fe fcoef);
// u_t(x) = x t J x^T J t; for t = 1 it equals x^2 on m-shaped matrices.
Mat u_map(const Mat& x, const Mat& t);
// Does some scalar multiple of x have the m-shape? Returns (A, e, f).
std::optional<std::tuple<Mat, Fe, Fe>> m_shape_of(const Mat& proj_x);

struct H2Witness {
  Mat x;               // canonical projective representative
  i64 proj_order_x;    // q + 1
  i64 proj_order_x2;   // (q+1)/2, even and > 4
  std::string trace;   // Tr(z) as a base-field element string
};
// The q = 3 (mod 4), q not in {3, 7} construction over GF(q^2).
H2Witness h2_witness(i64 q);

struct Psl43Scan {
  i64 max_proj_order;
  std::map<i64, i64> histogram;  // projective order -> count
  i64 invertible_count;
  bool identities_verified;  // det, trace and annihilation identities
};
Psl43Scan psl43_scan();

struct MissingClassRep {
  i64 eta_exponent;       // (1 + q^h)/2 as an exponent of the F_{q^n} generator
  Mat rep;                // canonical projective representative of pi(t_eta)
  bool theta_semisimple;
  i64 rep_theta_order;    // |pi(t_eta) theta| = 2
};
MissingClassRep missing_class_rep(int n, i64 q);

struct QuestionOutcome {
  bool exhaustive;
  u64 tried;
  std::optional<i64> witness_order;  // even and > 4 when found
  std::string witness_matrix;       // serialized over the working extension
  std::map<i64, i64> order_histogram;
};
QuestionOutcome question_search(int n, i64 q, u64 budget);

struct UnipotentWitness {
  Mat r, s;        // canonical projective representatives
  u64 subrack_r, subrack_s;
  bool certified;  // the rack inequality and disjointness both verified
};
UnipotentWitness unipotent_witness(int n, i64 q, bool eta_square);

struct RegularUnipotentWitness {
  Mat u;         // the regular unipotent element of SO_n(q)
  Mat r, s;
  u64 subrack_r, subrack_s;
  bool certified;
};
RegularUnipotentWitness regular_unipotent_odd(int n, i64 q);

}  // namespace twr

#endif
