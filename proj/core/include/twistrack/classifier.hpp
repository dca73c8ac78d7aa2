#ifndef TWISTRACK_CLASSIFIER_HPP
#define TWISTRACK_CLASSIFIER_HPP

#include <optional>
#include <string>
#include <vector>

#include "twistrack/weyl.hpp"

namespace twr {

enum class Outcome { TypeD, PossibleException, NotTypeD };
const char* outcome_name(Outcome o);

// What is known about the representative x beyond its torus cell.
struct XInfo {
  bool identity_coset = false;          // x lies in the twisted PGL-orbit of 1
  std::optional<bool> theta_inverse;    // whether theta(x) = x^-1
  bool missing_class = false;           // the distinguished open class
};

struct ClassDescriptor {
  int n = 0;
  i64 q = 0;
  PartitionSignature sig;
  XInfo x;
  void validate() const;
};

// The x-granularity at which the decision lemmas distinguish cases.
enum class XBranch { Any, Generic, Invo, InvoId, InvoNonId };
const char* xbranch_name(XBranch b);

struct Verdict {
  Outcome outcome = Outcome::PossibleException;
  std::string justification;            // rule tag, e.g. "Tw.1", "weyl-j", "oracle"
  std::vector<std::string> table_rows;  // ids of matched exception rows
  std::string note;
};

// Exception-table row (transcription, kept as data).
struct TableRow {
  std::string id;
  std::string label;
  bool soft = false;  // carries the footnote "some of these are of type D"
  bool matches(int n, i64 q, const PartitionSignature& sig, XBranch b) const;
};
const std::vector<TableRow>& table1_rows();

// Pure decision ladder for one cell/branch.
Verdict classify_branch(int n, i64 q, const PartitionSignature& sig, XBranch b);
// Ladder with x-information folded in (weakest verdict consistent with x).
Verdict classify(const ClassDescriptor& c);

// Branches the sweep enumerates for a cell.
std::vector<XBranch> branches_for_cell(const PartitionSignature& sig);

struct SweepRecord {
  int n;
  i64 q;
  PartitionSignature sig;
  XBranch branch;
  Verdict verdict;
  std::vector<std::string> transcription_rows;  // independently matched rows
  bool agree;  // (outcome != TypeD) == (transcription_rows nonempty) and ids match
};

struct SweepResult {
  std::vector<SweepRecord> records;
  bool derivation_matches_transcription;
  std::vector<std::string> unmatched_rows;  // rows never hit inside the grid
  i64 exception_count;
};

// Odd prime powers in [3, q_max].
std::vector<i64> odd_prime_powers_upto(i64 q_max);

SweepResult table1_sweep(int n_max, i64 q_max);

struct MainTheoremReport {
  bool holds;
  std::vector<SweepRecord> exceptions;  // all of them; `holds` allows only the open class
};
MainTheoremReport main_theorem_check(int n, i64 q);

}  // namespace twr

#endif
