#include "twistrack/classifier.hpp"

#include <algorithm>

namespace twr {

const char* outcome_name(Outcome o) {
  switch (o) {
    case Outcome::TypeD: return "TypeD";
    case Outcome::PossibleException: return "PossibleException";
    case Outcome::NotTypeD: return "NotTypeD";
  }
  return "?";
}

const char* xbranch_name(XBranch b) {
  switch (b) {
    case XBranch::Any: return "any";
    case XBranch::Generic: return "theta_x_not_inverse";
    case XBranch::Invo: return "theta_x_inverse";
    case XBranch::InvoId: return "identity_coset";
    case XBranch::InvoNonId: return "theta_x_inverse_non_identity";
  }
  return "?";
}

namespace {

bool is_odd_prime_power(i64 q) {
  if (q < 3 || q % 2 == 0) return false;
  i64 p = factor_i64(q, 100000)[0];
  i64 t = q;
  while (t % p == 0) t /= p;
  return t == 1;
}

bool weylj_covered(int n, const std::vector<int>& eps) {
  int zeros = 0;
  for (int e : eps)
    if (e == 0) ++zeros;
  return (n % 2 == 0 && zeros >= 3) || (n % 2 == 1 && zeros > 3);
}

bool q_is_3_mod_4(i64 q) { return q % 4 == 3; }

Verdict typeD(const std::string& tag, const std::string& note = "") {
  return Verdict{Outcome::TypeD, tag, {}, note};
}

Verdict exception(std::vector<std::string> rows, const std::string& note = "") {
  return Verdict{Outcome::PossibleException, "", std::move(rows), note};
}

// The split-torus ladder (lambda = 1), optionally with the extra knowledge
// that x is in the identity coset.
Verdict classify_lambda_one(int n, i64 q, const std::vector<int>& eps, bool identity_coset) {
  const int h = n / 2;
  if (weylj_covered(n, eps)) return typeD("weyl-j");
  if (identity_coset) {
    // the identity class sits in the split torus with every sign vector
    if (weylj_covered(n, eps_with_trailing_zeros(h, h))) return typeD("weyl-j");
    if (n == 4) {
      if (q == 3) return Verdict{Outcome::NotTypeD, "oracle", {}, "identity class at n=4, q=3"};
      if (q > 9 && q % 4 == 1) return typeD("Tw.5");
      if (q > 7 && q_is_3_mod_4(q)) return typeD("5.10");
    }
  }
  if (n != 3 && n != 4 && q > 5) return typeD("Tw.3");
  if (n == 3 && (q == 9 || q == 11 || q > 13)) return typeD("Tw.4");
  if (n == 4 && q > 9 && q % 4 == 1) return typeD("Tw.5");
  std::vector<std::string> rows;
  if (q == 3 || q == 5) rows.push_back("lam1-q35");
  if (n == 3 && (q == 7 || q == 13)) rows.push_back("lam1-n3-q7-13");
  if (n == 4 && q_is_3_mod_4(q)) rows.push_back("lam1-n4-q3mod4");
  if (n == 4 && q == 9) rows.push_back("lam1-n4-q9");
  require(!rows.empty(), Errc::InternalInconsistency, "split-torus ladder fell through");
  return exception(std::move(rows));
}

Verdict join(const std::vector<Verdict>& vs) {
  // weakest verdict consistent with every branch
  bool any_exc = false, any_not = false, all_not = true;
  std::vector<std::string> rows;
  std::string tag;
  for (const auto& v : vs) {
    if (v.outcome == Outcome::PossibleException) any_exc = true;
    if (v.outcome == Outcome::NotTypeD) any_not = true;
    if (v.outcome != Outcome::NotTypeD) all_not = false;
    for (const auto& r : v.table_rows)
      if (std::find(rows.begin(), rows.end(), r) == rows.end()) rows.push_back(r);
    if (v.outcome == Outcome::TypeD) tag = v.justification;
  }
  if (all_not) return Verdict{Outcome::NotTypeD, "oracle", {}, ""};
  if (any_exc || any_not) {
    std::sort(rows.begin(), rows.end());
    return Verdict{Outcome::PossibleException, "", rows, ""};
  }
  return typeD(tag);
}

}  // namespace

void ClassDescriptor::validate() const {
  sig.validate();
  require(sig.n == n, Errc::InvalidDescriptor, "signature n mismatch");
  require(is_odd_prime_power(q), Errc::InvalidDescriptor, "q must be an odd prime power >= 3");
  require(n > 2 || q > 3, Errc::InvalidDescriptor, "n = 2 needs q > 3");
  if (x.missing_class) {
    require(sig.r() == 1 && sig.eps[0] == 1 && (n / 2) % 2 == 1 && n % 2 == 0,
            Errc::InvalidDescriptor, "the open class needs n = 2h, h odd, eps = (1)");
  }
}

Verdict classify_branch(int n, i64 q, const PartitionSignature& sig, XBranch b) {
  const int r = sig.r();
  const int h = n / 2;
  if (sig.lambda_is_one()) {
    return classify_lambda_one(n, q, sig.eps, b == XBranch::InvoId);
  }
  if (n % 2 == 1) return typeD("Tw.1");
  if (r > 2) return typeD("Tw.2");
  if (r == 2) {
    if (sig.eps[0] == 1) return typeD("r2e1");
    if (q > 5) return typeD("r2e0");
    if (q == 5 && sig.lambda[1] > 1) return typeD("r2e0", "refined: q=5 needs lambda2=1 to fail");
    if (q == 3 && sig.lambda[0] > 1 && sig.lambda[1] > 2)
      return typeD("r2e0", "refined: q=3 needs lambda2<=2 to fail");
    return exception({"r2-eps0-q35"});
  }
  // r = 1, lambda = (h), h >= 2, n = 2h even
  if (sig.eps[0] == 0) {
    auto generic = [&]() -> Verdict {
      if (n == 4 && (q == 3 || q == 7)) return exception({"r1-eps0-n4-q37"});
      return typeD("5.9");
    };
    auto invo = [&]() -> Verdict {
      if (n >= 6) return typeD("5.9");
      if (q == 3 || q == 7) return exception({"r1-eps0-n4-q37"});
      if (q == 5 || q == 9) return exception({"r1-eps0-n4-q59"});
      if (q % 4 == 1) return typeD("5.9");
      return typeD("5.10");
    };
    switch (b) {
      case XBranch::Generic: return generic();
      case XBranch::Invo:
      case XBranch::InvoId:
      case XBranch::InvoNonId: return invo();
      case XBranch::Any: return join({generic(), invo()});
    }
    fail(Errc::InternalInconsistency, "classifier ladder fell through");
  }
  // eps = (1)
  auto generic = [&]() -> Verdict {
    if (n == 4 && (q == 3 || q == 7)) return exception({"r1-eps1-n4-q37"});
    return typeD("5.12");
  };
  auto invo_id = [&]() -> Verdict {
    Verdict v = classify_lambda_one(n, q, eps_with_trailing_zeros(h, h), true);
    if (v.outcome == Outcome::TypeD) v.justification = "5.12";
    return v;
  };
  auto invo_non_id = [&]() -> Verdict {
    if (h % 2 == 0) return typeD("5.12");
    return exception({"r1-eps1-open"}, "class of the distinguished representative");
  };
  switch (b) {
    case XBranch::Generic: return generic();
    case XBranch::InvoId: return invo_id();
    case XBranch::InvoNonId: return invo_non_id();
    case XBranch::Invo: return join({invo_id(), invo_non_id()});
    case XBranch::Any: return join({generic(), invo_id(), invo_non_id()});
  }
  fail(Errc::InternalInconsistency, "classifier ladder fell through");
}

Verdict classify(const ClassDescriptor& c) {
  c.validate();
  if (c.x.missing_class) return classify_branch(c.n, c.q, c.sig, XBranch::InvoNonId);
  if (c.x.identity_coset) {
    // the class of 1; both the cell's lemma and the split-torus ladder apply
    Verdict direct = classify_branch(c.n, c.q, c.sig,
                                     c.sig.lambda_is_one() ? XBranch::InvoId
                                     : c.sig.r() == 1      ? XBranch::InvoId
                                                           : XBranch::Any);
    Verdict delegated = classify_lambda_one(c.n, c.q,
                                            eps_with_trailing_zeros(c.n / 2, c.n / 2), true);
    if (delegated.outcome == Outcome::NotTypeD) return delegated;
    if (direct.outcome == Outcome::NotTypeD) return direct;
    if (direct.outcome == Outcome::TypeD) return direct;
    if (delegated.outcome == Outcome::TypeD) return delegated;
    return direct;
  }
  if (c.x.theta_inverse.has_value()) {
    if (!*c.x.theta_inverse) return classify_branch(c.n, c.q, c.sig, XBranch::Generic);
    if (c.sig.r() == 1 && !c.sig.lambda_is_one() && c.sig.eps[0] == 1)
      return classify_branch(c.n, c.q, c.sig, XBranch::InvoNonId);
    if (c.sig.r() == 1 && !c.sig.lambda_is_one())
      return classify_branch(c.n, c.q, c.sig, XBranch::Invo);
    return classify_branch(c.n, c.q, c.sig, XBranch::Any);
  }
  return classify_branch(c.n, c.q, c.sig, XBranch::Any);
}

// ---------------------------------------------------------------------------
// Transcription

bool TableRow::matches(int n, i64 q, const PartitionSignature& sig, XBranch b) const {
  const int r = sig.r();
  const int h = n / 2;
  const bool lam1 = sig.lambda_is_one();
  const bool reduces_to_split = lam1 || (r == 1 && sig.eps[0] == 1 && b == XBranch::InvoId);
  if (id == "r2-eps0-q35") {
    if (lam1 || r != 2 || sig.eps[0] != 0 || n % 2 != 0) return false;
    if (q != 3 && q != 5) return false;
    if (q == 5 && sig.lambda[1] > 1) return false;              // Remark refinement
    if (q == 3 && sig.lambda[0] > 1 && sig.lambda[1] > 2) return false;
    return true;
  }
  if (id == "r1-eps0-n4-q37")
    return !lam1 && r == 1 && sig.eps[0] == 0 && n == 4 && (q == 3 || q == 7);
  if (id == "r1-eps0-n4-q59")
    return !lam1 && r == 1 && sig.eps[0] == 0 && n == 4 && (q == 5 || q == 9) &&
           (b == XBranch::Invo || b == XBranch::InvoId || b == XBranch::InvoNonId);
  if (id == "r1-eps1-n4-q37")
    return !lam1 && r == 1 && sig.eps[0] == 1 && n == 4 && (q == 3 || q == 7) &&
           (b == XBranch::Generic || b == XBranch::Any);
  if (id == "r1-eps1-open")
    return !lam1 && r == 1 && sig.eps[0] == 1 && n % 2 == 0 && h % 2 == 1 &&
           (b == XBranch::InvoNonId || b == XBranch::Invo || b == XBranch::Any);
  // split-torus rows; for delegated branches use the trailing-zero vector
  if (!reduces_to_split) return false;
  std::vector<int> eff_eps = lam1 && b != XBranch::InvoId ? sig.eps : eps_with_trailing_zeros(h, h);
  if (id == "lam1-q35") return (q == 3 || q == 5) && !weylj_covered(n, eff_eps);
  if (id == "lam1-n3-q7-13") return n == 3 && (q == 7 || q == 13);
  // identity-coset classes leave this row for q > 7 (the h2 construction)
  if (id == "lam1-n4-q3mod4") return n == 4 && q % 4 == 3 && !(b == XBranch::InvoId && q > 7);
  if (id == "lam1-n4-q9") return n == 4 && q == 9;
  return false;
}

const std::vector<TableRow>& table1_rows() {
  static const std::vector<TableRow> rows = {
      {"r2-eps0-q35", "lambda!=1 | r=2, eps=(0,e2) | n even | q=3,5 | any x", false},
      {"r1-eps0-n4-q37", "lambda!=1 | r=1, eps=(0) | n=4 | q=3,7 | any x", false},
      {"r1-eps0-n4-q59", "lambda!=1 | r=1, eps=(0) | n=4 | q=5,9 | theta(x)=x^-1", false},
      {"r1-eps1-n4-q37", "lambda!=1 | r=1, eps=(1) | n=4 | q=3,7 | theta(x)!=x^-1", false},
      {"r1-eps1-open", "lambda!=1 | r=1, eps=(1) | n=2*odd | any q | open class", false},
      {"lam1-q35", "lambda=1 | any n | q=3,5 | any x (*)", true},
      {"lam1-n3-q7-13", "lambda=1 | n=3 | q=7,13 | any x", false},
      {"lam1-n4-q3mod4", "lambda=1 | n=4 | q=3 mod 4 | any x", false},
      {"lam1-n4-q9", "lambda=1 | n=4 | q=9 | any x", false},
  };
  return rows;
}

std::vector<XBranch> branches_for_cell(const PartitionSignature& sig) {
  // the lemmas split on x only at even n, one block, lambda != 1
  if (sig.lambda_is_one() || sig.r() != 1 || sig.n % 2 == 1) return {XBranch::Any};
  if (sig.eps[0] == 0) return {XBranch::Generic, XBranch::Invo};
  return {XBranch::Generic, XBranch::InvoId, XBranch::InvoNonId};
}

std::vector<i64> odd_prime_powers_upto(i64 q_max) {
  std::vector<i64> out;
  for (i64 q = 3; q <= q_max; q += 2)
    if (is_odd_prime_power(q)) out.push_back(q);
  return out;
}

SweepResult table1_sweep(int n_max, i64 q_max) {
  SweepResult res;
  res.derivation_matches_transcription = true;
  res.exception_count = 0;
  std::vector<std::string> hit;
  for (int n = 3; n <= n_max; ++n) {
    for (i64 q : odd_prime_powers_upto(q_max)) {
      for (const auto& sig : conjugacy_reps(n)) {
        for (XBranch b : branches_for_cell(sig)) {
          SweepRecord rec{n, q, sig, b, classify_branch(n, q, sig, b), {}, true};
          for (const auto& row : table1_rows())
            if (row.matches(n, q, sig, b)) rec.transcription_rows.push_back(row.id);
          std::sort(rec.transcription_rows.begin(), rec.transcription_rows.end());
          bool exceptional = rec.verdict.outcome != Outcome::TypeD;
          rec.agree = (exceptional == !rec.transcription_rows.empty());
          if (exceptional) {
            ++res.exception_count;
            auto rows = rec.verdict.table_rows;
            std::sort(rows.begin(), rows.end());
            if (rec.verdict.outcome == Outcome::PossibleException)
              rec.agree = rec.agree && rows == rec.transcription_rows;
            for (const auto& r : rec.transcription_rows) hit.push_back(r);
          }
          if (!rec.agree) res.derivation_matches_transcription = false;
          res.records.push_back(std::move(rec));
        }
      }
    }
  }
  std::sort(hit.begin(), hit.end());
  for (const auto& row : table1_rows())
    if (!std::binary_search(hit.begin(), hit.end(), row.id)) res.unmatched_rows.push_back(row.id);
  if (!res.unmatched_rows.empty()) res.derivation_matches_transcription = false;
  return res;
}

MainTheoremReport main_theorem_check(int n, i64 q) {
  require(n >= 5 && q >= 7, Errc::PreconditionViolated, "main theorem needs n >= 5 and q >= 7");
  require(is_odd_prime_power(q), Errc::InvalidDescriptor, "q must be an odd prime power");
  MainTheoremReport rep;
  rep.holds = true;
  for (const auto& sig : conjugacy_reps(n)) {
    for (XBranch b : branches_for_cell(sig)) {
      Verdict v = classify_branch(n, q, sig, b);
      if (v.outcome == Outcome::TypeD) continue;
      SweepRecord rec{n, q, sig, b, v, {}, true};
      bool is_open_class = v.table_rows.size() == 1 && v.table_rows[0] == "r1-eps1-open" &&
                           (n / 2) % 2 == 1 && n % 2 == 0;
      if (!is_open_class) rep.holds = false;
      rep.exceptions.push_back(std::move(rec));
    }
  }
  return rep;
}

}  // namespace twr
