#include "twistrack/weyl.hpp"

#include <algorithm>
#include <sstream>

#include "twistrack/rack.hpp"

namespace twr {

bool PartitionSignature::lambda_is_one() const {
  for (int part : lambda)
    if (part != 1) return false;
  return true;
}

void PartitionSignature::validate() const {
  require(n >= 2, Errc::InvalidSignature, "n must be >= 2");
  int sum = 0;
  for (size_t i = 0; i < lambda.size(); ++i) {
    require(lambda[i] >= 1, Errc::InvalidSignature, "parts must be positive");
    if (i + 1 < lambda.size())
      require(lambda[i] >= lambda[i + 1], Errc::InvalidSignature, "parts must be weakly decreasing");
    sum += lambda[i];
  }
  require(sum == h(), Errc::InvalidSignature, "parts must sum to floor(n/2)");
  require(eps.size() == lambda.size(), Errc::InvalidSignature, "eps arity mismatch");
  for (size_t j = 0; j < eps.size(); ++j) {
    require(eps[j] == 0 || eps[j] == 1, Errc::InvalidSignature, "eps entries are 0/1");
    if (j + 1 < eps.size() && lambda[j] == lambda[j + 1] && eps[j] == 0)
      require(eps[j + 1] == 0, Errc::InvalidSignature,
              "inadmissible sign vector: equal parts need trailing zeros");
  }
}

std::string PartitionSignature::to_string() const {
  std::ostringstream os;
  os << "lambda=";
  for (size_t i = 0; i < lambda.size(); ++i) {
    if (i) os << ",";
    os << lambda[i];
  }
  os << ";eps=";
  for (size_t i = 0; i < eps.size(); ++i) {
    if (i) os << ",";
    os << eps[i];
  }
  return os.str();
}

PartitionSignature PartitionSignature::parse(int n, const std::string& s) {
  PartitionSignature sig;
  sig.n = n;
  auto semi = s.find(';');
  require(semi != std::string::npos, Errc::InvalidSignature, "expected lambda=..;eps=..");
  auto parse_list = [](const std::string& part, const std::string& prefix) {
    require(part.rfind(prefix, 0) == 0, Errc::InvalidSignature, "expected " + prefix);
    std::vector<int> out;
    std::istringstream is(part.substr(prefix.size()));
    std::string tok;
    while (std::getline(is, tok, ',')) out.push_back(std::stoi(tok));
    return out;
  };
  sig.lambda = parse_list(s.substr(0, semi), "lambda=");
  sig.eps = parse_list(s.substr(semi + 1), "eps=");
  sig.validate();
  return sig;
}

Perm longest_element(int n) {
  require(n >= 2, Errc::PreconditionViolated, "n must be >= 2");
  std::vector<int> img(n);
  for (int i = 0; i < n; ++i) img[i] = n - 1 - i;
  return Perm::from_images(std::move(img));
}

Perm weyl_theta(const Perm& w) {
  Perm w0 = longest_element(w.degree());
  return w0 * w * w0;
}

std::vector<std::vector<int>> admissible_eps(const std::vector<int>& lambda) {
  const int r = static_cast<int>(lambda.size());
  std::vector<std::vector<int>> out;
  for (int mask = 0; mask < (1 << r); ++mask) {
    std::vector<int> eps(r);
    for (int j = 0; j < r; ++j) eps[j] = (mask >> (r - 1 - j)) & 1;  // lexicographic order
    bool ok = true;
    for (int j = 0; j + 1 < r; ++j)
      if (lambda[j] == lambda[j + 1] && eps[j] == 0 && eps[j + 1] == 1) ok = false;
    if (ok) out.push_back(std::move(eps));
  }
  return out;
}

std::vector<int> eps_with_trailing_zeros(int h, int j) {
  require(j >= 0 && j <= h, Errc::PreconditionViolated, "bad zero count");
  std::vector<int> eps(h, 1);
  for (int i = h - j; i < h; ++i) eps[i] = 0;
  return eps;
}

Perm sigma(const std::vector<int>& lambda, const std::vector<int>& eps, int n) {
  PartitionSignature sig{n, lambda, eps};
  sig.validate();
  Perm w(n);
  int start = 0;  // i_{j-1}
  for (size_t j = 0; j < lambda.size(); ++j) {
    int end = start + lambda[j];  // i_j
    std::vector<int> cyc;
    for (int i = start + 1; i <= end; ++i) cyc.push_back(i);
    Perm c = Perm::cycle(n, cyc);
    Perm block = c * weyl_theta(c);
    if (eps[j] == 1) block = block * Perm::transposition(n, end, n + 1 - end);
    w = w * block;  // blocks commute (disjoint supports)
    start = end;
  }
  return w;
}

std::vector<std::vector<int>> partitions_of(int h) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  // descending enumeration: first part h, h-1, ...
  std::function<void(int, int)> rec = [&](int rest, int maxpart) {
    if (rest == 0) {
      out.push_back(cur);
      return;
    }
    for (int part = std::min(rest, maxpart); part >= 1; --part) {
      cur.push_back(part);
      rec(rest - part, part);
      cur.pop_back();
    }
  };
  rec(h, h);
  return out;
}

std::vector<PartitionSignature> conjugacy_reps(int n) {
  std::vector<PartitionSignature> out;
  for (const auto& lambda : partitions_of(n / 2))
    for (const auto& eps : admissible_eps(lambda)) out.push_back(PartitionSignature{n, lambda, eps});
  return out;
}

i64 wtheta_class_count_bruteforce(int n) {
  require(n <= 8, Errc::ScaleTooLarge, "brute-force Weyl class count capped at n = 8");
  Perm w0 = longest_element(n);
  // enumerate S_n, keep centralizer of w0
  std::vector<Perm> w;
  std::vector<int> img(n);
  for (int i = 0; i < n; ++i) img[i] = i;
  do {
    Perm p = Perm::from_images(img);
    if (p * w0 == w0 * p) w.push_back(p);
  } while (std::next_permutation(img.begin(), img.end()));
  std::vector<bool> seen(w.size(), false);
  std::sort(w.begin(), w.end());
  auto index_of = [&](const Perm& p) {
    return static_cast<size_t>(std::lower_bound(w.begin(), w.end(), p) - w.begin());
  };
  i64 classes = 0;
  for (size_t i = 0; i < w.size(); ++i) {
    if (seen[i]) continue;
    ++classes;
    for (const auto& g : w) seen[index_of(g * w[i] * g.inverse())] = true;
  }
  return classes;
}

bool sym_class_typeD(int n, const std::vector<int>& cycle_type) {
  require(n <= 9, Errc::ScaleTooLarge, "symmetric-group type-D decision capped at n = 9");
  int sum = 0;
  for (int c : cycle_type) sum += c;
  require(sum == n, Errc::PreconditionViolated, "cycle type must sum to n");

  // canonical representative of the class
  Perm rep(n);
  int at = 1;
  for (int c : cycle_type) {
    std::vector<int> cyc;
    for (int i = 0; i < c; ++i) cyc.push_back(at + i);
    if (c > 1) rep = rep * Perm::cycle(n, cyc);
    at += c;
  }
  if (rep.is_identity()) return false;

  PermModel m;
  m.degree = n;
  std::vector<int> full(n);
  for (int i = 0; i < n; ++i) full[i] = i + 1;
  m.acting_gens = {Perm::transposition(n, 1, 2), Perm::cycle(n, full)};

  if ((rep * rep).is_identity()) {
    bool exhausted = false;
    auto w = involution_typeD(m, rep, 1'000'000, &exhausted);
    return w.has_value();
  }
  auto orbit = orbit_enumerate(m, rep, 1'000'000);
  SearchBudget budget;
  budget.max_pairs = orbit.size() * orbit.size() + 64;
  budget.subrack_cap = 400'000;
  auto w = typeD_search(m, orbit, budget);
  if (w) return true;
  require(budget.exhausted, Errc::Budget, "pair scan did not complete");
  return false;
}

}  // namespace twr
