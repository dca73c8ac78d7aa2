#include "twistrack/perm.hpp"

#include <algorithm>
#include <sstream>

namespace twr {

Perm Perm::cycle(int n, const std::vector<int>& cyc) {
  Perm p(n);
  if (cyc.size() < 2) return p;
  for (size_t i = 0; i < cyc.size(); ++i) {
    int from = cyc[i] - 1;
    int to = cyc[(i + 1) % cyc.size()] - 1;
    require(from >= 0 && from < n && to >= 0 && to < n, Errc::PreconditionViolated,
            "cycle entry out of range");
    p.img_[from] = to;
  }
  return p;
}

Perm Perm::transposition(int n, int a, int b) { return cycle(n, {a, b}); }

bool Perm::is_identity() const {
  for (int i = 0; i < degree(); ++i)
    if (img_[i] != i) return false;
  return true;
}

Perm Perm::operator*(const Perm& o) const {
  require(degree() == o.degree(), Errc::PreconditionViolated, "degree mismatch");
  Perm r;
  r.img_.resize(degree());
  for (int i = 0; i < degree(); ++i) r.img_[i] = img_[o.img_[i]];
  return r;
}

Perm Perm::inverse() const {
  Perm r;
  r.img_.resize(degree());
  for (int i = 0; i < degree(); ++i) r.img_[img_[i]] = i;
  return r;
}

u64 Perm::key() const {
  require(degree() <= 16, Errc::PreconditionViolated, "packed permutations need degree <= 16");
  u64 k = 0;
  for (int i = degree() - 1; i >= 0; --i) k = (k << 4) | static_cast<u64>(img_[i]);
  return k;
}

Perm Perm::from_key(u64 k, int n) {
  std::vector<int> img(n);
  for (int i = 0; i < n; ++i) {
    img[i] = static_cast<int>(k & 0xF);
    k >>= 4;
  }
  return from_images(std::move(img));
}

std::vector<std::vector<int>> Perm::cycles(bool with_fixed) const {
  std::vector<std::vector<int>> out;
  std::vector<bool> seen(degree(), false);
  for (int i = 0; i < degree(); ++i) {
    if (seen[i]) continue;
    std::vector<int> c;
    int j = i;
    while (!seen[j]) {
      seen[j] = true;
      c.push_back(j + 1);
      j = img_[j];
    }
    if (c.size() > 1 || with_fixed) out.push_back(std::move(c));
  }
  return out;
}

std::vector<int> Perm::cycle_type() const {
  std::vector<int> t;
  for (auto& c : cycles(true)) t.push_back(static_cast<int>(c.size()));
  std::sort(t.rbegin(), t.rend());
  return t;
}

i64 Perm::order() const {
  i64 o = 1;
  for (auto& c : cycles()) o = lcm_checked(o, static_cast<i64>(c.size()));
  return o;
}

std::string Perm::to_string() const {
  auto cs = cycles();
  if (cs.empty()) return "()";
  std::ostringstream os;
  for (auto& c : cs) {
    os << "(";
    for (size_t i = 0; i < c.size(); ++i) {
      if (i) os << ",";
      os << c[i];
    }
    os << ")";
  }
  return os.str();
}

}  // namespace twr
