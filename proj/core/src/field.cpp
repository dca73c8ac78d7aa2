#include "twistrack/field.hpp"

#include <algorithm>
#include <sstream>

#include "twistrack/config.hpp"

namespace twr {

namespace {

constexpr i64 kTableLimit = 1 << 16;

// Dense little-endian polynomial arithmetic over GF(p), used only during
// construction (irreducibility tests); element arithmetic goes through the
// index representation.
using Poly = std::vector<i64>;

void ptrim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly pmod(Poly a, const Poly& f, i64 p) {
  ptrim(a);
  const int df = static_cast<int>(f.size()) - 1;
  while (static_cast<int>(a.size()) - 1 >= df) {
    const int da = static_cast<int>(a.size()) - 1;
    i64 c = a.back() % p;  // f is monic
    for (int i = 0; i <= df; ++i) {
      i64& t = a[da - df + i];
      t = ((t - c * f[i]) % p + p) % p;
    }
    ptrim(a);
  }
  return a;
}

Poly pmulmod(const Poly& a, const Poly& b, const Poly& f, i64 p) {
  if (a.empty() || b.empty()) return {};
  Poly c(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + a[i] * b[j]) % p;
  }
  return pmod(std::move(c), f, p);
}

Poly ppowmod(Poly base, i64 e, const Poly& f, i64 p) {
  Poly r = {1};
  base = pmod(std::move(base), f, p);
  while (e > 0) {
    if (e & 1) r = pmulmod(r, base, f, p);
    base = pmulmod(base, base, f, p);
    e >>= 1;
  }
  return r;
}

Poly pgcd(Poly a, Poly b, i64 p) {
  ptrim(a);
  ptrim(b);
  while (!b.empty()) {
    // make b monic to divide
    i64 lead = b.back();
    if (lead != 1) {
      i64 il = mod_inverse(lead, p);
      for (auto& c : b) c = c * il % p;
    }
    Poly r = pmod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

// Complete small-degree test: f (monic, degree m) is irreducible over GF(p)
// iff gcd(f, X^{p^k} - X) = 1 for every k <= m/2.
bool is_irreducible(const Poly& f, i64 p) {
  const int m = static_cast<int>(f.size()) - 1;
  if (m == 1) return true;
  if (f[0] == 0) return false;  // divisible by X
  Poly x = {0, 1};
  Poly xp = x;
  for (int k = 1; 2 * k <= m; ++k) {
    xp = ppowmod(xp, p, f, p);  // X^{p^k} mod f
    Poly d = xp;
    if (d.size() < 2) d.resize(2, 0);
    d[1] = ((d[1] - 1) % p + p) % p;  // X^{p^k} - X
    Poly g = pgcd(f, d, p);
    if (static_cast<int>(g.size()) - 1 >= 1) return false;
  }
  return true;
}

}  // namespace

i64 gcd_i64(i64 a, i64 b) {
  while (b) {
    i64 t = a % b;
    a = b;
    b = t;
  }
  return a < 0 ? -a : a;
}

i64 lcm_checked(i64 a, i64 b) {
  i128 r = (i128)(a / gcd_i64(a, b)) * b;
  require(r <= INT64_MAX, Errc::Overflow, "lcm exceeds 64-bit range");
  return (i64)r;
}

i64 ipow_checked(i64 base, int exp) {
  i128 r = 1;
  for (int i = 0; i < exp; ++i) {
    r *= base;
    require(r <= INT64_MAX, Errc::Overflow, "power exceeds 64-bit range");
  }
  return (i64)r;
}

bool is_prime_i64(i64 n) {
  if (n < 2) return false;
  for (i64 d = 2; (i128)d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<i64> factor_i64(i64 n, i64 cap) {
  std::vector<i64> out;
  for (i64 d = 2; (i128)d * d <= n; ++d) {
    if (d > cap) fail(Errc::FactorTooLarge, "trial division cap exceeded factoring " + std::to_string(n));
    while (n % d == 0) {
      out.push_back(d);
      n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

i64 mod_inverse(i64 a, i64 m) {
  i64 g = m, x = 0, x1 = 1, a1 = ((a % m) + m) % m;
  while (a1) {
    i64 qq = g / a1;
    i64 t = g - qq * a1;
    g = a1;
    a1 = t;
    t = x - qq * x1;
    x = x1;
    x1 = t;
  }
  require(g == 1, Errc::InternalInconsistency, "mod_inverse of non-unit");
  return ((x % m) + m) % m;
}

i64 q_bracket(i64 b, i64 a) {
  require(b >= 1 && a >= 1, Errc::PreconditionViolated, "q_bracket needs positive arguments");
  i128 acc = 0, term = 1;
  for (i64 i = 0; i < b; ++i) {
    acc += term;
    require(acc <= INT64_MAX, Errc::Overflow, "q_bracket exceeds 64-bit range");
    if (i + 1 < b) {
      term *= a;
      require(term <= INT64_MAX, Errc::Overflow, "q_bracket exceeds 64-bit range");
    }
  }
  return (i64)acc;
}

std::shared_ptr<const Field> Field::make(i64 p, int m, std::optional<std::vector<i64>> modulus) {
  auto f = std::shared_ptr<Field>(new Field());
  f->build(p, m, std::move(modulus));
  return f;
}

void Field::build(i64 p, int m, std::optional<std::vector<i64>> modulus) {
  require(p != 2, Errc::EvenCharacteristic, "characteristic 2 is not supported");
  require(p > 2 && is_prime_i64(p), Errc::NotPrime, std::to_string(p) + " is not an odd prime");
  require(m >= 1, Errc::PreconditionViolated, "degree must be positive");
  p_ = p;
  m_ = m;
  q_ = ipow_checked(p, m);

  if (modulus) {
    Poly f = *modulus;
    require(static_cast<int>(f.size()) == m + 1 && f[m] == 1, Errc::PreconditionViolated,
            "modulus must be monic of degree m");
    for (auto& c : f) c = ((c % p) + p) % p;
    require(is_irreducible(f, p), Errc::Reducible, "given modulus is reducible");
    modulus_ = f;
  } else {
    for (i64 a = 0;; ++a) {
      require(a < q_, Errc::InternalInconsistency, "no irreducible polynomial found");
      Poly f(m + 1, 0);
      i64 t = a;
      for (int i = 0; i < m; ++i) {
        f[i] = t % p;
        t /= p;
      }
      f[m] = 1;
      if (is_irreducible(f, p)) {
        modulus_ = f;
        break;
      }
    }
  }

  qm1_factors_ = factor_i64(q_ - 1, Config::global().factor_cap);
  qm1_factors_.erase(std::unique(qm1_factors_.begin(), qm1_factors_.end()), qm1_factors_.end());

  if (q_ <= kTableLimit) {
    // exp/log tables over the deterministic generator
    Fe g = generator();
    log_.assign(q_, -1);
    exp_.assign(2 * (q_ - 1), 0);
    Fe x = 1;
    for (i64 i = 0; i < q_ - 1; ++i) {
      exp_[i] = x;
      exp_[i + q_ - 1] = x;
      log_[x] = i;
      x = mul_poly(x, g);
    }
    require(x == 1, Errc::InternalInconsistency, "generator order mismatch while building tables");
  }
}

Field::~Field() = default;

Fe Field::from_int(i64 c) const {
  c %= p_;
  if (c < 0) c += p_;
  return c;
}

std::vector<i64> Field::coeffs(Fe x) const {
  std::vector<i64> c(m_);
  for (int i = 0; i < m_; ++i) {
    c[i] = x % p_;
    x /= p_;
  }
  return c;
}

Fe Field::from_coeffs(const std::vector<i64>& c) const {
  require(static_cast<int>(c.size()) <= m_, Errc::PreconditionViolated, "too many coefficients");
  Fe x = 0;
  for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i) {
    i64 ci = ((c[i] % p_) + p_) % p_;
    x = x * p_ + ci;
  }
  return x;
}

Fe Field::add(Fe a, Fe b) const {
  if (m_ == 1) {
    i64 s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Fe r = 0, mult = 1;
  for (int i = 0; i < m_; ++i) {
    i64 s = a % p_ + b % p_;
    if (s >= p_) s -= p_;
    r += s * mult;
    mult *= p_;
    a /= p_;
    b /= p_;
  }
  return r;
}

Fe Field::neg(Fe a) const {
  if (m_ == 1) return a == 0 ? 0 : p_ - a;
  Fe r = 0, mult = 1;
  for (int i = 0; i < m_; ++i) {
    i64 c = a % p_;
    r += (c == 0 ? 0 : p_ - c) * mult;
    mult *= p_;
    a /= p_;
  }
  return r;
}

Fe Field::sub(Fe a, Fe b) const { return add(a, neg(b)); }

Fe Field::mul_poly(Fe a, Fe b) const {
  if (m_ == 1) return a * b % p_;
  i64 ac[16], bc[16], cc[32] = {0};
  for (int i = 0; i < m_; ++i) {
    ac[i] = a % p_;
    a /= p_;
    bc[i] = b % p_;
    b /= p_;
  }
  for (int i = 0; i < m_; ++i) {
    if (!ac[i]) continue;
    for (int j = 0; j < m_; ++j) cc[i + j] += ac[i] * bc[j];
  }
  // reduce degree 2m-2 .. m by the monic modulus
  for (int d = 2 * m_ - 2; d >= m_; --d) {
    i64 c = cc[d] % p_;
    if (!c) continue;
    for (int i = 0; i < m_; ++i) {
      cc[d - m_ + i] -= c * modulus_[i];
    }
    cc[d] = 0;
  }
  Fe r = 0;
  for (int i = m_ - 1; i >= 0; --i) {
    i64 c = cc[i] % p_;
    if (c < 0) c += p_;
    r = r * p_ + c;
  }
  return r;
}

Fe Field::mul(Fe a, Fe b) const {
  if (m_ == 1) return a * b % p_;
  if (!log_.empty()) {
    if (a == 0 || b == 0) return 0;
    return exp_[log_[a] + log_[b]];
  }
  return mul_poly(a, b);
}

Fe Field::inv(Fe a) const {
  require(a != 0, Errc::ZeroElement, "inverse of zero");
  if (m_ == 1) return mod_inverse(a, p_);
  if (!log_.empty()) {
    i64 la = log_[a];
    return exp_[(q_ - 1 - la) % (q_ - 1)];
  }
  return pow(a, q_ - 2);
}

Fe Field::pow(Fe a, i64 e) const {
  if (e < 0) {
    a = inv(a);
    e = -e;
  }
  if (a == 0) return e == 0 ? 1 : 0;
  if (!log_.empty() && m_ > 1) {
    i64 la = log_[a];
    return exp_[(i128)la * (e % (q_ - 1)) % (q_ - 1)];
  }
  Fe r = 1;
  while (e > 0) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

Fe Field::frobenius(Fe x, i64 q0, int j) const {
  for (int i = 0; i < j; ++i) x = pow(x, q0);
  return x;
}

i64 Field::elem_order(Fe x) const {
  require(x != 0, Errc::ZeroElement, "order of zero");
  i64 ord = q_ - 1;
  for (i64 pr : qm1_factors_) {
    while (ord % pr == 0 && pow(x, ord / pr) == 1) ord /= pr;
  }
  return ord;
}

Fe Field::generator() const {
  if (generator_ >= 0) return generator_;
  for (Fe x = 1; x < q_; ++x) {
    i64 ord = q_ - 1;
    bool full = true;
    for (i64 pr : qm1_factors_) {
      if (pow(x, ord / pr) == 1) {
        full = false;
        break;
      }
    }
    if (full) {
      generator_ = x;
      return x;
    }
  }
  fail(Errc::InternalInconsistency, "no multiplicative generator found");
}

i64 Field::dlog(Fe x) const {
  require(x != 0, Errc::ZeroElement, "dlog of zero");
  if (!log_.empty()) return log_[x];
  Fe g = generator(), y = 1;
  for (i64 i = 0; i < q_ - 1; ++i) {
    if (y == x) return i;
    y = mul(y, g);
  }
  fail(Errc::InternalInconsistency, "dlog scan failed");
}

std::string Field::to_string(Fe x) const {
  std::ostringstream os;
  os << p_ << "^" << m_ << ":";
  auto c = coeffs(x);
  for (int i = 0; i < m_; ++i) {
    if (i) os << ",";
    os << c[i];
  }
  return os.str();
}

Fe Field::parse(const std::string& s) const {
  auto colon = s.find(':');
  if (colon == std::string::npos) {
    // bare integer: index value (equals the residue for prime fields)
    i64 v = std::stoll(s);
    if (m_ == 1) return ((v % p_) + p_) % p_;
    require(v >= 0 && v < q_, Errc::PreconditionViolated, "element index out of range");
    return v;
  }
  std::string head = s.substr(0, colon);
  auto caret = head.find('^');
  require(caret != std::string::npos, Errc::PreconditionViolated, "bad element literal " + s);
  require(std::stoll(head.substr(0, caret)) == p_ &&
              std::stoi(head.substr(caret + 1)) == m_,
          Errc::PreconditionViolated, "element literal field mismatch: " + s);
  std::vector<i64> c;
  std::istringstream is(s.substr(colon + 1));
  std::string tok;
  while (std::getline(is, tok, ',')) c.push_back(std::stoll(tok));
  require(static_cast<int>(c.size()) == m_, Errc::PreconditionViolated, "bad coefficient count in " + s);
  return from_coeffs(c);
}

std::string Field::modulus_string() const {
  std::ostringstream os;
  bool first = true;
  for (int i = m_; i >= 0; --i) {
    i64 c = modulus_[i];
    if (c == 0) continue;
    if (!first) os << "+";
    if (i == 0 || c != 1) os << c;
    if (i >= 1) {
      os << "X";
      if (i > 1) os << "^" << i;
    }
    first = false;
  }
  os << " over GF(" << p_ << ")";
  return os.str();
}

Tower::Tower(FieldPtr base, int k) : base_(std::move(base)), k_(k) {
  require(k >= 1, Errc::PreconditionViolated, "tower degree must be positive");
  ext_ = Field::make(base_->p(), base_->m() * k);
  if (base_->m() == 1) {
    root_ = ext_->from_int(1);  // prime subfield: constants embed as constants
  } else {
    // deterministic root of the base modulus in the extension, smallest index
    const auto& f = base_->modulus();
    root_ = -1;
    for (Fe r = 0; r < ext_->q(); ++r) {
      Fe acc = 0, rp = 1;
      for (size_t i = 0; i < f.size(); ++i) {
        acc = ext_->add(acc, ext_->mul(ext_->from_int(f[i]), rp));
        rp = ext_->mul(rp, r);
      }
      if (acc == 0) {
        root_ = r;
        break;
      }
    }
    require(root_ >= 0, Errc::InternalInconsistency, "no root of base modulus in extension");
  }
  if (base_->q() <= (1 << 16)) {
    embed_tbl_.assign(base_->q(), 0);
    for (Fe x = 0; x < base_->q(); ++x) {
      auto c = base_->coeffs(x);
      Fe acc = 0, rp = 1;
      for (int i = 0; i < base_->m(); ++i) {
        acc = ext_->add(acc, ext_->mul(ext_->from_int(c[i]), rp));
        rp = ext_->mul(rp, root_);
      }
      embed_tbl_[x] = acc;
    }
  }
}

Fe Tower::embed(Fe x) const {
  if (!embed_tbl_.empty()) return embed_tbl_[x];
  auto c = base_->coeffs(x);
  Fe acc = 0, rp = 1;
  for (int i = 0; i < base_->m(); ++i) {
    acc = ext_->add(acc, ext_->mul(ext_->from_int(c[i]), rp));
    rp = ext_->mul(rp, root_);
  }
  return acc;
}

bool Tower::in_base_image(Fe x) const {
  // fixed by Frobenius^1 relative to base order
  return ext_->pow(x, base_->q()) == x;
}

Fe Tower::retract(Fe x) const {
  if (!embed_tbl_.empty()) {
    for (Fe b = 0; b < base_->q(); ++b)
      if (embed_tbl_[b] == x) return b;
    fail(Errc::InternalInconsistency, "element not in embedded base field");
  }
  for (Fe b = 0; b < base_->q(); ++b)
    if (embed(b) == x) return b;
  fail(Errc::InternalInconsistency, "element not in embedded base field");
}

Fe Tower::norm_to_base(Fe x) const {
  // N(x) = x^{(q^k-1)/(q-1)}
  i64 e = q_bracket(k_, base_->q());
  return retract(ext_->pow(x, e));
}

}  // namespace twr
