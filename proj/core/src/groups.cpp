#include "twistrack/groups.hpp"

#include <algorithm>

#include "twistrack/autos.hpp"
#include "twistrack/parallel.hpp"
#include "twistrack/keyset.hpp"

namespace twr {

const char* group_kind_name(GroupKind k) {
  switch (k) {
    case GroupKind::GL: return "GL";
    case GroupKind::SL: return "SL";
    case GroupKind::Sp: return "Sp";
    case GroupKind::SO: return "SO";
    case GroupKind::PGL: return "PGL";
    case GroupKind::PSL: return "PSL";
  }
  return "?";
}

GroupKind parse_group_kind(const std::string& s) {
  if (s == "GL") return GroupKind::GL;
  if (s == "SL") return GroupKind::SL;
  if (s == "Sp") return GroupKind::Sp;
  if (s == "SO") return GroupKind::SO;
  if (s == "PGL") return GroupKind::PGL;
  if (s == "PSL") return GroupKind::PSL;
  fail(Errc::UnsupportedKind, "unknown group kind " + s);
}

i64 group_order(GroupKind kind, int n, i64 q) {
  auto gl = [&]() {
    i128 o = 1;
    i64 qn = ipow_checked(q, n);
    for (int k = 0; k < n; ++k) {
      o *= (qn - ipow_checked(q, k));
      require(o <= INT64_MAX, Errc::Overflow, "group order overflow");
    }
    return (i64)o;
  };
  switch (kind) {
    case GroupKind::GL: return gl();
    case GroupKind::SL:
    case GroupKind::PGL: return gl() / (q - 1);
    case GroupKind::PSL: return gl() / (q - 1) / gcd_i64(n, q - 1);
    case GroupKind::Sp: {
      require(n % 2 == 0, Errc::PreconditionViolated, "Sp needs even dimension");
      int m = n / 2;
      i128 o = ipow_checked(q, m * m);
      for (int i = 1; i <= m; ++i) {
        o *= (ipow_checked(q, 2 * i) - 1);
        require(o <= INT64_MAX, Errc::Overflow, "group order overflow");
      }
      return (i64)o;
    }
    case GroupKind::SO: {
      require(n % 2 == 1, Errc::PreconditionViolated, "SO branch implemented for odd dimension");
      int m = (n - 1) / 2;
      i128 o = ipow_checked(q, m * m);
      for (int i = 1; i <= m; ++i) {
        o *= (ipow_checked(q, 2 * i) - 1);
        require(o <= INT64_MAX, Errc::Overflow, "group order overflow");
      }
      return (i64)o;
    }
  }
  fail(Errc::UnsupportedKind, "group order");
}

bool preserves_j_form(const Mat& g) {
  Mat j = j_matrix(g.F, g.n);
  return mul(mul(g, j), transpose(g)) == j;
}

namespace {

Mat transvection(const Field* f, int n, int i, int j, Fe t) {
  Mat m = Mat::identity(f, n);
  m.at(i, j) = t;
  return m;
}

std::vector<Mat> sl_generators(const Field* f, int n) {
  std::vector<Mat> gens;
  Fe g = f->generator();
  for (int i = 0; i + 1 < n; ++i) {
    gens.push_back(transvection(f, n, i, i + 1, f->one()));
    gens.push_back(transvection(f, n, i + 1, i, f->one()));
  }
  if (g != f->one()) {
    gens.push_back(transvection(f, n, 0, n - 1 == 0 ? 0 : n - 1, g));
    gens.push_back(transvection(f, n, n - 1, 0, g));
  }
  if (f->q() > 3 && n >= 2) {
    std::vector<Fe> d(n, f->one());
    d[0] = g;
    d[1] = f->inv(g);
    gens.push_back(Mat::diag(f, d));
  }
  return gens;
}

// Isometries of the form with Gram J^-1: symplectic transvections
// tau = I + c v v^T M (M alternating) for n even; Eichler elements for n odd.
std::vector<Mat> theta_fixed_generators(const Field* f, int n) {
  Mat j = j_matrix(f, n);
  Mat m = inverse(j);
  std::vector<Mat> gens;
  auto bilin = [&](const std::vector<Fe>& x, const std::vector<Fe>& y) {
    Fe acc = 0;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) acc = f->add(acc, f->mul(x[a], f->mul(m.at(a, b), y[b])));
    return acc;
  };
  std::vector<std::vector<Fe>> vecs;
  for (int i = 0; i < n; ++i) {
    std::vector<Fe> e(n, 0);
    e[i] = f->one();
    vecs.push_back(e);
  }
  for (int i = 0; i < n; ++i)
    for (int k = i + 1; k < n; ++k) {
      std::vector<Fe> e(n, 0);
      e[i] = f->one();
      e[k] = f->one();
      vecs.push_back(e);
    }
  Fe gen = f->generator();
  if (n % 2 == 0) {
    // tau_v,c : x -> x + c (x^T M v) v, matrix I + c v (v^T M)... assembled directly
    for (const auto& v : vecs)
      for (Fe c : {f->one(), gen}) {
        Mat t = Mat::identity(f, n);
        // t := I + c * v * (v^T M); column j gets c * v_i * (M row dot ...)
        for (int a = 0; a < n; ++a)
          for (int b = 0; b < n; ++b) {
            Fe vm = 0;
            for (int k = 0; k < n; ++k) vm = f->add(vm, f->mul(v[k], m.at(k, b)));
            t.at(a, b) = f->add(t.at(a, b), f->mul(c, f->mul(v[a], vm)));
          }
        if (preserves_j_form(t) && det(t) == f->one() && !is_identity(t)) gens.push_back(t);
      }
  } else {
    // Eichler: x -> x + B(x,u)v - B(x,v)u - Q(v) B(x,u) u, u isotropic, B(u,v)=0
    auto quad = [&](const std::vector<Fe>& x) {
      Fe b = bilin(x, x);
      return f->mul(b, f->inv(f->from_int(2)));
    };
    for (const auto& u : vecs) {
      if (quad(u) != 0) continue;
      for (const auto& v : vecs) {
        if (bilin(u, v) != 0) continue;
        for (Fe c : {f->one(), gen}) {
          std::vector<Fe> vc(n);
          for (int a = 0; a < n; ++a) vc[a] = f->mul(v[a], c);
          Mat t = Mat::identity(f, n);
          // columns: image of basis vector e_b
          for (int b = 0; b < n; ++b) {
            std::vector<Fe> x(n, 0);
            x[b] = f->one();
            Fe bxu = bilin(x, u), bxv = bilin(x, vc), qv = quad(vc);
            for (int a = 0; a < n; ++a) {
              Fe val = x[a];
              val = f->add(val, f->mul(bxu, vc[a]));
              val = f->sub(val, f->mul(bxv, u[a]));
              val = f->sub(val, f->mul(qv, f->mul(bxu, u[a])));
              t.at(a, b) = val;
            }
          }
          if (preserves_j_form(t) && det(t) == f->one() && !is_identity(t)) gens.push_back(t);
        }
      }
    }
  }
  // a diagonal piece reaching beyond the (commutator) subgroup built above
  std::vector<Fe> d(n, f->one());
  d[0] = gen;
  d[n - 1] = f->inv(gen);
  Mat dm = Mat::diag(f, d);
  if (preserves_j_form(dm) && det(dm) == f->one() && !is_identity(dm)) gens.push_back(dm);
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  return gens;
}

}  // namespace

MatGroup make_group(GroupKind kind, int n, FieldPtr field) {
  require(n >= 2, Errc::PreconditionViolated, "group dimension must be >= 2");
  MatGroup g;
  g.kind = kind;
  g.n = n;
  g.field = std::move(field);
  g.projective = (kind == GroupKind::PGL || kind == GroupKind::PSL);
  const Field* f = g.F();
  switch (kind) {
    case GroupKind::SL:
      g.gens = sl_generators(f, n);
      break;
    case GroupKind::GL: {
      g.gens = sl_generators(f, n);
      std::vector<Fe> d(n, f->one());
      d[0] = f->generator();
      g.gens.push_back(Mat::diag(f, d));
      break;
    }
    case GroupKind::Sp:
      require(n % 2 == 0, Errc::PreconditionViolated, "Sp needs even dimension");
      g.gens = theta_fixed_generators(f, n);
      break;
    case GroupKind::SO:
      require(n % 2 == 1, Errc::UnsupportedKind, "SO generators implemented for odd dimension");
      g.gens = theta_fixed_generators(f, n);
      break;
    case GroupKind::PSL: {
      for (const auto& m : sl_generators(f, n)) g.gens.push_back(proj_canon(m));
      break;
    }
    case GroupKind::PGL: {
      for (const auto& m : sl_generators(f, n)) g.gens.push_back(proj_canon(m));
      std::vector<Fe> d(n, f->one());
      d[0] = f->generator();
      g.gens.push_back(proj_canon(Mat::diag(f, d)));
      break;
    }
  }
  return g;
}

std::vector<Key128> closure_keys(const MatGroup& g, u64 cap, int workers) {
  require(key_fits(g.F()->q(), g.n), Errc::ScaleTooLarge, "matrices do not pack into 128-bit keys");
  const Field* f = g.F();
  KeySet seen(1 << 16);
  std::vector<Key128> out, frontier;
  Key128 idk = pack_mat(g.id());
  seen.insert(idk);
  out.push_back(idk);
  frontier.push_back(idk);
  std::vector<Mat> gens = g.gens;

  while (!frontier.empty()) {
    std::vector<std::vector<Key128>> parts(std::max(workers, 1));
    parallel_chunks(frontier.size(), workers, [&](size_t b, size_t e, int w) {
      auto& local = parts[w];
      for (size_t i = b; i < e; ++i) {
        Mat x = unpack_mat(f, g.n, frontier[i]);
        for (const auto& gen : gens) {
          Mat y = mul(x, gen);
          if (g.projective) y = proj_canon(y);
          local.push_back(pack_mat(y));
        }
      }
    });
    std::vector<Key128> next;
    for (auto& part : parts)
      for (const auto& k : part)
        if (seen.insert(k)) {
          next.push_back(k);
          out.push_back(k);
          require(out.size() <= cap, Errc::Budget, "closure exceeds cap");
        }
    frontier = std::move(next);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace twr
