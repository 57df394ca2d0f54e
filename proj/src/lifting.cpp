#include "qlift/lifting.hpp"

#include <algorithm>
#include <functional>

#include "qlift/qfunc.hpp"

namespace qlift {

// ---------------------------------------------------------------- unipotent matrices

UnipotentMatrix::UnipotentMatrix(int n) : n_(n), e_(size_t(n) * n), one_(Poly(CycloNum(1))), zero_(Poly()) {}

bool UnipotentMatrix::known(int i, int j) const { return i >= j || e_[size_t(i - 1) * n_ + (j - 1)].has_value(); }

const Poly& UnipotentMatrix::at(int i, int j) const {
  if (i == j) return *one_;
  if (i > j) return *zero_;
  const auto& e = e_[size_t(i - 1) * n_ + (j - 1)];
  if (!e) throw Error("UnipotentMatrix: entry (" + std::to_string(i) + "," + std::to_string(j) + ") unknown");
  return *e;
}

void UnipotentMatrix::set(int i, int j, Poly p) {
  if (i >= j) throw Error("UnipotentMatrix: only entries above the diagonal can be set");
  e_[size_t(i - 1) * n_ + (j - 1)] = std::move(p);
}

void UnipotentMatrix::clear(int i, int j) { e_[size_t(i - 1) * n_ + (j - 1)].reset(); }

UnipotentMatrix UnipotentMatrix::identity(int n) {
  UnipotentMatrix Q(n);
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) Q.set(i, j, Poly());
  return Q;
}

// ---------------------------------------------------------------- seeds

namespace {

struct Seed {
  int row, col;
  int mi, mj;  // root label of the parameter
  int kind;    // 0: A entry, 1: r_{j'i'}, 2: r_{ji'}
  int sign;
};

std::vector<Seed> seeds(Kind k, int theta) {
  std::vector<Seed> out;
  if (k == Kind::A) {
    for (int i = 1; i <= theta; ++i)
      for (int j = i + 1; j <= theta + 1; ++j) out.push_back({i, j, i, j, 0, (j - i) % 2 ? 1 : -1});
    return out;
  }
  int n = ambient_n(k, theta);
  auto pr = [n](int x) { return n + 1 - x; };
  int imax = k == Kind::B ? theta : theta - 1;
  for (int i = 1; i <= imax; ++i)
    for (int j = i + 1; j <= theta + 1; ++j) {
      out.push_back({pr(j), pr(i), i, j, 1, 1});
      if (j == theta + 1) continue;
      int sign = k == Kind::B ? ((theta + 1 - j) % 2 ? -1 : 1) : ((theta + j) % 2 ? -1 : 1);
      out.push_back({j, pr(i), i, pr(j), 2, sign});
    }
  return out;
}

}  // namespace

std::vector<std::pair<int, int>> seed_positions(Kind k, int theta) {
  std::vector<std::pair<int, int>> v;
  for (auto& s : seeds(k, theta))
    if (std::find(v.begin(), v.end(), std::make_pair(s.row, s.col)) == v.end()) v.emplace_back(s.row, s.col);
  return v;
}

UnipotentMatrix seed_entries(const CycloCtx* ctx, Kind k, int theta, SeedVariant v) {
  int n = ambient_n(k, theta);
  int N = ctx->N;
  CycloNum q = CycloNum::gen(ctx), one(ctx, 1);
  CycloNum eta = (q * q - one).pow(N);
  UnipotentMatrix Q(n);
  if (k == Kind::A) {
    // (1 - q^{-2})^N
    CycloNum a = (one - q.pow(-2)).pow(N);
    for (auto& s : seeds(k, theta)) Q.set(s.row, s.col, Poly::var(mu_var(s.mi, s.mj)) * (a * CycloNum(s.sign)));
    return Q;
  }
  CycloNum lng = eta;
  if (k == Kind::B) lng = eta * (v == SeedVariant::Printed ? q - one : q + one).pow(N) / CycloNum(ctx, 2);
  for (auto& s : seeds(k, theta)) {
    CycloNum c = (s.kind == 1 ? eta : lng) * CycloNum(s.sign);
    Poly p = Poly::var(mu_var(s.mi, s.mj)) * c;
    if (Q.known(s.row, s.col)) {
      if (Q.at(s.row, s.col) != p)
        throw Error("seed_entries: conflicting seeds at (" + std::to_string(s.row) + "," + std::to_string(s.col) + ")");
      continue;
    }
    Q.set(s.row, s.col, p);
  }
  return Q;
}

UnipotentMatrix seed_symbols(Kind k, int theta) {
  UnipotentMatrix Q(ambient_n(k, theta));
  for (auto [a, b] : seed_positions(k, theta)) Q.set(a, b, Poly::var(r_var(a, b)));
  return Q;
}

// ---------------------------------------------------------------- SO completion

namespace {

// sum_{i<k<j} X_kj X_{k'i'}
Poly ortho_inner(const UnipotentMatrix& Q, int i, int j) {
  int n = Q.n();
  Poly s;
  for (int k = i + 1; k < j; ++k) {
    const Poly& x = Q.at(k, j);
    if (x.is_zero()) continue;
    const Poly& y = Q.at(n + 1 - k, n + 1 - i);
    if (y.is_zero()) continue;
    s += x * y;
  }
  return s;
}

std::string pos(int i, int j) { return "(" + std::to_string(i) + "," + std::to_string(j) + ")"; }

}  // namespace

UnipotentMatrix so_complete(UnipotentMatrix Q) {
  int n = Q.n();
  CycloNum half(1, 2);
  for (int d = 1; d < n; ++d)
    for (int i = 1; i + d <= n; ++i) {
      int j = i + d;
      if (Q.known(i, j)) continue;
      int a = n + 1 - j, b = n + 1 - i;
      Poly s = ortho_inner(Q, i, j);
      if (a == i) {
        Q.set(i, j, s * (-half));
      } else if (Q.known(a, b)) {
        Q.set(i, j, -(Q.at(a, b) + s));
      } else {
        throw Error("so_complete: equation " + pos(i, j) + " has two unknowns");
      }
    }
  auto bad = orthogonality_violations(Q);
  if (!bad.empty()) throw Error("so_complete: inconsistent seeds, equation " + pos(bad[0].first, bad[0].second) + " fails");
  return Q;
}

std::vector<std::pair<int, int>> orthogonality_violations(const UnipotentMatrix& Q) {
  int n = Q.n();
  std::vector<std::pair<int, int>> bad;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      Poly e = Q.at(i, j) + Q.at(n + 1 - j, n + 1 - i) + ortho_inner(Q, i, j);
      if (!e.is_zero()) bad.emplace_back(i, j);
    }
  return bad;
}

// ---------------------------------------------------------------- conjugation

std::vector<Poly> formal_torus(int n) {
  std::vector<Poly> P;
  for (int k = 1; k <= n; ++k) P.push_back(Poly::var(t_var(k)));
  return P;
}

Conjugated::Conjugated(const UnipotentMatrix& Q, std::vector<Poly> P) : Q_(Q), P_(std::move(P)) {}

const Poly& Conjugated::entry(int i, int j) const {
  auto key = std::make_pair(i, j);
  auto it = memo_.find(key);
  if (it != memo_.end()) return it->second;
  Poly v;
  if (i == j) {
    v = P_[i - 1];
  } else if (i < j) {
    v = Q_.at(i, j) * P_[i - 1];
    for (int k = i + 1; k <= j; ++k) {
      const Poly& r = Q_.at(i, k);
      if (!r.is_zero()) v -= r * entry(k, j);
    }
  }
  return memo_.emplace(key, std::move(v)).first->second;
}

Poly conjugated_entry(const UnipotentMatrix& Q, const std::vector<Poly>& P, int i, int j) {
  return Conjugated(Q, P).entry(i, j);
}

Poly iota_star(const UnipotentMatrix& Q, int i, int j) {
  std::map<std::pair<int, int>, Poly> memo;
  std::function<Poly(int, int)> f = [&](int a, int b) -> Poly {
    if (a == b) return Poly::var(t_var(a));
    auto it = memo.find({a, b});
    if (it != memo.end()) return it->second;
    Poly v = Q.at(a, b) * (f(a, a) - f(b, b));
    for (int k = a + 1; k < b; ++k) {
      const Poly& r = Q.at(a, k);
      if (!r.is_zero()) v -= r * f(k, b);
    }
    memo.emplace(std::make_pair(a, b), v);
    return v;
  };
  return f(i, j);
}

// ---------------------------------------------------------------- torus and group

Poly torus_reduce(const Poly& p, Kind k, int theta) {
  int n = ambient_n(k, theta);
  return p.map_monos([&](const Mono& m) {
    Mono out;
    for (auto [v, e] : m) {
      if (var_kind(v) != VarKind::T) {
        out = mono_mul(out, Mono{{v, e}});
        continue;
      }
      int t = var_i(v);
      if (k == Kind::A) {
        if (t == n) {
          for (int s = 1; s < n; ++s) out = mono_mul(out, Mono{{t_var(s), -e}});
        } else {
          out = mono_mul(out, Mono{{v, e}});
        }
        continue;
      }
      int tp = n + 1 - t;
      if (t == tp) continue;
      if (t < tp) out = mono_mul(out, Mono{{v, e}});
      else out = mono_mul(out, Mono{{t_var(tp), -e}});
    }
    return out;
  });
}

std::vector<int> torus_image(Kind k, int theta, int i) {
  std::vector<int> v(theta, 0);
  if (i < theta) {
    v[i - 1] = 1;
    v[i] = -1;
    return v;
  }
  if (k == Kind::A) {
    for (auto& x : v) x = 1;
    v[theta - 1] = 2;
  } else if (k == Kind::B) {
    v[theta - 1] = 1;
  } else {
    v[theta - 2] = 1;
    v[theta - 1] = 1;
  }
  return v;
}

namespace {

std::vector<std::vector<mpq_class>> image_inverse(Kind k, int theta) {
  std::vector<std::vector<mpq_class>> a(theta, std::vector<mpq_class>(2 * theta, 0));
  for (int i = 1; i <= theta; ++i) {
    auto v = torus_image(k, theta, i);
    for (int r = 0; r < theta; ++r) a[r][i - 1] = v[r];
  }
  for (int r = 0; r < theta; ++r) a[r][theta + r] = 1;
  for (int c = 0; c < theta; ++c) {
    int p = c;
    while (p < theta && a[p][c] == 0) ++p;
    if (p == theta) throw Error("torus_to_group: singular embedding");
    std::swap(a[p], a[c]);
    mpq_class piv = a[c][c];
    for (auto& x : a[c]) x /= piv;
    for (int r = 0; r < theta; ++r) {
      if (r == c || a[r][c] == 0) continue;
      mpq_class f = a[r][c];
      for (int s = 0; s < 2 * theta; ++s) a[r][s] -= f * a[c][s];
    }
  }
  std::vector<std::vector<mpq_class>> inv(theta, std::vector<mpq_class>(theta));
  for (int r = 0; r < theta; ++r)
    for (int c = 0; c < theta; ++c) inv[r][c] = a[r][theta + c];
  return inv;
}

}  // namespace

Poly torus_to_group(const Poly& p, Kind k, int theta) {
  auto inv = image_inverse(k, theta);
  Poly red = torus_reduce(p, k, theta);
  return red.map_monos([&](const Mono& m) {
    std::vector<mpq_class> e(theta, 0);
    Mono out;
    for (auto [v, x] : m) {
      if (var_kind(v) == VarKind::T) e[var_i(v) - 1] = x;
      else out = mono_mul(out, Mono{{v, x}});
    }
    for (int r = 0; r < theta; ++r) {
      mpq_class c = 0;
      for (int s = 0; s < theta; ++s) c += inv[r][s] * e[s];
      if (c.get_den() != 1) throw Error("torus_to_group: torus monomial outside the image of the group");
      if (c != 0) out = mono_mul(out, Mono{{g_var(r + 1), int(c.get_num().get_si())}});
    }
    return out;
  });
}

Poly group_monomial(const std::vector<int>& root) {
  Mono m;
  for (size_t k = 0; k < root.size(); ++k)
    if (root[k]) m.emplace_back(g_var(int(k) + 1), root[k]);
  return Poly::mono(m, CycloNum(1));
}

Poly augmentation(const Poly& p) {
  return p.map_monos([](const Mono& m) {
    Mono out;
    for (auto [v, e] : m)
      if (var_kind(v) != VarKind::G) out.emplace_back(v, e);
    return out;
  });
}

// ---------------------------------------------------------------- the two pipelines

namespace {

UnipotentMatrix completed(const CycloCtx* ctx, Kind k, int theta, SeedVariant v) {
  UnipotentMatrix Q = seed_entries(ctx, k, theta, v);
  return k == Kind::A ? Q : so_complete(std::move(Q));
}

}  // namespace

LiftEngine::LiftEngine(const CycloCtx* ctx, Kind k, int theta, SeedVariant seed)
    : ctx_(ctx),
      kind_(k),
      theta_(theta),
      rs_(root_system(k, theta)),
      Q_(completed(ctx, k, theta, seed)),
      C_(Q_, formal_torus(ambient_n(k, theta))) {}

CycloNum LiftEngine::zeta(int a, int b) const {
  int n0 = kind_ == Kind::B ? theta_ + 1 : 0;
  if (n0 && a < n0 && n0 < b) {
    CycloNum one(ctx_, 1);
    return (one + CycloNum::gen(ctx_)).pow(ctx_->N) / CycloNum(ctx_, 2);
  }
  return CycloNum(ctx_, 1);
}

LiftEngine::Cell LiftEngine::cell(int r) const {
  auto [i, j] = rs_.labels[r];
  if (kind_ == Kind::A) return {i, j, Poly::var(t_var(j), -1)};
  int n = rs_.n;
  return {n + 1 - j, n + 1 - i, Poly::var(t_var(i))};
}

int LiftEngine::lower_root(int r, int k) const {
  auto [i, j] = rs_.labels[r];
  int b = kind_ == Kind::A ? rs_.find(k, j) : rs_.find(i, rs_.n + 1 - k);
  if (b < 0) throw Error("lift: no root label for correction index " + std::to_string(k));
  return b;
}

CycloNum LiftEngine::scale(int r) const {
  auto [i, j] = rs_.labels[r];
  Cell c = cell(r);
  return psi_lambda(ctx_, kind_, theta_, i, j).pow(ctx_->N) / zeta(c.a, c.b);
}

Poly LiftEngine::mu(int r) const {
  auto [i, j] = rs_.labels[r];
  return Poly::var(mu_var(i, j));
}

const Poly& LiftEngine::torus_value(int r) const {
  auto it = values_.find(r);
  if (it != values_.end()) return it->second;
  Cell c = cell(r);
  Poly v = torus_reduce(C_.entry(c.a, c.b) * c.w * scale(r), kind_, theta_);
  return values_.emplace(r, std::move(v)).first->second;
}

namespace {

void sort_x(const RootSystem& rs, std::vector<std::pair<int, Poly>>& x) {
  auto order = rs.height_order();
  std::vector<int> rank(rs.size());
  for (size_t p = 0; p < order.size(); ++p) rank[order[p]] = int(p);
  std::sort(x.begin(), x.end(), [&](auto& a, auto& b) { return rank[a.first] < rank[b.first]; });
  x.erase(std::remove_if(x.begin(), x.end(), [](auto& e) { return e.second.is_zero(); }), x.end());
}

}  // namespace

LiftRelation LiftEngine::geometric(int r) const {
  LiftRelation rel;
  rel.root = r;
  Cell c = cell(r);
  Poly residual = torus_value(r);
  CycloNum s = scale(r);
  for (int k = c.a + 1; k < c.b; ++k) {
    const Poly& qk = Q_.at(c.a, k);
    if (qk.is_zero()) continue;
    int b = lower_root(r, k);
    Poly coeff = qk * (-(s / scale(b)));
    residual -= coeff * torus_value(b);
    rel.x.emplace_back(b, std::move(coeff));
  }
  rel.group = torus_to_group(residual, kind_, theta_);
  sort_x(rs_, rel.x);
  return rel;
}

LiftRelation LiftEngine::closed(int r, ClosedVariant v) const {
  LiftRelation rel;
  rel.root = r;
  auto [i, J] = rs_.labels[r];
  int n = rs_.n, th = theta_, N = ctx_->N;
  auto pr = [n](int x) { return n + 1 - x; };
  Poly g = group_monomial(rs_.roots[r]);
  Poly one(CycloNum(1));
  CycloNum q = CycloNum::gen(ctx_), cone(ctx_, 1);
  auto add = [&](int i2, int j2, Poly coeff) {
    int b = rs_.find(i2, j2);
    if (b < 0) throw Error("lift_closed: invalid root label (" + std::to_string(i2) + "," + std::to_string(j2) + ")");
    rel.x.emplace_back(b, std::move(coeff));
  };
  auto sgn = [](int e) { return CycloNum(e % 2 ? -1 : 1); };
  if (kind_ == Kind::A) {
    rel.group = mu(r) * (one - g);
    CycloNum a = (cone - q.pow(-2)).pow(N);
    for (int k = i + 1; k < J; ++k) add(k, J, Poly::var(mu_var(i, k)) * a);
  } else if (J <= th + 1) {
    rel.group = mu(r) * (g - one);
    for (int s = i + 1; s < J; ++s) add(i, s, -Q_.at(pr(J), pr(s)));
  } else {
    rel.group = mu(r) * (g - one);
    int j = pr(J);
    if (kind_ == Kind::B) {
      CycloNum f = sgn(th + 1 - j) * CycloNum(ctx_, -2) / (cone + q).pow(N);
      for (int s = i + 1; s <= th + 1; ++s) add(i, s, Q_.at(j, pr(s)) * f);
      for (int s = th + 2; s < J; ++s) add(i, s, Q_.at(j, pr(s)) * (-sgn(s - j)));
    } else {
      CycloNum f = -sgn(th + j);
      for (int s = i + 1; s <= th + 1; ++s) add(i, s, Q_.at(j, pr(s)) * f);
      CycloNum third = v == ClosedVariant::Printed ? -CycloNum(1) : CycloNum(1);
      for (int s = th + 2; s < J; ++s) add(i, s, Q_.at(j, pr(s)) * (sgn(s - j) * third));
    }
  }
  sort_x(rs_, rel.x);
  return rel;
}

LiftRelation apply_mu(const LiftRelation& rel, const RootSystem& rs, const MuFamily& mu) {
  std::map<int, Poly> img;
  for (size_t r = 0; r < rs.size(); ++r)
    if (!mu.mu[r].symbolic) img[mu_var(rs.labels[r].first, rs.labels[r].second)] = Poly(mu.mu[r].value);
  auto f = [&](int v) -> const Poly* {
    auto it = img.find(v);
    return it == img.end() ? nullptr : &it->second;
  };
  LiftRelation out;
  out.root = rel.root;
  out.group = rel.group.subst(f);
  for (auto& [b, c] : rel.x) {
    Poly s = c.subst(f);
    if (!s.is_zero()) out.x.emplace_back(b, std::move(s));
  }
  return out;
}

LiftRelation lift_geometric(const CycloCtx* ctx, Kind k, int theta, int r, const MuFamily* mu) {
  LiftEngine E(ctx, k, theta);
  LiftRelation rel = E.geometric(r);
  return mu ? apply_mu(rel, E.roots(), *mu) : rel;
}

LiftRelation lift_closed(const CycloCtx* ctx, Kind k, int theta, int r, const MuFamily* mu, ClosedVariant v) {
  LiftEngine E(ctx, k, theta);
  LiftRelation rel = E.closed(r, v);
  return mu ? apply_mu(rel, E.roots(), *mu) : rel;
}

bool CrossCheckReport::ok() const {
  return std::all_of(cases.begin(), cases.end(), [](auto& c) { return c.ok; });
}

namespace {

std::string debug_name(int v) {
  std::string s;
  switch (var_kind(v)) {
    case VarKind::Mu: s = "mu"; break;
    case VarKind::R: s = "r"; break;
    case VarKind::T: s = "t"; break;
    case VarKind::G: s = "G"; break;
    case VarKind::X: s = "x"; break;
    default: s = "v";
  }
  s += "(" + std::to_string(var_i(v));
  if (var_kind(v) != VarKind::T && var_kind(v) != VarKind::G) s += "," + std::to_string(var_j(v));
  return s + ")";
}

}  // namespace

CrossCheckCase cross_check_root(const LiftEngine& E, int r, ClosedVariant v) {
  const RootSystem& rs = E.roots();
  CrossCheckCase c;
  c.root = r;
  LiftRelation a = E.geometric(r), b = E.closed(r, v);
  std::map<int, Poly> xa(a.x.begin(), a.x.end()), xb(b.x.begin(), b.x.end());
  c.ok = true;
  if (a.group != b.group) {
    c.ok = false;
    c.detail = "group part: geometric " + a.group.str(debug_name) + " vs closed " + b.group.str(debug_name);
    return c;
  }
  for (size_t s = 0; s < rs.size() && c.ok; ++s) {
    Poly pa = xa.count(int(s)) ? xa[int(s)] : Poly(), pb = xb.count(int(s)) ? xb[int(s)] : Poly();
    if (pa != pb) {
      c.ok = false;
      c.detail = "coefficient of x_(" + rs.name(s) + ")^N: geometric " + pa.str(debug_name) + " vs closed " +
                 pb.str(debug_name);
    }
  }
  return c;
}

CrossCheckReport cross_check(const LiftEngine& E, ClosedVariant v) {
  CrossCheckReport rep;
  for (int r : E.roots().height_order()) rep.cases.push_back(cross_check_root(E, r, v));
  return rep;
}

CrossCheckReport cross_check(const CycloCtx* ctx, Kind k, int theta, ClosedVariant v, SeedVariant seed) {
  return cross_check(LiftEngine(ctx, k, theta, seed), v);
}

}  // namespace qlift
