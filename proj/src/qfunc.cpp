#include "qlift/qfunc.hpp"

#include <algorithm>
#include <array>
#include <map>

namespace qlift {

int SoIndex::rho2(int i) const {
  int p = prime(i);
  if (i < p) return n - 2 * i;
  if (i == p) return 0;
  return -(n - 2 * p);
}

// ---------------------------------------------------------------- R-matrix

CycloNum RMatrix::c(int i, int j) const {
  SoIndex so{n};
  if (i != so.prime(j)) return CycloNum(ctx, 0);
  return qpow_half(ctx, -so.rho2(i));
}

RMatrix so_rmatrix(const CycloCtx* ctx, int n, int eps) {
  if (n < 4) throw Error("so_rmatrix: n must be at least 4");
  RMatrix R;
  R.ctx = ctx;
  R.n = n;
  R.eps = eps;
  R.R.assign(size_t(n) * n * n * n, CycloNum(ctx, 0));
  SoIndex so{n};
  CycloNum q = CycloNum::gen(ctx), lam = q - q.inv();
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      for (int a = 1; a <= n; ++a)
        for (int b = 1; b <= n; ++b) {
          CycloNum v(ctx, 0);
          if (i == a && j == b) v += qpow(ctx, int(i == j) - int(i == so.prime(j)));
          if (i > a) {
            CycloNum t(ctx, int64_t(j == a && i == b));
            t -= CycloNum(ctx, eps) * R.c(j, i) * R.c(a, b);
            v += lam * t;
          }
          R.at(i, j, a, b) = v;
        }
  return R;
}

QybeResult qybe_check(const RMatrix& R) {
  const int n = R.n;
  // cols[(a,b)] = nonzero R^{ij}_{ab} as (i,j,value)
  struct E {
    int i, j;
    CycloNum v;
  };
  std::vector<std::vector<E>> cols(size_t(n) * n);
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      for (int a = 1; a <= n; ++a)
        for (int b = 1; b <= n; ++b)
          if (const CycloNum& v = R.at(i, j, a, b); !v.is_zero()) cols[size_t(a - 1) * n + (b - 1)].push_back({i, j, v});
  using Vec = std::map<std::array<int, 3>, CycloNum>;
  auto apply = [&](const Vec& x, int p, int r) {
    Vec y;
    for (auto& [k, c] : x) {
      for (auto& e : cols[size_t(k[p] - 1) * n + (k[r] - 1)]) {
        auto k2 = k;
        k2[p] = e.i;
        k2[r] = e.j;
        auto [it, fresh] = y.try_emplace(k2, c * e.v);
        if (!fresh) it->second.addmul(c, e.v);
      }
    }
    for (auto it = y.begin(); it != y.end();) it = it->second.is_zero() ? y.erase(it) : std::next(it);
    return y;
  };
  for (int a = 1; a <= n; ++a)
    for (int b = 1; b <= n; ++b)
      for (int c = 1; c <= n; ++c) {
        Vec x{{{a, b, c}, CycloNum(R.ctx, 1)}};
        // R12 R13 R23 versus R23 R13 R12, rightmost factor acting first
        Vec l = apply(apply(apply(x, 1, 2), 0, 2), 0, 1);
        Vec r = apply(apply(apply(x, 0, 1), 0, 2), 1, 2);
        if (l != r) return {false, a, b, c};
      }
  return {};
}

NcPoly frt_relation(const RMatrix& R, int i, int b, int j, int a, const ZMap& z) {
  NcPoly e;
  const int n = R.n;
  for (int k = 1; k <= n; ++k)
    for (int l = 1; l <= n; ++l) {
      if (const CycloNum& c = R.at(l, k, a, b); !c.is_zero()) e.add_scaled(z(i, k) * z(j, l), c);
      if (const CycloNum& c = R.at(j, i, k, l); !c.is_zero()) e.add_scaled(z(k, a) * z(l, b), -c);
    }
  return e;
}

// ---------------------------------------------------------------- Borel presentations

namespace {

std::string zname(int i, int j, bool inv = false) {
  std::string s = "z";
  if (i < 10 && j < 10) s += std::to_string(i) + std::to_string(j);
  else s += std::to_string(i) + "," + std::to_string(j);
  if (inv) s += "^-1";
  return s;
}

NcPoly letter(int id) { return NcPoly::word(Word(1, char(id))); }

void sort_by_leading(std::vector<NcPoly>& rels, const TermOrder& o) {
  std::vector<std::pair<Word, NcPoly>> v;
  for (auto& r : rels) v.emplace_back(r.leading(o), std::move(r));
  std::stable_sort(v.begin(), v.end(), [&](auto& x, auto& y) { return o.less(x.first, y.first); });
  rels.clear();
  for (auto& [w, r] : v) rels.push_back(std::move(r));
}

void finish(BorelPresentation& P, std::vector<NcPoly> rels, const BorelOptions& opt) {
  rels.erase(std::remove_if(rels.begin(), rels.end(), [](const NcPoly& p) { return p.is_zero(); }), rels.end());
  TermOrder order(P.alpha);
  sort_by_leading(rels, order);
  P.relations = rels;
  P.rs = std::make_unique<RewriteSystem>(order);
  if (opt.complete) {
    P.completion = P.rs->complete(rels, opt.max_lhs);
    if (!P.completion.converged)
      throw Error(std::string("borel_presentation: completion failed for ") + kind_char(P.kind) + " n=" +
                  std::to_string(P.n) + ": " + P.completion.message);
  }
}

std::unique_ptr<BorelPresentation> so_borel(const CycloCtx* ctx, Kind kind, int n, const BorelOptions& opt) {
  auto P = std::make_unique<BorelPresentation>();
  P->kind = kind;
  P->n = n;
  P->ctx = ctx;
  P->alpha = std::make_shared<Alphabet>();
  SoIndex so{n};
  const int rank = n / 2;
  auto weight = [&](int a, int b) -> int64_t {
    if (a == b) return 0;
    if (a + b >= n + 2) return b - a;
    int64_t w = 1;
    for (int k = 0; k < b - a; ++k) w *= n + 2;
    return w;
  };
  auto grade = [&](int k) {
    std::vector<int> g(size_t(rank), 0);
    int p = so.prime(k);
    if (k < p) g[size_t(k - 1)] = 1;
    else if (k > p) g[size_t(p - 1)] = -1;
    return g;
  };
  auto add = [&](int i, int j) {
    P->alpha->add({i, j, false, weight(i, j), zname(i, j)});
    auto gi = grade(i), gj = grade(j);
    for (int k = 0; k < rank; ++k) gi[size_t(k)] -= gj[size_t(k)];
    P->grading.push_back(gi);
  };
  for (int i = 1; i <= n; ++i)
    for (int j = i; j <= n; ++j) {
      if (i == j && i >= so.prime(i)) continue;  // lower half of the diagonal, and z_{n0 n0} = 1
      add(i, j);
      if (i == j) add(so.prime(i), so.prime(i));
    }
  P->R = so_rmatrix(ctx, n, 1);
  std::vector<NcPoly> zz(size_t(n + 1) * (n + 1));
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) zz[size_t(i) * (n + 1) + j] = P->z(i, j);
  ZMap z = [&](int i, int j) { return zz[size_t(i) * (n + 1) + j]; };

  std::vector<NcPoly> rels;
  for (int i = 1; i <= n; ++i)
    for (int b = 1; b <= n; ++b)
      for (int j = 1; j <= n; ++j)
        for (int a = 1; a <= n; ++a) rels.push_back(frt_relation(*P->R, i, b, j, a, z));
  NcPoly one(CycloNum(ctx, 1));
  for (int a = 1; a <= n; ++a)
    for (int b = 1; b <= n; ++b) {
      NcPoly e, f;
      for (int k = 1; k <= n; ++k) {
        e.add_scaled(z(a, k) * z(so.prime(b), so.prime(k)), qpow_half(ctx, so.rho2(b) - so.rho2(k)));
        f.add_scaled(z(so.prime(k), so.prime(a)) * z(k, b), qpow_half(ctx, so.rho2(k) - so.rho2(a)));
      }
      if (a == b) e -= one, f -= one;
      rels.push_back(e);
      rels.push_back(f);
    }
  finish(*P, std::move(rels), opt);
  return P;
}

std::unique_ptr<BorelPresentation> sl_borel(const CycloCtx* ctx, int n, const BorelOptions& opt) {
  auto P = std::make_unique<BorelPresentation>();
  P->kind = Kind::A;
  P->n = n;
  P->ctx = ctx;
  P->alpha = std::make_shared<Alphabet>();
  // z_nn carries a weight above any product of the other diagonals so the
  // determinant relation eliminates it
  const int64_t wn = n + 1;
  for (int i = 1; i <= n; ++i)
    for (int j = i; j <= n; ++j) {
      int64_t w = (i == n) ? wn : 1;
      std::vector<int> g(size_t(n), 0);
      g[size_t(i - 1)] += 1;
      g[size_t(j - 1)] -= 1;
      P->alpha->add({i, j, false, w, zname(i, j)});
      P->grading.push_back(g);
      if (i == j) {
        P->alpha->add({i, i, true, w, zname(i, i, true)});
        P->grading.push_back(g);
      }
    }
  CycloNum q = CycloNum::gen(ctx), lam = q - q.inv();
  auto z = [&](int i, int j) { return P->z(i, j); };
  std::vector<NcPoly> rels;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      for (int s = 1; s <= n; ++s) {
        rels.push_back(z(i, s) * z(j, s) - z(j, s) * z(i, s) * q);
        rels.push_back(z(s, i) * z(s, j) - z(s, j) * z(s, i) * q);
      }
      for (int s = 1; s <= n; ++s)
        for (int t = s + 1; t <= n; ++t) {
          rels.push_back(z(i, t) * z(j, s) - z(j, s) * z(i, t));
          rels.push_back(z(i, s) * z(j, t) - z(j, t) * z(i, s) - z(i, t) * z(j, s) * lam);
        }
    }
  NcPoly one(CycloNum(ctx, 1));
  for (int i = 1; i <= n; ++i) {
    NcPoly d = z(i, i), di = P->zinv(i);
    rels.push_back(d * di - one);
    rels.push_back(di * d - one);
    for (int k = 1; k <= n; ++k)
      for (int l = k; l <= n; ++l) {
        if (k == i && l == i) continue;
        int e = int(k == i) - int(l == i);
        rels.push_back(di * z(k, l) - z(k, l) * di * qpow(ctx, -e));
      }
    for (int k = i + 1; k <= n; ++k) rels.push_back(di * P->zinv(k) - P->zinv(k) * di);
  }
  // quantum determinant of the Borel: z_11 ... z_nn = 1
  NcPoly det(CycloNum(ctx, 1)), deti(CycloNum(ctx, 1));
  for (int i = n - 1; i >= 1; --i) det = det * P->zinv(i);
  for (int i = 1; i < n; ++i) deti = deti * z(i, i);
  rels.push_back(z(n, n) - det);
  rels.push_back(P->zinv(n) - deti);
  finish(*P, std::move(rels), opt);
  return P;
}

}  // namespace

NcPoly BorelPresentation::z(int i, int j) const {
  if (i > j || i < 1 || j > n) return NcPoly();
  if (kind == Kind::B && i == j && i == so().n0()) return NcPoly(CycloNum(ctx, 1));
  int id = alpha->find(i, j);
  if (id < 0) throw Error("BorelPresentation::z: no letter z" + std::to_string(i) + "," + std::to_string(j));
  return letter(id);
}

NcPoly BorelPresentation::zinv(int i) const {
  if (kind != Kind::A) return z(so().prime(i), so().prime(i));
  int id = alpha->find(i, i, true);
  if (id < 0) throw Error("BorelPresentation::zinv: no inverse letter");
  return letter(id);
}

NcPoly BorelPresentation::antipode(int i, int j) const {
  if (i > j) return NcPoly();
  if (kind != Kind::A) {
    SoIndex s = so();
    return nf(z(s.prime(j), s.prime(i)) * qpow_half(ctx, s.rho2(j) - s.rho2(i)));
  }
  if (i == j) return nf(zinv(i));
  NcPoly acc;
  for (int k = i; k < j; ++k) acc += mul(mul(antipode(i, k), z(k, j)), zinv(j));
  return acc * CycloNum(ctx, -1);
}

NcPoly BorelPresentation::counit_check(int i, int j) const {
  NcPoly s = antipode(i, j);
  CycloNum v(ctx, 0);
  for (auto& [w, c] : s.terms()) {
    bool diag = true;
    for (char x : w) diag &= (*alpha)[x].row == (*alpha)[x].col;
    if (diag) v += c;
  }
  v -= CycloNum(ctx, int64_t(i == j));
  return NcPoly(v);
}

std::unique_ptr<BorelPresentation> borel_presentation(const CycloCtx* ctx, Kind kind, int n, BorelOptions opt) {
  if (kind == Kind::A) {
    if (n < 2) throw Error("borel_presentation: A needs n >= 2");
    return sl_borel(ctx, n, opt);
  }
  if ((kind == Kind::B) != (n % 2 == 1)) throw Error("borel_presentation: parity of n does not match the type");
  if (n < 4) throw Error("borel_presentation: orthogonal types need n >= 4");
  return so_borel(ctx, kind, n, opt);
}

// ---------------------------------------------------------------- derived identities

std::vector<NamedIdentity> derived_identities(const BorelPresentation& P) {
  std::vector<NamedIdentity> out;
  if (P.kind == Kind::A) return out;
  const CycloCtx* ctx = P.ctx;
  const int n = P.n;
  SoIndex so = P.so();
  const int n0 = so.n0();
  CycloNum q = CycloNum::gen(ctx), lam = q - q.inv(), qi = q.inv(), qi2 = qi * qi;
  auto z = [&](int i, int j) { return P.z(i, j); };
  auto pr = [&](int k) { return so.prime(k); };
  auto push = [&](std::string name, NcPoly e) {
    if (!e.is_zero()) out.push_back({std::move(name), std::move(e)});
  };
  auto tag = [](int a, int b, int c = 0) {
    std::string s = "(" + std::to_string(a) + "," + std::to_string(b);
    if (c) s += "," + std::to_string(c);
    return s + ")";
  };
  for (int i = 1; i <= n; ++i) {
    if (i == n0) continue;
    for (int t = i; t <= n; ++t)
      for (int s = t + 1; s <= n; ++s)
        if (s != pr(t)) push("row-qcomm" + tag(i, t, s), z(i, s) * z(i, t) - z(i, t) * z(i, s) * qi);
    for (int t = i; t < pr(t); ++t) {
      NcPoly e = z(i, pr(t)) * z(i, t) - z(i, t) * z(i, pr(t)) * qi2;
      for (int k = i; k < t; ++k) e.add_scaled(z(i, k) * z(i, pr(k)), lam * qpow(ctx, k - t - 1));
      push("row-hat" + tag(i, t), e);
    }
  }
  if (n0) {
    // row n0: the straightening of z_{n0 s} z_{n0 t}, t < s
    for (int t = n0; t <= n; ++t)
      for (int s = t + 1; s <= n; ++s) {
        NcPoly e = z(n0, s) * z(n0, t) - z(n0, t) * z(n0, s);
        for (int k = n0 + 1; k <= t; ++k) e.add_scaled(z(pr(k), s) * z(k, t), -lam * qpow_half(ctx, 2 * (n0 - k) + 1));
        push("row-middle" + tag(t, s), e);
      }
  }
  for (int j = 1; j <= n; ++j) {
    if (j != n0)
      for (int s = 1; s <= j; ++s)
        for (int t = 1; t < s; ++t)
          if (s != pr(t)) push("col-qcomm" + tag(t, s, j), z(s, j) * z(t, j) - z(t, j) * z(s, j) * qi);
    for (int t = 1; t < pr(t) && pr(t) <= j; ++t) {
      NcPoly e = z(pr(t), j) * z(t, j) - z(t, j) * z(pr(t), j) * qi2;
      for (int r = pr(j); r < t; ++r) e.add_scaled(z(r, j) * z(pr(r), j), lam * qpow(ctx, r - t - 1));
      push("col-hat" + tag(t, j), e);
    }
    if (n0 && j > n0)
      for (int t = 1; t < n0; ++t) push("col-middle" + tag(t, j), z(n0, j) * z(t, j) - z(t, j) * z(n0, j) * qi);
  }
  CycloNum mid = n0 ? qpow_half(ctx, 2 * n0 + 1) / (CycloNum(ctx, 1) + q) : CycloNum(ctx, 0);
  for (int i = 1; i < pr(i); ++i) {
    NcPoly e;
    for (int l = i; l < pr(l); ++l) e.add_scaled(z(i, l) * z(i, pr(l)), qpow(ctx, l));
    if (n0) e.add_scaled(z(i, n0) * z(i, n0), mid);
    push("row-sum(" + std::to_string(i) + ")", e);
  }
  for (int j = 1; j <= n; ++j) {
    if (!(pr(j) < j)) continue;
    NcPoly e;
    for (int r = pr(j); r < pr(r); ++r) e.add_scaled(z(r, j) * z(pr(r), j), qpow(ctx, r));
    if (n0) e.add_scaled(z(n0, j) * z(n0, j), mid);
    push("col-sum(" + std::to_string(j) + ")", e);
  }
  return out;
}

// ---------------------------------------------------------------- coproduct and Frobenius

namespace {
bool middle_inside(const BorelPresentation& P, int i, int j) {
  int n0 = P.kind == Kind::B ? P.so().n0() : 0;
  return n0 && i < n0 && n0 < j;
}
}  // namespace

CycloNum coproduct_coeff(const BorelPresentation& P, int i, int j, int k) {
  if (middle_inside(P, i, j) && k == P.so().n0()) {
    CycloNum one(P.ctx, 1);
    return CycloNum(P.ctx, 2) / (one + CycloNum::gen(P.ctx)).pow(P.ctx->N);
  }
  return CycloNum(P.ctx, 1);
}

CycloNum frobenius_gamma(const BorelPresentation& P, int i, int j) {
  if (middle_inside(P, i, j)) {
    CycloNum one(P.ctx, 1);
    return (one + CycloNum::gen(P.ctx)).pow(P.ctx->N) / CycloNum(P.ctx, 2);
  }
  return CycloNum(P.ctx, 1);
}

TensorPoly delta_powerN(const BorelPresentation& P, int i, int j, size_t max_terms, TensorPowerStats* stats) {
  std::vector<std::pair<NcPoly, NcPoly>> sm;
  for (int k = i; k <= j; ++k) sm.emplace_back(P.z(i, k), P.z(k, j));
  return tensor_power(sm, P.ctx->N, *P.rs, max_terms, stats);
}

const NcPoly& zpowN(const BorelPresentation& P, int i, int j) {
  auto key = std::make_pair(i, j);
  auto it = P.pow_cache.find(key);
  if (it == P.pow_cache.end()) it = P.pow_cache.emplace(key, P.rs->power(P.z(i, j), P.ctx->N)).first;
  return it->second;
}

namespace {
TensorPoly tensor_of(const NcPoly& a, const NcPoly& b, const CycloNum& c) {
  TensorPoly t;
  for (auto& [u, x] : a.terms())
    for (auto& [v, y] : b.terms()) t.add_term(u, v, c * x * y);
  return t;
}
}  // namespace

CoproductCase verify_coproduct_case(const BorelPresentation& P, int i, int j, const TensorPoly& delta,
                                    const CoeffTable& c) {
  CoproductCase cc;
  cc.i = i;
  cc.j = j;
  TensorPoly diff = delta;
  for (int k = i; k <= j; ++k) {
    const NcPoly &a = zpowN(P, i, k), &b = zpowN(P, k, j);
    CycloNum ck = c(i, j, k);
    TensorPoly e = tensor_of(a, b, ck);
    // witness: the leading term of the k-th summand
    if (!cc.witness_k && !e.is_zero()) {
      auto& [key, val] = *e.terms().begin();
      auto [u, v] = TensorPoly::split(key);
      CycloNum got = delta.coeff(u, v);
      if (got != val) {
        cc.witness_k = k;
        cc.detail = "coefficient of " + P.alpha->str(u) + " (x) " + P.alpha->str(v) + " is " + got.str() +
                    ", expected " + val.str();
      }
    }
    diff -= e;
  }
  cc.ok = diff.is_zero();
  if (!cc.ok && cc.detail.empty())
    cc.detail = std::to_string(diff.size()) + " stray tensor terms";
  return cc;
}

std::vector<CoproductCase> verify_coproduct_theorem(const BorelPresentation& P, const CoeffTable* c,
                                                    size_t max_terms) {
  CoeffTable def = [&P](int i, int j, int k) { return coproduct_coeff(P, i, j, k); };
  const CoeffTable& table = c ? *c : def;
  std::vector<CoproductCase> out;
  for (int i = 1; i <= P.n; ++i)
    for (int j = i; j <= P.n; ++j) {
      TensorPowerStats st;
      TensorPoly d = delta_powerN(P, i, j, max_terms, &st);
      CoproductCase cc = verify_coproduct_case(P, i, j, d, table);
      cc.peak_terms = st.peak_terms;
      cc.seconds = st.seconds;
      out.push_back(std::move(cc));
    }
  return out;
}

NcPoly frobenius_iota(const BorelPresentation& P, int i, int j) {
  if (i > j) return NcPoly();
  return zpowN(P, i, j) * frobenius_gamma(P, i, j);
}

FrobeniusReport verify_frobenius_theorem(const BorelPresentation& P,
                                         const std::function<const TensorPoly*(int, int)>& delta) {
  FrobeniusReport rep;
  const int n = P.n;
  auto tag = [](int i, int j) { return "(" + std::to_string(i) + "," + std::to_string(j) + ")"; };
  for (int i = 1; i <= n; ++i)
    for (int j = i; j <= n; ++j) {
      // c^k_ij gamma_ij = gamma_ik gamma_kj
      for (int k = i; k <= j; ++k) {
        if (coproduct_coeff(P, i, j, k) * frobenius_gamma(P, i, j) !=
            frobenius_gamma(P, i, k) * frobenius_gamma(P, k, j)) {
          rep.coalgebra_ok = false;
          rep.failures.push_back("coefficient identity at " + tag(i, j) + " k=" + std::to_string(k));
        }
      }
      if (const TensorPoly* d = delta ? delta(i, j) : nullptr) {
        TensorPoly lhs;
        for (auto& [key, c] : d->terms()) {
          auto [u, v] = TensorPoly::split(key);
          lhs.add_term(u, v, c * frobenius_gamma(P, i, j));
        }
        for (int k = i; k <= j; ++k) lhs -= tensor_of(frobenius_iota(P, i, k), frobenius_iota(P, k, j), CycloNum(P.ctx, 1));
        if (!lhs.is_zero()) {
          rep.coalgebra_ok = false;
          rep.failures.push_back("coalgebra map at " + tag(i, j));
        }
      }
    }
  if (P.kind != Kind::A) {
    SoIndex so = P.so();
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= n; ++j) {
        NcPoly s;
        for (int k = 1; k <= n; ++k) {
          NcPoly a = frobenius_iota(P, so.prime(k), so.prime(i)), b = frobenius_iota(P, k, j);
          if (a.is_zero() || b.is_zero()) continue;
          s += P.mul(a, b);
        }
        s -= NcPoly(CycloNum(P.ctx, int64_t(i == j)));
        if (!s.is_zero()) {
          rep.orthogonality_ok = false;
          rep.failures.push_back("orthogonality at " + tag(i, j));
        }
      }
  }
  NcPoly det(CycloNum(P.ctx, 1));
  for (int k = 1; k <= n; ++k) det = P.mul(det, frobenius_iota(P, k, k));
  if (det != NcPoly(CycloNum(P.ctx, 1))) {
    rep.determinant_ok = false;
    rep.failures.push_back("determinant image is " + P.str(det));
  }
  return rep;
}

TensorPoly claim_a1a2_defect(const BorelPresentation& P, int i, int j) {
  SoIndex so = P.so();
  const int n0 = so.n0(), ip = so.prime(i);
  if (P.kind == Kind::A || !(i < ip && ip <= j)) throw Error("claim_a1a2_defect: needs i < i' <= j");
  CycloNum one(P.ctx, 1), q = CycloNum::gen(P.ctx);
  CycloNum b1 = one / (one + q), b2 = q / (one + q);
  TensorPoly a1, a2;
  if (n0) {
    a1 = tensor_of(P.z(i, n0), P.z(n0, j), b1);
    a2 = tensor_of(P.z(i, n0), P.z(n0, j), b2);
  }
  for (int k = i; k <= ip; ++k) {
    if (k == n0) continue;
    TensorPoly t = tensor_of(P.z(i, k), P.z(k, j), one);
    TensorPoly& dst = k < so.prime(k) ? a1 : a2;
    for (auto& [key, c] : t.terms()) {
      auto [u, v] = TensorPoly::split(key);
      dst.add_term(u, v, c);
    }
  }
  TensorPoly l = tensor_mul(a1, a2, *P.rs), r = tensor_mul(a2, a1, *P.rs);
  TensorPoly out;
  CycloNum qi2 = (q * q).inv();
  for (auto& [key, c] : l.terms()) {
    auto [u, v] = TensorPoly::split(key);
    out.add_term(u, v, c * qi2);
  }
  out -= r;
  return out;
}

// ---------------------------------------------------------------- psi

CycloNum psi_lambda(const CycloCtx* ctx, Kind k, int theta, int i, int j) {
  CycloNum q = CycloNum::gen(ctx), inv_lam = (q - q.inv()).inv();
  if (k == Kind::A) {
    CycloNum s = qpow(ctx, i - j + 1) * inv_lam;
    return (j - i) % 2 ? -s : s;
  }
  int n = ambient_n(k, theta);
  if (i < 1 || j <= i || j > n - i || (k == Kind::D && i >= theta))
    throw Error("psi_lambda: invalid root label (" + std::to_string(i) + "," + std::to_string(j) + ")");
  if (j <= theta + 1) return qpow(ctx, j - i + 1 - int(j == theta + 1)) * inv_lam;
  CycloNum s = (k == Kind::B ? qpow_half(ctx, 2 * (j - i) - 1) : qpow(ctx, j - i)) * inv_lam;
  return (theta + 1 - j) % 2 ? -s : s;
}

PsiImage psi_image(const BorelPresentation& P, int theta, int i, int j) {
  PsiImage im;
  im.lambda = psi_lambda(P.ctx, P.kind, theta, i, j);
  if (P.kind == Kind::A) {
    im.word = P.mul(P.z(i, j), P.zinv(j));
  } else {
    SoIndex so = P.so();
    im.word = P.mul(P.z(so.prime(j), so.prime(i)), P.z(i, i));
  }
  return im;
}

NcPoly psi_simple(const BorelPresentation& P, int theta, int i) {
  const CycloCtx* ctx = P.ctx;
  CycloNum q = CycloNum::gen(ctx), inv_lam = (q - q.inv()).inv();
  if (P.kind == Kind::A) return P.mul(P.z(i, i + 1), P.zinv(i + 1)) * (-inv_lam);
  SoIndex so = P.so();
  int ip = so.prime(i);
  if (P.kind == Kind::B)
    return P.mul(P.z(ip - 1, ip), P.z(i, i)) * (qpow(ctx, 2 - int(i == theta)) * inv_lam);
  if (i < theta) return P.mul(P.z(ip - 1, ip), P.z(i, i)) * (qpow(ctx, 2) * inv_lam);
  // the image paired with psi(K_theta) = z_{theta-1,theta-1} z_{theta,theta}
  return P.mul(P.z(theta, theta + 2), P.z(theta - 1, theta - 1)) * (qpow(ctx, 2) * inv_lam);
}

NcPoly psi_recursive(const BorelPresentation& P, int theta, int i, int j, const CycloNum* qrec) {
  CycloNum qr = qrec ? *qrec : CycloNum::gen(P.ctx);
  CycloNum qri = qr.inv();
  auto bracket = [&](const NcPoly& x, const NcPoly& y, const CycloNum& c) {
    return P.mul(x, y) - P.mul(y, x) * c;
  };
  auto E = [&](int a) { return psi_simple(P, theta, a); };
  int n = P.n;
  if (P.kind == Kind::A) {
    if (j == i + 1) return E(i);
    return bracket(psi_recursive(P, theta, i, j - 1, qrec), E(j - 1), qri);
  }
  int jp = n + 1 - j;
  if (P.kind == Kind::B) {
    if (j == i + 1) return E(i);
    if (j <= theta + 1) return bracket(E(j - 1), psi_recursive(P, theta, i, j - 1, qrec), qri);
    return bracket(E(jp), psi_recursive(P, theta, i, j - 1, qrec), j == theta + 2 ? CycloNum(P.ctx, 1) : qri);
  }
  if (j == i + 1) return E(i);
  if (i == theta - 1 && j == theta + 1) return E(theta);
  if (j <= theta) return bracket(E(j - 1), psi_recursive(P, theta, i, j - 1, qrec), qri);
  if (j == theta + 1) return bracket(E(theta), psi_recursive(P, theta, i, theta - 1, qrec), qri);
  return bracket(E(jp), psi_recursive(P, theta, i, j - 1, qrec), qri);
}

}  // namespace qlift
