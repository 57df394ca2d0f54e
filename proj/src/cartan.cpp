#include "qlift/cartan.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include <nlohmann/json.hpp>

namespace qlift {

char kind_char(Kind k) { return k == Kind::A ? 'A' : (k == Kind::B ? 'B' : 'D'); }

Kind parse_kind(const std::string& s) {
  if (s == "A" || s == "a") return Kind::A;
  if (s == "B" || s == "b") return Kind::B;
  if (s == "D" || s == "d") return Kind::D;
  throw Error("unknown type '" + s + "' (expected A, B or D)");
}

int ambient_n(Kind k, int theta) {
  switch (k) {
    case Kind::A: return theta + 1;
    case Kind::B: return 2 * theta + 1;
    case Kind::D: return 2 * theta;
  }
  return 0;
}

std::vector<std::pair<int, int>> root_labels(Kind k, int theta) {
  std::vector<std::pair<int, int>> v;
  if (k == Kind::A) {
    for (int i = 1; i <= theta; ++i)
      for (int j = i + 1; j <= theta + 1; ++j) v.emplace_back(i, j);
    return v;
  }
  int n = ambient_n(k, theta);
  int imax = k == Kind::B ? theta : theta - 1;
  for (int i = 1; i <= imax; ++i)
    for (int j = i + 1; j <= n - i; ++j) v.emplace_back(i, j);
  return v;
}

std::string label_name(Kind k, int theta, int i, int j) {
  int n = ambient_n(k, theta);
  bool primed = (k == Kind::B && j > theta + 1) || (k == Kind::D && j > theta);
  int jj = primed ? n + 1 - j : j;
  std::string s = std::to_string(i);
  if (i >= 10 || jj >= 10) s += ",";
  s += std::to_string(jj);
  if (primed) s += "'";
  return s;
}

// ---------------------------------------------------------------- root systems

int RootSystem::find(int i, int j) const {
  for (size_t r = 0; r < labels.size(); ++r)
    if (labels[r] == std::make_pair(i, j)) return int(r);
  return -1;
}

int RootSystem::find_root(const std::vector<int>& c) const {
  for (size_t r = 0; r < roots.size(); ++r)
    if (roots[r] == c) return int(r);
  return -1;
}

int RootSystem::height(size_t r) const { return std::accumulate(roots[r].begin(), roots[r].end(), 0); }

std::vector<size_t> RootSystem::height_order() const {
  std::vector<size_t> idx(roots.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](size_t a, size_t b) {
    int ha = height(a), hb = height(b);
    if (ha != hb) return ha < hb;
    return roots[a] > roots[b];
  });
  return idx;
}

namespace {

std::vector<int> root_coeffs(Kind k, int theta, int i, int j) {
  std::vector<int> c(theta, 0);
  auto fill = [&](int a, int b, int v) {  // one-based a..b inclusive
    for (int s = a; s <= b; ++s) c[s - 1] += v;
  };
  if (k == Kind::A) {
    fill(i, j - 1, 1);
  } else if (k == Kind::B) {
    if (j <= theta + 1) {
      fill(i, j - 1, 1);
    } else {
      int jp = 2 * theta + 2 - j;
      fill(i, jp - 1, 1);
      fill(jp, theta, 2);
    }
  } else {
    if (j <= theta) {
      fill(i, j - 1, 1);
    } else if (j == theta + 1) {
      fill(i, theta - 2, 1);
      fill(theta, theta, 1);
    } else {
      int jp = 2 * theta + 1 - j;
      fill(i, jp - 1, 1);
      fill(jp, theta - 2, 2);
      fill(theta - 1, theta, 1);
    }
  }
  return c;
}

}  // namespace

RootSystem root_system(Kind k, int theta) {
  int lo = k == Kind::A ? 1 : 2;
  if (theta < lo || theta > 64)
    throw Error(std::string("root_system: invalid rank ") + std::to_string(theta) + " for type " + kind_char(k));
  RootSystem rs;
  rs.kind = k;
  rs.theta = theta;
  rs.n = ambient_n(k, theta);
  rs.cartan.assign(theta, std::vector<int64_t>(theta, 0));
  rs.d.assign(theta, 1);
  auto link = [&](int a, int b, int ab, int ba) {  // zero-based
    rs.cartan[a][b] = ab;
    rs.cartan[b][a] = ba;
  };
  for (int i = 0; i < theta; ++i) rs.cartan[i][i] = 2;
  if (k == Kind::D) {
    for (int i = 0; i + 1 < theta - 1; ++i) link(i, i + 1, -1, -1);
    if (theta >= 3) link(theta - 3, theta - 1, -1, -1);
  } else {
    for (int i = 0; i + 1 < theta; ++i) link(i, i + 1, -1, -1);
  }
  if (k == Kind::B) {
    for (int i = 0; i + 1 < theta; ++i) rs.d[i] = 2;
    rs.cartan[theta - 1][theta - 2] = -2;
  }
  rs.labels = root_labels(k, theta);
  for (auto [i, j] : rs.labels) rs.roots.push_back(root_coeffs(k, theta, i, j));
  return rs;
}

// ---------------------------------------------------------------- lattices

namespace {

using RatMat = std::vector<std::vector<mpq_class>>;

RatMat to_rat(const IntMat& m) {
  RatMat r(m.size());
  for (size_t i = 0; i < m.size(); ++i)
    for (auto x : m[i]) r[i].emplace_back(mpq_class(long(x)));
  return r;
}

// Gauss-Jordan; returns the determinant and writes the inverse when nonzero.
mpq_class invert(RatMat a, RatMat& inv) {
  size_t n = a.size();
  inv.assign(n, std::vector<mpq_class>(n, 0));
  for (size_t i = 0; i < n; ++i) inv[i][i] = 1;
  mpq_class det = 1;
  for (size_t c = 0; c < n; ++c) {
    size_t p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      std::swap(a[p], a[c]);
      std::swap(inv[p], inv[c]);
      det = -det;
    }
    mpq_class piv = a[c][c];
    det *= piv;
    for (size_t k = 0; k < n; ++k) {
      a[c][k] /= piv;
      inv[c][k] /= piv;
    }
    for (size_t r = 0; r < n; ++r) {
      if (r == c || a[r][c] == 0) continue;
      mpq_class f = a[r][c];
      for (size_t k = 0; k < n; ++k) {
        a[r][k] -= f * a[c][k];
        inv[r][k] -= f * inv[c][k];
      }
    }
  }
  return det;
}

IntMat identity(int n) {
  IntMat m(n, std::vector<int64_t>(n, 0));
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

int64_t mod(int64_t a, int64_t m) { return ((a % m) + m) % m; }

int64_t inverse_mod(int64_t a, int64_t m) {
  mpz_class r, A = long(mod(a, m)), M = long(m);
  if (!mpz_invert(r.get_mpz_t(), A.get_mpz_t(), M.get_mpz_t()))
    throw Error("no inverse of " + std::to_string(a) + " modulo " + std::to_string(m));
  return r.get_si();
}

std::string ij(int i, int j) { return "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")"; }

}  // namespace

LatticeChoice default_lattice(Kind k) { return k == Kind::A ? LatticeChoice::Weight : LatticeChoice::Root; }

LatticeData lattice_data(const RootSystem& rs, LatticeChoice choice) {
  int t = rs.theta;
  LatticeData L;
  L.choice = choice;
  if (choice == LatticeChoice::Weight) {
    L.CM = rs.cartan;
    L.CbarM = identity(t);
  } else {
    L.CM = identity(t);
    L.CbarM = rs.cartan;
  }
  mpq_class det = invert(to_rat(L.CM), L.CM_inv);
  if (det == 0 || det.get_den() != 1) throw Error("lattice_data: singular lattice matrix");
  L.det_CM = std::abs(det.get_num().get_si());
  L.pairing.assign(t, std::vector<int64_t>(t, 0));
  for (int i = 0; i < t; ++i)
    for (int j = 0; j < t; ++j) L.pairing[i][j] = rs.d[j] * L.CbarM[j][i];
  if (rs.kind == Kind::A && choice == LatticeChoice::Weight) {
    int n = t + 1;
    L.omega_e.assign(t, std::vector<mpq_class>(n, 0));
    for (int i = 0; i < t; ++i)
      for (int k = 0; k < n; ++k) L.omega_e[i][k] = mpq_class(k <= i ? 1 : 0) - mpq_class(i + 1, n);
  }
  return L;
}

// ---------------------------------------------------------------- data

int64_t discrete_log(const CycloCtx* ctx, const CycloNum& x) {
  for (int k = 0; k < ctx->N; ++k)
    if (qpow(ctx, k) == x) return k;
  return -1;
}

QMat dj_braiding(const CycloCtx* ctx, const RootSystem& rs) {
  int t = rs.theta;
  QMat m(t);
  for (int i = 0; i < t; ++i)
    for (int j = 0; j < t; ++j) m[i].push_back(qpow(ctx, rs.d[i] * rs.cartan[i][j]));
  return m;
}

MultiParam multiparam_qM(const CartanDatum& D, const LatticeData& lat, const IntMat* roots) {
  int t = D.rs.theta;
  int64_t N = D.N(), a = lat.det_CM;
  IntMat r(t, std::vector<int64_t>(t));
  if (roots) {
    r = *roots;
    for (int i = 0; i < t; ++i)
      for (int j = 0; j < t; ++j)
        if (mod(r[i][j] * a - D.qexp[i][j], N) != 0)
          throw Error("multiparam_qM: chosen root at " + ij(i, j) + " is not an a-th root of q_ij");
  } else {
    int64_t ainv = inverse_mod(a, N);
    for (int i = 0; i < t; ++i)
      for (int j = 0; j < t; ++j) r[i][j] = mod(D.qexp[i][j] * ainv, N);
  }
  // q_ij^{1/a} q_ji^{1/a} = (q_ii^{1/a})^{a_ij}
  for (int i = 0; i < t; ++i)
    for (int j = 0; j < t; ++j)
      if (mod(r[i][j] + r[j][i] - r[i][i] * D.rs.cartan[i][j], N) != 0)
        throw Error("multiparam_qM: root family inconsistent with the Cartan relation at " + ij(i, j));
  MultiParam M;
  M.exp.assign(t, std::vector<int64_t>(t, 0));
  M.value.resize(t);
  for (int i = 0; i < t; ++i)
    for (int j = 0; j < t; ++j) {
      mpz_class e = 0;
      for (int k = 0; k < t; ++k) {
        mpq_class w = lat.CM_inv[k][i] * mpq_class(long(a));
        if (w.get_den() != 1) throw Error("multiparam_qM: lattice inverse not in (1/a)Z");
        e += w.get_num() * long(r[k][j]);
      }
      mpz_class m = e % long(N);
      M.exp[i][j] = mod(m.get_si(), N);
      M.value[i].push_back(qpow(D.ctx, M.exp[i][j]));
    }
  return M;
}

CartanDatum datum_build(const RootSystem& rs, const LatticeData& lat, const CycloCtx* ctx,
                        const std::vector<int64_t>& orders, const QMat& qmatrix, const IntMat* roots) {
  int t = rs.theta;
  int64_t N = ctx->N;
  if (int(orders.size()) != t) throw Error("datum_build: expected " + std::to_string(t) + " group orders");
  if (int(qmatrix.size()) != t) throw Error("datum_build: braiding matrix must be " + std::to_string(t) + "x" + std::to_string(t));
  CartanDatum D;
  D.rs = rs;
  D.lat = lat;
  D.ctx = ctx;
  D.orders = orders;
  for (int64_t n : orders) {
    if (n <= 0 || n % N) throw Error("datum_build: group order " + std::to_string(n) + " is not a multiple of N");
    D.ell.push_back(n / N);
  }
  D.q = qmatrix;
  D.qexp.assign(t, std::vector<int64_t>(t, 0));
  for (int i = 0; i < t; ++i) {
    if (int(qmatrix[i].size()) != t) throw Error("datum_build: braiding matrix is not square");
    for (int j = 0; j < t; ++j) {
      if (qmatrix[i][j].is_zero()) throw Error("datum_build: q" + ij(i, j) + " is zero");
      int64_t e = discrete_log(ctx, qmatrix[i][j]);
      if (e < 0) throw Error("datum_build: q" + ij(i, j) + " is not a power of q");
      D.qexp[i][j] = e;
    }
  }
  for (int i = 0; i < t; ++i)
    for (int j = 0; j < t; ++j)
      if (D.q[i][j] * D.q[j][i] != D.q[i][i].pow(rs.cartan[i][j]))
        throw Error("datum_build: Cartan relation q_ij q_ji = q_ii^a_ij fails at " + ij(i, j));
  for (int i = 0; i < t; ++i)
    if (N / std::gcd<int64_t>(D.qexp[i][i], N) != N)
      throw Error("datum_build: q" + ij(i, i) + " does not have order N");

  MultiParam M = multiparam_qM(D, lat, roots);
  if (roots) D.rootexp = *roots;
  else {
    int64_t ainv = inverse_mod(lat.det_CM, N);
    D.rootexp.assign(t, std::vector<int64_t>(t));
    for (int i = 0; i < t; ++i)
      for (int j = 0; j < t; ++j) D.rootexp[i][j] = mod(D.qexp[i][j] * ainv, N);
  }
  D.chi.assign(t, std::vector<CycloNum>(t));
  for (int i = 0; i < t; ++i)
    for (int j = 0; j < t; ++j) D.chi[j][i] = M.value[i][j];
  D.g.assign(t, std::vector<int64_t>(t));
  for (int j = 0; j < t; ++j)
    for (int k = 0; k < t; ++k) D.g[j][k] = mod(lat.CM[k][j], orders[k]);
  // chi_j(g_i) must give back q_ij
  for (int i = 0; i < t; ++i)
    for (int j = 0; j < t; ++j) {
      CycloNum v(ctx, 1);
      for (int k = 0; k < t; ++k) v *= D.chi[j][k].pow(lat.CM[k][i]);
      if (v != D.q[i][j]) throw Error("datum_build: characters do not reproduce q" + ij(i, j));
    }
  return D;
}

ChiReport lemma_chi_check(const CartanDatum& D, const LatticeData& lat) {
  int t = D.rs.theta;
  int64_t a = lat.det_CM;
  IntMat r;
  if (a == D.lat.det_CM) {
    r = D.rootexp;
  } else {
    int64_t ainv = inverse_mod(a, D.N());
    r.assign(t, std::vector<int64_t>(t));
    for (int i = 0; i < t; ++i)
      for (int j = 0; j < t; ++j) r[i][j] = mod(D.qexp[i][j] * ainv, D.N());
  }
  ChiReport rep;
  for (int i = 0; i < t; ++i)
    for (int j = 0; j < t; ++j) {
      // chi_{m_i}(g_j) = prod_k q_jk^{atilde_ki}
      mpz_class e = 0;
      for (int k = 0; k < t; ++k) {
        mpq_class w = lat.CM_inv[k][i] * mpq_class(long(a));
        e += w.get_num() * long(r[j][k]);
      }
      mpz_class em = e % long(D.N());
      CycloNum lhs = D.chi[j][i] * qpow(D.ctx, em.get_si());
      CycloNum rhs = D.q[j][j].pow(lat.CbarM[j][i]);
      if (lhs != rhs) {
        rep.ok = false;
        rep.failures.emplace_back(i + 1, j + 1);
      }
    }
  return rep;
}

std::vector<int64_t> group_element(const CartanDatum& D, const std::vector<int>& root) {
  int t = D.rs.theta;
  std::vector<int64_t> e(t, 0);
  for (int i = 0; i < t; ++i)
    for (int k = 0; k < t; ++k) e[k] += root[i] * D.g[i][k];
  for (int k = 0; k < t; ++k) e[k] = mod(e[k], D.orders[k]);
  return e;
}

MuFamily mu_symbolic(const RootSystem& rs) {
  MuFamily m;
  m.mu.assign(rs.size(), MuEntry{});
  m.forced.assign(rs.size(), false);
  return m;
}

MuFamily mu_zero(const RootSystem& rs) {
  MuFamily m;
  m.mu.assign(rs.size(), MuEntry{false, CycloNum(0)});
  m.forced.assign(rs.size(), false);
  return m;
}

MuFamily mu_validate(const CartanDatum& D, MuFamily mu) {
  int t = D.rs.theta;
  int64_t N = D.N();
  if (mu.mu.size() != D.rs.size()) throw Error("mu_validate: family size does not match the positive roots");
  mu.forced.assign(mu.mu.size(), false);
  for (size_t r = 0; r < D.rs.size(); ++r) {
    const auto& c = D.rs.roots[r];
    auto e = group_element(D, c);
    bool trivial = true;
    for (int k = 0; k < t; ++k)
      if ((N * e[k]) % D.orders[k]) trivial = false;
    bool chi_trivial = true;
    for (int k = 0; k < t; ++k) {
      CycloNum v(D.ctx, 1);
      for (int i = 0; i < t; ++i) v *= D.chi[i][k].pow(int64_t(N) * c[i]);
      if (!v.is_one()) chi_trivial = false;
    }
    if (trivial || !chi_trivial) {
      mu.forced[r] = true;
      mu.mu[r] = MuEntry{false, CycloNum(0)};
    }
  }
  return mu;
}

mpz_class dimension(const CartanDatum& D) {
  mpz_class d;
  mpz_ui_pow_ui(d.get_mpz_t(), D.N(), D.rs.size());
  for (int64_t n : D.orders) d *= long(n);
  return d;
}

// ---------------------------------------------------------------- documents

namespace {

CycloNum parse_scalar(const CycloCtx* ctx, const nlohmann::json& v) {
  if (v.is_number_integer()) return CycloNum(ctx, v.get<int64_t>());
  if (v.is_string()) {
    mpq_class x;
    if (x.set_str(v.get<std::string>(), 10) != 0) throw Error("datum: cannot parse scalar '" + v.get<std::string>() + "'");
    x.canonicalize();
    return CycloNum::from_coeffs(ctx, {x});
  }
  if (v.is_array()) {
    std::vector<mpq_class> c;
    for (auto& e : v) {
      mpq_class x;
      std::string s = e.is_string() ? e.get<std::string>() : std::to_string(e.get<int64_t>());
      if (x.set_str(s, 10) != 0) throw Error("datum: cannot parse coefficient '" + s + "'");
      x.canonicalize();
      c.push_back(x);
    }
    return CycloNum::from_coeffs(ctx, c);
  }
  throw Error("datum: scalar must be an integer, a rational string or a coefficient list");
}

}  // namespace

CycloNum scalar_from_json(const CycloCtx* ctx, const std::string& text) {
  try {
    return parse_scalar(ctx, nlohmann::json::parse(text));
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("scalar: ") + e.what());
  }
}

DatumDoc parse_datum_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("datum: invalid JSON: ") + e.what());
  }
  try {
    Kind k = parse_kind((j.contains("kind") ? j["kind"] : j.at("type")).get<std::string>());
    int theta = j.at("rank").get<int>();
    int N = j.at("N").get<int>();
    const CycloCtx* ctx = ctx_new(N);
    RootSystem rs = root_system(k, theta);
    LatticeChoice lc = default_lattice(k);
    if (j.contains("lattice")) {
      std::string s = j["lattice"].get<std::string>();
      if (s == "root") lc = LatticeChoice::Root;
      else if (s == "weight") lc = LatticeChoice::Weight;
      else throw Error("datum: lattice must be 'root' or 'weight'");
    }
    LatticeData lat = lattice_data(rs, lc);
    std::vector<int64_t> orders(theta, int64_t(N) * N);
    if (j.contains("orders")) orders = j["orders"].get<std::vector<int64_t>>();
    QMat qm = dj_braiding(ctx, rs);
    if (j.contains("braiding") && !j["braiding"].is_string()) {
      auto e = j["braiding"].get<std::vector<std::vector<int64_t>>>();
      qm.assign(e.size(), {});
      for (size_t a = 0; a < e.size(); ++a)
        for (auto x : e[a]) qm[a].push_back(qpow(ctx, x));
    } else if (j.contains("braiding") && j["braiding"].get<std::string>() != "drinfeld-jimbo" &&
               j["braiding"].get<std::string>() != "DJ") {
      throw Error("datum: braiding must be \"DJ\" or an exponent matrix");
    }
    IntMat roots;
    bool have_roots = j.contains("roots");
    if (have_roots) roots = j["roots"].get<IntMat>();
    DatumDoc doc{datum_build(rs, lat, ctx, orders, qm, have_roots ? &roots : nullptr), mu_symbolic(rs)};
    if (j.contains("mu")) {
      const auto& m = j["mu"];
      if (m.is_string()) {
        if (m.get<std::string>() == "zero") doc.mu = mu_zero(rs);
        else if (m.get<std::string>() != "symbolic") throw Error("datum: mu must be \"symbolic\", \"zero\" or an object");
      } else {
        for (auto it = m.begin(); it != m.end(); ++it) {
          int r = -1;
          for (size_t s = 0; s < rs.size(); ++s)
            if (rs.name(s) == it.key()) r = int(s);
          if (r < 0) throw Error("datum: unknown root label '" + it.key() + "'");
          if (it->is_string() && it->get<std::string>() == "symbolic") doc.mu.mu[r] = MuEntry{};
          else doc.mu.mu[r] = MuEntry{false, parse_scalar(ctx, *it)};
        }
      }
    }
    doc.mu = mu_validate(doc.datum, doc.mu);
    return doc;
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("datum: ") + e.what());
  }
}

std::string datum_json(const CartanDatum& D, const MuFamily& mu) {
  nlohmann::ordered_json j;
  j["type"] = std::string(1, kind_char(D.rs.kind));
  j["rank"] = D.rs.theta;
  j["N"] = D.N();
  j["orders"] = D.orders;
  j["lattice"] = D.lat.choice == LatticeChoice::Root ? "root" : "weight";
  j["braiding"] = D.qexp;
  nlohmann::ordered_json m = nlohmann::ordered_json::object();
  for (size_t r = 0; r < D.rs.size(); ++r) {
    if (mu.mu[r].symbolic) m[D.rs.name(r)] = "symbolic";
    else {
      nlohmann::ordered_json c = nlohmann::ordered_json::array();
      for (auto& x : mu.mu[r].value.coeffs()) c.push_back(x.get_str());
      m[D.rs.name(r)] = c;
    }
  }
  j["mu"] = m;
  return j.dump(2);
}

}  // namespace qlift
