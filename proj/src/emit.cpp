#include "qlift/emit.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include <nlohmann/json.hpp>

namespace qlift {

Format parse_format(const std::string& s) {
  if (s == "text") return Format::Text;
  if (s == "json") return Format::Json;
  if (s == "latex") return Format::Latex;
  throw Error("unknown format '" + s + "' (expected text, json or latex)");
}

// ---------------------------------------------------------------- scalars

namespace {

constexpr int kAtomRange = 6;

struct AtomTable {
  std::vector<CycloNum> minus, plus;  // (q-1)^{eN}, (q+1)^{eN} for e in [-R, R]
};

const AtomTable& atoms(const CycloCtx* ctx) {
  static std::map<const CycloCtx*, AtomTable> cache;
  auto it = cache.find(ctx);
  if (it != cache.end()) return it->second;
  AtomTable t;
  CycloNum q = CycloNum::gen(ctx), one(ctx, 1);
  CycloNum m = (q - one).pow(ctx->N), p = (q + one).pow(ctx->N);
  for (int e = -kAtomRange; e <= kAtomRange; ++e) {
    t.minus.push_back(m.pow(e));
    t.plus.push_back(p.pow(e));
  }
  return cache.emplace(ctx, std::move(t)).first->second;
}

}  // namespace

ScalarForm scalar_form(const CycloNum& x) {
  ScalarForm f;
  if (x.is_zero()) {
    f.found = true;
    f.rational = 0;
    return f;
  }
  if (!x.ctx() || x.is_rational()) {
    f.found = true;
    f.rational = abs(x.rational_value());
    f.sign = x.rational_value() < 0 ? -1 : 1;
    return f;
  }
  const AtomTable& t = atoms(x.ctx());
  for (int tot = 1; tot <= 2 * kAtomRange && !f.found; ++tot)
    for (int b = -kAtomRange; b <= kAtomRange && !f.found; ++b) {
      int ca = tot - std::abs(b);
      if (ca < 0 || ca > kAtomRange) continue;
      for (int c : {ca, -ca}) {
        CycloNum y = x / (t.minus[b + kAtomRange] * t.plus[c + kAtomRange]);
        if (!y.is_rational()) {
          if (ca == 0) break;
          continue;
        }
        mpq_class r = y.rational_value();
        f.found = true;
        f.sign = r < 0 ? -1 : 1;
        f.rational = abs(r);
        if ((b > 0 && c > 0) || (b < 0 && c < 0)) {
          int s = b > 0 ? 1 : -1;
          f.a = s * std::min(std::abs(b), std::abs(c));
          b -= f.a;
          c -= f.a;
        }
        f.b = b;
        f.c = c;
        break;
      }
    }
  return f;
}

namespace {

std::string qname(Kind k, Format f) {
  if (k != Kind::B) return "q";
  return f == Format::Latex ? "q_1" : "q1";
}

std::string power_suffix(int e, Format f) {
  if (f == Format::Latex) return "^{" + (e == 1 ? std::string() : (e == -1 ? std::string("-") : std::to_string(e))) + "N}";
  if (e == 1) return "^N";
  return "^(" + (e == -1 ? std::string("-") : std::to_string(e)) + "N)";
}

// coefficient body without sign; empty when the coefficient is 1
std::string coeff_body(const CycloNum& x, Kind k, Format f, int& sign) {
  ScalarForm s = scalar_form(x);
  std::string v = qname(k, f);
  std::vector<std::string> parts;
  if (!s.found) {
    sign = 1;
    return "(" + x.str(v) + ")";
  }
  sign = s.sign;
  if (s.rational != 1) {
    if (f == Format::Latex && s.rational.get_den() != 1)
      parts.push_back("\\tfrac{" + s.rational.get_num().get_str() + "}{" + s.rational.get_den().get_str() + "}");
    else
      parts.push_back(s.rational.get_str());
  }
  if (s.a) parts.push_back("(" + v + "^2-1)" + power_suffix(s.a, f));
  if (s.b) parts.push_back("(" + v + "-1)" + power_suffix(s.b, f));
  if (s.c) parts.push_back((f == Format::Latex ? "(1+" + v + ")" : "(" + v + "+1)") + power_suffix(s.c, f));
  std::string out;
  for (auto& p : parts) {
    if (!out.empty() && f != Format::Latex) out += "*";
    out += p;
  }
  return out;
}

std::string pair_text(int i, int j) {
  return std::to_string(i) + (i >= 10 || j >= 10 ? "," : "") + std::to_string(j);
}

struct Term {
  CycloNum c;
  std::vector<std::string> syms;
};

std::string join_terms(const std::vector<Term>& terms, Kind k, Format f) {
  if (terms.empty()) return "0";
  std::string out;
  bool first = true;
  for (auto& t : terms) {
    int sign = 1;
    std::string body = coeff_body(t.c, k, f, sign);
    std::string syms;
    for (auto& s : t.syms) {
      if (!syms.empty() && f != Format::Latex) syms += "*";
      syms += s;
    }
    std::string piece = body;
    if (!syms.empty()) {
      if (!piece.empty() && f != Format::Latex) piece += "*";
      piece += syms;
    }
    if (piece.empty()) piece = "1";
    if (first) out += sign < 0 ? "-" : "";
    else out += sign < 0 ? " - " : " + ";
    out += piece;
    first = false;
  }
  return out;
}

std::vector<std::pair<Mono, CycloNum>> ordered_terms(const Poly& p) {
  std::vector<std::pair<Mono, CycloNum>> v(p.terms().begin(), p.terms().end());
  auto deg = [](const Mono& m) {
    int d = 0;
    for (auto [var, e] : m)
      if (var_kind(var) == VarKind::Mu || var_kind(var) == VarKind::R) d += e;
    return d;
  };
  std::stable_sort(v.begin(), v.end(), [&](auto& a, auto& b) {
    int da = deg(a.first), db = deg(b.first);
    if (da != db) return da < db;
    return MonoOrder()(a.first, b.first);
  });
  return v;
}

std::vector<std::string> mono_syms(const Mono& m, Kind k, int theta, Format f) {
  std::vector<std::string> s;
  for (auto [v, e] : m) {
    std::string x = symbol_text(v, k, theta, f);
    if (e != 1) x += f == Format::Latex ? "^{" + std::to_string(e) + "}" : "^" + std::to_string(e);
    s.push_back(x);
  }
  return s;
}

}  // namespace

std::string scalar_text(const CycloNum& x, Kind k, Format f) {
  int sign = 1;
  std::string body = coeff_body(x, k, f, sign);
  if (body.empty()) body = "1";
  return (sign < 0 ? "-" : "") + body;
}

std::string symbol_text(int var, Kind k, int theta, Format f) {
  int i = var_i(var), j = var_j(var);
  bool tex = f == Format::Latex;
  switch (var_kind(var)) {
    case VarKind::Mu: return tex ? "\\mu_{" + label_name(k, theta, i, j) + "}" : "mu_" + label_name(k, theta, i, j);
    case VarKind::R: return tex ? "r_{" + pair_text(i, j) + "}" : "r_" + pair_text(i, j);
    case VarKind::T: return tex ? "t_{" + std::to_string(i) + "}" : "t_" + std::to_string(i);
    case VarKind::G: return tex ? "g_{" + std::to_string(i) + "}^{N}" : "g_" + std::to_string(i) + "^N";
    case VarKind::X:
      return tex ? "x^N_{(" + label_name(k, theta, i, j) + ")}" : "x_(" + label_name(k, theta, i, j) + ")^N";
    default: return "?";
  }
}

std::string entry_text(const Poly& p, int i, int j, Kind k, int theta, Format f) {
  std::vector<Term> terms;
  for (auto& [m, c] : ordered_terms(p)) terms.push_back({c, mono_syms(m, k, theta, f)});
  std::string lhs = symbol_text(r_var(i, j), k, theta, f);
  return lhs + " = " + join_terms(terms, k, f);
}

namespace {

std::string group_text(const Mono& g, const RootSystem& rs, Format f) {
  std::vector<int> e(rs.theta, 0);
  for (auto [v, x] : g) e[var_i(v) - 1] = x;
  int r = rs.find_root(e);
  bool tex = f == Format::Latex;
  if (r >= 0) return tex ? "g^N_{(" + rs.name(r) + ")}" : "g_(" + rs.name(r) + ")^N";
  std::string out;
  for (int k = 0; k < rs.theta; ++k) {
    if (!e[k]) continue;
    std::string s = tex ? "g_{" + std::to_string(k + 1) + "}^{" + (e[k] == 1 ? "" : std::to_string(e[k])) + "N}"
                        : "g_" + std::to_string(k + 1) + (e[k] == 1 ? "^N" : "^(" + std::to_string(e[k]) + "N)");
    if (!out.empty() && !tex) out += "*";
    out += s;
  }
  return out;
}

struct Split {
  Mono group, rest;
};

Split split_group(const Mono& m) {
  Split s;
  for (auto [v, e] : m) (var_kind(v) == VarKind::G ? s.group : s.rest).emplace_back(v, e);
  return s;
}

}  // namespace

std::string entries_text(const UnipotentMatrix& Q, const std::vector<std::pair<int, int>>& at, Kind k, int theta,
                         Format f) {
  std::string s;
  for (auto [i, j] : at) s += entry_text(Q.at(i, j), i, j, k, theta, f) + "\n";
  return s;
}

std::string relation_text(const LiftRelation& rel, const RootSystem& rs, Format f) {
  Kind k = rs.kind;
  int theta = rs.theta;
  bool tex = f == Format::Latex;
  std::vector<Term> terms;
  std::map<Mono, Poly> by_group;
  for (auto& [m, c] : rel.group.terms()) {
    Split s = split_group(m);
    by_group[s.group].add_term(s.rest, c);
  }
  Poly total;
  for (auto& [g, p] : by_group) total += p;
  bool augmented = total.is_zero();
  bool flip = k == Kind::A;
  for (auto& [g, p] : by_group) {
    if (augmented && g.empty()) continue;
    std::string gt = group_text(g, rs, f);
    std::string factor;
    if (augmented) {
      if (flip) factor = tex ? "\\big(1-" + gt + "\\big)" : "(1 - " + gt + ")";
      else factor = tex ? "\\big(" + gt + "-1\\big)" : "(" + gt + " - 1)";
    } else if (!g.empty()) {
      factor = gt;
    }
    for (auto& [m, c] : ordered_terms(p)) {
      auto syms = mono_syms(m, k, theta, f);
      if (!factor.empty()) syms.push_back(factor);
      terms.push_back({augmented && flip ? -c : c, syms});
    }
  }
  for (auto& [b, coeff] : rel.x) {
    auto [bi, bj] = rs.labels[b];
    std::string xs = symbol_text(x_var(bi, bj), k, theta, f);
    for (auto& [m, c] : ordered_terms(coeff)) {
      auto syms = mono_syms(m, k, theta, f);
      syms.push_back(tex ? "\\, " + xs : xs);
      terms.push_back({c, syms});
    }
  }
  auto [i, j] = rs.labels[rel.root];
  return symbol_text(x_var(i, j), k, theta, f) + " = " + join_terms(terms, k, f);
}

// ---------------------------------------------------------------- documents

Presentation presentation_build(const CartanDatum& D, const MuFamily& mu) {
  Presentation P{D, mu, {}};
  LiftEngine E(D.ctx, D.rs.kind, D.rs.theta);
  for (size_t r : D.rs.height_order()) P.relations.push_back(apply_mu(E.closed(int(r)), D.rs, mu));
  return P;
}

namespace {

std::string dim_text(const CartanDatum& D) {
  std::string s = std::to_string(D.N()) + "^" + std::to_string(D.rs.size());
  for (auto n : D.orders) s += " * " + std::to_string(n);
  return s;
}

nlohmann::ordered_json relation_json(const LiftRelation& rel, const RootSystem& rs) {
  nlohmann::ordered_json terms = nlohmann::ordered_json::array();
  auto push = [&](const CycloNum& c, const Mono& mu_part, const std::vector<int>& group, const std::vector<int>* x) {
    nlohmann::ordered_json t;
    t["coeff_q"] = scalar_text(c, rs.kind);
    nlohmann::ordered_json qc = nlohmann::ordered_json::array();
    for (auto& v : c.coeffs()) qc.push_back(v.get_str());
    t["coeff_q_coeffs"] = qc;
    nlohmann::ordered_json m = nlohmann::ordered_json::object();
    for (auto [v, e] : mu_part) m[symbol_text(v, rs.kind, rs.theta)] = e;
    t["coeff_mu"] = m;
    t["group"] = group;
    if (x) t["xpower"] = *x;
    else t["xpower"] = nullptr;
    terms.push_back(t);
  };
  for (auto& [m, c] : rel.group.terms()) {
    Split s = split_group(m);
    std::vector<int> g(rs.theta, 0);
    for (auto [v, e] : s.group) g[var_i(v) - 1] = e;
    push(c, s.rest, g, nullptr);
  }
  for (auto& [b, coeff] : rel.x)
    for (auto& [m, c] : coeff.terms()) push(c, m, std::vector<int>(rs.theta, 0), &rs.roots[b]);
  nlohmann::ordered_json j;
  j["root"] = rs.roots[rel.root];
  j["label"] = rs.name(rel.root);
  j["terms"] = terms;
  return j;
}

}  // namespace

std::string presentation_emit(const Presentation& P, Format f) {
  const CartanDatum& D = P.datum;
  const RootSystem& rs = D.rs;
  int t = rs.theta;
  std::string type = std::string(1, kind_char(rs.kind)) + std::to_string(t);
  std::vector<std::string> forced;
  for (size_t r = 0; r < rs.size(); ++r)
    if (P.mu.forced[r]) forced.push_back(rs.name(r));

  if (f == Format::Json) {
    nlohmann::ordered_json j;
    j["type"] = std::string(1, kind_char(rs.kind));
    j["rank"] = t;
    j["N"] = D.N();
    j["orders"] = D.orders;
    j["lattice"] = D.lat.choice == LatticeChoice::Root ? "root" : "weight";
    nlohmann::ordered_json act = nlohmann::ordered_json::array();
    for (int i = 0; i < t; ++i) {
      std::vector<int64_t> row;
      for (int k = 0; k < t; ++k) row.push_back(discrete_log(D.ctx, D.chi[k][i]));
      act.push_back(row);
    }
    j["action_exponents"] = act;
    j["cartan"] = rs.cartan;
    j["forced_zero"] = forced;
    nlohmann::ordered_json rels = nlohmann::ordered_json::array();
    for (auto& rel : P.relations) rels.push_back(relation_json(rel, rs));
    j["relations"] = rels;
    j["dimension"] = dimension(D).get_str();
    j["dimension_factors"] = dim_text(D);
    return j.dump(2) + "\n";
  }

  std::ostringstream o;
  bool tex = f == Format::Latex;
  if (!tex) {
    o << "u(D, mu) of type " << type << ", N = " << D.N() << "\n";
    o << "group: Gamma = ";
    for (int i = 0; i < t; ++i) o << (i ? " x " : "") << "Z/" << D.orders[i];
    o << ", generators g_1" << (t > 1 ? "..g_" + std::to_string(t) : "") << " (lattice " << (D.lat.choice == LatticeChoice::Root ? "root" : "weight")
      << ")\n";
    o << "action:\n";
    for (int i = 0; i < t; ++i)
      for (int k = 0; k < t; ++k)
        o << "  g_" << i + 1 << " x_" << k + 1 << " g_" << i + 1 << "^-1 = q^" << discrete_log(D.ctx, D.chi[k][i])
          << " x_" << k + 1 << "\n";
    if (t > 1) o << "serre:\n";
    for (int i = 0; i < t; ++i)
      for (int k = 0; k < t; ++k)
        if (i != k) o << "  (ad_c x_" << i + 1 << ")^" << 1 - rs.cartan[i][k] << "(x_" << k + 1 << ") = 0\n";
    o << "power relations:\n";
    for (auto& rel : P.relations) o << "  " << relation_text(rel, rs, f) << "\n";
    if (!forced.empty()) {
      o << "forced zero:";
      for (auto& s : forced) o << " mu_" << s;
      o << "\n";
    }
    o << "dimension: N^|Phi+| * |Gamma| = " << dim_text(D) << " = " << dimension(D).get_str() << "\n";
    return o.str();
  }
  o << "% u(D, mu) of type " << type << ", N = " << D.N() << "\n";
  o << "\\Gamma = ";
  for (int i = 0; i < t; ++i) o << (i ? " \\times " : "") << "\\mathbb{Z}/" << D.orders[i];
  o << "\n\\begin{align*}\n";
  for (int i = 0; i < t; ++i)
    for (int k = 0; k < t; ++k)
      o << "g_{" << i + 1 << "} x_{" << k + 1 << "} g_{" << i + 1 << "}^{-1} &= q^{" << discrete_log(D.ctx, D.chi[k][i])
        << "} x_{" << k + 1 << "}\\\\\n";
  for (int i = 0; i < t; ++i)
    for (int k = 0; k < t; ++k)
      if (i != k)
        o << "(\\operatorname{ad}_c x_{" << i + 1 << "})^{" << 1 - rs.cartan[i][k] << "}(x_{" << k + 1 << "}) &= 0\\\\\n";
  for (size_t r = 0; r < P.relations.size(); ++r) {
    std::string s = relation_text(P.relations[r], rs, f);
    auto eq = s.find(" = ");
    o << s.substr(0, eq) << " &= " << s.substr(eq + 3) << (r + 1 < P.relations.size() ? "\\\\\n" : "\n");
  }
  o << "\\end{align*}\n";
  o << "% dim = N^{|\\Phi^+|} |\\Gamma| = " << dim_text(D) << " = " << dimension(D).get_str() << "\n";
  return o.str();
}

}  // namespace qlift
