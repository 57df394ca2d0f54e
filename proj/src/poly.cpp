#include "qlift/poly.hpp"

#include <algorithm>

namespace qlift {

Mono mono_mul(const Mono& a, const Mono& b) {
  Mono r;
  size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      r.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      r.push_back(b[j++]);
    } else {
      int e = a[i].second + b[j].second;
      if (e) r.emplace_back(a[i].first, e);
      ++i, ++j;
    }
  }
  return r;
}

int mono_degree(const Mono& m) {
  int d = 0;
  for (auto& [v, e] : m) d += e;
  return d;
}

int mono_exp(const Mono& m, int var) {
  for (auto& [v, e] : m)
    if (v == var) return e;
  return 0;
}

bool MonoOrder::operator()(const Mono& a, const Mono& b) const {
  int da = mono_degree(a), db = mono_degree(b);
  if (da != db) return da > db;
  // larger exponent on the smallest variable first
  size_t n = std::min(a.size(), b.size());
  for (size_t k = 0; k < n; ++k) {
    if (a[k].first != b[k].first) return a[k].first < b[k].first;
    if (a[k].second != b[k].second) return a[k].second > b[k].second;
  }
  return a.size() > b.size();
}

Poly::Poly(const CycloNum& c) {
  if (!c.is_zero()) t_.emplace(Mono{}, c);
}

Poly Poly::var(int id, int e) {
  Poly p;
  Mono m;
  if (e) m.emplace_back(id, e);
  p.t_.emplace(m, CycloNum(1));
  return p;
}

Poly Poly::mono(const Mono& m, const CycloNum& c) {
  Poly p;
  if (!c.is_zero()) p.t_.emplace(m, c);
  return p;
}

bool Poly::is_constant() const { return t_.empty() || (t_.size() == 1 && t_.begin()->first.empty()); }

CycloNum Poly::constant() const { return coeff(Mono{}); }

CycloNum Poly::coeff(const Mono& m) const {
  auto it = t_.find(m);
  return it == t_.end() ? CycloNum() : it->second;
}

int Poly::degree() const {
  int d = 0;
  for (auto& [m, c] : t_) d = std::max(d, mono_degree(m));
  return d;
}

void Poly::add_term(const Mono& m, const CycloNum& c) {
  if (c.is_zero()) return;
  auto [it, fresh] = t_.try_emplace(m, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) t_.erase(it);
  }
}

Poly& Poly::operator+=(const Poly& o) {
  for (auto& [m, c] : o.t_) add_term(m, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  for (auto& [m, c] : o.t_) add_term(m, -c);
  return *this;
}

Poly& Poly::operator*=(const CycloNum& c) {
  if (c.is_zero()) {
    t_.clear();
    return *this;
  }
  for (auto& [m, x] : t_) x *= c;
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  Poly r;
  for (auto& [ma, ca] : a.t_)
    for (auto& [mb, cb] : b.t_) r.add_term(mono_mul(ma, mb), ca * cb);
  return r;
}

bool operator==(const Poly& a, const Poly& b) {
  if (a.t_.size() != b.t_.size()) return false;
  auto i = a.t_.begin();
  auto j = b.t_.begin();
  for (; i != a.t_.end(); ++i, ++j)
    if (i->first != j->first || i->second != j->second) return false;
  return true;
}

Poly Poly::pow(int e) const {
  if (e < 0) throw Error("Poly::pow: negative exponent");
  Poly acc(CycloNum(1)), base(*this);
  while (e) {
    if (e & 1) acc = acc * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return acc;
}

Poly Poly::subst(const std::function<const Poly*(int)>& f) const {
  Poly r;
  for (auto& [m, c] : t_) {
    Poly term(c);
    Mono keep;
    for (auto& [v, e] : m) {
      const Poly* img = f(v);
      if (!img) {
        keep.emplace_back(v, e);
        continue;
      }
      if (e < 0) throw Error("Poly::subst: negative exponent on substituted symbol");
      term = term * img->pow(e);
    }
    r += term * Poly::mono(keep, CycloNum(1));
  }
  return r;
}

Poly Poly::map_monos(const std::function<Mono(const Mono&)>& g) const {
  Poly r;
  for (auto& [m, c] : t_) r.add_term(g(m), c);
  return r;
}

std::string Poly::str(const std::function<std::string(int)>& name) const {
  if (t_.empty()) return "0";
  std::string out;
  bool first = true;
  for (auto& [m, c] : t_) {
    std::string cs = c.str();
    bool simple = cs.find_first_of("+ ") == std::string::npos ||
                  (cs[0] == '-' && cs.find_first_of("+ ", 1) == std::string::npos);
    bool neg = simple && cs[0] == '-';
    if (neg) cs = cs.substr(1);
    if (!simple) cs = "(" + cs + ")";
    std::string ms;
    for (auto& [v, e] : m) {
      if (!ms.empty()) ms += "*";
      ms += name(v);
      if (e != 1) ms += "^" + std::to_string(e);
    }
    if (!first) out += neg ? " - " : " + ";
    else if (neg) out += "-";
    first = false;
    if (ms.empty()) out += cs;
    else if (cs == "1") out += ms;
    else out += cs + "*" + ms;
  }
  return out;
}

}  // namespace qlift
