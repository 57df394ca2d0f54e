#include "qlift/ncalg.hpp"

#include <algorithm>
#include <chrono>
#include <map>

namespace qlift {

// ---------------------------------------------------------------- Alphabet

int Alphabet::add(Letter l) {
  if (letters_.size() >= 127) throw Error("Alphabet: too many letters");
  if (l.weight < 0) throw Error("Alphabet: negative weight");
  letters_.push_back(std::move(l));
  return int(letters_.size()) - 1;
}

int Alphabet::find(int row, int col, bool inverse) const {
  for (size_t i = 0; i < letters_.size(); ++i)
    if (letters_[i].row == row && letters_[i].col == col && letters_[i].inverse == inverse) return int(i);
  return -1;
}

std::string Alphabet::str(const Word& w) const {
  if (w.empty()) return "1";
  std::string out;
  for (size_t i = 0; i < w.size();) {
    if (w[i] == kTensorSep) {
      out += " (x) ";
      ++i;
      continue;
    }
    size_t e = i;
    while (e < w.size() && w[e] == w[i]) ++e;
    if (!out.empty() && out.back() != ' ') out += " ";
    out += letters_.at(size_t(w[i])).name;
    if (e - i > 1) out += "^" + std::to_string(e - i);
    i = e;
  }
  return out;
}

int64_t Alphabet::weight(const Word& w) const {
  int64_t s = 0;
  for (char c : w) s += letters_[size_t(c)].weight;
  return s;
}

int TermOrder::cmp(const Word& a, const Word& b) const {
  int64_t wa = alpha_->weight(a), wb = alpha_->weight(b);
  if (wa != wb) return wa < wb ? -1 : 1;
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  int c = a.compare(b);
  return c < 0 ? -1 : (c > 0 ? 1 : 0);
}

// ---------------------------------------------------------------- NcPoly

NcPoly::NcPoly(const CycloNum& c) {
  if (!c.is_zero()) t_.emplace(Word(), c);
}

NcPoly NcPoly::word(const Word& w, const CycloNum& c) {
  NcPoly p;
  if (!c.is_zero()) p.t_.emplace(w, c);
  return p;
}

CycloNum NcPoly::coeff(const Word& w) const {
  auto it = t_.find(w);
  return it == t_.end() ? CycloNum() : it->second;
}

int NcPoly::max_degree() const {
  int d = 0;
  for (auto& [w, c] : t_) d = std::max(d, int(w.size()));
  return d;
}

void NcPoly::add_term(const Word& w, const CycloNum& c) {
  if (c.is_zero()) return;
  auto [it, fresh] = t_.try_emplace(w, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) t_.erase(it);
  }
}

void NcPoly::add_scaled(const NcPoly& o, const CycloNum& c) {
  if (c.is_zero()) return;
  if (c.is_one()) {
    *this += o;
    return;
  }
  for (auto& [w, x] : o.t_) add_term(w, x * c);
}

NcPoly& NcPoly::operator+=(const NcPoly& o) {
  for (auto& [w, c] : o.t_) add_term(w, c);
  return *this;
}

NcPoly& NcPoly::operator-=(const NcPoly& o) {
  for (auto& [w, c] : o.t_) add_term(w, -c);
  return *this;
}

NcPoly& NcPoly::operator*=(const CycloNum& c) {
  if (c.is_zero()) {
    t_.clear();
    return *this;
  }
  for (auto& [w, x] : t_) x *= c;
  return *this;
}

NcPoly operator*(const NcPoly& a, const NcPoly& b) {
  NcPoly r;
  for (auto& [wa, ca] : a.t_)
    for (auto& [wb, cb] : b.t_) r.add_term(wa + wb, ca * cb);
  return r;
}

bool operator==(const NcPoly& a, const NcPoly& b) {
  if (a.t_.size() != b.t_.size()) return false;
  for (auto& [w, c] : a.t_) {
    auto it = b.t_.find(w);
    if (it == b.t_.end() || it->second != c) return false;
  }
  return true;
}

std::vector<std::pair<Word, CycloNum>> NcPoly::sorted(const TermOrder& o) const {
  std::vector<std::pair<Word, CycloNum>> v(t_.begin(), t_.end());
  std::sort(v.begin(), v.end(), [&](auto& x, auto& y) { return o.cmp(x.first, y.first) > 0; });
  return v;
}

Word NcPoly::leading(const TermOrder& o) const {
  if (t_.empty()) throw Error("NcPoly::leading of zero");
  const Word* best = nullptr;
  for (auto& [w, c] : t_)
    if (!best || o.cmp(w, *best) > 0) best = &w;
  return *best;
}

std::string NcPoly::str(const TermOrder& o) const {
  if (t_.empty()) return "0";
  std::string out;
  bool first = true;
  for (auto& [w, c] : sorted(o)) {
    std::string cs = c.str();
    bool compound = cs.find(' ') != std::string::npos;
    bool neg = !compound && cs[0] == '-';
    if (neg) cs = cs.substr(1);
    if (compound) cs = "(" + cs + ")";
    out += first ? (neg ? "-" : "") : (neg ? " - " : " + ");
    first = false;
    if (w.empty()) {
      out += cs;
    } else {
      if (cs != "1") out += cs + " ";
      out += o.alphabet().str(w);
    }
  }
  return out;
}

// ---------------------------------------------------------------- RewriteSystem

RewriteSystem::RewriteSystem(TermOrder order) : order_(std::move(order)) { reindex(); }

size_t RewriteSystem::rule_count(size_t lhs_len) const {
  size_t k = 0;
  for (auto& r : rules_) k += r.lhs.size() == lhs_len;
  return k;
}

void RewriteSystem::reindex() {
  L_ = alphabet().size();
  unary_.assign(L_, -1);
  binary_.assign(size_t(L_) * L_, -1);
  longer_.clear();
  for (size_t i = 0; i < rules_.size(); ++i) {
    const Word& l = rules_[i].lhs;
    int* slot = nullptr;
    if (l.size() == 1) slot = &unary_[size_t(l[0])];
    else if (l.size() == 2) slot = &binary_[size_t(l[0]) * L_ + size_t(l[1])];
    if (slot) {
      if (*slot >= 0) throw Error("RewriteSystem: duplicate lhs " + alphabet().str(l));
      *slot = int(i);
    } else {
      longer_.push_back(int(i));
    }
  }
  cache_.clear();
}

void RewriteSystem::add_rule(const Word& lhs, const NcPoly& rhs) {
  if (lhs.empty()) throw Error("RewriteSystem: empty lhs (inconsistent relations)");
  for (auto& [w, c] : rhs.terms())
    if (!order_.less(w, lhs))
      throw Error("RewriteSystem: rhs word " + alphabet().str(w) + " not below lhs " + alphabet().str(lhs));
  rules_.push_back({lhs, rhs});
  reindex();
}

void RewriteSystem::add_relation(const NcPoly& p) {
  Word w = p.leading(order_);
  CycloNum lc = p.coeff(w);
  NcPoly rhs = p;
  rhs.add_term(w, -lc);
  rhs *= -lc.inv();
  add_rule(w, rhs);
}


NcPoly RewriteSystem::mul_letter(const Word& m, char x) const {
  Word key = m;
  key.push_back(x);
  if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  if (++steps_ > budget_) throw BudgetError("nf: rewriting step budget exceeded");
  NcPoly res;
  int r = unary_[size_t(x)];
  if (r >= 0) {
    for (auto& [u, c] : rules_[r].rhs.terms()) res.add_scaled(mul_word(m, u), c);
  } else if (!m.empty() && (r = binary_[size_t(m.back()) * L_ + size_t(x)]) >= 0) {
    Word p = m.substr(0, m.size() - 1);
    for (auto& [u, c] : rules_[r].rhs.terms()) res.add_scaled(mul_word(p, u), c);
  } else {
    bool hit = false;
    for (int idx : longer_) {
      const Word& l = rules_[idx].lhs;
      if (l.size() <= key.size() && key.compare(key.size() - l.size(), l.size(), l) == 0) {
        Word p = key.substr(0, key.size() - l.size());
        for (auto& [u, c] : rules_[idx].rhs.terms()) res.add_scaled(mul_word(p, u), c);
        hit = true;
        break;
      }
    }
    if (!hit) res = NcPoly::word(key);
  }
  if (cache_.size() < cache_limit_) cache_.emplace(std::move(key), res);
  return res;
}

NcPoly RewriteSystem::mul_word(const Word& m, const Word& u) const {
  if (u.empty()) return NcPoly::word(m);
  NcPoly cur = mul_letter(m, u[0]);
  for (size_t i = 1; i < u.size(); ++i) {
    NcPoly nxt;
    for (auto& [w, c] : cur.terms()) nxt.add_scaled(mul_letter(w, u[i]), c);
    cur = std::move(nxt);
  }
  return cur;
}

NcPoly RewriteSystem::nf_word(const Word& w) const { return mul_word(Word(), w); }

NcPoly RewriteSystem::nf(const NcPoly& p) const {
  NcPoly r;
  for (auto& [w, c] : p.terms()) r.add_scaled(nf_word(w), c);
  return r;
}

NcPoly RewriteSystem::mul(const NcPoly& a, const NcPoly& b) const {
  NcPoly r;
  for (auto& [wa, ca] : a.terms())
    for (auto& [wb, cb] : b.terms()) r.add_scaled(mul_word(wa, wb), ca * cb);
  return r;
}

NcPoly RewriteSystem::power(const NcPoly& p, int n) const {
  NcPoly base = nf(p), acc(CycloNum(1));
  for (int i = 0; i < n; ++i) acc = mul(acc, base);
  return acc;
}

ConfluenceReport RewriteSystem::check_local_confluence(size_t max_failures) const {
  ConfluenceReport rep;
  auto reduce_path = [&](const Word& pre, const NcPoly& mid, const Word& post) {
    NcPoly r;
    for (auto& [u, c] : mid.terms()) r.add_scaled(nf_word(pre + u + post), c);
    return r;
  };
  for (size_t i = 0; i < rules_.size(); ++i) {
    const Word& a = rules_[i].lhs;
    for (size_t j = 0; j < rules_.size(); ++j) {
      const Word& b = rules_[j].lhs;
      // overlaps: suffix of a equals prefix of b
      for (size_t k = 1; k < a.size() && k < b.size(); ++k) {
        if (a.compare(a.size() - k, k, b, 0, k) != 0) continue;
        Word w = a + b.substr(k);
        NcPoly d = reduce_path("", rules_[i].rhs, b.substr(k));
        d -= reduce_path(a.substr(0, a.size() - k), rules_[j].rhs, "");
        ++rep.pairs_checked;
        if (!d.is_zero()) {
          rep.failures.push_back({w, d});
          if (rep.failures.size() >= max_failures) return rep;
        }
      }
      // inclusions
      if (i != j && b.size() < a.size()) {
        for (size_t p = a.find(b); p != Word::npos; p = a.find(b, p + 1)) {
          NcPoly d = reduce_path("", rules_[i].rhs, "");
          d -= reduce_path(a.substr(0, p), rules_[j].rhs, a.substr(p + b.size()));
          ++rep.pairs_checked;
          if (!d.is_zero()) {
            rep.failures.push_back({a, d});
            if (rep.failures.size() >= max_failures) return rep;
          }
        }
      }
    }
  }
  return rep;
}

CompletionLog RewriteSystem::complete(const std::vector<NcPoly>& relations, int max_lhs, size_t max_rules) {
  CompletionLog log;
  std::vector<NcPoly> pending(relations.rbegin(), relations.rend()), deferred;
  // smallest leading word at the back
  auto order_pending = [&] {
    std::vector<std::pair<Word, NcPoly>> v;
    for (auto& p : pending) {
      NcPoly r = nf(p);
      if (!r.is_zero()) v.emplace_back(r.leading(order_), std::move(r));
    }
    std::stable_sort(v.begin(), v.end(), [&](auto& a, auto& b) { return order_.less(b.first, a.first); });
    pending.clear();
    for (auto& [w, r] : v) pending.push_back(std::move(r));
  };
  for (;;) {
    while (!pending.empty()) {
      NcPoly p = nf(pending.back());
      pending.pop_back();
      if (p.is_zero()) continue;
      Word w = p.leading(order_);
      if (int(w.size()) > max_lhs) {
        deferred.push_back(std::move(p));
        continue;
      }
      CycloNum lc = p.coeff(w);
      NcPoly rhs = p;
      rhs.add_term(w, -lc);
      rhs *= -lc.inv();
      // retire rules whose lhs contains the new lhs
      std::vector<RewriteRule> keep;
      for (auto& r : rules_) {
        if (r.lhs.find(w) != Word::npos) {
          NcPoly back = r.rhs;
          back.add_term(r.lhs, CycloNum(-1));
          pending.push_back(back);
        } else {
          keep.push_back(std::move(r));
        }
      }
      rules_ = std::move(keep);
      rules_.push_back({w, rhs});
      reindex();
      if (log.rounds > 0) log.added.push_back(w);
      if (rules_.size() > max_rules) {
        log.message = "completion exceeded rule budget";
        return log;
      }
    }
    for (auto& r : rules_) r.rhs = nf(r.rhs);
    cache_.clear();
    ConfluenceReport rep = check_local_confluence();
    for (auto& f : rep.failures) pending.push_back(f.diff);
    bool progress = !rep.ok();
    for (auto& d : deferred) {
      NcPoly r = nf(d);
      if (r.is_zero()) continue;
      if (int(r.leading(order_).size()) > max_lhs && rep.ok()) {
        log.message = "completion produced lhs " + alphabet().str(r.leading(order_)) + " beyond bound";
        return log;
      }
      pending.push_back(std::move(r));
    }
    deferred.clear();
    if (!progress && pending.empty()) {
      log.converged = true;
      return log;
    }
    order_pending();
    ++log.rounds;
  }
}

std::string RewriteSystem::dump() const {
  std::vector<const RewriteRule*> v;
  for (auto& r : rules_) v.push_back(&r);
  std::sort(v.begin(), v.end(), [&](auto* x, auto* y) { return order_.less(x->lhs, y->lhs); });
  std::string out;
  for (auto* r : v) out += alphabet().str(r->lhs) + " -> " + r->rhs.str(order_) + "\n";
  return out;
}

// ---------------------------------------------------------------- tensors

void TensorPoly::add_term(const Word& a, const Word& b, const CycloNum& c) {
  if (c.is_zero()) return;
  Word k = a;
  k.push_back(kTensorSep);
  k += b;
  auto [it, fresh] = t_.try_emplace(std::move(k), c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) t_.erase(it);
  }
}

CycloNum TensorPoly::coeff(const Word& a, const Word& b) const {
  Word k = a;
  k.push_back(kTensorSep);
  k += b;
  auto it = t_.find(k);
  return it == t_.end() ? CycloNum() : it->second;
}

TensorPoly& TensorPoly::operator-=(const TensorPoly& o) {
  for (auto& [k, c] : o.t_) {
    auto [a, b] = split(k);
    add_term(a, b, -c);
  }
  return *this;
}

std::pair<Word, Word> TensorPoly::split(const Word& key) {
  size_t p = key.find(kTensorSep);
  return {key.substr(0, p), key.substr(p + 1)};
}

std::string TensorPoly::str(const TermOrder& o) const {
  if (t_.empty()) return "0";
  std::vector<std::pair<Word, CycloNum>> v(t_.begin(), t_.end());
  std::sort(v.begin(), v.end(), [&](auto& x, auto& y) {
    auto [xa, xb] = split(x.first);
    auto [ya, yb] = split(y.first);
    int c = o.cmp(xa, ya);
    return c ? c > 0 : o.cmp(xb, yb) > 0;
  });
  std::string out;
  for (auto& [k, c] : v) {
    auto [a, b] = split(k);
    if (!out.empty()) out += " + ";
    out += "(" + c.str() + ") " + o.alphabet().str(a) + " (x) " + o.alphabet().str(b);
  }
  return out;
}

TensorPoly tensor_mul(const TensorPoly& a, const TensorPoly& b, const RewriteSystem& rs) {
  TensorPoly r;
  for (auto& [ka, ca] : a.terms()) {
    auto [a1, a2] = TensorPoly::split(ka);
    for (auto& [kb, cb] : b.terms()) {
      auto [b1, b2] = TensorPoly::split(kb);
      NcPoly l = rs.mul_word(a1, b1), rr = rs.mul_word(a2, b2);
      CycloNum c = ca * cb;
      for (auto& [u, x] : l.terms()) {
        CycloNum cx = c * x;
        for (auto& [v, y] : rr.terms()) r.add_term(u, v, cx * y);
      }
    }
  }
  return r;
}

TensorPoly tensor_power(const std::vector<std::pair<NcPoly, NcPoly>>& summands, int n, const RewriteSystem& rs,
                        size_t max_terms, TensorPowerStats* stats) {
  auto t0 = std::chrono::steady_clock::now();
  std::vector<std::pair<NcPoly, NcPoly>> sm;
  for (auto& [a, b] : summands) sm.emplace_back(rs.nf(a), rs.nf(b));
  // rows: first-factor word -> polynomial in the second factor
  absl::flat_hash_map<Word, NcPoly> state;
  state[Word()] = NcPoly(CycloNum(1));
  size_t peak = 1;
  for (int step = 0; step < n; ++step) {
    absl::flat_hash_map<Word, NcPoly> next;
    for (auto& [A, B] : sm) {
      for (auto& [w1, row] : state) {
        NcPoly right = rs.mul(row, B);
        if (right.is_zero()) continue;
        NcPoly left = rs.mul(NcPoly::word(w1), A);
        for (auto& [u, l] : left.terms()) next[u].add_scaled(right, l);
      }
    }
    size_t terms = 0;
    for (auto it = next.begin(); it != next.end();) {
      if (it->second.is_zero()) {
        next.erase(it++);
      } else {
        terms += it->second.size();
        ++it;
      }
    }
    peak = std::max(peak, terms);
    if (terms > max_terms) throw BudgetError("tensor_power: term budget exceeded at step " + std::to_string(step + 1));
    state = std::move(next);
  }
  TensorPoly out;
  for (auto& [w1, row] : state)
    for (auto& [w2, c] : row.terms()) out.add_term(w1, w2, c);
  if (stats) {
    stats->peak_terms = peak;
    stats->seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
  return out;
}

// ---------------------------------------------------------------- ideal membership

namespace {

std::vector<int> grade_of(const Word& w, const Grading& g) {
  std::vector<int> s(g.empty() ? 0 : g[0].size(), 0);
  for (char c : w)
    for (size_t k = 0; k < s.size(); ++k) s[k] += g[size_t(c)][k];
  return s;
}

void enumerate_words(int L, int len, Word& cur, std::vector<Word>& out) {
  if (int(cur.size()) == len) {
    out.push_back(cur);
    return;
  }
  for (int c = 0; c < L; ++c) {
    cur.push_back(char(c));
    enumerate_words(L, len, cur, out);
    cur.pop_back();
  }
}

struct Echelon {
  const TermOrder& o;
  std::map<Word, NcPoly, std::function<bool(const Word&, const Word&)>> piv;
  explicit Echelon(const TermOrder& ord)
      : o(ord), piv([&ord](const Word& a, const Word& b) { return ord.less(a, b); }) {}
  // reduces p in place; returns true if it became zero
  bool reduce(NcPoly& p) const {
    while (!p.is_zero()) {
      Word w = p.leading(o);
      auto it = piv.find(w);
      if (it == piv.end()) return false;
      p.add_scaled(it->second, -p.coeff(w));
    }
    return true;
  }
  void insert(NcPoly p) {
    if (reduce(p)) return;
    Word w = p.leading(o);
    p *= p.coeff(w).inv();
    piv.emplace(w, std::move(p));
  }
};

}  // namespace

bool ideal_member(const NcPoly& p, const std::vector<NcPoly>& relations, int degree_bound, const TermOrder& order,
                  const Grading* grading, size_t max_rows) {
  if (p.is_zero()) return true;
  if (p.max_degree() > degree_bound) throw Error("ideal_member: polynomial exceeds degree bound");
  const Alphabet& A = order.alphabet();
  // grading is usable only if every relation is homogeneous
  bool graded = grading && !grading->empty();
  std::vector<std::vector<int>> rgrade(relations.size());
  if (graded) {
    for (size_t i = 0; i < relations.size() && graded; ++i) {
      bool first = true;
      for (auto& [w, c] : relations[i].terms()) {
        auto g = grade_of(w, *grading);
        if (first) rgrade[i] = g, first = false;
        else if (g != rgrade[i]) graded = false;
      }
    }
  }
  std::map<std::vector<int>, NcPoly> parts;
  for (auto& [w, c] : p.terms()) parts[graded ? grade_of(w, *grading) : std::vector<int>{}].add_term(w, c);

  std::vector<std::vector<Word>> words_by_len(degree_bound + 1);
  for (int len = 0; len <= degree_bound; ++len) {
    Word cur;
    if (len <= 3 || A.size() <= 12) enumerate_words(A.size(), len, cur, words_by_len[len]);
  }
  for (auto& [g, target] : parts) {
    Echelon E(order);
    size_t rows = 0;
    for (size_t i = 0; i < relations.size(); ++i) {
      const NcPoly& r = relations[i];
      if (r.is_zero()) continue;
      int dr = r.max_degree();
      for (int l1 = 0; l1 + dr <= degree_bound; ++l1) {
        for (int l2 = 0; l1 + l2 + dr <= degree_bound; ++l2) {
          if (words_by_len[l1].empty() && l1 > 0) throw Error("ideal_member: enumeration too large");
          for (const Word& w1 : words_by_len[l1]) {
            std::vector<int> g1;
            if (graded) g1 = grade_of(w1, *grading);
            for (const Word& w2 : words_by_len[l2]) {
              if (graded) {
                auto g2 = grade_of(w2, *grading);
                bool ok = true;
                for (size_t k = 0; k < g.size(); ++k) ok &= (g1[k] + g2[k] + rgrade[i][k] == g[k]);
                if (!ok) continue;
              }
              NcPoly row = NcPoly::word(w1) * r * NcPoly::word(w2);
              if (++rows > max_rows)
                throw BudgetError("ideal_member: row budget exceeded (" + std::to_string(rows) + " rows)");
              E.insert(std::move(row));
            }
          }
        }
      }
    }
    NcPoly t = target;
    if (!E.reduce(t)) return false;
  }
  return true;
}

}  // namespace qlift
