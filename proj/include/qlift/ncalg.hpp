#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include <absl/container/flat_hash_map.h>

#include "qlift/qarith.hpp"

namespace qlift {

// A word is a string of letter ids (0..126); 127 separates tensor factors.
using Word = std::string;
constexpr char kTensorSep = '\x7f';

struct Letter {
  int row = 0, col = 0;
  bool inverse = false;
  int64_t weight = 1;
  std::string name;
};

class Alphabet {
 public:
  int add(Letter l);
  int find(int row, int col, bool inverse = false) const;  // -1 if absent
  const Letter& operator[](int id) const { return letters_.at(id); }
  int size() const { return int(letters_.size()); }
  std::string str(const Word& w) const;
  int64_t weight(const Word& w) const;

 private:
  std::vector<Letter> letters_;
};

// Words compare by (sum of letter weights, length, lexicographic on ids).
// With unit weights this is the degree-lexicographic order.
class TermOrder {
 public:
  explicit TermOrder(std::shared_ptr<const Alphabet> a) : alpha_(std::move(a)) {}
  int cmp(const Word& a, const Word& b) const;
  bool less(const Word& a, const Word& b) const { return cmp(a, b) < 0; }
  const Alphabet& alphabet() const { return *alpha_; }
  std::shared_ptr<const Alphabet> alphabet_ptr() const { return alpha_; }

 private:
  std::shared_ptr<const Alphabet> alpha_;
};

class NcPoly {
 public:
  using Map = absl::flat_hash_map<Word, CycloNum>;

  NcPoly() = default;
  NcPoly(const CycloNum& c);  // NOLINT: scalar times the empty word
  static NcPoly word(const Word& w, const CycloNum& c = CycloNum(1));

  const Map& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  size_t size() const { return t_.size(); }
  CycloNum coeff(const Word& w) const;
  int max_degree() const;

  void add_term(const Word& w, const CycloNum& c);
  NcPoly& operator+=(const NcPoly& o);
  NcPoly& operator-=(const NcPoly& o);
  NcPoly& operator*=(const CycloNum& c);
  void add_scaled(const NcPoly& o, const CycloNum& c);
  friend NcPoly operator+(NcPoly a, const NcPoly& b) { return a += b; }
  friend NcPoly operator-(NcPoly a, const NcPoly& b) { return a -= b; }
  friend NcPoly operator*(NcPoly a, const CycloNum& c) { return a *= c; }
  friend NcPoly operator*(const NcPoly& a, const NcPoly& b);  // concatenation, no reduction
  friend bool operator==(const NcPoly& a, const NcPoly& b);

  // terms sorted from the largest word down
  std::vector<std::pair<Word, CycloNum>> sorted(const TermOrder& o) const;
  Word leading(const TermOrder& o) const;
  std::string str(const TermOrder& o) const;

 private:
  Map t_;
};

struct RewriteRule {
  Word lhs;
  NcPoly rhs;
};

struct CriticalPair {
  Word overlap;
  NcPoly diff;
};

struct ConfluenceReport {
  size_t pairs_checked = 0;
  std::vector<CriticalPair> failures;
  bool ok() const { return failures.empty(); }
};

struct CompletionLog {
  bool converged = false;
  int rounds = 0;
  std::vector<Word> added;  // leading words of rules introduced by completion
  std::string message;
};

class RewriteSystem {
 public:
  explicit RewriteSystem(TermOrder order);

  const TermOrder& order() const { return order_; }
  const Alphabet& alphabet() const { return order_.alphabet(); }
  const std::vector<RewriteRule>& rules() const { return rules_; }
  size_t rule_count(size_t lhs_len) const;

  // Adds lhs -> rhs.  Throws unless every rhs word is smaller than lhs.
  void add_rule(const Word& lhs, const NcPoly& rhs);
  // Orients a relation p = 0 at its leading word.
  void add_relation(const NcPoly& p);

  NcPoly nf(const NcPoly& p) const;
  NcPoly nf_word(const Word& w) const;
  // normal form of m*u where m is already normal
  NcPoly mul_word(const Word& m, const Word& u) const;
  // nf(a*b) for normal a, b
  NcPoly mul(const NcPoly& a, const NcPoly& b) const;
  NcPoly power(const NcPoly& p, int n) const;

  ConfluenceReport check_local_confluence(size_t max_failures = SIZE_MAX) const;

  // Interreduces `relations` and runs overlap completion; added rule lhs
  // longer than max_lhs or more than max_rules rules abort with converged=false.
  CompletionLog complete(const std::vector<NcPoly>& relations, int max_lhs, size_t max_rules = 100000);

  void set_step_budget(uint64_t steps) { budget_ = steps; }
  void set_cache_limit(size_t entries) { cache_limit_ = entries; }
  void clear_cache() const { cache_.clear(); }
  std::string dump() const;

 private:
  TermOrder order_;
  std::vector<RewriteRule> rules_;
  std::vector<int> unary_;   // letter -> rule index
  std::vector<int> binary_;  // a*L+b -> rule index
  std::vector<int> longer_;  // indices of rules with |lhs| >= 3
  int L_ = 0;
  uint64_t budget_ = 2'000'000'000ULL;
  size_t cache_limit_ = 4'000'000;
  mutable uint64_t steps_ = 0;
  mutable absl::flat_hash_map<Word, NcPoly> cache_;  // key m+x with m normal

  void reindex();
  NcPoly mul_letter(const Word& m, char x) const;
  void interreduce(std::vector<NcPoly>& pending);
};

// Tensor-square elements: keys are w1 + kTensorSep + w2.
class TensorPoly {
 public:
  using Map = absl::flat_hash_map<Word, CycloNum>;
  void add_term(const Word& a, const Word& b, const CycloNum& c);
  const Map& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  size_t size() const { return t_.size(); }
  CycloNum coeff(const Word& a, const Word& b) const;
  TensorPoly& operator-=(const TensorPoly& o);
  static std::pair<Word, Word> split(const Word& key);
  std::string str(const TermOrder& o) const;

 private:
  Map t_;
};

// factorwise product, each factor normal-formed in its own system
TensorPoly tensor_mul(const TensorPoly& a, const TensorPoly& b, const RewriteSystem& rs);

struct TensorPowerStats {
  size_t peak_terms = 0;
  double seconds = 0;
};

// (sum_k A_k (x) B_k)^n with incremental normal forming.
TensorPoly tensor_power(const std::vector<std::pair<NcPoly, NcPoly>>& summands, int n, const RewriteSystem& rs,
                        size_t max_terms = SIZE_MAX, TensorPowerStats* stats = nullptr);

// Letter gradings make relation sets homogeneous so membership splits by grade.
using Grading = std::vector<std::vector<int>>;

// Decides p in span{w1 r w2 : deg w1 + deg r + deg w2 <= degree_bound}.
bool ideal_member(const NcPoly& p, const std::vector<NcPoly>& relations, int degree_bound, const TermOrder& order,
                  const Grading* grading = nullptr, size_t max_rows = 2'000'000);

}  // namespace qlift
