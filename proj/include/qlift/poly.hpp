#pragma once

#include <functional>
#include <map>
#include <string>
#include <utility>

#include <boost/container/small_vector.hpp>

#include "qlift/qarith.hpp"

namespace qlift {

// Commuting symbols.  The id packs (kind, i, j) so that ordering is canonical
// and independent of creation order.
enum class VarKind : int { Mu = 1, R = 2, T = 3, Aux = 4, G = 5, X = 6 };

inline int var_id(VarKind k, int i, int j = 0) { return (int(k) << 20) | (i << 10) | j; }
inline VarKind var_kind(int id) { return VarKind(id >> 20); }
inline int var_i(int id) { return (id >> 10) & 1023; }
inline int var_j(int id) { return id & 1023; }

// Sorted by variable id, nonzero exponents only (Laurent exponents allowed).
using Mono = boost::container::small_vector<std::pair<int, int>, 4>;

Mono mono_mul(const Mono& a, const Mono& b);
int mono_degree(const Mono& m);
int mono_exp(const Mono& m, int var);

// Graded: higher total degree first, then reverse lexicographic on ids.
struct MonoOrder {
  bool operator()(const Mono& a, const Mono& b) const;
};

// Laurent polynomial over Q(q) in commuting symbols.
class Poly {
 public:
  using Terms = std::map<Mono, CycloNum, MonoOrder>;

  Poly() = default;
  Poly(const CycloNum& c);  // NOLINT
  static Poly var(int id, int e = 1);
  static Poly mono(const Mono& m, const CycloNum& c);

  const Terms& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  bool is_constant() const;
  CycloNum constant() const;  // coefficient of the empty monomial
  CycloNum coeff(const Mono& m) const;
  int degree() const;

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const CycloNum& c);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator-(Poly a) { return a *= CycloNum(-1); }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, const CycloNum& c) { return a *= c; }
  friend bool operator==(const Poly& a, const Poly& b);
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }
  void add_term(const Mono& m, const CycloNum& c);

  Poly pow(int e) const;
  // replace each variable v by f(v) (or keep it when f returns nullptr)
  Poly subst(const std::function<const Poly*(int)>& f) const;
  // map monomials through g (exponent rewrite); coefficients add up on collision
  Poly map_monos(const std::function<Mono(const Mono&)>& g) const;

  std::string str(const std::function<std::string(int)>& name) const;

 private:
  Terms t_;
};

}  // namespace qlift
