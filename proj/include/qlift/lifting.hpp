#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qlift/cartan.hpp"
#include "qlift/poly.hpp"

namespace qlift {

// Symbol ids.  Mu and X use the ambient root label (i, j); G is g_k^N.
inline int mu_var(int i, int j) { return var_id(VarKind::Mu, i, j); }
inline int r_var(int i, int j) { return var_id(VarKind::R, i, j); }
inline int t_var(int k) { return var_id(VarKind::T, k); }
inline int g_var(int k) { return var_id(VarKind::G, k); }
inline int x_var(int i, int j) { return var_id(VarKind::X, i, j); }

// n x n upper unitriangular matrix; unknown entries are empty.
class UnipotentMatrix {
 public:
  explicit UnipotentMatrix(int n = 0);
  int n() const { return n_; }
  bool known(int i, int j) const;
  const Poly& at(int i, int j) const;  // throws on unknown entries
  void set(int i, int j, Poly p);
  void clear(int i, int j);
  static UnipotentMatrix identity(int n);

 private:
  int n_;
  std::vector<std::optional<Poly>> e_;
  std::optional<Poly> one_, zero_;
};

// The long-root factor of the B seeds: the printed (q1-1)^N or the (q1+1)^N
// that makes the leading term of the long-root relations come out as mu.
enum class SeedVariant { Consistent, Printed };

UnipotentMatrix seed_entries(const CycloCtx* ctx, Kind k, int theta, SeedVariant v = SeedVariant::Consistent);
// the seed positions filled with free symbols r_ij (for identities among entries)
UnipotentMatrix seed_symbols(Kind k, int theta);
// positions (row, col) that seed_entries fills
std::vector<std::pair<int, int>> seed_positions(Kind k, int theta);

// Solves sum_k X_kj X_{k'i'} = delta_ij band by band; throws naming (i,j) on conflicts.
UnipotentMatrix so_complete(UnipotentMatrix partial);
// (i, j) whose orthogonality equation fails
std::vector<std::pair<int, int>> orthogonality_violations(const UnipotentMatrix& Q);

std::vector<Poly> formal_torus(int n);

// Entries of Q^{-1} P Q for diagonal P, memoized.
class Conjugated {
 public:
  Conjugated(const UnipotentMatrix& Q, std::vector<Poly> P);
  const Poly& entry(int i, int j) const;
  int n() const { return Q_.n(); }

 private:
  UnipotentMatrix Q_;
  std::vector<Poly> P_;
  mutable std::map<std::pair<int, int>, Poly> memo_;
};

Poly conjugated_entry(const UnipotentMatrix& Q, const std::vector<Poly>& P, int i, int j);
// iota*(X_ij) via the correction-sum formula over the formal torus
Poly iota_star(const UnipotentMatrix& Q, int i, int j);

// B/D: t_{k'} = t_k^{-1}, t_{n0} = 1; A: t_{theta+1} = (t_1...t_theta)^{-1}
Poly torus_reduce(const Poly& p, Kind k, int theta);
// the reduced torus monomial representing g_i^N
std::vector<int> torus_image(Kind k, int theta, int i);
// rewrite t-monomials over the symbols g_k^N; throws outside the lattice
Poly torus_to_group(const Poly& p, Kind k, int theta);

// group monomial of a root coefficient vector
Poly group_monomial(const std::vector<int>& root);
// value with every g_k^N set to 1
Poly augmentation(const Poly& p);

struct LiftRelation {
  int root = -1;                          // index into RootSystem
  Poly group;                             // in mu and g^N symbols
  std::vector<std::pair<int, Poly>> x;    // lower roots and their mu coefficients
};

// The D-type third correction sum: printed sign or the sign forced by the lambdas.
enum class ClosedVariant { Derived, Printed };

class LiftEngine {
 public:
  LiftEngine(const CycloCtx* ctx, Kind k, int theta, SeedVariant seed = SeedVariant::Consistent);

  const RootSystem& roots() const { return rs_; }
  const UnipotentMatrix& Q() const { return Q_; }
  const CycloCtx* ctx() const { return ctx_; }

  // lambda^N / zeta of root r
  CycloNum scale(int r) const;
  // iota*(psi(E_r^N)) over the reduced formal torus
  const Poly& torus_value(int r) const;

  LiftRelation geometric(int r) const;
  LiftRelation closed(int r, ClosedVariant v = ClosedVariant::Derived) const;

 private:
  const CycloCtx* ctx_;
  Kind kind_;
  int theta_;
  RootSystem rs_;
  UnipotentMatrix Q_;
  Conjugated C_;
  mutable std::map<int, Poly> values_;

  // (row, col, weight) with iota*psi(E_r^N) = scale(r) C_{row,col} * weight
  struct Cell {
    int a, b;
    Poly w;
  };
  Cell cell(int r) const;
  // the root whose cell sits at (k, b) for the same weight
  int lower_root(int r, int k) const;
  CycloNum zeta(int a, int b) const;
  Poly mu(int r) const;
};

// substitutes the mu family (symbolic entries stay)
LiftRelation apply_mu(const LiftRelation& rel, const RootSystem& rs, const MuFamily& mu);

LiftRelation lift_geometric(const CycloCtx* ctx, Kind k, int theta, int r, const MuFamily* mu = nullptr);
LiftRelation lift_closed(const CycloCtx* ctx, Kind k, int theta, int r, const MuFamily* mu = nullptr,
                         ClosedVariant v = ClosedVariant::Derived);

struct CrossCheckCase {
  int root = -1;
  bool ok = false;
  std::string detail;  // first differing coefficient
};
struct CrossCheckReport {
  std::vector<CrossCheckCase> cases;
  bool ok() const;
};
CrossCheckCase cross_check_root(const LiftEngine& E, int r, ClosedVariant v = ClosedVariant::Derived);
CrossCheckReport cross_check(const CycloCtx* ctx, Kind k, int theta, ClosedVariant v = ClosedVariant::Derived,
                             SeedVariant seed = SeedVariant::Consistent);
CrossCheckReport cross_check(const LiftEngine& E, ClosedVariant v = ClosedVariant::Derived);

}  // namespace qlift
