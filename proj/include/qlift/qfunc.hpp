#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qlift/cartan.hpp"
#include "qlift/ncalg.hpp"
#include "qlift/qarith.hpp"

namespace qlift {

// Index data of the orthogonal series: k' = n+1-k and twice rho.
struct SoIndex {
  int n = 0;
  int prime(int k) const { return n + 1 - k; }
  int rho2(int i) const;  // 2*rho_i
  int n0() const { return n % 2 ? (n + 1) / 2 : 0; }
};

struct RMatrix {
  const CycloCtx* ctx = nullptr;
  int n = 0;
  int eps = 1;
  std::vector<CycloNum> R;  // index ((i*n+j)*n+a)*n+b, zero-based
  const CycloNum& at(int i, int j, int a, int b) const {
    return R[size_t(((i - 1) * n + (j - 1)) * n + (a - 1)) * n + (b - 1)];
  }
  CycloNum& at(int i, int j, int a, int b) { return R[size_t(((i - 1) * n + (j - 1)) * n + (a - 1)) * n + (b - 1)]; }
  // J-matrix entry c_ij = delta_{i,j'} q^{-rho_i}
  CycloNum c(int i, int j) const;
};

RMatrix so_rmatrix(const CycloCtx* ctx, int n, int eps = 1);

struct QybeResult {
  bool ok = true;
  int i = 0, j = 0, k = 0;  // first basis triple where the two sides differ
};
QybeResult qybe_check(const RMatrix& R);

// Images of matrix entries z_kl in some algebra (0 for erased entries).
using ZMap = std::function<NcPoly(int, int)>;

NcPoly frt_relation(const RMatrix& R, int i, int b, int j, int a, const ZMap& z);

// The Borel quotient with its validated rewriting system.
struct BorelPresentation {
  Kind kind = Kind::A;
  int n = 0;
  const CycloCtx* ctx = nullptr;
  std::shared_ptr<Alphabet> alpha;
  std::unique_ptr<RewriteSystem> rs;
  std::vector<NcPoly> relations;  // defining relations, in letter form
  Grading grading;                // torus weights of the letters
  CompletionLog completion;
  std::optional<RMatrix> R;
  mutable std::map<std::pair<int, int>, NcPoly> pow_cache;

  SoIndex so() const { return SoIndex{n}; }
  // z_ij as an element (letter, 1 for the middle diagonal of B, 0 below the diagonal)
  NcPoly z(int i, int j) const;
  NcPoly zinv(int i) const;  // inverse of a diagonal entry
  NcPoly nf(const NcPoly& p) const { return rs->nf(p); }
  NcPoly mul(const NcPoly& a, const NcPoly& b) const { return rs->mul(a, b); }
  NcPoly counit_check(int i, int j) const;  // eps(S(z_ij)) - delta_ij, as a scalar
  NcPoly antipode(int i, int j) const;
  std::string str(const NcPoly& p) const { return p.str(rs->order()); }
};

struct BorelOptions {
  int max_lhs = 4;
  bool complete = true;
};

std::unique_ptr<BorelPresentation> borel_presentation(const CycloCtx* ctx, Kind kind, int n,
                                                      BorelOptions opt = {});

// The derived straightening families stated alongside the coproduct theorem,
// evaluated as elements (lhs - rhs) of the free algebra on the Borel letters.
struct NamedIdentity {
  std::string name;
  NcPoly element;
};
std::vector<NamedIdentity> derived_identities(const BorelPresentation& P);

// c^k_ij of the coproduct theorem
CycloNum coproduct_coeff(const BorelPresentation& P, int i, int j, int k);
// gamma_ij of the Frobenius embedding
CycloNum frobenius_gamma(const BorelPresentation& P, int i, int j);

TensorPoly delta_powerN(const BorelPresentation& P, int i, int j, size_t max_terms = SIZE_MAX,
                        TensorPowerStats* stats = nullptr);

// N-th powers of generators, normal-formed and memoized per presentation.
const NcPoly& zpowN(const BorelPresentation& P, int i, int j);

struct CoproductCase {
  int i = 0, j = 0;
  bool ok = false;
  int witness_k = 0;  // first k whose coefficient disagrees (0 for stray terms)
  size_t peak_terms = 0;
  double seconds = 0;
  std::string detail;
};

using CoeffTable = std::function<CycloNum(int, int, int)>;

// Compares brute-force Delta(z_ij)^N with sum_k c^k_ij z_ik^N (x) z_kj^N.
CoproductCase verify_coproduct_case(const BorelPresentation& P, int i, int j, const TensorPoly& delta,
                                    const CoeffTable& c);
std::vector<CoproductCase> verify_coproduct_theorem(const BorelPresentation& P, const CoeffTable* c = nullptr,
                                                    size_t max_terms = SIZE_MAX);

struct FrobeniusReport {
  bool coalgebra_ok = true;
  bool orthogonality_ok = true;
  bool determinant_ok = true;
  std::vector<std::string> failures;
  bool ok() const { return coalgebra_ok && orthogonality_ok && determinant_ok; }
};

// Uses precomputed Delta(z_ij^N) for the coalgebra part when given.
FrobeniusReport verify_frobenius_theorem(
    const BorelPresentation& P, const std::function<const TensorPoly*(int, int)>& delta = nullptr);

NcPoly frobenius_iota(const BorelPresentation& P, int i, int j);

// psi(E_ij) = lambda_ij * z_{j'i'} z_ii (B/D), or the A-type scaled word.
struct PsiImage {
  CycloNum lambda;
  NcPoly word;
};
PsiImage psi_image(const BorelPresentation& P, int theta, int i, int j);
CycloNum psi_lambda(const CycloCtx* ctx, Kind k, int theta, int i, int j);
// psi of a simple root vector E_{alpha_i}
NcPoly psi_simple(const BorelPresentation& P, int theta, int i);
// root vector E_ij built by the root-vector recursion, mapped through psi
// `qrec` is the scalar written q in the recursion (defaults to the O-parameter q)
NcPoly psi_recursive(const BorelPresentation& P, int theta, int i, int j, const CycloNum* qrec = nullptr);

// q^{-2} a1 a2 - a2 a1 for the split Delta(z_ij) = a1 + a2 + a3 used when i < i' <= j
TensorPoly claim_a1a2_defect(const BorelPresentation& P, int i, int j);

}  // namespace qlift
