#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "qlift/qarith.hpp"

namespace qlift {

enum class Kind { A, B, D };

char kind_char(Kind k);
Kind parse_kind(const std::string& s);

// ambient matrix size: theta+1 (A), 2theta+1 (B), 2theta (D)
int ambient_n(Kind k, int theta);

using IntMat = std::vector<std::vector<int64_t>>;
using QMat = std::vector<std::vector<CycloNum>>;

// Positive-root labels (i, j) with j ambient, in the order used throughout.
std::vector<std::pair<int, int>> root_labels(Kind k, int theta);

// "12", "12'" or "1,10'" for root (i, j); B keeps theta+1 unprimed, D primes it.
std::string label_name(Kind k, int theta, int i, int j);

struct RootSystem {
  Kind kind = Kind::A;
  int theta = 0;
  int n = 0;                   // ambient size
  IntMat cartan;               // zero-based a_ij
  std::vector<int64_t> d;      // symmetrizer, D*C symmetric
  std::vector<std::vector<int>> roots;       // simple-root coefficients
  std::vector<std::pair<int, int>> labels;   // aligned with roots

  size_t size() const { return roots.size(); }
  int find(int i, int j) const;  // index of label, -1 if absent
  int find_root(const std::vector<int>& c) const;
  int height(size_t r) const;
  std::string name(size_t r) const { return label_name(kind, theta, labels[r].first, labels[r].second); }
  // indices ordered by height, then by coefficient vector
  std::vector<size_t> height_order() const;
};

RootSystem root_system(Kind k, int theta);

enum class LatticeChoice { Root, Weight };

struct LatticeData {
  LatticeChoice choice = LatticeChoice::Root;
  IntMat CM;       // alpha_j = sum_k CM[k][j] m_k
  IntMat CbarM;    // C = CbarM * CM
  IntMat pairing;  // (m_i, alpha_j)
  int64_t det_CM = 1;
  std::vector<std::vector<mpq_class>> CM_inv;
  // A with the weight lattice: omega_i in the basis e_1..e_{theta+1}
  std::vector<std::vector<mpq_class>> omega_e;
};

LatticeChoice default_lattice(Kind k);
LatticeData lattice_data(const RootSystem& rs, LatticeChoice choice);

struct CartanDatum {
  RootSystem rs;
  LatticeData lat;
  const CycloCtx* ctx = nullptr;
  std::vector<int64_t> orders;  // n_i, the order of g_{m_i}
  std::vector<int64_t> ell;     // n_i / N
  IntMat qexp;                  // q_ij = q^qexp[i][j]
  QMat q;
  IntMat rootexp;  // q_ij^{1/a} = q^rootexp[i][j] with a = |det CM|
  QMat chi;        // chi[j][i] = chi_j(g_{m_i})
  IntMat g;        // g[j] = exponents of g_j over the g_{m_k}, reduced mod orders

  int N() const { return ctx->N; }
};

// Finds k with q^k = x, or -1.
int64_t discrete_log(const CycloCtx* ctx, const CycloNum& x);

// q_ij = q^{d_i a_ij}
QMat dj_braiding(const CycloCtx* ctx, const RootSystem& rs);

// Validates the Cartan relation and the orders; `roots` optionally fixes the
// a-th roots of the braiding entries (as exponents of q).
CartanDatum datum_build(const RootSystem& rs, const LatticeData& lat, const CycloCtx* ctx,
                        const std::vector<int64_t>& orders, const QMat& qmatrix, const IntMat* roots = nullptr);

struct MultiParam {
  IntMat exp;
  QMat value;
};
MultiParam multiparam_qM(const CartanDatum& D, const LatticeData& lat, const IntMat* roots = nullptr);

struct ChiReport {
  bool ok = true;
  std::vector<std::pair<int, int>> failures;  // (i, j), one-based
};
ChiReport lemma_chi_check(const CartanDatum& D, const LatticeData& lat);

struct MuEntry {
  bool symbolic = true;
  CycloNum value;  // used when !symbolic
};

struct MuFamily {
  std::vector<MuEntry> mu;   // aligned with RootSystem::labels
  std::vector<bool> forced;  // set by mu_validate
};

MuFamily mu_symbolic(const RootSystem& rs);
MuFamily mu_zero(const RootSystem& rs);
MuFamily mu_validate(const CartanDatum& D, MuFamily mu);

// exponent vector of g_alpha over the g_{m_k}
std::vector<int64_t> group_element(const CartanDatum& D, const std::vector<int>& root);

// N^{|Phi+|} * prod n_i
mpz_class dimension(const CartanDatum& D);

// Datum document: {"type","rank","N","orders","lattice","braiding","mu"}.
struct DatumDoc {
  CartanDatum datum;
  MuFamily mu;
};
DatumDoc parse_datum_json(const std::string& text);
// an integer, a rational string or a list of coefficients in powers of q
CycloNum scalar_from_json(const CycloCtx* ctx, const std::string& text);
std::string datum_json(const CartanDatum& D, const MuFamily& mu);

}  // namespace qlift
