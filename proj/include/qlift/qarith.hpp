#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/container/small_vector.hpp>
#include <gmpxx.h>

namespace qlift {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A computation ran out of its term, step or row allowance.
struct BudgetError : Error {
  using Error::Error;
};

// Q(q) = Q[q]/Phi_N(q).  Contexts are interned per N and never freed.
class CycloCtx {
 public:
  int N = 0;
  int phi = 0;        // Euler phi(N) = deg Phi_N
  int half_exp = 0;   // (N+1)/2, the exponent used for q^{1/2}
  std::vector<int64_t> phi_poly;  // Phi_N, low degree first, length phi+1

  // red[k-phi] = q^k reduced mod Phi_N, for phi <= k <= 2*phi-2
  std::vector<std::vector<int64_t>> red;
  int red_bits = 0;  // bit bound for sum of |red| entries along a column

  const class CycloNum& qpow(int64_t k) const;

 private:
  friend const CycloCtx* ctx_new(int, bool);
  std::vector<std::unique_ptr<class CycloNum>> pow_table_;
};

// Rejects N sharing a factor with 210 (or even N) unless `unsafe` is set.
const CycloCtx* ctx_new(int N, bool unsafe = false);

class CycloNum {
 public:
  using Small = boost::container::small_vector<int64_t, 12>;

  CycloNum() = default;
  CycloNum(int64_t c);              // NOLINT: rational constant without context
  CycloNum(int64_t n, int64_t d);   // n/d
  CycloNum(const CycloCtx* ctx, int64_t c);
  static CycloNum gen(const CycloCtx* ctx);  // the class of q
  static CycloNum from_coeffs(const CycloCtx* ctx, const std::vector<mpq_class>& c);

  CycloNum(const CycloNum& o);
  CycloNum(CycloNum&& o) noexcept = default;
  CycloNum& operator=(const CycloNum& o);
  CycloNum& operator=(CycloNum&& o) noexcept = default;

  const CycloCtx* ctx() const { return ctx_; }
  bool is_zero() const;
  bool is_one() const;
  bool is_rational() const;  // lies in Q
  mpq_class rational_value() const;  // requires is_rational()
  std::vector<mpq_class> coeffs() const;  // length phi (or 1 without context)

  CycloNum operator-() const;
  CycloNum& operator+=(const CycloNum& o);
  CycloNum& operator-=(const CycloNum& o);
  CycloNum& operator*=(const CycloNum& o);
  CycloNum& operator/=(const CycloNum& o) { return *this *= o.inv(); }
  friend CycloNum operator+(CycloNum a, const CycloNum& b) { return a += b; }
  friend CycloNum operator-(CycloNum a, const CycloNum& b) { return a -= b; }
  friend CycloNum operator*(const CycloNum& a, const CycloNum& b);
  friend CycloNum operator/(CycloNum a, const CycloNum& b) { return a /= b; }
  friend bool operator==(const CycloNum& a, const CycloNum& b);
  friend bool operator!=(const CycloNum& a, const CycloNum& b) { return !(a == b); }

  // a += b*c without a temporary on the fast path
  void addmul(const CycloNum& b, const CycloNum& c);

  CycloNum inv() const;
  CycloNum pow(int64_t e) const;

  // total order on canonical forms, used only for deterministic output
  int compare(const CycloNum& o) const;
  size_t hash() const;

  // Polynomial in `var`; for prime N uses the shortest Laurent representative.
  std::string str(const std::string& var = "q") const;

 private:
  struct Big {
    std::vector<mpz_class> num;
    mpz_class den;
  };
  const CycloCtx* ctx_ = nullptr;
  Small num_;        // empty means zero (without context) else length phi or 1
  int64_t den_ = 1;
  std::unique_ptr<Big> big_;

  int len() const { return ctx_ ? ctx_->phi : 1; }
  void adopt(const CycloCtx* c);
  Big to_big() const;
  void set_big(Big&& b);
  void set_i128(const __int128* r, int n, __int128 den);
  static void reduce_big(const CycloCtx* c, std::vector<mpz_class>& v);
};

inline CycloNum qpow(const CycloCtx* c, int64_t k) { return c->qpow(k); }
// q^{k/2} under the convention q^{1/2} = q^{(N+1)/2}
CycloNum qpow_half(const CycloCtx* c, int64_t k);

enum class QVariant { Paren, Bracket };

// (n)_z = 1 + z + ... + z^{n-1};  [n]_z = (z^n - z^-n)/(z - z^-1)
CycloNum qint(int64_t n, QVariant v, const CycloNum& z);
CycloNum qint(const CycloCtx* c, int64_t n, QVariant v);
// Gaussian binomials via the Pascal recursions (valid at roots of unity)
CycloNum qbinom(int64_t n, int64_t k, QVariant v, const CycloNum& z);
CycloNum qbinom(const CycloCtx* c, int64_t n, int64_t k, QVariant v);

}  // namespace qlift
