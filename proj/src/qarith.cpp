#include "qlift/qarith.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>

namespace qlift {

namespace {

using i128 = __int128;
using u128 = unsigned __int128;

int bits64(uint64_t x) { return x ? 64 - __builtin_clzll(x) : 0; }

int bitsabs(int64_t x) {
  return bits64(x < 0 ? uint64_t(0) - uint64_t(x) : uint64_t(x));
}

u128 uabs(i128 x) { return x < 0 ? u128(0) - u128(x) : u128(x); }

u128 gcd128(u128 a, u128 b) {
  while (b) {
    u128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

bool fits64(i128 x) { return x >= INT64_MIN && x <= INT64_MAX; }

mpz_class mpz_from(i128 x) {
  bool neg = x < 0;
  u128 u = uabs(x);
  mpz_class r;
  uint64_t parts[2] = {uint64_t(u), uint64_t(u >> 64)};
  mpz_import(r.get_mpz_t(), 2, -1, sizeof(uint64_t), 0, 0, parts);
  if (neg) r = -r;
  return r;
}

using QPoly = std::vector<mpq_class>;

void trim(QPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

// p = a*b
QPoly qmul(const QPoly& a, const QPoly& b) {
  if (a.empty() || b.empty()) return {};
  QPoly r(a.size() + b.size() - 1, mpq_class(0));
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] != 0)
      for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  trim(r);
  return r;
}

QPoly qsub(const QPoly& a, const QPoly& b) {
  QPoly r(std::max(a.size(), b.size()), mpq_class(0));
  for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  trim(r);
  return r;
}

void qdivmod(QPoly a, const QPoly& b, QPoly& quo, QPoly& rem) {
  trim(a);
  quo.assign(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, mpq_class(0));
  while (a.size() >= b.size() && !a.empty()) {
    size_t s = a.size() - b.size();
    mpq_class c = a.back() / b.back();
    quo[s] = c;
    for (size_t i = 0; i < b.size(); ++i) a[s + i] -= c * b[i];
    trim(a);
  }
  rem = a;
  trim(quo);
}

// exact division of integer polynomials (divisor monic)
std::vector<int64_t> zdiv_monic(std::vector<int64_t> a, const std::vector<int64_t>& b) {
  std::vector<int64_t> q(a.size() - b.size() + 1, 0);
  for (size_t s = q.size(); s-- > 0;) {
    int64_t c = a[s + b.size() - 1];
    q[s] = c;
    for (size_t i = 0; i < b.size(); ++i) a[s + i] -= c * b[i];
  }
  return q;
}

std::vector<int64_t> cyclotomic(int n) {
  static std::map<int, std::vector<int64_t>> memo;
  auto it = memo.find(n);
  if (it != memo.end()) return it->second;
  std::vector<int64_t> p(n + 1, 0);
  p[0] = -1;
  p[n] = 1;
  for (int d = 1; d < n; ++d)
    if (n % d == 0) p = zdiv_monic(p, cyclotomic(d));
  memo[n] = p;
  return p;
}

std::mutex ctx_mutex;
std::map<int, std::unique_ptr<CycloCtx>> ctx_registry;

}  // namespace

const CycloNum& CycloCtx::qpow(int64_t k) const {
  int64_t m = k % N;
  if (m < 0) m += N;
  return *pow_table_[m];
}

const CycloCtx* ctx_new(int N, bool unsafe) {
  if (N < 1) throw Error("ctx_new: N must be positive");
  if (!unsafe && (N % 2 == 0 || std::gcd(N, 210) != 1))
    throw Error("ctx_new: N=" + std::to_string(N) + " must be odd and coprime to 210");
  std::lock_guard<std::mutex> lk(ctx_mutex);
  auto& slot = ctx_registry[N];
  if (slot) return slot.get();
  auto c = std::make_unique<CycloCtx>();
  c->N = N;
  c->phi_poly = cyclotomic(N);
  c->phi = int(c->phi_poly.size()) - 1;
  c->half_exp = (N + 1) / 2;
  int phi = c->phi;
  // q^k for k in [phi, 2phi-2]
  std::vector<int64_t> cur(phi, 0);
  for (int i = 0; i < phi; ++i) cur[i] = -c->phi_poly[i];
  for (int k = phi; k <= 2 * phi - 2; ++k) {
    c->red.push_back(cur);
    int64_t top = cur[phi - 1];
    std::vector<int64_t> nxt(phi, 0);
    for (int i = phi - 1; i > 0; --i) nxt[i] = cur[i - 1];
    for (int i = 0; i < phi; ++i) nxt[i] -= top * c->phi_poly[i];
    cur = nxt;
  }
  uint64_t worst = 1;
  for (int j = 0; j < phi; ++j) {
    uint64_t s = 1;
    for (auto& row : c->red) s += uint64_t(row[j] < 0 ? -row[j] : row[j]);
    worst = std::max(worst, s);
  }
  c->red_bits = bits64(worst);
  CycloNum q = CycloNum::gen(c.get());
  CycloNum acc(c.get(), 1);
  for (int k = 0; k < N; ++k) {
    c->pow_table_.push_back(std::make_unique<CycloNum>(acc));
    acc *= q;
  }
  slot = std::move(c);
  return slot.get();
}

// ---------------------------------------------------------------- CycloNum

CycloNum::CycloNum(int64_t c) {
  if (c) num_.assign(1, c);
}

CycloNum::CycloNum(int64_t n, int64_t d) {
  if (d == 0) throw Error("CycloNum: zero denominator");
  if (d < 0) n = -n, d = -d;
  int64_t g = std::gcd(n, d);
  if (n) {
    num_.assign(1, n / g);
    den_ = d / g;
  }
}

CycloNum::CycloNum(const CycloCtx* ctx, int64_t c) : ctx_(ctx) {
  num_.assign(len(), 0);
  num_[0] = c;
}

CycloNum CycloNum::gen(const CycloCtx* ctx) {
  std::vector<mpq_class> v(2, mpq_class(0));
  v[1] = 1;
  return from_coeffs(ctx, v);
}

CycloNum::CycloNum(const CycloNum& o)
    : ctx_(o.ctx_), num_(o.num_), den_(o.den_),
      big_(o.big_ ? std::make_unique<Big>(*o.big_) : nullptr) {}

CycloNum& CycloNum::operator=(const CycloNum& o) {
  if (this == &o) return *this;
  ctx_ = o.ctx_;
  num_ = o.num_;
  den_ = o.den_;
  big_ = o.big_ ? std::make_unique<Big>(*o.big_) : nullptr;
  return *this;
}

void CycloNum::adopt(const CycloCtx* c) {
  if (ctx_ || !c) return;
  int64_t v = num_.empty() ? 0 : num_[0];
  if (big_) {
    big_->num.resize(c->phi, mpz_class(0));
  } else {
    num_.assign(c->phi, 0);
    num_[0] = v;
  }
  ctx_ = c;
}

CycloNum::Big CycloNum::to_big() const {
  if (big_) return *big_;
  Big b;
  b.num.assign(len(), mpz_class(0));
  for (size_t i = 0; i < num_.size(); ++i) b.num[i] = mpz_class(static_cast<long>(num_[i]));
  b.den = mpz_class(static_cast<long>(den_));
  return b;
}

void CycloNum::set_big(Big&& b) {
  mpz_class g = abs(b.den);
  for (auto& x : b.num) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  if (b.den < 0) g = -g;
  bool zero = true;
  for (auto& x : b.num) zero &= (x == 0);
  if (zero) {
    big_.reset();
    num_.assign(len(), 0);
    if (!ctx_) num_.clear();
    den_ = 1;
    return;
  }
  if (g != 1) {
    for (auto& x : b.num) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
    mpz_divexact(b.den.get_mpz_t(), b.den.get_mpz_t(), g.get_mpz_t());
  }
  bool fit = b.den.fits_slong_p();
  for (auto& x : b.num) fit &= x.fits_slong_p();
  if (fit) {
    big_.reset();
    num_.resize(b.num.size());
    for (size_t i = 0; i < b.num.size(); ++i) num_[i] = b.num[i].get_si();
    den_ = b.den.get_si();
  } else {
    num_.clear();
    den_ = 1;
    big_ = std::make_unique<Big>(std::move(b));
  }
}

void CycloNum::set_i128(const i128* r, int n, i128 den) {
  u128 g = uabs(den);
  bool zero = true;
  if (g != 1) {
    for (int i = 0; i < n && g != 1; ++i)
      if (r[i]) g = gcd128(g, uabs(r[i]));
  }
  for (int i = 0; i < n; ++i) zero &= (r[i] == 0);
  big_.reset();
  if (zero) {
    if (ctx_) num_.assign(n, 0);
    else num_.clear();
    den_ = 1;
    return;
  }
  i128 gg = den < 0 ? -i128(g) : i128(g);
  if (gg == 1) {
    bool ok = fits64(den);
    for (int i = 0; i < n && ok; ++i) ok = fits64(r[i]);
    if (ok) {
      num_.resize(n);
      for (int i = 0; i < n; ++i) num_[i] = int64_t(r[i]);
      den_ = int64_t(den);
      return;
    }
  }
  bool fit = fits64(den / gg);
  for (int i = 0; i < n && fit; ++i) fit = fits64(r[i] / gg);
  if (fit) {
    num_.resize(n);
    for (int i = 0; i < n; ++i) num_[i] = int64_t(r[i] / gg);
    den_ = int64_t(den / gg);
    return;
  }
  Big b;
  b.num.resize(n);
  for (int i = 0; i < n; ++i) b.num[i] = mpz_from(r[i] / gg);
  b.den = mpz_from(den / gg);
  num_.clear();
  set_big(std::move(b));
}

bool CycloNum::is_zero() const {
  if (big_) return false;
  for (auto x : num_)
    if (x) return false;
  return true;
}

bool CycloNum::is_one() const {
  if (big_ || den_ != 1 || num_.empty() || num_[0] != 1) return false;
  for (size_t i = 1; i < num_.size(); ++i)
    if (num_[i]) return false;
  return true;
}

bool CycloNum::is_rational() const {
  if (big_) {
    for (size_t i = 1; i < big_->num.size(); ++i)
      if (big_->num[i] != 0) return false;
    return true;
  }
  for (size_t i = 1; i < num_.size(); ++i)
    if (num_[i]) return false;
  return true;
}

mpq_class CycloNum::rational_value() const {
  if (!is_rational()) throw Error("rational_value: not rational");
  return coeffs()[0];
}

std::vector<mpq_class> CycloNum::coeffs() const {
  Big b = to_big();
  std::vector<mpq_class> v(len(), mpq_class(0));
  for (size_t i = 0; i < b.num.size(); ++i) {
    v[i] = mpq_class(b.num[i], b.den);
    v[i].canonicalize();
  }
  return v;
}

CycloNum CycloNum::from_coeffs(const CycloCtx* ctx, const std::vector<mpq_class>& c) {
  CycloNum r(ctx, 0);
  mpz_class den = 1;
  for (auto& x : c) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den_mpz_t());
  std::vector<mpz_class> v(std::max<size_t>(c.size(), ctx->phi), mpz_class(0));
  for (size_t i = 0; i < c.size(); ++i) v[i] = c[i].get_num() * (den / c[i].get_den());
  reduce_big(ctx, v);
  Big b;
  b.num = std::move(v);
  b.den = den;
  r.num_.clear();
  r.set_big(std::move(b));
  return r;
}

void CycloNum::reduce_big(const CycloCtx* c, std::vector<mpz_class>& v) {
  int phi = c->phi;
  for (int k = int(v.size()) - 1; k >= phi; --k) {
    if (v[k] == 0) continue;
    mpz_class t = v[k];
    v[k] = 0;
    for (int i = 0; i < phi; ++i)
      if (c->phi_poly[i]) v[k - phi + i] -= t * c->phi_poly[i];
  }
  v.resize(phi, mpz_class(0));
}

CycloNum CycloNum::operator-() const {
  CycloNum r(*this);
  if (r.big_) {
    for (auto& x : r.big_->num) x = -x;
  } else {
    for (auto& x : r.num_) {
      if (x == INT64_MIN) {
        Big b = to_big();
        for (auto& y : b.num) y = -y;
        r.num_.clear();
        r.set_big(std::move(b));
        return r;
      }
      x = -x;
    }
  }
  return r;
}

CycloNum& CycloNum::operator+=(const CycloNum& o) {
  if (o.is_zero()) return *this;
  if (!ctx_ && o.ctx_) adopt(o.ctx_);
  if (ctx_ && !o.ctx_) {
    CycloNum t(o);
    t.adopt(ctx_);
    return *this += t;
  }
  if (ctx_ != o.ctx_) throw Error("CycloNum: mismatched contexts");
  if (!big_ && !o.big_) {
    if (num_.empty()) {  // contextless zero
      *this = o;
      return *this;
    }
    int n = int(num_.size());
    if (den_ == o.den_) {
      bool ok = true;
      int64_t tmp[64];
      if (n <= 64) {
        for (int i = 0; i < n && ok; ++i) ok = !__builtin_add_overflow(num_[i], o.num_[i], &tmp[i]);
        if (ok) {
          for (int i = 0; i < n; ++i) num_[i] = tmp[i];
          if (den_ != 1) {
            i128 r[64];
            for (int i = 0; i < n; ++i) r[i] = num_[i];
            set_i128(r, n, den_);
          }
          return *this;
        }
      }
    }
    std::vector<i128> r(n);
    for (int i = 0; i < n; ++i) r[i] = i128(num_[i]) * o.den_ + i128(o.num_[i]) * den_;
    set_i128(r.data(), n, i128(den_) * o.den_);
    return *this;
  }
  Big a = to_big(), b = o.to_big();
  for (size_t i = 0; i < a.num.size(); ++i) a.num[i] = a.num[i] * b.den + b.num[i] * a.den;
  a.den *= b.den;
  num_.clear();
  set_big(std::move(a));
  return *this;
}

CycloNum& CycloNum::operator-=(const CycloNum& o) { return *this += -o; }

CycloNum operator*(const CycloNum& a, const CycloNum& b) {
  CycloNum r;
  if (a.is_zero() || b.is_zero()) {
    const CycloCtx* c = a.ctx_ ? a.ctx_ : b.ctx_;
    return c ? CycloNum(c, 0) : CycloNum();
  }
  if (a.ctx_ && b.ctx_ && a.ctx_ != b.ctx_) throw Error("CycloNum: mismatched contexts");
  // scalar times vector
  if (!a.ctx_ || !b.ctx_) {
    const CycloNum& s = a.ctx_ ? b : a;
    const CycloNum& v = a.ctx_ ? a : b;
    r.ctx_ = v.ctx_;
    if (!s.big_ && !v.big_) {
      int n = int(v.num_.size());
      std::vector<i128> t(n);
      for (int i = 0; i < n; ++i) t[i] = i128(v.num_[i]) * s.num_[0];
      r.set_i128(t.data(), n, i128(v.den_) * s.den_);
      return r;
    }
    CycloNum::Big x = v.to_big(), y = s.to_big();
    for (auto& e : x.num) e *= y.num[0];
    x.den *= y.den;
    r.set_big(std::move(x));
    return r;
  }
  const CycloCtx* c = a.ctx_;
  r.ctx_ = c;
  int phi = c->phi;
  if (!a.big_ && !b.big_) {
    int ba = 0, bb = 0;
    for (auto x : a.num_) ba = std::max(ba, bitsabs(x));
    for (auto x : b.num_) bb = std::max(bb, bitsabs(x));
    if (ba + bb + bits64(uint64_t(phi)) + c->red_bits < 125) {
      i128 h[128];
      std::vector<i128> hv;
      i128* hp = h;
      int hn = 2 * phi - 1;
      if (hn > 128) {
        hv.assign(hn, 0);
        hp = hv.data();
      } else {
        std::fill(h, h + hn, i128(0));
      }
      for (int i = 0; i < phi; ++i) {
        int64_t x = a.num_[i];
        if (!x) continue;
        for (int j = 0; j < phi; ++j)
          if (b.num_[j]) hp[i + j] += i128(x) * b.num_[j];
      }
      for (int k = hn - 1; k >= phi; --k) {
        i128 t = hp[k];
        if (!t) continue;
        const auto& row = c->red[k - phi];
        for (int j = 0; j < phi; ++j)
          if (row[j]) hp[j] += t * row[j];
      }
      r.set_i128(hp, phi, i128(a.den_) * b.den_);
      return r;
    }
  }
  CycloNum::Big x = a.to_big(), y = b.to_big();
  std::vector<mpz_class> h(2 * phi - 1, mpz_class(0));
  for (int i = 0; i < phi; ++i)
    if (x.num[i] != 0)
      for (int j = 0; j < phi; ++j) h[i + j] += x.num[i] * y.num[j];
  CycloNum::reduce_big(c, h);
  CycloNum::Big z;
  z.num = std::move(h);
  z.den = x.den * y.den;
  r.set_big(std::move(z));
  return r;
}

CycloNum& CycloNum::operator*=(const CycloNum& o) {
  *this = *this * o;
  return *this;
}

void CycloNum::addmul(const CycloNum& b, const CycloNum& c) { *this += b * c; }

bool operator==(const CycloNum& a, const CycloNum& b) {
  bool za = a.is_zero(), zb = b.is_zero();
  if (za || zb) return za == zb;
  if (a.ctx_ == b.ctx_ && !a.big_ && !b.big_)
    return a.den_ == b.den_ && std::equal(a.num_.begin(), a.num_.end(), b.num_.begin(), b.num_.end());
  if (a.ctx_ == b.ctx_ && a.big_ && b.big_) return a.big_->den == b.big_->den && a.big_->num == b.big_->num;
  if (a.ctx_ == b.ctx_) return false;  // canonical: small and big never coincide
  if (a.ctx_ && b.ctx_) return false;
  // one side contextless
  const CycloNum& s = a.ctx_ ? b : a;
  const CycloNum& v = a.ctx_ ? a : b;
  return v.is_rational() && v.rational_value() == s.rational_value();
}

CycloNum CycloNum::inv() const {
  if (is_zero()) throw Error("CycloNum: inverse of zero");
  if (!ctx_) {
    mpq_class v = rational_value();
    v = 1 / v;
    if (v.get_num().fits_slong_p() && v.get_den().fits_slong_p())
      return CycloNum(v.get_num().get_si(), v.get_den().get_si());
    CycloNum r;
    Big b;
    b.num = {v.get_num()};
    b.den = v.get_den();
    r.set_big(std::move(b));
    return r;
  }
  QPoly f(ctx_->phi_poly.size());
  for (size_t i = 0; i < f.size(); ++i) f[i] = mpq_class(std::to_string(ctx_->phi_poly[i]));
  QPoly g = coeffs();
  trim(g);
  QPoly r0 = f, r1 = g, s0 = {}, s1 = {mpq_class(1)};
  while (!r1.empty()) {
    QPoly quo, rem;
    qdivmod(r0, r1, quo, rem);
    r0 = r1;
    r1 = rem;
    QPoly s2 = qsub(s0, qmul(quo, s1));
    s0 = s1;
    s1 = s2;
  }
  if (r0.size() != 1) throw Error("CycloNum: non-invertible element");
  for (auto& x : s0) x /= r0[0];
  return from_coeffs(ctx_, s0);
}

CycloNum CycloNum::pow(int64_t e) const {
  if (e < 0) return inv().pow(-e);
  CycloNum base(*this), acc = ctx_ ? CycloNum(ctx_, 1) : CycloNum(1);
  while (e) {
    if (e & 1) acc *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return acc;
}

int CycloNum::compare(const CycloNum& o) const {
  if (*this == o) return 0;
  auto a = coeffs(), b = o.coeffs();
  size_t n = std::max(a.size(), b.size());
  a.resize(n, mpq_class(0));
  b.resize(n, mpq_class(0));
  for (size_t i = n; i-- > 0;) {
    int c = cmp(a[i], b[i]);
    if (c) return c < 0 ? -1 : 1;
  }
  return 0;
}

size_t CycloNum::hash() const {
  if (is_zero()) return 0;
  if (big_) {
    size_t h = 7;
    for (auto& x : big_->num) h = h * 1000003u ^ std::hash<std::string>()(x.get_str(16));
    return h;
  }
  size_t h = std::hash<int64_t>()(den_);
  for (auto x : num_) h = h * 1000003u ^ std::hash<int64_t>()(x);
  return h;
}

std::string CycloNum::str(const std::string& var) const {
  std::vector<mpq_class> c = coeffs();
  std::vector<std::pair<int, mpq_class>> terms;
  int N = ctx_ ? ctx_->N : 1;
  bool prime = ctx_ && ctx_->phi == N - 1;
  if (prime) {
    // shortest representative modulo 1 + q + ... + q^{N-1}
    c.resize(N, mpq_class(0));
    std::map<mpq_class, int> freq;
    for (auto& x : c) freq[x]++;
    mpq_class best = 0;
    int bc = freq[mpq_class(0)];
    for (auto& [v, k] : freq)
      if (k > bc) best = v, bc = k;
    for (int k = 0; k < N; ++k) {
      mpq_class v = c[k] - best;
      if (v == 0) continue;
      int e = k <= (N - 1) / 2 ? k : k - N;
      terms.emplace_back(e, v);
    }
  } else {
    for (size_t k = 0; k < c.size(); ++k)
      if (c[k] != 0) terms.emplace_back(int(k), c[k]);
  }
  std::sort(terms.begin(), terms.end(), [](auto& x, auto& y) { return x.first < y.first; });
  if (terms.empty()) return "0";
  std::string out;
  for (size_t t = 0; t < terms.size(); ++t) {
    auto [e, v] = terms[t];
    bool neg = v < 0;
    mpq_class av = abs(v);
    if (t == 0) out += neg ? "-" : "";
    else out += neg ? " - " : " + ";
    std::string mono = e == 0 ? "" : (e == 1 ? var : var + "^" + std::to_string(e));
    if (mono.empty()) out += av.get_str();
    else if (av == 1) out += mono;
    else out += av.get_str() + "*" + mono;
  }
  return out;
}

CycloNum qpow_half(const CycloCtx* c, int64_t k) {
  int64_t m = (k % c->N + c->N) % c->N;
  return c->qpow((m * c->half_exp) % c->N);
}

CycloNum qint(int64_t n, QVariant v, const CycloNum& z) {
  if (n < 0) throw Error("qint: negative argument");
  const CycloCtx* c = z.ctx();
  CycloNum one = c ? CycloNum(c, 1) : CycloNum(1);
  if (v == QVariant::Paren) {
    CycloNum s = c ? CycloNum(c, 0) : CycloNum(), p = one;
    for (int64_t i = 0; i < n; ++i) {
      s += p;
      p *= z;
    }
    return s;
  }
  // z^{-(n-1)} + z^{-(n-3)} + ... + z^{n-1}
  if (n == 0) return c ? CycloNum(c, 0) : CycloNum();
  CycloNum z2 = z * z, p = z.pow(-(n - 1)), s = c ? CycloNum(c, 0) : CycloNum();
  for (int64_t i = 0; i < n; ++i) {
    s += p;
    p *= z2;
  }
  return s;
}

CycloNum qint(const CycloCtx* c, int64_t n, QVariant v) { return qint(n, v, CycloNum::gen(c)); }

CycloNum qbinom(int64_t n, int64_t k, QVariant v, const CycloNum& z) {
  if (n < 0 || k < 0 || k > n) throw Error("qbinom: need 0 <= k <= n");
  const CycloCtx* c = z.ctx();
  CycloNum one = c ? CycloNum(c, 1) : CycloNum(1);
  CycloNum zi = z.inv();
  // row[j] holds binom(m, j)
  std::vector<CycloNum> row{one};
  for (int64_t m = 1; m <= n; ++m) {
    std::vector<CycloNum> nxt(m + 1, c ? CycloNum(c, 0) : CycloNum());
    for (int64_t j = 0; j <= m; ++j) {
      const CycloNum* lo = j >= 1 ? &row[j - 1] : nullptr;
      const CycloNum* hi = j <= m - 1 ? &row[j] : nullptr;
      if (v == QVariant::Paren) {
        // (m,j) = (m-1,j-1) + z^j (m-1,j)
        if (lo) nxt[j] += *lo;
        if (hi) nxt[j] += z.pow(j) * *hi;
      } else {
        // [m,j] = z^{-j}[m-1,j] + z^{m-j}[m-1,j-1]
        if (hi) nxt[j] += zi.pow(j) * *hi;
        if (lo) nxt[j] += z.pow(m - j) * *lo;
      }
    }
    row = std::move(nxt);
  }
  return row[k];
}

CycloNum qbinom(const CycloCtx* c, int64_t n, int64_t k, QVariant v) {
  return qbinom(n, k, v, CycloNum::gen(c));
}

}  // namespace qlift
