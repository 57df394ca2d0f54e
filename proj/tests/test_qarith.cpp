#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "qlift/qarith.hpp"

using namespace qlift;

namespace {

// Oracle: elements of Z[q]/(q^N - 1) as length-N coefficient vectors.  For
// prime N two such vectors agree in Q(q) iff their difference is constant.
using Cyc = std::vector<long long>;

Cyc cyc_mul(const Cyc& a, const Cyc& b) {
  size_t N = a.size();
  Cyc c(N, 0);
  for (size_t i = 0; i < N; ++i)
    for (size_t j = 0; j < N; ++j) c[(i + j) % N] += a[i] * b[j];
  return c;
}

CycloNum to_num(const CycloCtx* ctx, const Cyc& a) {
  CycloNum s(ctx, 0);
  for (size_t k = 0; k < a.size(); ++k) s += CycloNum(ctx, a[k]) * qpow(ctx, int64_t(k));
  return s;
}

Cyc random_cyc(std::mt19937& g, int N) {
  std::uniform_int_distribution<int> d(-5, 5);
  Cyc a(N);
  for (auto& x : a) x = d(g);
  return a;
}

// Gaussian binomial in Z[x] by the integer Pascal rule, evaluated at z.
CycloNum gauss_oracle(int n, int k, const CycloNum& z) {
  std::vector<std::vector<std::vector<long long>>> G(n + 1);
  for (int m = 0; m <= n; ++m) {
    G[m].resize(m + 1);
    for (int r = 0; r <= m; ++r) {
      if (r == 0 || r == m) {
        G[m][r] = {1};
        continue;
      }
      // [m, r] = [m-1, r-1] + x^r [m-1, r]
      auto& a = G[m - 1][r - 1];
      auto& b = G[m - 1][r];
      std::vector<long long> c(std::max(a.size(), b.size() + r), 0);
      for (size_t s = 0; s < a.size(); ++s) c[s] += a[s];
      for (size_t s = 0; s < b.size(); ++s) c[s + r] += b[s];
      G[m][r] = c;
    }
  }
  CycloNum s(z.ctx(), 0), p(z.ctx(), 1);
  for (long long c : G[n][k]) {
    s += CycloNum(z.ctx(), c) * p;
    p *= z;
  }
  return s;
}

}  // namespace

TEST(Context, PrimeCyclotomic) {
  auto* c = ctx_new(11);
  EXPECT_EQ(c->phi, 10);
  ASSERT_EQ(c->phi_poly.size(), 11u);
  for (auto x : c->phi_poly) EXPECT_EQ(x, 1);
  EXPECT_TRUE(qpow(c, 11).is_one());
  EXPECT_FALSE(qpow(c, 1).is_one());
  EXPECT_EQ(ctx_new(11), c);
}

TEST(Context, RejectsSmallFactors) {
  EXPECT_THROW(ctx_new(9), Error);
  EXPECT_THROW(ctx_new(15), Error);
  EXPECT_THROW(ctx_new(8), Error);
  EXPECT_NO_THROW(ctx_new(13));
  EXPECT_NO_THROW(ctx_new(9, true));
}

TEST(CycloNum, ProductsMatchCyclicConvolution) {
  std::mt19937 g(7);
  for (int N : {11, 13}) {
    auto* c = ctx_new(N);
    for (int t = 0; t < 40; ++t) {
      Cyc a = random_cyc(g, N), b = random_cyc(g, N);
      EXPECT_EQ(to_num(c, a) * to_num(c, b), to_num(c, cyc_mul(a, b)));
    }
  }
}

TEST(CycloNum, FieldAxioms) {
  std::mt19937 g(11);
  auto* c = ctx_new(13);
  for (int t = 0; t < 30; ++t) {
    CycloNum a = to_num(c, random_cyc(g, 13)), b = to_num(c, random_cyc(g, 13)), d = to_num(c, random_cyc(g, 13));
    EXPECT_EQ(a * (b + d), a * b + a * d);
    EXPECT_EQ((a + b) - b, a);
    if (!b.is_zero()) {
      EXPECT_EQ((a * b) / b, a);
      EXPECT_TRUE((b * b.inv()).is_one());
    }
  }
}

TEST(CycloNum, SumOfPowersVanishes) {
  auto* c = ctx_new(11);
  CycloNum s(c, 0);
  for (int k = 0; k < 11; ++k) s += qpow(c, k);
  EXPECT_TRUE(s.is_zero());
  EXPECT_EQ(qpow(c, -1), CycloNum::gen(c).inv());
  EXPECT_EQ(CycloNum::gen(c).pow(23), CycloNum::gen(c));
}

TEST(CycloNum, RationalsAndStrings) {
  auto* c = ctx_new(11);
  CycloNum h = CycloNum(c, 1) / CycloNum(c, 2);
  EXPECT_TRUE(h.is_rational());
  EXPECT_EQ(h.rational_value(), mpq_class(1, 2));
  EXPECT_FALSE(CycloNum::gen(c).is_rational());
  EXPECT_EQ(qint(c, 2, QVariant::Bracket).str(), "q^-1 + q");
}

TEST(HalfPowers, Convention) {
  auto* c = ctx_new(11);
  EXPECT_EQ(qpow_half(c, 2), CycloNum::gen(c));
  EXPECT_TRUE(qpow_half(c, 11).is_one());
  EXPECT_EQ(qpow_half(c, 1), qpow(c, 6));
  EXPECT_EQ(qpow_half(c, 1) * qpow_half(c, 1), CycloNum::gen(c));
  EXPECT_EQ(qpow_half(c, 3) * qpow_half(c, 5), qpow(c, 4));
}

TEST(QIntegers, BracketAndParen) {
  auto* c = ctx_new(11);
  CycloNum q = CycloNum::gen(c), q2 = q * q;
  for (int n = 1; n <= 10; ++n) {
    // (n)_{q^2} = q^{n-1} [n]_q
    EXPECT_EQ(qint(n, QVariant::Paren, q2), qpow(c, n - 1) * qint(c, n, QVariant::Bracket)) << n;
    CycloNum direct(c, 0);
    for (int k = 0; k < n; ++k) direct += q.pow(k);
    EXPECT_EQ(qint(c, n, QVariant::Paren), direct);
  }
  EXPECT_TRUE(qint(c, 11, QVariant::Bracket).is_zero());
  EXPECT_TRUE(qint(c, 11, QVariant::Paren).is_zero());
}

TEST(QBinomials, MatchIntegerPascalOracle) {
  auto* c = ctx_new(13);
  CycloNum q = CycloNum::gen(c);
  for (int n = 0; n <= 16; ++n)
    for (int k = 0; k <= n; ++k) EXPECT_EQ(qbinom(n, k, QVariant::Paren, q), gauss_oracle(n, k, q)) << n << "," << k;
}

TEST(QBinomials, VanishAtRootOfUnity) {
  for (int N : {11, 13}) {
    auto* c = ctx_new(N);
    CycloNum q = CycloNum::gen(c);
    for (int k = 1; k < N; ++k) {
      EXPECT_TRUE(qbinom(c, N, k, QVariant::Paren).is_zero()) << N << "," << k;
      EXPECT_TRUE(qbinom(c, N, k, QVariant::Bracket).is_zero()) << N << "," << k;
      EXPECT_TRUE(qbinom(N, k, QVariant::Paren, q * q).is_zero()) << N << "," << k;
    }
    EXPECT_TRUE(qbinom(c, N, 0, QVariant::Paren).is_one());
    EXPECT_TRUE(qbinom(c, N, N, QVariant::Bracket).is_one());
  }
}
