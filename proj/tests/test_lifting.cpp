#include <gtest/gtest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "qlift/emit.hpp"
#include "qlift/lifting.hpp"

using namespace qlift;

namespace {

std::string read_golden(const std::string& name) {
  std::ifstream in(std::string(QLIFT_TEST_DIR) + "/golden/" + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Poly num(const CycloCtx* c, int64_t v) { return Poly(CycloNum(c, v)); }

Mono mono_of(std::initializer_list<std::pair<int, int>> l) {
  Mono m;
  for (auto& p : l) m = mono_mul(m, Mono{p});
  return m;
}

// Q^{-1} diag(t) Q by dense elimination on a numeric unitriangular Q
std::vector<std::vector<Poly>> dense_conjugate(const std::vector<std::vector<CycloNum>>& Q) {
  int n = int(Q.size());
  std::vector<std::vector<CycloNum>> inv(n, std::vector<CycloNum>(n, CycloNum(Q[0][0].ctx(), 0)));
  for (int j = 0; j < n; ++j) {
    // solve Q x = e_j from the bottom up
    for (int i = n - 1; i >= 0; --i) {
      CycloNum s(Q[0][0].ctx(), int64_t(i == j));
      for (int k = i + 1; k < n; ++k) s -= Q[i][k] * inv[k][j];
      inv[i][j] = s;
    }
  }
  std::vector<std::vector<Poly>> M(n, std::vector<Poly>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) M[i][j] += Poly::var(t_var(k + 1)) * (inv[i][k] * Q[k][j]);
  return M;
}

}  // namespace

TEST(Conjugation, NumericThreeByThree) {
  auto* c = ctx_new(11);
  std::vector<std::vector<CycloNum>> D{{CycloNum(c, 1), CycloNum(c, 2), CycloNum(c, 5)},
                                       {CycloNum(c, 0), CycloNum(c, 1), CycloNum(c, 3)},
                                       {CycloNum(c, 0), CycloNum(c, 0), CycloNum(c, 1)}};
  UnipotentMatrix Q = UnipotentMatrix::identity(3);
  Q.set(1, 2, num(c, 2));
  Q.set(1, 3, num(c, 5));
  Q.set(2, 3, num(c, 3));
  auto M = dense_conjugate(D);
  auto T = formal_torus(3);
  for (int i = 1; i <= 3; ++i)
    for (int j = i; j <= 3; ++j) EXPECT_EQ(conjugated_entry(Q, T, i, j), M[i - 1][j - 1]) << i << j;
  EXPECT_EQ(conjugated_entry(Q, T, 2, 2), Poly::var(t_var(2)));
  // t1 (2*3 - 5) + ... : the (1,3) entry from the literal product
  Poly want = Poly::var(t_var(1)) * CycloNum(c, 5) - Poly::var(t_var(2)) * CycloNum(c, 6) +
              Poly::var(t_var(3)) * CycloNum(c, 1);
  EXPECT_EQ(conjugated_entry(Q, T, 1, 3), want);
}

TEST(Conjugation, RandomNumericMatrices) {
  auto* c = ctx_new(13);
  std::mt19937 g(3);
  std::uniform_int_distribution<int> d(-4, 4);
  for (int trial = 0; trial < 5; ++trial) {
    const int n = 6;
    std::vector<std::vector<CycloNum>> D(n, std::vector<CycloNum>(n, CycloNum(c, 0)));
    UnipotentMatrix Q = UnipotentMatrix::identity(n);
    for (int i = 0; i < n; ++i) {
      D[i][i] = CycloNum(c, 1);
      for (int j = i + 1; j < n; ++j) {
        D[i][j] = CycloNum(c, d(g));
        Q.set(i + 1, j + 1, Poly(D[i][j]));
      }
    }
    auto M = dense_conjugate(D);
    Conjugated C(Q, formal_torus(n));
    for (int i = 1; i <= n; ++i)
      for (int j = i; j <= n; ++j) {
        EXPECT_EQ(C.entry(i, j), M[i - 1][j - 1]);
        EXPECT_EQ(iota_star(Q, i, j), M[i - 1][j - 1]);
      }
  }
}

TEST(Conjugation, IdentityAndAdjacent) {
  auto T = formal_torus(4);
  auto I = UnipotentMatrix::identity(4);
  for (int i = 1; i <= 4; ++i)
    for (int j = i + 1; j <= 4; ++j) {
      EXPECT_TRUE(conjugated_entry(I, T, i, j).is_zero());
      EXPECT_TRUE(iota_star(I, i, j).is_zero());
    }
  UnipotentMatrix Q = UnipotentMatrix::identity(2);
  Q.set(1, 2, Poly::var(r_var(1, 2)));
  EXPECT_EQ(iota_star(Q, 1, 2), Poly::var(r_var(1, 2)) * (Poly::var(t_var(1)) - Poly::var(t_var(2))));
}

TEST(Conjugation, SymbolicOrthogonalMatrices) {
  for (auto [k, t] : {std::pair{Kind::B, 2}, {Kind::D, 4}}) {
    UnipotentMatrix Q = so_complete(seed_symbols(k, t));
    Conjugated C(Q, formal_torus(Q.n()));
    for (int i = 1; i <= Q.n(); ++i)
      for (int j = i; j <= Q.n(); ++j) EXPECT_EQ(iota_star(Q, i, j), C.entry(i, j)) << i << j;
  }
}

TEST(Seeds, TypeB2) {
  auto* c = ctx_new(11);
  CycloNum q = CycloNum::gen(c), one(c, 1), eta = (q * q - one).pow(11);
  auto mu = [](int i, int j) { return Poly::var(mu_var(i, j)); };
  UnipotentMatrix P = seed_entries(c, Kind::B, 2, SeedVariant::Printed);
  EXPECT_EQ(P.at(4, 5), mu(1, 2) * eta);
  EXPECT_EQ(P.at(3, 5), mu(1, 3) * eta);
  EXPECT_EQ(P.at(3, 4), mu(2, 3) * eta);
  EXPECT_EQ(P.at(2, 5), mu(1, 4) * (eta * (q - one).pow(11) * CycloNum(-1, 2)));
  UnipotentMatrix S = seed_entries(c, Kind::B, 2);
  EXPECT_EQ(S.at(2, 5), mu(1, 4) * (eta * (q + one).pow(11) * CycloNum(-1, 2)));
}

TEST(Seeds, TypeAFirstEntry) {
  auto* c = ctx_new(11);
  CycloNum q = CycloNum::gen(c), one(c, 1);
  UnipotentMatrix Q = seed_entries(c, Kind::A, 3);
  EXPECT_EQ(Q.at(1, 2), Poly::var(mu_var(1, 2)) * (one - q.pow(-2)).pow(11));
}

TEST(Seeds, ZeroFamilyGivesIdentity) {
  auto* c = ctx_new(11);
  Poly zero;
  for (auto [k, t] : {std::pair{Kind::B, 3}, {Kind::D, 4}}) {
    UnipotentMatrix Q = so_complete(seed_entries(c, k, t));
    for (int i = 1; i <= Q.n(); ++i)
      for (int j = i + 1; j <= Q.n(); ++j) {
        Poly z = Q.at(i, j).subst([&](int v) { return var_kind(v) == VarKind::Mu ? &zero : nullptr; });
        EXPECT_TRUE(z.is_zero()) << i << j;
      }
  }
}

TEST(Completion, OrthogonalityHolds) {
  auto* c = ctx_new(11);
  for (auto [k, t] : {std::pair{Kind::B, 2}, {Kind::B, 3}, {Kind::B, 4}, {Kind::D, 4}, {Kind::D, 5}}) {
    EXPECT_TRUE(orthogonality_violations(so_complete(seed_symbols(k, t))).empty());
    EXPECT_TRUE(orthogonality_violations(so_complete(seed_entries(c, k, t))).empty());
  }
}

TEST(Completion, B2Identities) {
  UnipotentMatrix Q = so_complete(seed_symbols(Kind::B, 2));
  auto r = [](int i, int j) { return Poly::var(r_var(i, j)); };
  EXPECT_EQ(Q.at(2, 3), -r(3, 4));
  EXPECT_EQ(Q.at(2, 4), r(3, 4) * r(3, 4) * CycloNum(-1, 2));
}

TEST(Completion, ConflictingEntryIsNamed) {
  UnipotentMatrix Q = seed_symbols(Kind::B, 2);
  Q.set(2, 3, Poly::var(r_var(9, 9)));
  try {
    so_complete(Q);
    FAIL() << "an inconsistent entry was accepted";
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("("), std::string::npos);
  }
}

TEST(Golden, B3Identities) {
  UnipotentMatrix Q = so_complete(seed_symbols(Kind::B, 3));
  std::string got = entries_text(Q, {{2, 3}, {2, 4}, {2, 5}, {2, 6}, {3, 4}, {3, 5}}, Kind::B, 3);
  EXPECT_EQ(got, read_golden("b3_so7.txt"));
}

TEST(Golden, B2Relations) {
  LiftEngine E(ctx_new(11), Kind::B, 2);
  const RootSystem& rs = E.roots();
  std::string got = entries_text(E.Q(), {{2, 3}, {2, 4}}, Kind::B, 2) +
                    relation_text(E.closed(rs.find(1, 4)), rs) + "\n";
  EXPECT_EQ(got, read_golden("b2.txt"));
}

TEST(Golden, D5Entries) {
  LiftEngine E(ctx_new(11), Kind::D, 5);
  EXPECT_EQ(entries_text(E.Q(), {{3, 5}, {3, 6}, {3, 7}, {3, 8}}, Kind::D, 5), read_golden("d5.txt"));
}

TEST(Torus, GroupImages) {
  Poly one(CycloNum(1));
  EXPECT_EQ(torus_to_group(one, Kind::B, 2), one);
  Poly a = Poly::mono(mono_of({{t_var(1), 1}, {t_var(2), -1}}), CycloNum(1));
  EXPECT_EQ(torus_to_group(a, Kind::A, 2), Poly::var(g_var(1)));
  EXPECT_EQ(torus_to_group(a, Kind::B, 2), Poly::var(g_var(1)));
  // B: t_2 alone is g_2^N; t_{2'} = t_2^{-1}
  EXPECT_EQ(torus_to_group(Poly::var(t_var(4)), Kind::B, 2), Poly::var(g_var(2), -1));
  // D4: t_3 t_4 is g_4^N
  Poly d = Poly::mono(mono_of({{t_var(3), 1}, {t_var(4), 1}}), CycloNum(1));
  EXPECT_EQ(torus_to_group(d, Kind::D, 4), Poly::var(g_var(4)));
  // t_1 alone is not in the image lattice for A2
  EXPECT_THROW(torus_to_group(Poly::var(t_var(1)), Kind::A, 2), Error);
}

TEST(Torus, Reduce) {
  EXPECT_EQ(torus_reduce(Poly::var(t_var(3)), Kind::B, 2), Poly(CycloNum(1)));
  EXPECT_EQ(torus_reduce(Poly::var(t_var(5)), Kind::B, 2), Poly::var(t_var(1), -1));
  Poly a = torus_reduce(Poly::var(t_var(3)), Kind::A, 2);
  EXPECT_EQ(a, Poly::mono(mono_of({{t_var(1), -1}, {t_var(2), -1}}), CycloNum(1)));
}

TEST(Lift, TypeASimpleRoot) {
  auto* c = ctx_new(11);
  LiftEngine E(c, Kind::A, 2);
  const RootSystem& rs = E.roots();
  EXPECT_EQ(relation_text(lift_geometric(c, Kind::A, 2, rs.find(1, 2)), rs), "x_(12)^N = mu_12*(1 - g_(12)^N)");
  LiftEngine T(c, Kind::A, 1);
  ASSERT_EQ(T.roots().size(), 1u);
  EXPECT_EQ(relation_text(T.closed(0), T.roots()), "x_(12)^N = mu_12*(1 - g_(12)^N)");
}

TEST(Lift, TypeB3Examples) {
  auto* c = ctx_new(11);
  LiftEngine E(c, Kind::B, 3);
  const RootSystem& rs = E.roots();
  EXPECT_EQ(relation_text(E.closed(rs.find(1, 3)), rs), "x_(13)^N = mu_13*(g_(13)^N - 1) - (q1^2-1)^N*mu_23*x_(12)^N");
  EXPECT_EQ(relation_text(E.closed(rs.find(2, 5)), rs),
            "x_(23')^N = mu_23'*(g_(23')^N - 1) - (q1^2-1)^N*(q1-1)^N*mu_34^2*x_(23)^N - 2*(q1-1)^N*mu_34*x_(24)^N");
}

TEST(Lift, ZeroFamilyGivesBosonization) {
  auto* c = ctx_new(11);
  for (auto [k, t] : {std::pair{Kind::A, 3}, {Kind::B, 3}, {Kind::D, 4}}) {
    RootSystem rs = root_system(k, t);
    MuFamily z = mu_zero(rs);
    for (size_t r = 0; r < rs.size(); ++r) {
      LiftRelation rel = lift_geometric(c, k, t, int(r), &z);
      EXPECT_TRUE(rel.group.is_zero());
      for (auto& [b, p] : rel.x) EXPECT_TRUE(p.is_zero());
    }
  }
}

TEST(Lift, GroupPartsLieInAugmentationIdeal) {
  auto* c = ctx_new(11);
  for (auto [k, t] : {std::pair{Kind::A, 4}, {Kind::B, 3}, {Kind::D, 5}}) {
    LiftEngine E(c, k, t);
    for (size_t r = 0; r < E.roots().size(); ++r) {
      LiftRelation rel = E.geometric(int(r));
      EXPECT_FALSE(rel.group.is_zero());
      EXPECT_TRUE(augmentation(rel.group).is_zero()) << E.roots().name(r);
    }
  }
}

TEST(Lift, SingleParameterFamily) {
  // with only mu_alpha switched on, alpha's relation is mu_alpha (g_alpha^N - 1) up to sign
  auto* c = ctx_new(11);
  for (auto [k, t] : {std::pair{Kind::B, 3}, {Kind::D, 4}}) {
    RootSystem rs = root_system(k, t);
    for (size_t r = 0; r < rs.size(); ++r) {
      MuFamily m = mu_zero(rs);
      m.mu[r] = MuEntry{};
      LiftRelation rel = lift_closed(c, k, t, int(r), &m);
      for (auto& [b, p] : rel.x) EXPECT_TRUE(p.is_zero()) << rs.name(r);
      Poly g = group_monomial(rs.roots[r]);
      Poly want = Poly::var(mu_var(rs.labels[r].first, rs.labels[r].second)) * (g - Poly(CycloNum(1)));
      EXPECT_EQ(rel.group, want) << rs.name(r);
    }
  }
}

TEST(CrossCheck, AgreementAcrossTypes) {
  auto* c = ctx_new(11);
  for (auto [k, t] : {std::pair{Kind::A, 1}, {Kind::A, 2}, {Kind::A, 3}, {Kind::A, 4}, {Kind::B, 2}, {Kind::B, 3},
                      {Kind::D, 4}, {Kind::D, 5}}) {
    auto rep = cross_check(c, k, t);
    EXPECT_TRUE(rep.ok()) << kind_char(k) << t;
    for (auto& cs : rep.cases) EXPECT_TRUE(cs.ok) << kind_char(k) << t << " " << cs.detail;
  }
}

TEST(CrossCheck, PrintedThirdSumSignFailsForD) {
  LiftEngine E(ctx_new(11), Kind::D, 4);
  const RootSystem& rs = E.roots();
  auto rep = cross_check(E, ClosedVariant::Printed);
  EXPECT_FALSE(rep.ok());
  CrossCheckCase first;
  for (int r : rs.height_order()) {
    auto c = cross_check_root(E, r, ClosedVariant::Printed);
    if (!c.ok) {
      first = c;
      break;
    }
  }
  EXPECT_EQ(rs.name(first.root), "12'");
  EXPECT_NE(first.detail.find("x_(13')"), std::string::npos) << first.detail;
}

TEST(CrossCheck, PrintedSeedFactorFailsForB) {
  LiftEngine E(ctx_new(11), Kind::B, 2, SeedVariant::Printed);
  auto c = cross_check_root(E, E.roots().find(1, 4));
  EXPECT_FALSE(c.ok);
  EXPECT_NE(c.detail.find("group part"), std::string::npos);
}
