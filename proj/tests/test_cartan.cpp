#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "qlift/cartan.hpp"

using namespace qlift;

namespace {

std::set<std::vector<int>> reflection_roots(const IntMat& C) {
  // closes the simple roots under s_i(b) = b - <b, a_i^v> a_i, keeping positives
  int t = int(C.size());
  std::set<std::vector<int>> seen, todo;
  for (int i = 0; i < t; ++i) {
    std::vector<int> e(t, 0);
    e[i] = 1;
    todo.insert(e);
  }
  while (!todo.empty()) {
    auto b = *todo.begin();
    todo.erase(todo.begin());
    if (!seen.insert(b).second) continue;
    for (int i = 0; i < t; ++i) {
      int p = 0;
      for (int j = 0; j < t; ++j) p += int(C[i][j]) * b[j];
      auto s = b;
      s[i] -= p;
      if (std::all_of(s.begin(), s.end(), [](int x) { return x >= 0; }) &&
          std::any_of(s.begin(), s.end(), [](int x) { return x > 0; }) && !seen.count(s))
        todo.insert(s);
    }
  }
  return seen;
}

std::vector<std::string> names(const RootSystem& rs) {
  std::vector<std::string> out;
  for (size_t r = 0; r < rs.size(); ++r) out.push_back(rs.name(r));
  return out;
}

CartanDatum dj_datum(Kind k, int theta, int N, std::vector<int64_t> orders = {},
                     LatticeChoice lc = LatticeChoice::Root) {
  auto* c = ctx_new(N);
  RootSystem rs = root_system(k, theta);
  if (orders.empty()) orders.assign(theta, int64_t(N) * N);
  return datum_build(rs, lattice_data(rs, lc), c, orders, dj_braiding(c, rs));
}

}  // namespace

TEST(RootSystem, CountsAndReflectionOracle) {
  for (int t = 1; t <= 5; ++t) {
    auto rs = root_system(Kind::A, t);
    EXPECT_EQ(int(rs.size()), t * (t + 1) / 2);
    EXPECT_EQ(reflection_roots(rs.cartan), std::set<std::vector<int>>(rs.roots.begin(), rs.roots.end()));
  }
  for (int t = 2; t <= 5; ++t) {
    auto rs = root_system(Kind::B, t);
    EXPECT_EQ(int(rs.size()), t * t);
    EXPECT_EQ(reflection_roots(rs.cartan), std::set<std::vector<int>>(rs.roots.begin(), rs.roots.end()));
    EXPECT_EQ(rs.n, 2 * t + 1);
  }
  for (int t = 4; t <= 6; ++t) {
    auto rs = root_system(Kind::D, t);
    EXPECT_EQ(int(rs.size()), t * (t - 1));
    EXPECT_EQ(reflection_roots(rs.cartan), std::set<std::vector<int>>(rs.roots.begin(), rs.roots.end()));
  }
}

TEST(RootSystem, SymmetrizerMakesDCSymmetric) {
  for (auto [k, t] : {std::pair{Kind::A, 4}, {Kind::B, 4}, {Kind::D, 5}}) {
    auto rs = root_system(k, t);
    for (int i = 0; i < t; ++i)
      for (int j = 0; j < t; ++j) EXPECT_EQ(rs.d[i] * rs.cartan[i][j], rs.d[j] * rs.cartan[j][i]);
  }
}

TEST(RootSystem, RankTwoExamples) {
  auto a2 = root_system(Kind::A, 2);
  EXPECT_EQ(a2.size(), 3u);
  EXPECT_GE(a2.find_root({1, 1}), 0);

  auto b2 = root_system(Kind::B, 2);
  EXPECT_EQ(names(b2), (std::vector<std::string>{"12", "13", "12'", "23"}));
  std::vector<std::string> by_height;
  for (size_t r : b2.height_order()) by_height.push_back(b2.name(r));
  EXPECT_EQ(by_height, (std::vector<std::string>{"12", "23", "13", "12'"}));
  EXPECT_EQ(b2.roots[b2.find(1, 4)], (std::vector<int>{1, 2}));
  EXPECT_EQ(b2.height(b2.find(1, 4)), 3);
}

TEST(RootSystem, D5Labels) {
  auto d5 = root_system(Kind::D, 5);
  int r = d5.find(1, 8);
  ASSERT_GE(r, 0);
  EXPECT_EQ(d5.name(r), "13'");
  EXPECT_EQ(d5.roots[r], (std::vector<int>{1, 1, 2, 1, 1}));
  EXPECT_EQ(d5.name(d5.find(4, 6)), "45'");
  EXPECT_EQ(d5.name(d5.find(4, 5)), "45");
}

TEST(RootSystem, HeightOrderIsMonotone) {
  auto rs = root_system(Kind::B, 4);
  auto h = rs.height_order();
  for (size_t s = 1; s < h.size(); ++s) EXPECT_LE(rs.height(h[s - 1]), rs.height(h[s]));
}

TEST(RootSystem, RejectsSmallRanks) {
  EXPECT_THROW(root_system(Kind::B, 1), Error);
  EXPECT_THROW(root_system(Kind::A, 0), Error);
}

TEST(Lattice, WeightAndRootChoices) {
  auto a2 = root_system(Kind::A, 2);
  auto w = lattice_data(a2, LatticeChoice::Weight);
  EXPECT_EQ(w.CM, a2.cartan);
  EXPECT_EQ(w.CbarM, (IntMat{{1, 0}, {0, 1}}));
  EXPECT_EQ(w.det_CM, 3);
  ASSERT_EQ(w.omega_e.size(), 2u);
  EXPECT_EQ(w.omega_e[0], (std::vector<mpq_class>{mpq_class(2, 3), mpq_class(-1, 3), mpq_class(-1, 3)}));
  EXPECT_EQ(w.omega_e[1], (std::vector<mpq_class>{mpq_class(1, 3), mpq_class(1, 3), mpq_class(-2, 3)}));

  auto b2 = root_system(Kind::B, 2);
  auto r = lattice_data(b2, LatticeChoice::Root);
  EXPECT_EQ(r.CM, (IntMat{{1, 0}, {0, 1}}));
  EXPECT_EQ(r.CbarM, b2.cartan);
  EXPECT_EQ(r.det_CM, 1);
}

TEST(Datum, DrinfeldJimboIsValid) {
  auto D = dj_datum(Kind::B, 2, 11);
  EXPECT_EQ(D.qexp, (IntMat{{4, 9}, {9, 2}}));
  EXPECT_EQ(D.ell, (std::vector<int64_t>{11, 11}));
}

TEST(Datum, CartanViolationNamesThePair) {
  auto* c = ctx_new(11);
  auto rs = root_system(Kind::B, 2);
  QMat q = dj_braiding(c, rs);
  q[0][1] = qpow(c, 1);
  try {
    datum_build(rs, lattice_data(rs, LatticeChoice::Root), c, {121, 121}, q);
    FAIL() << "accepted a broken braiding";
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("(1,2)"), std::string::npos) << e.what();
  }
}

TEST(Datum, OrderChecks) {
  auto* c = ctx_new(11);
  auto rs = root_system(Kind::A, 2);
  auto lat = lattice_data(rs, LatticeChoice::Root);
  EXPECT_THROW(datum_build(rs, lat, c, {121, 12}, dj_braiding(c, rs)), Error);
  EXPECT_THROW(datum_build(rs, lat, c, {121}, dj_braiding(c, rs)), Error);
  QMat q = dj_braiding(c, rs);
  q[0][0] = CycloNum(c, 1);  // order 1
  q[0][1] = CycloNum(c, 1);
  q[1][0] = CycloNum(c, 1);
  EXPECT_THROW(datum_build(rs, lat, c, {121, 121}, q), Error);
}

TEST(Datum, TwistedA2Braiding) {
  // q12 = q*z, q21 = q^-2/z with z = q^3: q12 q21 = q^-1 = q11^a12
  auto* c = ctx_new(11);
  auto rs = root_system(Kind::A, 2);
  CycloNum q = CycloNum::gen(c), z = qpow(c, 3);
  QMat m{{q, q * z}, {q.pow(-2) / z, q}};
  EXPECT_EQ(m[0][1] * m[1][0], m[0][0].pow(-1));
  auto lat = lattice_data(rs, LatticeChoice::Root);
  CartanDatum D = datum_build(rs, lat, c, {121, 121}, m);
  // with the root lattice the multiparameter is the braiding itself
  MultiParam M = multiparam_qM(D, lat);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) EXPECT_EQ(M.value[i][j], m[i][j]);
  EXPECT_TRUE(lemma_chi_check(D, lat).ok);
}

TEST(Datum, CanonicalMultiparameters) {
  for (auto [k, t] : {std::pair{Kind::A, 3}, {Kind::B, 3}, {Kind::D, 4}}) {
    auto* c = ctx_new(13);
    auto rs = root_system(k, t);
    for (auto lc : {LatticeChoice::Root, LatticeChoice::Weight}) {
      auto lat = lattice_data(rs, lc);
      if (std::gcd<int64_t>(lat.det_CM, 13) != 1) continue;
      CartanDatum D = datum_build(rs, lat, c, std::vector<int64_t>(t, 169), dj_braiding(c, rs));
      MultiParam M = multiparam_qM(D, lat);
      for (int i = 0; i < t; ++i)
        for (int j = 0; j < t; ++j) {
          int64_t want = lc == LatticeChoice::Root ? rs.d[i] * rs.cartan[i][j] : (i == j ? rs.d[i] : 0);
          EXPECT_EQ(M.value[i][j], qpow(c, want)) << kind_char(k) << t << " " << i << j;
        }
      EXPECT_TRUE(lemma_chi_check(D, lat).ok);
    }
  }
}

TEST(Datum, ChiCheckCatchesZeroedTable) {
  auto D = dj_datum(Kind::B, 2, 11);
  for (auto& row : D.chi)
    for (auto& x : row) x = CycloNum(D.ctx, 0);
  auto rep = lemma_chi_check(D, D.lat);
  EXPECT_FALSE(rep.ok);
  EXPECT_EQ(rep.failures.size(), 4u);
}

TEST(Datum, ChosenRootsMustBeRoots) {
  auto* c = ctx_new(11);
  auto rs = root_system(Kind::A, 2);
  auto lat = lattice_data(rs, LatticeChoice::Weight);
  IntMat bad{{1, 0}, {0, 1}};
  EXPECT_THROW(datum_build(rs, lat, c, {121, 121}, dj_braiding(c, rs), &bad), Error);
  // the default root q^{e/3} is e * 3^{-1} mod 11 = 4e
  CartanDatum D = datum_build(rs, lat, c, {121, 121}, dj_braiding(c, rs));
  EXPECT_EQ(D.rootexp[0][0], (2 * 4) % 11);
}

TEST(Mu, AllEllOneForcesEverything) {
  auto D = dj_datum(Kind::B, 3, 11, {11, 11, 11});
  auto m = mu_validate(D, mu_symbolic(D.rs));
  for (size_t r = 0; r < D.rs.size(); ++r) {
    EXPECT_TRUE(m.forced[r]);
    EXPECT_FALSE(m.mu[r].symbolic);
    EXPECT_TRUE(m.mu[r].value.is_zero());
  }
}

TEST(Mu, EllNForcesNothing) {
  for (auto [k, t] : {std::pair{Kind::A, 3}, {Kind::B, 3}, {Kind::D, 4}}) {
    auto D = dj_datum(k, t, 11);
    auto m = mu_validate(D, mu_symbolic(D.rs));
    for (size_t r = 0; r < D.rs.size(); ++r) EXPECT_FALSE(m.forced[r]) << D.rs.name(r);
  }
}

TEST(Mu, MixedOrdersForceExactlyTrivialPowers) {
  const int N = 11;
  auto D = dj_datum(Kind::B, 2, N, {N, N * N});
  auto m = mu_validate(D, mu_symbolic(D.rs));
  for (size_t r = 0; r < D.rs.size(); ++r) {
    // g_alpha = g1^c1 g2^c2 with |g1| = N, |g2| = N^2: g_alpha^N = 1 iff N | c2
    bool trivial = D.rs.roots[r][1] % N == 0;
    EXPECT_EQ(m.forced[r], trivial) << D.rs.name(r);
  }
  EXPECT_TRUE(m.forced[D.rs.find(1, 2)]);
  EXPECT_FALSE(m.forced[D.rs.find(1, 4)]);
}

TEST(Mu, GroupElementsFollowTheLattice) {
  auto D = dj_datum(Kind::A, 2, 11, {121, 121}, LatticeChoice::Weight);
  // alpha_1 = 2 w1 - w2
  EXPECT_EQ(group_element(D, {1, 0}), (std::vector<int64_t>{2, 121 - 1}));
  EXPECT_EQ(group_element(D, {1, 1}), (std::vector<int64_t>{1, 1}));
}

TEST(Dimension, MatchesIndependentArithmetic) {
  struct Case {
    Kind k;
    int t, N;
    std::vector<int64_t> orders;
  };
  for (auto& cs : std::vector<Case>{{Kind::B, 2, 11, {121, 121}},
                                    {Kind::B, 2, 11, {11, 121}},
                                    {Kind::A, 3, 13, {169, 169, 169}},
                                    {Kind::D, 4, 11, {121, 121, 121, 1331}}}) {
    auto D = dj_datum(cs.k, cs.t, cs.N, cs.orders);
    mpz_class want = 1;
    int pos = cs.k == Kind::A ? cs.t * (cs.t + 1) / 2 : cs.k == Kind::B ? cs.t * cs.t : cs.t * (cs.t - 1);
    for (int s = 0; s < pos; ++s) want *= cs.N;
    for (auto n : cs.orders) want *= long(n);
    EXPECT_EQ(dimension(D), want);
  }
  EXPECT_EQ(dimension(dj_datum(Kind::B, 2, 11)).get_str(), "214358881");
}

TEST(DatumJson, RoundTrip) {
  auto D = dj_datum(Kind::B, 2, 11, {11, 121});
  auto mu = mu_validate(D, mu_symbolic(D.rs));
  mu.mu[D.rs.find(2, 3)] = MuEntry{false, CycloNum::gen(D.ctx)};
  std::string text = datum_json(D, mu);
  DatumDoc back = parse_datum_json(text);
  EXPECT_EQ(back.datum.qexp, D.qexp);
  EXPECT_EQ(back.datum.orders, D.orders);
  EXPECT_EQ(datum_json(back.datum, back.mu), text);
  EXPECT_TRUE(back.mu.forced[D.rs.find(1, 2)]);
}

TEST(DatumJson, Errors) {
  EXPECT_THROW(parse_datum_json("{"), Error);
  EXPECT_THROW(parse_datum_json(R"({"type":"B","rank":2,"N":9})"), Error);
  EXPECT_THROW(parse_datum_json(R"({"type":"B","rank":2,"N":11,"mu":{"99":1}})"), Error);
  EXPECT_THROW(parse_datum_json(R"({"type":"B","rank":2,"N":11,"lattice":"other"})"), Error);
  EXPECT_THROW(parse_datum_json(R"({"type":"E","rank":6,"N":11})"), Error);
  EXPECT_NO_THROW(parse_datum_json(R"({"kind":"D","rank":4,"N":11,"braiding":"DJ"})"));
}
