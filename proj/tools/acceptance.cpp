// One line per acceptance criterion; exit status 0 iff all pass.
#include <cstdio>
#include <fstream>
#include <functional>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qlift/emit.hpp"
#include "qlift/ncalg.hpp"
#include "qlift/suites.hpp"

#ifndef QLIFT_TEST_DIR
#define QLIFT_TEST_DIR "tests"
#endif

using namespace qlift;
using nlohmann::json;

namespace {

// Everything is exact; only wall-clock limits are pinned.
constexpr double kCoproductSeconds = 300;
constexpr double kQybeSeconds = 60;
constexpr double kCrossCheckSeconds = 120;
constexpr int kIdealDegree = 3;

struct Line {
  bool ok = true;
  std::string detail;
  void fail(const std::string& why) {
    if (ok) detail = why;
    ok = false;
  }
};

std::string case_name(Kind k, int n, int N) { return std::string(1, kind_char(k)) + std::to_string(n) + "/N=" + std::to_string(N); }

void absorb(Line& L, const SuiteReport& r, const std::string& what, double limit = 0) {
  if (r.budget_exhausted) L.fail(what + ": budget exhausted (" + r.budget_detail + ")");
  if (const Check* c = r.first_failure()) L.fail(what + ": " + c->name + " " + c->detail);
  if (limit > 0 && r.seconds > limit) {
    char buf[96];
    std::snprintf(buf, sizeof buf, ": %.1fs over the %.0fs limit", r.seconds, limit);
    L.fail(what + buf);
  }
}

std::string read_file(const std::string& rel) {
  std::ifstream in(std::string(QLIFT_TEST_DIR) + "/" + rel);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Line coproduct(std::map<std::pair<Kind, int>, DeltaCache>& keep) {
  Line L;
  int cases = 0;
  for (auto [k, n] : {std::pair{Kind::B, 5}, {Kind::D, 4}}) {
    SuiteOptions o;
    o.kind = k;
    o.n = n;
    o.N = 11;
    auto r = run_coproduct(o, &keep[{k, n}]);
    absorb(L, r, case_name(k, n, 11), kCoproductSeconds);
    cases += int(r.checks.size());
  }
  if (L.ok) L.detail = std::to_string(cases) + " pairs (i<=j) for B5 and D4";
  return L;
}

Line frobenius(const std::map<std::pair<Kind, int>, DeltaCache>& keep) {
  Line L;
  int checks = 0;
  for (auto [k, n] : {std::pair{Kind::B, 5}, {Kind::D, 4}}) {
    SuiteOptions o;
    o.kind = k;
    o.n = n;
    o.N = 11;
    auto r = run_frobenius(o, &keep.at({k, n}));
    absorb(L, r, case_name(k, n, 11));
    checks += int(r.checks.size());
  }
  if (L.ok) L.detail = std::to_string(checks) + " checks (coalgebra map, orthogonality, determinant) for B5 and D4";
  return L;
}

Line qybe() {
  Line L;
  for (int N : {11, 13})
    for (int n : {4, 5, 7}) {
      SuiteOptions o;
      o.n = n;
      o.N = N;
      absorb(L, run_qybe(o), "n=" + std::to_string(n) + "/N=" + std::to_string(N), kQybeSeconds);
    }
  if (L.ok) L.detail = "n in {4,5,7}, N in {11,13}";
  return L;
}

const std::vector<std::pair<Kind, int>>& lift_cases() {
  static const std::vector<std::pair<Kind, int>> v{{Kind::A, 1}, {Kind::A, 2}, {Kind::A, 3}, {Kind::A, 4},
                                                   {Kind::B, 2}, {Kind::B, 3}, {Kind::D, 4}, {Kind::D, 5}};
  return v;
}

Line crosscheck() {
  Line L;
  int roots = 0;
  for (int N : {11, 13})
    for (auto [k, t] : lift_cases()) {
      SuiteOptions o;
      o.kind = k;
      o.n = t;
      o.N = N;
      auto r = run_crosscheck(o);
      absorb(L, r, case_name(k, t, N), kCrossCheckSeconds);
      roots += int(r.checks.size());
    }
  if (L.ok) L.detail = std::to_string(roots) + " root relations, A1-A4 B2-B3 D4-D5, N in {11,13}";
  return L;
}

Line goldens() {
  Line L;
  auto cmp = [&](const std::string& file, const std::string& got) {
    if (got != read_file("golden/" + file)) L.fail(file + " differs");
  };
  const CycloCtx* c = ctx_new(11);
  {
    LiftEngine E(c, Kind::B, 2);
    cmp("b2.txt", entries_text(E.Q(), {{2, 3}, {2, 4}}, Kind::B, 2) +
                      relation_text(E.closed(E.roots().find(1, 4)), E.roots()) + "\n");
  }
  cmp("b3_so7.txt", entries_text(so_complete(seed_symbols(Kind::B, 3)), {{2, 3}, {2, 4}, {2, 5}, {2, 6}, {3, 4}, {3, 5}},
                                 Kind::B, 3));
  {
    LiftEngine E(c, Kind::D, 5);
    cmp("d5.txt", entries_text(E.Q(), {{3, 5}, {3, 6}, {3, 7}, {3, 8}}, Kind::D, 5));
  }
  if (L.ok) L.detail = "b2.txt b3_so7.txt d5.txt byte-identical";
  return L;
}

int positive_roots(Kind k, int t) { return k == Kind::A ? t * (t + 1) / 2 : k == Kind::B ? t * t : t * (t - 1); }

Line dimensions() {
  Line L;
  struct Case {
    char type;
    int rank, N;
    std::vector<int64_t> orders;
  };
  std::vector<Case> cases{{'A', 1, 11, {121}},          {'A', 2, 11, {121, 121}},   {'A', 3, 13, {169, 169, 169}},
                          {'B', 2, 11, {121, 121}},     {'B', 2, 11, {11, 121}},    {'B', 3, 13, {169, 169, 13}},
                          {'D', 4, 11, {121, 121, 121, 1331}}, {'D', 5, 11, {121, 121, 121, 121, 121}}};
  for (auto& cs : cases) {
    json doc{{"type", std::string(1, cs.type)}, {"rank", cs.rank}, {"N", cs.N}, {"orders", cs.orders}, {"mu", "symbolic"}};
    DatumDoc d = parse_datum_json(doc.dump());
    json out = json::parse(presentation_emit(presentation_build(d.datum, d.mu), Format::Json));
    mpz_class want = 1;
    for (int s = 0; s < positive_roots(d.datum.rs.kind, cs.rank); ++s) want *= cs.N;
    for (auto n : cs.orders) want *= long(n);
    if (out["dimension"] != want.get_str())
      L.fail(std::string(1, cs.type) + std::to_string(cs.rank) + ": emitted " + out["dimension"].dump() + " vs " + want.get_str());
  }
  if (L.ok) L.detail = std::to_string(cases.size()) + " presentations";
  return L;
}

Line structural() {
  Line L;
  // centrality of z_ij^N
  int central = 0;
  for (auto [k, n] : {std::pair{Kind::A, 2}, {Kind::A, 3}, {Kind::A, 4}, {Kind::A, 5}, {Kind::B, 5},
                      {Kind::D, 4}}) {
    auto P = borel_presentation(ctx_new(11), k, n);
    for (int i = 1; i <= n; ++i)
      for (int j = i + 1; j <= n; ++j) {
        const NcPoly& p = zpowN(*P, i, j);
        for (int a = 0; a < P->alpha->size(); ++a) {
          NcPoly x = P->nf(NcPoly::word(Word(1, char(a)), CycloNum(P->ctx, 1)));
          if (P->mul(p, x) != P->mul(x, p))
            L.fail("z_" + std::to_string(i) + std::to_string(j) + "^N not central in " + case_name(k, n, 11));
        }
        ++central;
      }
  }
  // augmentation
  for (auto [k, t] : lift_cases()) {
    LiftEngine E(ctx_new(11), k, t);
    for (size_t r = 0; r < E.roots().size(); ++r)
      if (!augmentation(E.geometric(int(r)).group).is_zero())
        L.fail("r_" + E.roots().name(r) + " outside the augmentation ideal");
  }
  // forcing with |g_1| = N, |g_2| = N^2
  {
    const int N = 11;
    json doc{{"type", "B"}, {"rank", 2}, {"N", N}, {"orders", {N, N * N}}, {"mu", "symbolic"}};
    DatumDoc d = parse_datum_json(doc.dump());
    for (size_t r = 0; r < d.datum.rs.size(); ++r) {
      bool trivial = d.datum.rs.roots[r][1] % N == 0;
      if (d.mu.forced[r] != trivial) L.fail("forcing of mu_" + d.datum.rs.name(r));
    }
  }
  // (a+b)^N with ba = q^2 ab
  for (int N : {11, 13}) {
    const CycloCtx* c = ctx_new(N);
    auto alpha = std::make_shared<Alphabet>();
    alpha->add(Letter{1, 1, false, 1, "a"});
    alpha->add(Letter{1, 2, false, 1, "b"});
    RewriteSystem rs{TermOrder(alpha)};
    CycloNum q = CycloNum::gen(c);
    rs.add_rule(Word{char(1), char(0)}, NcPoly::word(Word{char(0), char(1)}, q * q));
    NcPoly s = NcPoly::word(Word(1, char(0)), CycloNum(c, 1)) + NcPoly::word(Word(1, char(1)), CycloNum(c, 1));
    NcPoly want = NcPoly::word(Word(N, char(0)), CycloNum(c, 1)) + NcPoly::word(Word(N, char(1)), CycloNum(c, 1));
    if (rs.power(s, N) != want) L.fail("(a+b)^N != a^N + b^N at N=" + std::to_string(N));
  }
  if (L.ok)
    L.detail = std::to_string(central) + " central powers, augmentation on " + std::to_string(lift_cases().size()) +
               " types, mixed-order forcing, q^2-binomial collapse N in {11,13}";
  return L;
}

Line confluence() {
  Line L;
  int ids = 0;
  for (auto [k, n] : {std::pair{Kind::A, 2}, {Kind::A, 3}, {Kind::A, 4}, {Kind::B, 5}, {Kind::D, 4}}) {
    SuiteOptions o;
    o.kind = k;
    o.n = n;
    o.N = 11;
    o.ideal_degree = kIdealDegree;
    auto r = run_confluence(o);
    absorb(L, r, case_name(k, n, 11));
    ids += int(r.checks.size());
  }
  if (L.ok) L.detail = std::to_string(ids) + " checks, A2-A4 B5 D4, ideal degree 3";
  return L;
}

// the printed sign of the third D-type correction sum, for the record
std::string printed_sign_note() {
  LiftEngine E(ctx_new(11), Kind::D, 4);
  for (size_t r : E.roots().height_order()) {
    auto c = cross_check_root(E, int(r), ClosedVariant::Printed);
    if (!c.ok) return "printed D third-sum sign disagrees at x_(" + E.roots().name(r) + ")^N: " + c.detail;
  }
  return "printed D third-sum sign agrees";
}

}  // namespace

int main() {
  std::map<std::pair<Kind, int>, DeltaCache> deltas;
  std::vector<std::pair<std::string, std::function<Line()>>> criteria{
      {"coproduct theorem", [&] { return coproduct(deltas); }},
      {"dual Frobenius map", [&] { return frobenius(deltas); }},
      {"Yang-Baxter", qybe},
      {"lifting cross-check", crosscheck},
      {"golden coefficients", goldens},
      {"dimension bookkeeping", dimensions},
      {"structural properties", structural},
      {"confluence", confluence},
  };
  int failed = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    Deadline clock;
    Line L;
    try {
      L = criteria[i].second();
    } catch (const std::exception& e) {
      L.fail(std::string("exception: ") + e.what());
    }
    if (!L.ok) ++failed;
    std::printf("criterion %zu %-22s %s  [%.1fs] %s\n", i + 1, criteria[i].first.c_str(), L.ok ? "PASS" : "FAIL",
                clock.elapsed(), L.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("note: %s\n", printed_sign_note().c_str());
  std::printf("%s: %d of %zu criteria failed (exact comparison, tolerance 0)\n", failed ? "FAIL" : "PASS", failed,
              criteria.size());
  return failed ? 1 : 0;
}
