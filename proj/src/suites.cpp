#include "qlift/suites.hpp"

#include <nlohmann/json.hpp>

namespace qlift {

bool SuiteReport::ok() const {
  if (budget_exhausted) return false;
  for (auto& c : checks)
    if (!c.ok) return false;
  return true;
}

const Check* SuiteReport::first_failure() const {
  for (auto& c : checks)
    if (!c.ok) return &c;
  return nullptr;
}

std::string SuiteReport::json() const {
  nlohmann::ordered_json j;
  j["suite"] = suite;
  j["type"] = std::string(1, kind_char(kind));
  j["n"] = n;
  j["N"] = N;
  j["ok"] = ok();
  j["budget_exhausted"] = budget_exhausted;
  if (budget_exhausted) j["budget_detail"] = budget_detail;
  size_t failed = 0;
  nlohmann::ordered_json cs = nlohmann::ordered_json::array();
  for (auto& c : checks) {
    nlohmann::ordered_json e;
    e["name"] = c.name;
    e["ok"] = c.ok;
    if (!c.detail.empty()) e["detail"] = c.detail;
    if (!c.witness.empty()) e["witness"] = c.witness;
    cs.push_back(e);
    failed += !c.ok;
  }
  j["checks_run"] = checks.size();
  j["checks_failed"] = failed;
  j["checks"] = cs;
  return j.dump(2);
}

CoeffOverrides parse_coeff_overrides(const CycloCtx* ctx, const std::string& text) {
  CoeffOverrides out;
  try {
    auto j = nlohmann::json::parse(text);
    for (auto& e : j.at("coefficients")) {
      auto key = std::make_tuple(e.at("i").get<int>(), e.at("j").get<int>(), e.at("k").get<int>());
      if (e.contains("value")) out.value[key] = scalar_from_json(ctx, e["value"].dump());
      else if (e.contains("scale")) out.scale[key] = scalar_from_json(ctx, e["scale"].dump());
      else throw Error("c-table: entry needs 'value' or 'scale'");
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("c-table: ") + e.what());
  }
  return out;
}

Deadline::Deadline(double seconds) : start_(std::chrono::steady_clock::now()), limit_(seconds) {}

double Deadline::elapsed() const {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
}

bool Deadline::expired() const { return limit_ > 0 && elapsed() > limit_; }

namespace {

std::string pair_tag(int i, int j) { return "(" + std::to_string(i) + "," + std::to_string(j) + ")"; }

SuiteReport start(const char* name, const SuiteOptions& o) {
  SuiteReport r;
  r.suite = name;
  r.kind = o.kind;
  r.n = o.n;
  r.N = o.N;
  return r;
}

bool out_of_time(SuiteReport& r, const Deadline& dl) {
  if (!dl.expired()) return false;
  r.budget_exhausted = true;
  r.budget_detail = "time limit reached after " + std::to_string(r.checks.size()) + " checks";
  return true;
}

}  // namespace

SuiteReport run_coproduct(const SuiteOptions& o, DeltaCache* keep) {
  Deadline dl(o.max_seconds);
  SuiteReport rep = start("coproduct", o);
  auto P = borel_presentation(ctx_new(o.N), o.kind, o.n);
  CoeffTable table = [&](int i, int j, int k) {
    auto key = std::make_tuple(i, j, k);
    if (o.overrides) {
      if (auto it = o.overrides->value.find(key); it != o.overrides->value.end()) return it->second;
      if (auto it = o.overrides->scale.find(key); it != o.overrides->scale.end())
        return coproduct_coeff(*P, i, j, k) * it->second;
    }
    return coproduct_coeff(*P, i, j, k);
  };
  std::vector<std::pair<int, int>> pairs = o.pairs;
  if (pairs.empty())
    for (int i = 1; i <= o.n; ++i)
      for (int j = i; j <= o.n; ++j) pairs.emplace_back(i, j);
  for (auto [i, j] : pairs) {
    if (i < 1 || j > o.n || i > j) throw Error("coproduct: pair " + pair_tag(i, j) + " outside 1 <= i <= j <= n");
    if (out_of_time(rep, dl)) break;
    TensorPoly d;
    try {
      d = delta_powerN(*P, i, j, o.max_terms);
    } catch (const BudgetError& e) {
      rep.budget_exhausted = true;
      rep.budget_detail = "at " + pair_tag(i, j) + ": " + e.what();
      break;
    }
    CoproductCase cc = verify_coproduct_case(*P, i, j, d, table);
    Check c{"Delta(z" + pair_tag(i, j) + ")^N", cc.ok, cc.detail, {}};
    if (!cc.ok) c.witness = {i, j, cc.witness_k};
    rep.checks.push_back(std::move(c));
    if (keep) (*keep)[{i, j}] = std::move(d);
    if (!cc.ok && o.fail_fast) break;
  }
  rep.seconds = dl.elapsed();
  return rep;
}

SuiteReport run_frobenius(const SuiteOptions& o, const DeltaCache* deltas) {
  Deadline dl(o.max_seconds);
  SuiteReport rep = start("frobenius", o);
  auto P = borel_presentation(ctx_new(o.N), o.kind, o.n);
  std::function<const TensorPoly*(int, int)> look;
  if (deltas)
    look = [deltas](int i, int j) -> const TensorPoly* {
      auto it = deltas->find({i, j});
      return it == deltas->end() ? nullptr : &it->second;
    };
  FrobeniusReport fr = verify_frobenius_theorem(*P, look);
  auto detail = [&](const char* what) {
    std::string s;
    for (auto& f : fr.failures)
      if (f.find(what) != std::string::npos) s += (s.empty() ? "" : "; ") + f;
    return s;
  };
  rep.checks.push_back({"coalgebra map", fr.coalgebra_ok, detail("co"), {}});
  if (o.kind != Kind::A) rep.checks.push_back({"orthogonality", fr.orthogonality_ok, detail("orth"), {}});
  rep.checks.push_back({"determinant", fr.determinant_ok, detail("det"), {}});
  out_of_time(rep, dl);
  rep.seconds = dl.elapsed();
  return rep;
}

SuiteReport run_qybe(const SuiteOptions& o) {
  Deadline dl(o.max_seconds);
  SuiteReport rep = start("qybe", o);
  RMatrix R = so_rmatrix(ctx_new(o.N), o.n);
  QybeResult q = qybe_check(R);
  Check c{"R12 R13 R23 = R23 R13 R12", q.ok, "", {}};
  if (!q.ok) {
    c.detail = "sides differ at basis triple";
    c.witness = {q.i, q.j, q.k};
  }
  rep.checks.push_back(std::move(c));
  out_of_time(rep, dl);
  rep.seconds = dl.elapsed();
  return rep;
}

SuiteReport run_crosscheck(const SuiteOptions& o) {
  Deadline dl(o.max_seconds);
  SuiteReport rep = start("crosscheck", o);
  LiftEngine E(ctx_new(o.N), o.kind, o.n, o.seed);
  const RootSystem& rs = E.roots();
  for (int r : rs.height_order()) {
    if (out_of_time(rep, dl)) break;
    CrossCheckCase c = cross_check_root(E, r, o.closed);
    rep.checks.push_back({"x_(" + rs.name(r) + ")^N", c.ok, c.detail, {}});
    if (!c.ok && o.fail_fast) break;
  }
  rep.seconds = dl.elapsed();
  return rep;
}

SuiteReport run_confluence(const SuiteOptions& o) {
  Deadline dl(o.max_seconds);
  SuiteReport rep = start("confluence", o);
  auto P = borel_presentation(ctx_new(o.N), o.kind, o.n);
  ConfluenceReport cr = P->rs->check_local_confluence(8);
  std::string det;
  if (!cr.ok()) det = std::to_string(cr.failures.size()) + "+ critical pairs do not resolve";
  rep.checks.push_back({"local confluence (" + std::to_string(cr.pairs_checked) + " overlaps)", cr.ok(), det, {}});
  for (auto& id : derived_identities(*P)) {
    if (out_of_time(rep, dl)) break;
    bool nf0 = P->nf(id.element).is_zero();
    bool mem = false;
    try {
      mem = ideal_member(id.element, P->relations, o.ideal_degree, P->rs->order(), &P->grading);
    } catch (const BudgetError& e) {
      rep.budget_exhausted = true;
      rep.budget_detail = id.name + ": " + e.what();
      break;
    }
    std::string d;
    if (!nf0) d = "normal form is not zero";
    else if (!mem) d = "not in the ideal at degree " + std::to_string(o.ideal_degree);
    rep.checks.push_back({id.name, nf0 && mem, d, {}});
    if (!(nf0 && mem) && o.fail_fast) break;
  }
  rep.seconds = dl.elapsed();
  return rep;
}

}  // namespace qlift
