// qlift: emit lifting presentations and run the verification suites.
//
// Exit codes: 0 ok, 1 a check failed, 2 bad input, 3 budget exhausted.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "qlift/emit.hpp"
#include "qlift/suites.hpp"

namespace {

using namespace qlift;

constexpr int kOk = 0, kFailed = 1, kInput = 2, kBudget = 3;

struct Args {
  std::string type = "B";
  int rank = 0;
  int n = 0;
  int N = 0;
  std::vector<int64_t> orders;
  std::string lattice;
  std::string mu = "symbolic";
  std::string datum;
  std::string format = "text";
  size_t max_terms = 0;
  double max_seconds = 0;
  std::string out;
  // verify
  std::string suite;
  std::string ctable;
  std::string pairs;
  bool fail_fast = false;
  int degree = 3;
  std::string closed = "derived";
  std::string seed = "consistent";
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_out(const Args& a, const std::string& text) {
  if (a.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(a.out, std::ios::binary);
  if (!f) throw Error("cannot write " + a.out);
  f << text;
}

void check_budgets(const Args& a, CLI::App& app) {
  if (app.count("--max-terms") && a.max_terms == 0) throw Error("--max-terms must be positive");
  if (app.count("--max-seconds") && !(a.max_seconds > 0)) throw Error("--max-seconds must be positive");
}

// The datum document assembled from the flags, or read from --datum / a full --mu document.
DatumDoc load_datum(const Args& a, CLI::App& app) {
  nlohmann::json doc;
  if (!a.datum.empty()) doc = nlohmann::json::parse(slurp(a.datum), nullptr, false);
  nlohmann::json mu;
  if (a.mu == "symbolic" || a.mu == "zero") {
    mu = a.mu;
  } else {
    mu = nlohmann::json::parse(slurp(a.mu), nullptr, false);
    if (mu.is_discarded()) throw Error("--mu: " + a.mu + " is not valid JSON");
    if (mu.is_object() && (mu.contains("type") || mu.contains("kind"))) {
      doc = mu;
      mu = doc.value("mu", nlohmann::json("symbolic"));
    }
  }
  if (doc.is_discarded()) throw Error("--datum: " + a.datum + " is not valid JSON");
  if (doc.is_null()) doc = nlohmann::json::object();
  if (app.count("--type") || !doc.contains("type")) doc["type"] = a.type;
  if (app.count("--rank")) doc["rank"] = a.rank;
  if (app.count("--N")) doc["N"] = a.N;
  if (!a.orders.empty()) doc["orders"] = a.orders;
  if (!a.lattice.empty()) doc["lattice"] = a.lattice;
  if (app.count("--mu") || !doc.contains("mu")) doc["mu"] = mu;
  if (!doc.contains("rank")) throw Error("--rank is required");
  if (!doc.contains("N")) throw Error("--N is required");
  if (doc.contains("kind")) doc.erase("kind");
  return parse_datum_json(doc.dump());
}

int cmd_lift(const Args& a, CLI::App& app) {
  check_budgets(a, app);
  Format f = parse_format(a.format);
  DatumDoc d = load_datum(a, app);
  Presentation P = presentation_build(d.datum, d.mu);
  write_out(a, presentation_emit(P, f));
  return kOk;
}

std::vector<std::pair<int, int>> parse_pairs(const std::string& s) {
  std::vector<std::pair<int, int>> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ';')) {
    int i = 0, j = 0;
    char comma = 0;
    std::stringstream is(item);
    if (!(is >> i >> comma >> j) || comma != ',') throw Error("--pairs: expected i,j;i,j;... got '" + item + "'");
    out.emplace_back(i, j);
  }
  return out;
}

// matrix size and rank from whichever of --n / --rank was given
void resolve_sizes(Kind k, const Args& a, CLI::App& app, int& n, int& theta) {
  if (app.count("--n")) {
    n = a.n;
    if (k == Kind::A) theta = n - 1;
    else if (k == Kind::B) theta = (n - 1) / 2;
    else theta = n / 2;
    if (n < 2 || ambient_n(k, theta) != n)
      throw Error(std::string("--n ") + std::to_string(n) + " does not fit type " + kind_char(k));
  } else if (app.count("--rank")) {
    theta = a.rank;
    n = ambient_n(k, theta);
  } else {
    throw Error("one of --n or --rank is required");
  }
}

void print_summary(const SuiteReport& r) {
  for (auto& c : r.checks)
    if (!c.ok) {
      std::cerr << r.suite << ": FAILED " << c.name;
      if (!c.witness.empty()) {
        std::cerr << " witness (";
        for (size_t s = 0; s < c.witness.size(); ++s) std::cerr << (s ? "," : "") << c.witness[s];
        std::cerr << ")";
      }
      if (!c.detail.empty()) std::cerr << ": " << c.detail;
      std::cerr << "\n";
    }
  if (r.budget_exhausted) std::cerr << r.suite << ": budget exhausted, " << r.budget_detail << "\n";
}

int status_of(const std::vector<SuiteReport>& rs) {
  bool budget = false;
  for (auto& r : rs) {
    if (r.first_failure()) return kFailed;
    budget |= r.budget_exhausted;
  }
  return budget ? kBudget : kOk;
}

std::string render(const std::vector<SuiteReport>& rs, const std::string& format, bool all) {
  if (format == "text") {
    std::string s;
    for (auto& r : rs) {
      for (auto& c : r.checks) s += r.suite + " " + (c.ok ? "PASS " : "FAIL ") + c.name + "\n";
      if (r.budget_exhausted) s += r.suite + " BUDGET " + r.budget_detail + "\n";
    }
    return s;
  }
  if (format != "json") throw Error("verify: --format must be text or json");
  if (!all) return rs.front().json() + "\n";
  nlohmann::ordered_json j;
  j["suite"] = "all";
  j["ok"] = status_of(rs) == kOk;
  j["reports"] = nlohmann::ordered_json::array();
  for (auto& r : rs) j["reports"].push_back(nlohmann::ordered_json::parse(r.json()));
  return j.dump(2) + "\n";
}

int cmd_verify(const Args& a, CLI::App& app) {
  check_budgets(a, app);
  if (!app.count("--N")) throw Error("--N is required");
  SuiteOptions o;
  o.kind = parse_kind(a.type);
  o.N = a.N;
  if (a.max_terms) o.max_terms = a.max_terms;
  o.max_seconds = a.max_seconds;
  o.fail_fast = a.fail_fast;
  o.ideal_degree = a.degree;
  if (a.closed == "printed") o.closed = ClosedVariant::Printed;
  else if (a.closed != "derived") throw Error("--closed must be derived or printed");
  if (a.seed == "printed") o.seed = SeedVariant::Printed;
  else if (a.seed != "consistent") throw Error("--seed must be consistent or printed");
  if (!a.pairs.empty()) o.pairs = parse_pairs(a.pairs);
  if (!a.ctable.empty()) o.overrides = parse_coeff_overrides(ctx_new(a.N), slurp(a.ctable));

  const std::string& s = a.suite;
  int n = 0, theta = 0;
  if (s == "qybe") {
    if (!app.count("--n")) throw Error("qybe needs --n");
    n = a.n;
    if (n < 2) throw Error("--n must be at least 2");
  } else {
    resolve_sizes(o.kind, a, app, n, theta);
  }
  auto borel = [&] {
    SuiteOptions b = o;
    b.n = n;
    return b;
  };
  auto lift = [&] {
    SuiteOptions b = o;
    b.n = theta;
    return b;
  };
  std::vector<SuiteReport> reps;
  if (s == "coproduct") reps.push_back(run_coproduct(borel()));
  else if (s == "frobenius") reps.push_back(run_frobenius(borel()));
  else if (s == "qybe") reps.push_back(run_qybe(borel()));
  else if (s == "crosscheck") reps.push_back(run_crosscheck(lift()));
  else if (s == "confluence") reps.push_back(run_confluence(borel()));
  else {
    // all: one deadline split across suites in order
    Deadline dl(o.max_seconds);
    auto remaining = [&](SuiteOptions b) {
      if (o.max_seconds > 0) b.max_seconds = std::max(1e-3, o.max_seconds - dl.elapsed());
      return b;
    };
    DeltaCache deltas;
    reps.push_back(run_coproduct(remaining(borel()), &deltas));
    reps.push_back(run_frobenius(remaining(borel()), &deltas));
    if (o.kind != Kind::A) reps.push_back(run_qybe(remaining(borel())));
    reps.push_back(run_crosscheck(remaining(lift())));
    reps.push_back(run_confluence(remaining(borel())));
  }
  for (auto& r : reps) print_summary(r);
  write_out(a, render(reps, app.count("--format") ? a.format : "json", s == "all"));
  return status_of(reps);
}

void common_flags(CLI::App* c, Args& a) {
  c->add_option("--type", a.type, "root system type")->check(CLI::IsMember({"A", "B", "D"}));
  c->add_option("--rank", a.rank, "rank theta")->check(CLI::PositiveNumber);
  c->add_option("--N", a.N, "order of q");
  c->add_option("--max-terms", a.max_terms, "term budget for tensor powers");
  c->add_option("--max-seconds", a.max_seconds, "wall-clock budget");
  c->add_option("--out", a.out, "output file (default stdout)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qlift: lifting presentations and verification suites"};
  app.require_subcommand(1);
  Args a;

  CLI::App* lift = app.add_subcommand("lift", "emit the presentation of a lifting");
  common_flags(lift, a);
  lift->add_option("--orders", a.orders, "orders n_i of the group generators")->delimiter(',');
  lift->add_option("--lattice", a.lattice, "root or weight")->check(CLI::IsMember({"root", "weight"}));
  lift->add_option("--mu", a.mu, "symbolic, zero or a JSON file of mu values (or a full datum document)");
  lift->add_option("--datum", a.datum, "JSON datum document");
  lift->add_option("--format", a.format, "text, json or latex")->check(CLI::IsMember({"text", "json", "latex"}));

  CLI::App* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("suite", a.suite, "coproduct, frobenius, qybe, crosscheck, confluence or all")
      ->required()
      ->check(CLI::IsMember({"coproduct", "frobenius", "qybe", "crosscheck", "confluence", "all"}));
  common_flags(verify, a);
  verify->add_option("--n", a.n, "matrix size");
  verify->add_option("--format", a.format, "json or text")->check(CLI::IsMember({"text", "json"}));
  verify->add_option("--c-table", a.ctable, "JSON overrides of coproduct coefficients");
  verify->add_option("--pairs", a.pairs, "coproduct pairs as i,j;i,j");
  verify->add_flag("--fail-fast", a.fail_fast, "stop at the first failed check");
  verify->add_option("--degree", a.degree, "degree bound for ideal membership")->check(CLI::PositiveNumber);
  verify->add_option("--closed", a.closed, "closed formulas: derived or printed");
  verify->add_option("--seed", a.seed, "B seed factor: consistent or printed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInput;
  }

  try {
    if (*lift) return cmd_lift(a, *lift);
    return cmd_verify(a, *verify);
  } catch (const BudgetError& e) {
    std::cerr << "qlift: budget exhausted: " << e.what() << "\n";
    return kBudget;
  } catch (const Error& e) {
    std::cerr << "qlift: " << e.what() << "\n";
    return kInput;
  } catch (const std::exception& e) {
    std::cerr << "qlift: " << e.what() << "\n";
    return kInput;
  }
}
