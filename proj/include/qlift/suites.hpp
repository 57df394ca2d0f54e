#pragma once

#include <chrono>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "qlift/cartan.hpp"
#include "qlift/lifting.hpp"
#include "qlift/qfunc.hpp"

namespace qlift {

// Verification suites shared by the command line and the acceptance run.

struct Check {
  std::string name;
  bool ok = true;
  std::string detail;
  std::vector<int> witness;  // e.g. (i, j, k) for a coproduct coefficient
};

struct SuiteReport {
  std::string suite;
  Kind kind = Kind::B;
  int n = 0;
  int N = 0;
  std::vector<Check> checks;
  bool budget_exhausted = false;
  std::string budget_detail;
  double seconds = 0;  // not serialized

  bool ok() const;
  const Check* first_failure() const;
  std::string json() const;  // deterministic
};

// Overrides of single coproduct coefficients c^k_ij.
struct CoeffOverrides {
  std::map<std::tuple<int, int, int>, CycloNum> value;
  std::map<std::tuple<int, int, int>, CycloNum> scale;
};
// {"coefficients": [{"i":..,"j":..,"k":.., "value": scalar | "scale": scalar}, ...]}
CoeffOverrides parse_coeff_overrides(const CycloCtx* ctx, const std::string& text);

class Deadline {
 public:
  explicit Deadline(double seconds = 0);
  bool expired() const;
  double elapsed() const;

 private:
  std::chrono::steady_clock::time_point start_;
  double limit_;
};

struct SuiteOptions {
  Kind kind = Kind::B;
  int n = 0;  // matrix size for the Borel suites, rank for crosscheck
  int N = 11;
  size_t max_terms = SIZE_MAX;
  double max_seconds = 0;  // 0: no limit
  bool fail_fast = false;
  std::vector<std::pair<int, int>> pairs;  // coproduct pairs; empty means all i <= j
  std::optional<CoeffOverrides> overrides;
  int ideal_degree = 3;
  ClosedVariant closed = ClosedVariant::Derived;
  SeedVariant seed = SeedVariant::Consistent;
};

// Delta(z_ij)^N per pair, kept for reuse by the Frobenius suite.
using DeltaCache = std::map<std::pair<int, int>, TensorPoly>;

// Budget exhaustion (time or terms) is recorded in the report, not thrown.
SuiteReport run_coproduct(const SuiteOptions& o, DeltaCache* keep = nullptr);
SuiteReport run_frobenius(const SuiteOptions& o, const DeltaCache* deltas = nullptr);
SuiteReport run_qybe(const SuiteOptions& o);
SuiteReport run_crosscheck(const SuiteOptions& o);
SuiteReport run_confluence(const SuiteOptions& o);

}  // namespace qlift
