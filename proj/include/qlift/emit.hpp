#pragma once

#include <string>
#include <vector>

#include "qlift/cartan.hpp"
#include "qlift/lifting.hpp"

namespace qlift {

enum class Format { Text, Json, Latex };
Format parse_format(const std::string& s);

// c = sign * rational * (q^2-1)^{aN} (q-1)^{bN} (q+1)^{cN}, when such a form exists
struct ScalarForm {
  bool found = false;
  int sign = 1;
  mpq_class rational;
  int a = 0, b = 0, c = 0;
};
ScalarForm scalar_form(const CycloNum& x);

// B prints the parameter as q1, as in the type-B formulas
std::string scalar_text(const CycloNum& x, Kind k, Format f = Format::Text);

std::string symbol_text(int var, Kind k, int theta, Format f = Format::Text);

// "lhs = rhs" for one Q_r entry
std::string entry_text(const Poly& p, int i, int j, Kind k, int theta, Format f = Format::Text);
// entry_text of each listed position, one per line
std::string entries_text(const UnipotentMatrix& Q, const std::vector<std::pair<int, int>>& at, Kind k, int theta,
                         Format f = Format::Text);
// "x_(ij)^N = ..." in the printed sign convention of the type
std::string relation_text(const LiftRelation& rel, const RootSystem& rs, Format f = Format::Text);

struct Presentation {
  CartanDatum datum;
  MuFamily mu;
  std::vector<LiftRelation> relations;  // by height
};

Presentation presentation_build(const CartanDatum& D, const MuFamily& mu);
std::string presentation_emit(const Presentation& P, Format f);

}  // namespace qlift
