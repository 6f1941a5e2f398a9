#pragma once

#include <optional>
#include <vector>

#include "fps/field.hpp"

namespace fps::detail {

/// sum_l c[l-1] / (x - root)^l
struct PolePart {
  Field root;
  std::vector<Field> c;
};

struct PartialFractions {
  UPoly poly;
  std::vector<PolePart> poles;
};

/// num/den = poly + sum of pole parts, over the roots found by solve_roots.
std::optional<PartialFractions> partial_fractions(const UPoly& num, const UPoly& den);

}  // namespace fps::detail
