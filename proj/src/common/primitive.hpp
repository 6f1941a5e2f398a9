#pragma once

#include <vector>

#include "fps/field.hpp"

namespace fps::detail {

/// Scale a list of rational functions to coprime polynomials with coprime
/// integer coefficients. Zero entries stay zero. The common polynomial factor
/// is not removed when surds are present.
std::vector<Poly> primitive_polys(const std::vector<Field>& v, bool remove_common_factor = true);

}  // namespace fps::detail
