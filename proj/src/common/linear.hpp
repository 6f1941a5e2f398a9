#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fps/field.hpp"

namespace fps::detail {

/// Solve the augmented system [M | rhs] (rhs in column `cols`) by Gaussian
/// elimination; free unknowns are set to 0. nullopt if inconsistent.
std::optional<std::vector<Field>> solve_linear(std::vector<std::vector<Field>> m, std::size_t cols);

/// A nonzero solution of M x = 0 (M has `cols` columns) with the last free
/// unknown set to 1 and the other free unknowns 0; nullopt if M is injective.
std::optional<std::vector<Field>> kernel_vector(std::vector<std::vector<Field>> m, std::size_t cols);

/// One solution per free unknown (set to 1, the other free unknowns 0).
std::vector<std::vector<Field>> kernel_basis(std::vector<std::vector<Field>> m, std::size_t cols);

/// Rows expressing sum_i u_i cols[i] = 0 identically in `var`: the
/// coefficients of var^p after clearing the common denominator.
std::vector<std::vector<Field>> identity_rows(const std::vector<Field>& cols, const std::string& var);

}  // namespace fps::detail
