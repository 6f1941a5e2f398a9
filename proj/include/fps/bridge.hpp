#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fps/expr.hpp"
#include "fps/field.hpp"

namespace fps {

/// Convert to a rational function in the symbols of e. Subexpressions that are
/// not rational and do not involve any of `vars` become opaque constants;
/// returns nullopt if a non-rational subexpression involves one of `vars`.
std::optional<Field> to_field(const Expr& e, const std::vector<std::string>& vars = {});

/// Like to_field but throws std::invalid_argument on failure.
Field to_field_or_throw(const Expr& e, const std::vector<std::string>& vars = {});

/// Field symbol for an opaque constant expression.
Field opaque(const Expr& e);

Expr from_field(const Field& f);
Expr from_poly(const Poly& p);

/// Canonical representative modulo rational-function identities.
Expr rational_canonical(const Expr& e);
bool rationally_equal(const Expr& a, const Expr& b);

}  // namespace fps
