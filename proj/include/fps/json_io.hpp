#pragma once

#include <string>

#include "json.hpp"

#include "fps/de.hpp"
#include "fps/expr.hpp"
#include "fps/findrec.hpp"
#include "fps/gf.hpp"
#include "fps/recurrence.hpp"
#include "fps/series.hpp"

namespace fps {

using Json = nlohmann::json;

class JsonSchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// AST node {"kind": ..., ...}; symbols other than `main` are written as Parameters.
Json expr_to_json(const Expr& e, const std::string& main = "");
Expr expr_from_json(const Json& j);

/// {"type": "LinearODE", "variable", "order", "coeffs": [AST by derivative order]}
Json ode_to_json(const LinearODE& ode);
LinearODE ode_from_json(const Json& j);

/// {"type": "LinearRecurrence", "index", "coeffs": [{"shift", "poly"}], "validity"}
Json recurrence_to_json(const LinearRecurrence& re);
LinearRecurrence recurrence_from_json(const Json& j);

/// {"type": "FormalSeries", "variable", "x0", "puiseux_n", "polynomial", "terms"}
Json series_to_json(const FormalSeries& s);
FormalSeries series_from_json(const Json& j);

Json convert_to_json(const ConvertResult& r);

/// Canonical serialization: sorted keys, two-space indent, trailing newline.
std::string dump(const Json& j);

}  // namespace fps
