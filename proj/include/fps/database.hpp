#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fps/expr.hpp"
#include "fps/field.hpp"

namespace fps {

/// Second-order ODE c2 F'' + c1 F' + c0 F = 0 in the variable `u`.
struct HoloODE {
  Field c2;
  Field c1;
  Field c0;
};

/// Database ODE for head(params..., u). Params are the index arguments in
/// Field form. Returns nullopt for heads without an entry.
std::optional<HoloODE> function_ode(const std::string& head, const std::vector<Field>& params, const std::string& u);

/// Heads that are handled through the ODE database.
bool is_holonomic_head(const std::string& head);

/// Three-term recurrence in the degree index: a2 P_{n+2} + a1 P_{n+1} + a0 P_n = 0,
/// where P_n = head(n, rest..., x). `n` is the index symbol; `rest` are the
/// remaining parameters and `x` the argument, in Field form.
struct IndexRecurrence {
  Field a2;
  Field a1;
  Field a0;
};
std::optional<IndexRecurrence> index_recurrence(const std::string& head, const Field& n, const std::vector<Field>& rest,
                                                const Field& x);

/// Heads with an index recurrence (sequence database).
bool has_index_recurrence(const std::string& head);

}  // namespace fps
