#include "fps/database.hpp"

namespace fps {

bool is_holonomic_head(const std::string& head) {
  return head == "airy_ai" || head == "laguerre" || head == "chebyshev_t" || head == "chebyshev_u" ||
         head == "legendre_p" || head == "hermite_h" || head == "bessel_j" || head == "bessel_i" ||
         head == "bessel_y";
}

std::optional<HoloODE> function_ode(const std::string& head, const std::vector<Field>& p, const std::string& var) {
  const Field u = Field::symbol(var);
  const Field one(1);
  if (head == "airy_ai") return HoloODE{one, Field(), -u};
  if (head == "laguerre" && p.size() == 2) return HoloODE{u, p[1] + one - u, p[0]};
  if (head == "chebyshev_t" && p.size() == 1) return HoloODE{one - u * u, -u, p[0] * p[0]};
  if (head == "chebyshev_u" && p.size() == 1) return HoloODE{one - u * u, Field(-3) * u, p[0] * (p[0] + Field(2))};
  if (head == "legendre_p" && p.size() == 1) return HoloODE{one - u * u, Field(-2) * u, p[0] * (p[0] + one)};
  if (head == "hermite_h" && p.size() == 1) return HoloODE{one, Field(-2) * u, Field(2) * p[0]};
  if ((head == "bessel_j" || head == "bessel_y") && p.size() == 1) return HoloODE{u * u, u, u * u - p[0] * p[0]};
  if (head == "bessel_i" && p.size() == 1) return HoloODE{u * u, u, -(u * u) - p[0] * p[0]};
  return std::nullopt;
}

bool has_index_recurrence(const std::string& head) {
  return head == "laguerre" || head == "chebyshev_t" || head == "chebyshev_u" || head == "legendre_p" ||
         head == "hermite_h" || head == "bessel_j" || head == "bessel_i";
}

std::optional<IndexRecurrence> index_recurrence(const std::string& head, const Field& n, const std::vector<Field>& rest,
                                                const Field& x) {
  const Field one(1);
  const Field two(2);
  if (head == "laguerre" && rest.size() == 1) {
    const Field& a = rest[0];
    return IndexRecurrence{n + two, -(two * n + Field(3) + a - x), n + one + a};
  }
  if (head == "chebyshev_t" || head == "chebyshev_u") return IndexRecurrence{one, -(two * x), one};
  if (head == "legendre_p") return IndexRecurrence{n + two, -((two * n + Field(3)) * x), n + one};
  if (head == "hermite_h") return IndexRecurrence{one, -(two * x), two * (n + one)};
  // Bessel recurrences in the order: x J_{n+2} - 2(n+1) J_{n+1} + x J_n = 0.
  if (head == "bessel_j") return IndexRecurrence{x, -(two * (n + one)), x};
  if (head == "bessel_i") return IndexRecurrence{x, two * (n + one), -x};
  return std::nullopt;
}

}  // namespace fps
