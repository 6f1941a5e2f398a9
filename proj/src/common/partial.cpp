#include "partial.hpp"

namespace fps::detail {

namespace {

/// First `count` coefficients of num/den as a power series at 0.
std::vector<Field> series_quotient(const UPoly& num, const UPoly& den, int count) {
  std::vector<Field> h;
  const Field d0 = den.coeff(0);
  for (int t = 0; t < count; ++t) {
    Field v = num.coeff(t);
    for (int s = 1; s <= t; ++s) v -= den.coeff(s) * h[static_cast<std::size_t>(t - s)];
    h.push_back(v / d0);
  }
  return h;
}

}  // namespace

std::optional<PartialFractions> partial_fractions(const UPoly& num, const UPoly& den) {
  PartialFractions out;
  UPoly rem;
  num.divmod(den, out.poly, rem);
  if (den.degree() < 1) return out;
  const auto roots = solve_roots(den);
  if (!roots) return std::nullopt;
  for (const auto& root : *roots) {
    const int mu = root.multiplicity;
    UPoly rest = den;
    for (int t = 0; t < mu; ++t) {
      UPoly q;
      UPoly r;
      rest.divmod(UPoly({-root.value, Field(1)}), q, r);
      rest = q;
    }
    const std::vector<Field> h = series_quotient(rem.taylor_shift(root.value), rest.taylor_shift(root.value), mu);
    PolePart p{root.value, {}};
    for (int l = 1; l <= mu; ++l) p.c.push_back(h[static_cast<std::size_t>(mu - l)]);
    out.poles.push_back(std::move(p));
  }
  return out;
}

}  // namespace fps::detail
