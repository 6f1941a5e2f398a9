#include <map>

#include "fps/bridge.hpp"
#include "fps/series.hpp"
#include "fps/taylor.hpp"
#include "../common/partial.hpp"

namespace fps {

namespace {

/// binomial(k + l - 1, l - 1) as a polynomial in k.
Field binomial_poly(int l, const Field& k) {
  Field b(1);
  for (int t = 1; t < l; ++t) b *= (k + Field(static_cast<long>(t))) / Field(static_cast<long>(t));
  return b;
}

}  // namespace

FormalSeries rational_type_series(const Expr& f, const std::string& var, int derivative_bound) {
  Expr g = f;
  std::optional<Field> gf;
  int d = 0;
  for (;; ++d) {
    gf = to_field(g, {var});
    if (gf) break;
    if (d == derivative_bound) {
      throw NotOfImplementedType("no rational derivative up to order " + std::to_string(derivative_bound),
                                 std::nullopt, std::nullopt);
    }
    g = differentiate(g, var);
  }
  const UPoly num = UPoly::from_field(Field(gf->num()), var);
  const UPoly den = UPoly::from_field(Field(gf->den()), var);
  const auto pf = detail::partial_fractions(num, den);
  if (!pf) throw DenominatorFactorUnsupported("denominator has an irreducible factor of degree >= 3");

  std::map<long, Field> mono;  // exponent -> coefficient of g
  for (int e = 0; e <= pf->poly.degree(); ++e) {
    if (!pf->poly.coeff(e).is_zero()) mono[e] += pf->poly.coeff(e);
  }
  const Field k = Field::symbol("k");
  const Expr kx = Expr::variable("k");
  std::vector<Expr> parts;
  for (const auto& pole : pf->poles) {
    const Field& rho = pole.root;
    const int mu = static_cast<int>(pole.c.size());
    if (rho.is_zero()) {
      for (int l = 1; l <= mu; ++l) mono[-l] += pole.c[static_cast<std::size_t>(l - 1)];
      continue;
    }
    // 1/(x - rho)^l = (-1)^l rho^-l sum binomial(k+l-1, l-1) rho^-k x^k
    Field p;
    for (int l = 1; l <= mu; ++l) {
      const Field& c = pole.c[static_cast<std::size_t>(l - 1)];
      p += c * Field(l % 2 == 0 ? 1 : -1) / rho.pow(l) * binomial_poly(l, k);
    }
    if (!p.is_zero()) parts.push_back(from_field(p) * pow(from_field(Field(1) / rho), kx));
  }

  FormalSeries s;
  s.variable = var;
  s.x0 = Expr(0);
  if (!parts.empty()) {
    ClosedFormTerm t;
    t.modulus = 1;
    t.shift = d;
    std::vector<Expr> rising;
    for (int j = 1; j <= d; ++j) rising.push_back(kx + Expr(static_cast<long>(j)));
    t.coefficient = add(std::move(parts)) / mul(std::move(rising));
    s.terms.push_back(std::move(t));
  }
  for (const auto& [e, c] : mono) {
    if (c.is_zero()) continue;
    Field v = c;
    for (long j = 1; j <= d; ++j) {
      if (e + j == 0) {
        throw NotOfImplementedType("integration produces a logarithmic term", std::nullopt, std::nullopt);
      }
      v /= Field(e + j);
    }
    if (e + d < 0 || e + d >= d) s.polynomial.push_back(MonomialTerm{e + d, from_field(v)});
  }
  if (d > 0) {
    // Integration constants.
    const std::vector<Field> a = oracle_coefficients(f, var, Expr(0), 0, d);
    for (int j = 0; j < d; ++j) {
      if (!a[static_cast<std::size_t>(j)].is_zero()) s.polynomial.push_back(MonomialTerm{j, from_field(a[static_cast<std::size_t>(j)])});
    }
  }
  return s;
}

}  // namespace fps
