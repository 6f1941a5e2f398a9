#include "primitive.hpp"

namespace fps::detail {

namespace {

Rational rational_gcd(const Rational& a, const Rational& b) {
  if (a == 0) return abs(b);
  if (b == 0) return abs(a);
  Integer n;
  Integer d;
  mpz_gcd(n.get_mpz_t(), a.get_num_mpz_t(), b.get_num_mpz_t());
  mpz_lcm(d.get_mpz_t(), a.get_den_mpz_t(), b.get_den_mpz_t());
  return Rational(n, d);
}

}  // namespace

std::vector<Poly> primitive_polys(const std::vector<Field>& v, bool remove_common_factor) {
  Poly l(1);
  for (const auto& c : v) {
    if (!c.is_zero() && !c.den().is_one()) l = lcm(l, c.den());
  }
  std::vector<Poly> p;
  bool surds = false;
  for (const auto& c : v) {
    p.push_back(c.is_zero() ? Poly() : c.num() * l.exact_div(c.den()));
    surds = surds || p.back().has_surds();
  }
  if (!surds && remove_common_factor) {
    Poly g;
    for (const auto& q : p) {
      if (!q.is_zero()) g = g.is_zero() ? q : gcd(g, q);
    }
    if (!g.is_zero() && !g.is_constant()) {
      for (auto& q : p) q = q.exact_div(g);
    }
  }
  Rational r;
  for (const auto& q : p) {
    if (!q.is_zero()) r = rational_gcd(r, q.rational_content());
  }
  if (r != 0 && r != 1) {
    const Rational inv = 1 / r;
    for (auto& q : p) q = q.scaled(inv);
  }
  return p;
}

}  // namespace fps::detail
