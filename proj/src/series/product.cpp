#include <map>
#include <numeric>
#include <set>

#include "fps/bridge.hpp"
#include "fps/series.hpp"

namespace fps {

namespace {

struct LinearFactors {
  std::vector<std::pair<Field, int>> roots;  // root, multiplicity
  UPoly rest;                                // monic cofactor without handled roots
};

UPoly deflate_root(const UPoly& p, const Field& r) {
  UPoly q;
  UPoly rem;
  p.divmod(UPoly({-r, Field(1)}), q, rem);
  return q;
}

/// Roots that are rational or linear in the parameters; irreducible parts stay.
LinearFactors linear_factors(const UPoly& p, const std::string& var) {
  LinearFactors out;
  UPoly rest = p.monic();
  bool rational = true;
  for (const auto& c : rest.coeffs()) rational = rational && c.is_rational();
  if (rational) {
    for (const auto& [r, m] : rational_roots(rest)) {
      out.roots.emplace_back(Field(r), m);
      for (int t = 0; t < m; ++t) rest = deflate_root(rest, Field(r));
    }
    out.rest = rest;
    return out;
  }
  for (long r : integer_roots(rest.to_field(var).num(), var)) {
    int m = 0;
    while (rest.degree() >= 1 && rest.eval(Field(r)).is_zero()) {
      rest = deflate_root(rest, Field(r));
      ++m;
    }
    out.roots.emplace_back(Field(r), m);
  }
  if (rest.degree() >= 1 && rest.degree() <= 2) {
    if (auto rs = solve_roots(rest)) {
      bool plain = true;
      for (const auto& root : *rs) plain = plain && !root.value.has_surds();
      if (plain) {
        for (const auto& root : *rs) out.roots.emplace_back(root.value, root.multiplicity);
        rest = UPoly({Field(1)});
      }
    }
  }
  out.rest = rest;
  return out;
}

/// prod_{i=lo}^{hi} (q i + a) for integer bounds with hi = lo - 1 meaning 1.
Expr boundary_product(long q, long a, const Expr& lo, long count) {
  std::vector<Expr> f;
  for (long s = 0; s < count; ++s) f.push_back(expand(Expr(q) * (lo + Expr(s)) + Expr(a)));
  return mul(std::move(f));
}

/// prod_{i=0}^{j-1} (q i + a') for 1 <= a' <= q; constant^j parts go to base^e.
Expr base_product(long q, long ap, const Expr& j, Field& base, long e) {
  if (ap == q) {
    base *= Field(Rational(q)).pow(e);
    return factorial(j);
  }
  if (q == 2) {
    base *= Field(Rational(1, 2)).pow(e);
    return factorial(Expr(2) * j) / factorial(j);
  }
  base *= Field(Rational(q)).pow(e);
  return pochhammer(Expr(Rational(ap, q)), j);
}

/// prod_{i=0}^{j-1} (q i + a) expressed through base products.
Expr shifted_product(long q, long a, const Expr& j, Field& base, long e) {
  if (q == 1 && a >= 1) return factorial(j + Expr(a - 1)) / factorial(Expr(a - 1));
  const long ap = ((a - 1) % q + q) % q + 1;
  const long t = (a - ap) / q;
  Expr p = base_product(q, ap, j, base, e);
  if (t >= 0) return p * boundary_product(q, ap, j, t) / boundary_product(q, ap, Expr(0), t);
  return p * boundary_product(q, ap, Expr(t), -t) / boundary_product(q, ap, j + Expr(t), -t);
}

}  // namespace

Expr product_closed_form(const Field& r, const std::string& i, const std::string& j) {
  const Expr jv = Expr::variable(j);
  if (r.is_zero()) throw std::invalid_argument("product of a vanishing ratio");
  const UPoly num = UPoly::from_field(Field(r.num()), i);
  const UPoly den = UPoly::from_field(Field(r.den()), i);
  Field base = num.lc() / den.lc();
  std::vector<Expr> factors;
  std::map<Rational, long> rational;  // alpha -> exponent of prod (i + alpha)
  for (int side : {1, -1}) {
    const LinearFactors lf = linear_factors(side == 1 ? num : den, i);
    for (const auto& [root, m] : lf.roots) {
      const Field alpha = -root;
      if (alpha.is_rational()) {
        rational[alpha.constant_value()] += side * m;
      } else {
        factors.push_back(pow(pochhammer(from_field(alpha), jv), Expr(static_cast<long>(side * m))));
      }
    }
    if (lf.rest.degree() >= 1) {
      const Expr body = from_field(lf.rest.eval(Field::symbol("jj") - Field(1)));
      factors.push_back(pow(product(body, "jj", Expr(1), jv), Expr(static_cast<long>(side))));
    }
  }
  long big = 1;
  for (const auto& [alpha, e] : rational) big = std::lcm(big, alpha.get_den().get_si());
  // Runs alpha0 + t/q, t < q, give (q j + a0 - 1)! / (a0 - 1)! with a0 = q alpha0.
  // A numerator run may borrow members that sit in the denominator.
  auto take_runs = [&](long q, bool borrow) {
    std::set<Rational> starts;
    for (const auto& [alpha, e] : rational) {
      for (long t = 0; t < q; ++t) starts.insert(alpha - Rational(t, q));
    }
    for (const Rational& alpha0 : starts) {
      const Rational a0r = alpha0 * q;
      if (a0r.get_den() != 1 || a0r < 1) continue;
      const long a0 = a0r.get_num().get_si();
      for (long sign : {1L, -1L}) {
        if (borrow && sign < 0) continue;
        for (;;) {
          long same = 0;
          long b = 0;
          long absent = 0;
          for (long t = 0; t < q; ++t) {
            auto it = rational.find(alpha0 + Rational(t, q));
            const long et = it == rational.end() ? 0 : it->second * sign;
            if (et > 0) {
              b = same++ == 0 ? et : std::min(b, et);
            } else if (et == 0) {
              ++absent;
            }
          }
          if (same == 0) break;
          if (same < q) {
            // Absent members enter as x / x; only worth it for longer runs.
            if (!borrow || 2 * same < q || (absent > 0 && same < 2)) break;
            b = 1;
          }
          b *= sign;
          factors.push_back(pow(factorial(Expr(q) * jv + Expr(a0 - 1)) / factorial(Expr(a0 - 1)), Expr(b)));
          base *= Field(Rational(1, q)).pow(q * b);
          for (long t = 0; t < q; ++t) rational[alpha0 + Rational(t, q)] -= b;
        }
      }
    }
  };
  for (long q = big; q > 1; --q) {
    if (big % q != 0) continue;
    take_runs(q, false);
    take_runs(q, true);
    take_runs(q, false);
  }
  // (alpha)_j / (alpha + d)_j is rational in j.
  for (auto& [alpha, e] : rational) {
    for (long d = 1; d <= 2 && e != 0; ++d) {
      for (long sgn : {1L, -1L}) {
        auto it = rational.find(alpha + Rational(sgn * d));
        if (it == rational.end() || it->second == 0 || (it->second > 0) == (e > 0)) continue;
        const long b = e > 0 ? std::min(e, -it->second) : std::max(e, -it->second);
        // prod (i + alpha)^b / (i + beta)^b with beta = alpha + sgn d
        const Rational beta = it->second < 0 ? alpha + Rational(sgn * d) : alpha;
        const Rational gamma = it->second < 0 ? alpha : alpha + Rational(sgn * d);
        const long bb = b > 0 ? b : -b;
        // (gamma)_j / (beta)_j, scaled to integer coefficients
        const Rational dq(gamma.get_den());
        std::vector<Expr> q;
        if (beta > gamma) {
          for (long t = 0; t < d; ++t) q.push_back(Expr(dq * (gamma + Rational(t))) / (Expr(dq) * jv + Expr(dq * (gamma + Rational(t)))));
        } else {
          for (long t = 1; t <= d; ++t) q.push_back((Expr(dq) * jv + Expr(dq * (gamma - Rational(t)))) / Expr(dq * (gamma - Rational(t))));
        }
        factors.push_back(pow(mul(std::move(q)), Expr(bb)));
        e -= b;
        it->second += b;
      }
    }
  }
  for (const auto& [alpha, e] : rational) {
    if (e == 0) continue;
    const long q = alpha.get_den().get_si();
    // prod (i + a/q) = q^-j prod (q i + a)
    base *= Field(Rational(1, q)).pow(e);
    factors.push_back(pow(shifted_product(q, alpha.get_num().get_si(), jv, base, e), Expr(e)));
  }
  factors.push_back(pow(from_field(base), jv));
  return mul(std::move(factors));
}

}  // namespace fps
