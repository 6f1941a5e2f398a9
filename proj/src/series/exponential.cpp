#include "fps/bridge.hpp"
#include "fps/series.hpp"
#include "fps/taylor.hpp"
#include "../common/linear.hpp"

namespace fps {

namespace {

const std::string kImag = "$-1";

/// z = re + i im for z with the imaginary unit in the numerator only.
std::pair<Field, Field> split_complex(const Field& z) {
  const std::vector<Poly> c = z.num().coefficients_in(kImag);
  const Field re = c.empty() ? Field() : Field(c[0], z.den());
  const Field im = c.size() < 2 ? Field() : Field(c[1], z.den());
  return {re, im};
}

/// theta/pi for cos(theta) = c, sin(theta) = s, from the denominators 1..12.
std::optional<Rational> recognize_angle(const Field& c, const Field& s) {
  for (long den = 1; den <= 12; ++den) {
    for (long num = 0; num < 2 * den; ++num) {
      const Rational q(num, den);
      if (q.get_den() != den) continue;
      const auto ce = cos_rational_pi(q);
      const auto se = sin_rational_pi(q);
      if (!ce || !se) continue;
      const auto cq = to_field(*ce);
      const auto sq = to_field(*se);
      if (cq && sq && *cq == c && *sq == s) return q;
    }
  }
  return std::nullopt;
}

}  // namespace

FormalSeries exponential_type_series(const Expr& f, const std::string& var, const SeriesOptions& opts) {
  DEOptions de_opts;
  de_opts.max_order = opts.max_de_order;
  de_opts.degree_guard = opts.degree_guard;
  const LinearODE ode = simple_de(f, var, de_opts);
  std::vector<Field> chi;
  for (const auto& c : ode.coeffs) {
    if (c.has_symbol(var)) throw NotOfImplementedType("DE does not have constant coefficients", ode, std::nullopt);
    chi.push_back(Field(c));
  }
  const auto roots = solve_roots(UPoly(chi));
  if (!roots) throw CharacteristicRootsUnsupported("characteristic polynomial has an unsupported factor");
  const int n = ode.order();

  // b_j = j! a_j = sum_rho P_rho(j) rho^j, with Kronecker deltas for rho = 0.
  const std::vector<Field> a = oracle_coefficients(f, var, Expr(0), 0, n);
  struct Basis {
    std::size_t root;
    int power;
  };
  std::vector<Basis> basis;
  for (std::size_t r = 0; r < roots->size(); ++r) {
    for (int j = 0; j < (*roots)[r].multiplicity; ++j) basis.push_back({r, j});
  }
  std::vector<std::vector<Field>> m(static_cast<std::size_t>(n), std::vector<Field>(basis.size() + 1));
  Rational fact = 1;
  for (int row = 0; row < n; ++row) {
    if (row > 0) fact *= row;
    auto& line = m[static_cast<std::size_t>(row)];
    for (std::size_t c = 0; c < basis.size(); ++c) {
      const Field& rho = (*roots)[basis[c].root].value;
      if (rho.is_zero()) {
        line[c] = Field(row == basis[c].power ? 1 : 0);
      } else {
        line[c] = Field(Rational(row)).pow(basis[c].power) * rho.pow(row);
      }
    }
    line[basis.size()] = a[static_cast<std::size_t>(row)] * Field(fact);
  }
  const auto u = detail::solve_linear(std::move(m), basis.size());
  if (!u) throw CharacteristicRootsUnsupported("initial values do not fit the characteristic roots");

  const Field k = Field::symbol("k");
  const Expr kx = Expr::variable("k");
  std::vector<Field> p(roots->size());
  FormalSeries s;
  s.variable = var;
  s.x0 = Expr(0);
  for (std::size_t c = 0; c < basis.size(); ++c) {
    const Field& coef = (*u)[c];
    if (coef.is_zero()) continue;
    if ((*roots)[basis[c].root].value.is_zero()) {
      Rational jf = 1;
      for (int t = 2; t <= basis[c].power; ++t) jf *= t;
      s.polynomial.push_back(MonomialTerm{basis[c].power, from_field(coef / Field(jf))});
    } else {
      p[basis[c].root] += coef * k.pow(basis[c].power);
    }
  }

  std::vector<Expr> parts;
  std::vector<bool> done(roots->size());
  for (std::size_t r = 0; r < roots->size(); ++r) {
    const Field& rho = (*roots)[r].value;
    if (done[r] || rho.is_zero() || p[r].is_zero()) continue;
    done[r] = true;
    if (rho.has_symbol(kImag)) {
      const Field conj = rho.conjugate(kImag);
      std::size_t partner = roots->size();
      for (std::size_t t = 0; t < roots->size(); ++t) {
        if (!done[t] && (*roots)[t].value == conj) partner = t;
      }
      const auto [alpha, beta] = split_complex(rho);
      const auto [uu, vv] = split_complex(p[r]);
      if (partner != roots->size() && p[partner] == p[r].conjugate(kImag) && alpha.is_rational() &&
          beta.is_rational() && !uu.has_symbol(kImag) && !vv.has_symbol(kImag)) {
        const Rational r2 = (alpha * alpha + beta * beta).constant_value();
        const auto modulus = sqrt_rational(r2);
        std::optional<Rational> theta;
        if (modulus) theta = recognize_angle(alpha / *modulus, beta / *modulus);
        if (theta) {
          done[partner] = true;
          // P rho^k + conj = 2 |rho|^k (U cos(k theta) - V sin(k theta))
          const Expr mod_pow = modulus->is_rational() ? pow(from_field(*modulus), kx)
                                                      : pow(Expr(r2), kx / Expr(2));
          const Expr angle = Expr(*theta) * Expr::pi() * kx;
          parts.push_back(Expr(2) * mod_pow *
                          (from_field(uu) * cos(angle) - from_field(vv) * sin(angle)));
          continue;
        }
      }
    }
    parts.push_back(from_field(p[r]) * pow(from_field(rho), kx));
  }
  if (!parts.empty()) {
    ClosedFormTerm t;
    t.coefficient = add(std::move(parts)) / factorial(kx);
    s.terms.push_back(std::move(t));
  }
  return s;
}

}  // namespace fps
