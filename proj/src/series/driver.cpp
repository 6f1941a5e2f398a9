#include <exception>
#include <numeric>

#include "fps/bridge.hpp"
#include "fps/series.hpp"
#include "fps/taylor.hpp"

namespace fps {

namespace {

/// lcm of denominators of fractional exponents on bases vanishing at 0.
long puiseux_denominator(const Expr& e, const std::string& var) {
  long q = 1;
  if (e.kind() == Kind::Pow && !free_of(e.arg(0), var) && e.arg(1).is_const() && !e.arg(1).is_integer()) {
    if (substitute(e.arg(0), var, Expr(0)).is_zero()) q = e.arg(1).value().get_den().get_si();
  }
  for (const auto& a : e.args()) q = std::lcm(q, puiseux_denominator(a, var));
  return q;
}

/// c * prod (var - root)^mult * rest, for display.
Expr factored_poly(const Poly& p, const std::string& var) {
  const UPoly u = UPoly::from_field(Field(p), var);
  for (const auto& c : u.coeffs()) {
    if (!c.is_rational()) return from_poly(p);
  }
  if (u.degree() < 1) return from_poly(p);
  std::vector<Expr> f{from_field(u.lc())};
  UPoly rest = u.monic();
  const Expr v = Expr::variable(var);
  for (const auto& [r, m] : rational_roots(rest)) {
    f.push_back(pow(v - Expr(r), Expr(static_cast<long>(m))));
    for (int t = 0; t < m; ++t) {
      UPoly q;
      UPoly rem;
      rest.divmod(UPoly({Field(-r), Field(1)}), q, rem);
      rest = q;
    }
  }
  f.push_back(from_field(rest.to_field(var)));
  return mul(std::move(f));
}

std::string hypergeometric_re_text(const HypergeometricRE& h) {
  const Expr lhs = Expr::variable("a[" + to_text(Expr(static_cast<long>(h.m)) + Expr::variable(h.index)) + "]");
  const Expr rhs = factored_poly(h.ratio.num(), h.index) / factored_poly(h.ratio.den(), h.index) *
                   Expr::variable("a[" + h.index + "]");
  return to_text(lhs) + " = " + to_text(rhs);
}

void emit(const SeriesOptions& opts, const std::string& line) {
  if (opts.trace) opts.trace("info: " + line);
}

/// The first `count` coefficients from the valuation agree with the oracle.
bool matches_oracle(const FormalSeries& s, const Expr& f, const std::string& var, int count) {
  const TaylorSeries t = taylor_oracle(f, var, Expr(0), count - 1);
  if (t.identically_zero) return s.empty();
  long low = t.offset;
  for (const auto& p : s.polynomial) low = std::min(low, p.exponent);
  for (const auto& c : s.terms) low = std::min(low, c.shift);
  for (long e = low; e < t.offset + count; ++e) {
    if (s.coefficient(e) != t.coeff(static_cast<int>(e))) return false;
  }
  return true;
}

struct Context {
  const Expr& f;
  const std::string& var;
  const SeriesOptions& opts;
  std::optional<LinearODE> ode;
  std::optional<LinearRecurrence> re;
};

FormalSeries hypergeometric_series(Context& ctx) {
  DEOptions de_opts;
  de_opts.max_order = ctx.opts.max_de_order;
  de_opts.degree_guard = ctx.opts.degree_guard;
  if (!ctx.ode) {
    ctx.ode = simple_de(ctx.f, ctx.var, de_opts);
    emit(ctx.opts, std::to_string(ctx.ode->order()) + " step(s) for DE: " + ode_to_text(*ctx.ode));
  }
  if (!ctx.re) ctx.re = de_to_re(*ctx.ode);
  // Unreduced, so the leading coefficient keeps its roots at undetermined indices.
  const LinearRecurrence raw = de_to_re(*ctx.ode, ctx.re->index, false);
  auto h = classify(raw);
  if (!h) {
    emit(ctx.opts, "RE for all k >= 0: " + recurrence_to_text(*ctx.re));
    throw NotOfImplementedType("recurrence is not of hypergeometric type", ctx.ode, ctx.re);
  }
  emit(ctx.opts, "RE for all k >= 0: " + hypergeometric_re_text(*h));
  emit(ctx.opts, "function of hypergeometric type");

  const InitialValues probe = initial_values(ctx.f, ctx.var, Expr(0), 1);
  FormalSeries s;
  s.variable = ctx.var;
  s.x0 = Expr(0);
  if (probe.identically_zero) return s;
  const int v = probe.valuation;
  // a_{k+m} is free wherever the leading coefficient vanishes.
  long k0 = v;
  for (long r : integer_roots(raw.coeffs.rbegin()->second, raw.index)) k0 = std::max(k0, r + 1);
  const int first = std::min(0, v);
  const int last = static_cast<int>(std::max<long>(std::max(0, v), k0)) + h->m - 1;
  const InitialValues iv = initial_values(ctx.f, ctx.var, Expr(0), last - first + 1, first);
  auto a = [&](long k) { return iv.values[static_cast<std::size_t>(k - first)]; };
  for (long k = first; k <= std::max(0, v) + h->m - 1; ++k) {
    emit(ctx.opts, "a[" + std::to_string(k) + "] = " + to_text(from_field(a(k))));
  }
  for (long k = v; k < k0; ++k) {
    if (!a(k).is_zero()) s.polynomial.push_back(MonomialTerm{k, from_field(a(k))});
  }
  h->k0 = static_cast<int>(k0);
  h->initial.clear();
  for (int r = 0; r < h->m; ++r) h->initial.push_back(a(k0 + r));
  std::vector<MonomialTerm> finite;
  s.terms = solve_hypergeometric(*h, &finite);
  s.polynomial.insert(s.polynomial.end(), finite.begin(), finite.end());
  return s;
}

}  // namespace

FormalSeries power_series(const Expr& f, const std::string& var, const Expr& x0, const SeriesOptions& opts) {
  Expr g = x0.is_zero() ? f : substitute(f, var, Expr::variable(var) + x0);
  const long n = puiseux_denominator(g, var);
  if (n > 1) g = substitute(g, var, pow(Expr::variable(var), Expr(n)));

  Context ctx{g, var, opts, std::nullopt, std::nullopt};
  std::exception_ptr de_failure;
  std::string failures;
  constexpr int kCheckTerms = 20;
  for (Strategy st : opts.order) {
    FormalSeries s;
    std::string name;
    try {
      switch (st) {
        case Strategy::Hypergeometric:
          name = "hypergeometric";
          s = hypergeometric_series(ctx);
          break;
        case Strategy::Rational:
          name = "rational";
          s = rational_type_series(g, var, opts.rational_derivative_bound);
          break;
        case Strategy::Exponential:
          name = "exponential";
          s = exponential_type_series(g, var, opts);
          break;
      }
      if (!matches_oracle(s, g, var, kCheckTerms)) {
        throw std::runtime_error("result disagrees with the Taylor coefficients");
      }
    } catch (const NoDEFound&) {
      if (!de_failure) de_failure = std::current_exception();
      continue;
    } catch (const NonDecomposable&) {
      if (!de_failure) de_failure = std::current_exception();
      continue;
    } catch (const std::exception& e) {
      failures += (failures.empty() ? "" : "; ") + name + ": " + e.what();
      continue;
    }
    if (st != Strategy::Hypergeometric) emit(opts, "function of " + name + " type");
    s.x0 = x0;
    s.puiseux_n = static_cast<int>(n);
    return s;
  }
  if (de_failure && !ctx.ode) std::rethrow_exception(de_failure);
  throw NotOfImplementedType(failures.empty() ? "no strategy applies" : failures, ctx.ode, ctx.re);
}

}  // namespace fps
