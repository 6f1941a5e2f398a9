#include "fps/bridge.hpp"

#include <stdexcept>

namespace fps {

Field opaque(const Expr& e) {
  if (e.kind() == Kind::Pi) return Field::symbol("@Pi");
  return Field::symbol("@" + to_text(e));
}

namespace {

bool depends(const Expr& e, const std::vector<std::string>& vars) {
  for (const auto& v : vars) {
    if (!free_of(e, v)) return true;
  }
  return false;
}

std::optional<Field> conv(const Expr& e, const std::vector<std::string>& vars) {
  switch (e.kind()) {
    case Kind::Const: return Field(e.value());
    case Kind::ImaginaryUnit: return Field::symbol(surd_symbol(-1));
    case Kind::Pi: return opaque(e);
    case Kind::Variable:
    case Kind::Parameter: return Field::symbol(e.name());
    case Kind::Add: {
      Field s;
      for (const auto& a : e.args()) {
        auto f = conv(a, vars);
        if (!f) return std::nullopt;
        s += *f;
      }
      return s;
    }
    case Kind::Mul: {
      Field s(1);
      for (const auto& a : e.args()) {
        auto f = conv(a, vars);
        if (!f) return std::nullopt;
        s *= *f;
      }
      return s;
    }
    case Kind::Pow: {
      const Expr& x = e.exponent();
      if (x.is_integer() && x.value().get_num().fits_slong_p()) {
        auto b = conv(e.base(), vars);
        if (!b) return std::nullopt;
        if (b->is_zero() && x.value() < 0) throw std::domain_error("division by zero");
        return b->pow(x.value().get_num().get_si());
      }
      if (depends(e, vars)) return std::nullopt;
      if (x.is_const() && e.base().is_const() && x.value().get_den() == 2) {
        // b^(p/2) = (sqrt b)^p
        auto s = sqrt_rational(e.base().value());
        if (s) return s->pow(x.value().get_num().get_si());
      }
      if (x.is_const() && x.value().get_den().fits_ulong_p()) {
        // (b^(1/q))^p with a shared symbol so products stay consistent.
        const Rational q(1, x.value().get_den());
        const Expr root = Expr::raw(Kind::Pow, {e.base(), Expr(q)});
        return opaque(root).pow(x.value().get_num().get_si());
      }
      return opaque(e);
    }
    case Kind::Func:
      if (e.is_func("pochhammer") && e.arg(1).is_integer() && e.arg(1).value() > 0 && e.arg(1).value() <= 5000) {
        auto a = conv(e.arg(0), vars);
        if (!a) return std::nullopt;
        Field p(1);
        for (long j = 0; j < e.arg(1).value().get_num().get_si(); ++j) p *= *a + Field(j);
        return p;
      }
      if (depends(e, vars)) return std::nullopt;
      if (e.is_func("exp") && e.arg(0).is_const()) {
        // exp(p/q) = exp(1/q)^p keeps products of exponentials consistent.
        const Rational& c = e.arg(0).value();
        const Expr root = Expr::raw(Kind::Func, {Expr(Rational(1, c.get_den()))}, "exp");
        return opaque(root).pow(c.get_num().get_si());
      }
      return opaque(e);
  }
  return std::nullopt;
}

Expr symbol_expr(const std::string& name) {
  if (is_surd_symbol(name)) {
    const long d = surd_radicand(name);
    if (d == -1) return Expr::imaginary_unit();
    return Expr::raw(Kind::Pow, {Expr(d), Expr(Rational(1, 2))});
  }
  if (is_opaque_symbol(name)) {
    if (name == "@Pi") return Expr::pi();
    return parse(name.substr(1));
  }
  return Expr::variable(name);
}

}  // namespace

std::optional<Field> to_field(const Expr& e, const std::vector<std::string>& vars) { return conv(e, vars); }

Field to_field_or_throw(const Expr& e, const std::vector<std::string>& vars) {
  auto f = conv(e, vars);
  if (!f) throw std::invalid_argument("not rational in the main variable: " + to_text(e));
  return *f;
}

Expr from_poly(const Poly& p) {
  std::vector<Expr> terms;
  for (const auto& t : p.terms()) {
    std::vector<Expr> f{Expr(t.coef)};
    for (const auto& [n, k] : t.mono.entries()) f.push_back(pow(symbol_expr(n), Expr(static_cast<long>(k))));
    terms.push_back(mul(std::move(f)));
  }
  return add(std::move(terms));
}

Expr from_field(const Field& f) {
  if (f.den().is_one()) return from_poly(f.num());
  return from_poly(f.num()) / from_poly(f.den());
}

Expr rational_canonical(const Expr& e) { return from_field(to_field_or_throw(e)); }

bool rationally_equal(const Expr& a, const Expr& b) { return to_field_or_throw(a - b).is_zero(); }

}  // namespace fps
