#include "fps/expr.hpp"

namespace fps {

namespace {

void require_free(const Expr& e, std::size_t upto, const std::string& var) {
  for (std::size_t i = 0; i < upto; ++i) {
    if (!free_of(e.arg(i), var)) {
      throw NoDerivativeRule("no derivative rule for " + to_text(e) + " with respect to " + var + " in its index");
    }
  }
}

Expr d_func(const Expr& e, const std::string& var) {
  const std::string& h = e.name();
  if (free_of(e, var)) return Expr(0);
  const Expr& u = e.args().back();
  const auto chain = [&](const Expr& outer) { return outer * differentiate(u, var); };
  if (h == "exp") return chain(e);
  if (h == "log") return chain(pow(u, Expr(-1)));
  if (h == "sin") return chain(cos(u));
  if (h == "cos") return chain(-sin(u));
  if (h == "tan") return chain(Expr(1) + pow(e, Expr(2)));
  if (h == "arcsin") return chain(pow(Expr(1) - pow(u, Expr(2)), Expr(Rational(-1, 2))));
  if (h == "arctan") return chain(pow(Expr(1) + pow(u, Expr(2)), Expr(-1)));
  if (h == "arcsinh") return chain(pow(Expr(1) + pow(u, Expr(2)), Expr(Rational(-1, 2))));
  if (h == "erf") {
    return chain(mul({Expr(2), pow(Expr::pi(), Expr(Rational(-1, 2))), exp(-pow(u, Expr(2)))}));
  }
  if (h == "airy_ai") return chain(func("airy_ai_prime", {u}));
  if (h == "airy_ai_prime") return chain(u * func("airy_ai", {u}));
  if (h == "bessel_j" || h == "bessel_y" || h == "bessel_i") {
    require_free(e, 1, var);
    const Expr& nu = e.arg(0);
    const Expr shifted = func(h, {nu + Expr(1), u});
    const Expr base = nu / u * e;
    return chain(h == "bessel_i" ? base + shifted : base - shifted);
  }
  if (h == "laguerre") {
    require_free(e, 2, var);
    return chain(-func("laguerre", {e.arg(0) - Expr(1), e.arg(1) + Expr(1), u}));
  }
  if (h == "chebyshev_t") {
    require_free(e, 1, var);
    return chain(e.arg(0) * func("chebyshev_u", {e.arg(0) - Expr(1), u}));
  }
  if (h == "chebyshev_u") {
    require_free(e, 1, var);
    const Expr& n = e.arg(0);
    return chain(((n + Expr(1)) * func("chebyshev_t", {n + Expr(1), u}) - u * e) /
                 (pow(u, Expr(2)) - Expr(1)));
  }
  if (h == "legendre_p") {
    require_free(e, 1, var);
    const Expr& n = e.arg(0);
    return chain(n * (u * e - func("legendre_p", {n - Expr(1), u})) / (pow(u, Expr(2)) - Expr(1)));
  }
  if (h == "hermite_h") {
    require_free(e, 1, var);
    const Expr& n = e.arg(0);
    return chain(Expr(2) * n * func("hermite_h", {n - Expr(1), u}));
  }
  throw NoDerivativeRule("no derivative rule for head " + h);
}

}  // namespace

Expr differentiate(const Expr& e, const std::string& var) {
  switch (e.kind()) {
    case Kind::Const:
    case Kind::ImaginaryUnit:
    case Kind::Pi: return Expr(0);
    case Kind::Variable:
    case Kind::Parameter: return Expr(e.name() == var ? 1 : 0);
    case Kind::Add: {
      std::vector<Expr> t;
      for (const auto& a : e.args()) t.push_back(differentiate(a, var));
      return add(std::move(t));
    }
    case Kind::Mul: {
      std::vector<Expr> t;
      for (std::size_t i = 0; i < e.args().size(); ++i) {
        if (free_of(e.arg(i), var)) continue;
        std::vector<Expr> f = e.args();
        f[i] = differentiate(e.arg(i), var);
        t.push_back(mul(std::move(f)));
      }
      return add(std::move(t));
    }
    case Kind::Pow: {
      const Expr& b = e.base();
      const Expr& x = e.exponent();
      if (free_of(x, var)) return mul({x, pow(b, x - Expr(1)), differentiate(b, var)});
      if (free_of(b, var)) return mul({e, log(b), differentiate(x, var)});
      return e * (differentiate(x, var) * log(b) + x * differentiate(b, var) / b);
    }
    case Kind::Func: return d_func(e, var);
  }
  return Expr(0);
}

}  // namespace fps
