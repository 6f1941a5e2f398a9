#include "fps/taylor.hpp"

#include <algorithm>

#include "fps/bridge.hpp"
#include "fps/database.hpp"

namespace fps {

Field TaylorSeries::coeff(int k) const {
  if (k < offset) return Field();
  const auto i = static_cast<std::size_t>(k - offset);
  if (i >= coeffs.size()) throw OracleError("coefficient beyond computed range");
  return coeffs[i];
}

std::vector<Field> TaylorSeries::range(int from, int count) const {
  std::vector<Field> out;
  for (int k = from; k < from + count; ++k) out.push_back(coeff(k));
  return out;
}

namespace {

/// Thrown when the working precision is too small for an operation.
struct NeedPrecision {};

/// Truncated Laurent series in t: coefficients for exponents val..prec-1.
struct Ser {
  int val = 0;
  int prec = 0;
  std::vector<Field> c;

  bool unknown() const { return c.empty(); }
  Field at(int k) const {
    if (k < val) return Field();
    if (k >= prec) throw NeedPrecision{};
    return c[static_cast<std::size_t>(k - val)];
  }
  void trim() {
    std::size_t z = 0;
    while (z < c.size() && c[z].is_zero()) ++z;
    c.erase(c.begin(), c.begin() + static_cast<long>(z));
    val += static_cast<int>(z);
    if (c.empty()) val = prec;
  }
};

Ser make(int val, int prec, std::vector<Field> c) {
  Ser s{val, prec, std::move(c)};
  s.c.resize(static_cast<std::size_t>(std::max(prec - val, 0)));
  s.trim();
  return s;
}

Ser constant(const Field& v, int w) {
  if (v.is_zero()) return make(w, w, {});
  std::vector<Field> c(static_cast<std::size_t>(std::max(w, 1)));
  c[0] = v;
  return make(0, std::max(w, 1), std::move(c));
}

Ser add(const Ser& a, const Ser& b) {
  const int prec = std::min(a.prec, b.prec);
  const int val = std::min(a.val, b.val);
  std::vector<Field> c;
  for (int k = val; k < prec; ++k) c.push_back(a.at(k) + b.at(k));
  return make(std::min(val, prec), prec, std::move(c));
}

Ser scale(const Ser& a, const Field& f) {
  if (f.is_zero()) return make(a.prec, a.prec, {});
  Ser r = a;
  for (auto& x : r.c) x *= f;
  return r;
}

Ser mul(const Ser& a, const Ser& b, int w) {
  const int val = a.val + b.val;
  const int prec = std::min({a.prec + b.val, b.prec + a.val, w});
  if (a.unknown() || b.unknown() || prec <= val) return make(std::min(val, prec), prec, {});
  std::vector<Field> c(static_cast<std::size_t>(prec - val));
  for (std::size_t i = 0; i < a.c.size(); ++i) {
    if (a.c[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.c.size() && i + j < c.size(); ++j) c[i + j] += a.c[i] * b.c[j];
  }
  return make(val, prec, std::move(c));
}

Ser inverse(const Ser& a, int w) {
  if (a.unknown()) throw NeedPrecision{};
  const int val = -a.val;
  const int prec = std::min(val + (a.prec - a.val), w);
  const int n = prec - val;
  if (n <= 0) throw NeedPrecision{};
  std::vector<Field> b(static_cast<std::size_t>(n));
  const Field inv0 = Field(1) / a.c[0];
  b[0] = inv0;
  for (int i = 1; i < n; ++i) {
    Field s;
    for (int k = 1; k <= i && k < static_cast<int>(a.c.size()); ++k) {
      s += a.c[static_cast<std::size_t>(k)] * b[static_cast<std::size_t>(i - k)];
    }
    b[static_cast<std::size_t>(i)] = -s * inv0;
  }
  return make(val, prec, std::move(b));
}

Ser derivative(const Ser& a) {
  std::vector<Field> c;
  const int val = a.val - 1;
  for (int k = a.val; k < a.prec; ++k) c.push_back(a.at(k) * Field(static_cast<long>(k)));
  return make(val, a.prec - 1, std::move(c));
}

/// Antiderivative with zero constant term; requires no t^-1 term.
Ser integrate(const Ser& a) {
  if (a.val < 0 && !a.unknown()) {
    if (!a.at(-1).is_zero()) throw OracleError("logarithmic term in antiderivative");
  }
  const int val = std::max(a.val, 0) + 1;
  std::vector<Field> c;
  for (int k = val - 1; k < a.prec; ++k) c.push_back(a.at(k) / Field(static_cast<long>(k + 1)));
  return make(val, a.prec + 1, std::move(c));
}

/// Constant term and remainder u = s - c0 with val(u) >= 1.
std::pair<Field, Ser> split_constant(const Ser& s) {
  if (!s.unknown() && s.val < 0) throw OracleError("essential singularity");
  if (s.prec <= 0) throw NeedPrecision{};
  const Field c0 = s.at(0);
  Ser u = add(s, constant(-c0, s.prec));
  if (u.val < 1) u.val = 1;  // u has no constant term by construction
  return {c0, u};
}

// ---------------------------------------------------------------------------
// Constants

Field pi_field() { return Field::symbol("@Pi"); }

Field const_from(const Expr& e) { return to_field_or_throw(e); }

Field exp_const(const Field& c) {
  if (c.is_zero()) return Field(1);
  return const_from(exp(from_field(c)));
}

Field log_const(const Field& c) {
  if (c.is_one()) return Field();
  return const_from(log(from_field(c)));
}

std::optional<Rational> pi_ratio(const Field& c) {
  if (c.is_zero()) return Rational(0);
  const Field q = c / pi_field();
  if (q.is_rational()) return q.constant_value();
  return std::nullopt;
}

Field sin_const(const Field& c) {
  if (auto q = pi_ratio(c)) {
    if (auto v = sin_rational_pi(*q)) return const_from(*v);
  }
  return const_from(sin(from_field(c)));
}

Field cos_const(const Field& c) {
  if (auto q = pi_ratio(c)) {
    if (auto v = cos_rational_pi(*q)) return const_from(*v);
  }
  return const_from(cos(from_field(c)));
}

Field inverse_trig_const(const std::string& head, const Field& c) {
  if (c.is_zero()) return Field();
  if (head == "arctan" && c.is_rational() && abs(c.constant_value()) == 1) {
    return pi_field() * Field(Rational(c.constant_value() / 4));
  }
  if (head == "arcsin" && c.is_rational()) {
    const Rational v = c.constant_value();
    if (abs(v) == 1) return pi_field() * Field(Rational(v / 2));
    if (abs(v) == Rational(1, 2)) return pi_field() * Field(Rational(v / 3));
  }
  return const_from(func(head, {from_field(c)}));
}

/// c^e for a constant c and constant exponent e.
Field const_pow(const Field& c, const Field& e) {
  if (e.is_rational()) {
    const Rational x = e.constant_value();
    if (x.get_den() == 1) return c.pow(x.get_num().get_si());
    if (c.is_rational()) return const_from(pow(Expr(c.constant_value()), Expr(x)));
    if (x.get_den() == 2) {
      if (auto s = try_sqrt(c)) return s->pow(x.get_num().get_si());
    }
    const Expr root = Expr::raw(Kind::Pow, {from_field(c), Expr(Rational(1, x.get_den()))});
    return opaque(root).pow(x.get_num().get_si());
  }
  if (c.is_one()) return Field(1);
  return const_from(pow(from_field(c), from_field(e)));
}

// ---------------------------------------------------------------------------
// Elementary functions of series with zero constant term

Ser exp0(const Ser& u) {
  const int p = u.prec;
  std::vector<Field> f(static_cast<std::size_t>(p));
  f[0] = Field(1);
  for (int n = 1; n < p; ++n) {
    Field s;
    for (int k = 1; k <= n; ++k) s += Field(static_cast<long>(k)) * u.at(k) * f[static_cast<std::size_t>(n - k)];
    f[static_cast<std::size_t>(n)] = s / Field(static_cast<long>(n));
  }
  return make(0, p, std::move(f));
}

void sincos0(const Ser& u, Ser& sn, Ser& cs) {
  const int p = u.prec;
  std::vector<Field> s(static_cast<std::size_t>(p));
  std::vector<Field> c(static_cast<std::size_t>(p));
  c[0] = Field(1);
  for (int n = 1; n < p; ++n) {
    Field a;
    Field b;
    for (int k = 1; k <= n; ++k) {
      const Field ku = Field(static_cast<long>(k)) * u.at(k);
      a += ku * c[static_cast<std::size_t>(n - k)];
      b += ku * s[static_cast<std::size_t>(n - k)];
    }
    s[static_cast<std::size_t>(n)] = a / Field(static_cast<long>(n));
    c[static_cast<std::size_t>(n)] = -b / Field(static_cast<long>(n));
  }
  sn = make(0, p, std::move(s));
  cs = make(0, p, std::move(c));
}

/// (h0 t^v (1 + ...))^e via the J.C.P. Miller recurrence.
Ser power(const Ser& a, const Field& e, int w) {
  if (a.unknown()) throw NeedPrecision{};
  const Field ve = Field(static_cast<long>(a.val)) * e;
  if (!ve.is_rational() || ve.constant_value().get_den() != 1) throw OracleError("branch point in power");
  const int val = static_cast<int>(ve.constant_value().get_num().get_si());
  const int n = std::min(a.prec - a.val, w - val);
  if (n <= 0) throw NeedPrecision{};
  const Field h0 = a.c[0];
  std::vector<Field> g(static_cast<std::size_t>(n));
  g[0] = const_pow(h0, e);
  const Field inv = Field(1) / h0;
  for (int m = 1; m < n; ++m) {
    Field s;
    for (int k = 1; k <= m && k < static_cast<int>(a.c.size()); ++k) {
      s += (Field(static_cast<long>(k)) * (e + Field(1)) - Field(static_cast<long>(m))) * a.c[static_cast<std::size_t>(k)] *
           g[static_cast<std::size_t>(m - k)];
    }
    g[static_cast<std::size_t>(m)] = s * inv / Field(static_cast<long>(m));
  }
  return make(val, val + n, std::move(g));
}

/// sum_k F_k u^k for u with val >= 1.
Ser compose(const std::vector<Field>& f, const Ser& u, int w) {
  const int p = std::min(u.prec, w);
  Ser r = constant(Field(), p);
  for (std::size_t k = f.size(); k-- > 0;) r = add(mul(r, u, p), constant(f[k], p));
  return r;
}

// ---------------------------------------------------------------------------
// Evaluator

class Evaluator {
 public:
  Evaluator(std::string var, Field x0, int w) : var_(std::move(var)), x0_(std::move(x0)), w_(w) {}

  Ser eval(const Expr& e) {
    if (free_of(e, var_)) return constant(to_field_or_throw(e), w_);
    switch (e.kind()) {
      case Kind::Variable:
      case Kind::Parameter: return make(0, w_, {x0_, Field(1)});
      case Kind::Add: {
        Ser s = eval(e.arg(0));
        for (std::size_t i = 1; i < e.args().size(); ++i) s = add(s, eval(e.arg(i)));
        return s;
      }
      case Kind::Mul: {
        Ser s = eval(e.arg(0));
        for (std::size_t i = 1; i < e.args().size(); ++i) s = mul(s, eval(e.arg(i)), w_);
        return s;
      }
      case Kind::Pow: return eval_pow(e);
      case Kind::Func: return eval_func(e);
      default: throw OracleError("unexpected node");
    }
  }

 private:
  Ser eval_pow(const Expr& e) {
    const Expr& x = e.exponent();
    if (!free_of(x, var_)) {
      return eval_func(exp(x * log(e.base())));
    }
    Ser b = eval(e.base());
    const Field ef = to_field_or_throw(x);
    if (ef.is_rational() && ef.constant_value() == -1) return inverse(b, w_);
    if (ef.is_rational() && ef.constant_value().get_den() == 1 && ef.constant_value() > 0 &&
        ef.constant_value() <= 4) {
      Ser r = b;
      for (long i = 1; i < ef.constant_value().get_num().get_si(); ++i) r = mul(r, b, w_);
      return r;
    }
    return power(b, ef, w_);
  }

  Ser eval_func(const Expr& e) {
    const std::string& h = e.name();
    if (h == "exp") {
      auto [c0, u] = split_constant(eval(e.arg(0)));
      return scale(exp0(u), exp_const(c0));
    }
    if (h == "log") {
      Ser s = eval(e.arg(0));
      if (s.unknown()) throw NeedPrecision{};
      if (s.val != 0) throw OracleError("logarithmic singularity");
      const Field c0 = s.c[0];
      Ser q = scale(s, Field(1) / c0);
      Ser l = integrate(mul(derivative(q), inverse(q, w_), w_));
      return add(l, constant(log_const(c0), l.prec));
    }
    if (h == "sin" || h == "cos" || h == "tan") {
      auto [c0, u] = split_constant(eval(e.arg(0)));
      Ser su;
      Ser cu;
      sincos0(u, su, cu);
      const Field sc = sin_const(c0);
      const Field cc = cos_const(c0);
      // sin(c+u) = sin c cos u + cos c sin u; cos(c+u) = cos c cos u - sin c sin u
      Ser sn = add(scale(cu, sc), scale(su, cc));
      Ser cs = add(scale(cu, cc), scale(su, -sc));
      if (h == "sin") return sn;
      if (h == "cos") return cs;
      return mul(sn, inverse(cs, w_), w_);
    }
    if (h == "arctan" || h == "arcsin" || h == "arcsinh") {
      Ser s = eval(e.arg(0));
      auto [c0, u] = split_constant(s);
      Ser s2 = mul(s, s, w_);
      Ser d;
      if (h == "arctan") {
        d = inverse(add(constant(Field(1), w_), s2), w_);
      } else if (h == "arcsin") {
        d = power(add(constant(Field(1), w_), scale(s2, Field(-1))), Field(Rational(-1, 2)), w_);
      } else {
        d = power(add(constant(Field(1), w_), s2), Field(Rational(-1, 2)), w_);
      }
      Ser r = integrate(mul(derivative(s), d, w_));
      return add(r, constant(inverse_trig_const(h, c0), r.prec));
    }
    if (h == "erf") {
      Ser s = eval(e.arg(0));
      auto [c0, u] = split_constant(s);
      auto [sq0, sq] = split_constant(mul(s, s, w_));
      Ser ex = scale(exp0(sq), exp_const(-sq0));
      const Field k = Field(2) / to_field_or_throw(sqrt(Expr::pi()));
      Ser r = scale(integrate(mul(derivative(s), ex, w_)), k);
      return add(r, constant(inverse_trig_const("erf", c0), r.prec));
    }
    if ((h == "bessel_j" || h == "bessel_i") && e.arg(0).is_integer()) {
      Ser s = eval(e.arg(1));
      auto [c0, u] = split_constant(s);
      if (c0.is_zero()) return bessel_at_zero(h == "bessel_j", e.arg(0).value().get_num().get_si(), s);
    }
    if (h == "airy_ai_prime") {
      auto [c0, u] = split_constant(eval(e.arg(0)));
      auto f = holonomic_coefficients("airy_ai", {}, c0, u.prec + 1);
      std::vector<Field> d;
      for (std::size_t k = 1; k < f.size(); ++k) d.push_back(f[k] * Field(static_cast<long>(k)));
      return compose(d, u, w_);
    }
    if (is_holonomic_head(h)) {
      for (std::size_t i = 0; i + 1 < e.args().size(); ++i) {
        if (!free_of(e.arg(i), var_)) throw OracleError("index depends on the expansion variable");
      }
      auto [c0, u] = split_constant(eval(e.args().back()));
      std::vector<Expr> params(e.args().begin(), e.args().end() - 1);
      auto f = holonomic_coefficients(h, params, c0, u.prec);
      return compose(f, u, w_);
    }
    throw OracleError("no series rule for " + to_text(e));
  }

  Ser bessel_at_zero(bool j, long nu, const Ser& s) {
    if (nu < 0) throw OracleError("negative Bessel order");
    Ser half = scale(s, Field(Rational(1, 2)));
    Ser h2 = mul(half, half, w_);
    Ser term = constant(Field(1), w_);
    for (long i = 0; i < nu; ++i) term = mul(term, half, w_);
    Integer fnu;
    mpz_fac_ui(fnu.get_mpz_t(), static_cast<unsigned long>(nu));
    Ser sum = scale(term, Field(Rational(1, fnu)));
    Rational coef(1, fnu);
    for (long m = 1; term.val < w_; ++m) {
      term = mul(term, h2, w_);
      coef /= Rational(m * (m + nu));
      if (j) coef = -coef;
      if (term.unknown()) break;
      sum = add(sum, scale(term, Field(coef)));
      if (term.val >= sum.prec) break;
    }
    return sum;
  }

  std::string var_;
  Field x0_;
  int w_;
};

Ser expand_to(const Expr& e, const std::string& var, const Field& x0, int abs_prec) {
  int w = std::max(abs_prec, 1) + 2;
  for (int attempt = 0; attempt < 14; ++attempt) {
    try {
      Ser s = Evaluator(var, x0, w).eval(e);
      if (s.prec >= abs_prec) return s;
      w += (abs_prec - s.prec) + 2;
    } catch (const NeedPrecision&) {
      w = w * 2 + 4;
    }
  }
  throw OracleError("precision loss too large in expansion of " + to_text(e));
}

}  // namespace

std::vector<Field> holonomic_coefficients(const std::string& head, const std::vector<Expr>& params, const Field& u0,
                                          int n) {
  std::vector<Field> pf;
  for (const auto& p : params) pf.push_back(to_field_or_throw(p));
  auto ode = function_ode(head, pf, "~u");
  if (!ode) throw OracleError("no database ODE for " + head);
  // Shift u = u0 + w.
  const Field w = Field::symbol("~w");
  const Field shift = Field(u0) + w;
  std::vector<UPoly> q;
  for (const Field* c : {&ode->c0, &ode->c1, &ode->c2}) q.push_back(UPoly::from_field(c->substitute("~u", shift), "~w"));
  // Highest index offset d = max(i - j) over nonzero q_{i,j}.
  int d = -1000;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j <= q[static_cast<std::size_t>(i)].degree(); ++j) {
      if (!q[static_cast<std::size_t>(i)].coeff(j).is_zero()) d = std::max(d, i - j);
    }
  }
  if (d < 0) throw OracleError("degenerate ODE");
  // Initial values f_k = F^(k)(u0)/k! for k < d.
  std::vector<Field> f;
  std::vector<Expr> args = params;
  const Expr uvar = Expr::variable("~v");
  args.push_back(uvar);
  Expr g = func(head, args);
  const Expr u0e = from_field(u0);
  Rational kfact = 1;
  for (int k = 0; k < d && k <= n; ++k) {
    if (k > 0) {
      g = differentiate(g, "~v");
      kfact *= k;
    }
    f.push_back(to_field_or_throw(substitute(g, "~v", u0e)) / Field(kfact));
  }
  auto poch = [](long a, int i) {
    Rational r = 1;
    for (int t = 0; t < i; ++t) r *= (a + t);
    return r;
  };
  for (int m = d; m <= n; ++m) {
    const int nn = m - d;
    Field lead;
    Field rest;
    for (int i = 0; i < 3; ++i) {
      const UPoly& qi = q[static_cast<std::size_t>(i)];
      for (int j = 0; j <= qi.degree(); ++j) {
        const Field& c = qi.coeff(j);
        if (c.is_zero()) continue;
        const int idx = nn - j + i;
        if (nn - j < 0 && i == 0) continue;
        const Rational p = poch(nn - j + 1, i);
        if (p == 0 || idx < 0) continue;
        if (idx == m) {
          lead += c * Field(p);
        } else {
          rest += c * Field(p) * f[static_cast<std::size_t>(idx)];
        }
      }
    }
    if (lead.is_zero()) throw OracleError("singular recurrence for " + head + " expansion");
    f.push_back(-rest / lead);
  }
  f.resize(static_cast<std::size_t>(n + 1));
  return f;
}

TaylorSeries taylor_oracle(const Expr& e, const std::string& var, const Expr& x0, int n) {
  TaylorSeries out;
  out.variable = var;
  out.x0 = x0;
  const Field x0f = to_field_or_throw(x0);
  Ser s = expand_to(e, var, x0f, n + 1);
  if (s.unknown()) {
    // Probe deeper before declaring the expansion zero.
    s = expand_to(e, var, x0f, n + 40);
    if (s.unknown()) {
      out.identically_zero = true;
      out.coeffs.assign(static_cast<std::size_t>(n + 1), Field());
      return out;
    }
  }
  if (s.prec < s.val + n + 1) s = expand_to(e, var, x0f, s.val + n + 1);
  out.offset = s.val;
  for (int k = s.val; k <= s.val + n; ++k) out.coeffs.push_back(s.at(k));
  return out;
}

std::vector<Field> oracle_coefficients(const Expr& e, const std::string& var, const Expr& x0, int from, int count) {
  Ser s = expand_to(e, var, to_field_or_throw(x0), from + count);
  std::vector<Field> out;
  for (int k = from; k < from + count; ++k) out.push_back(s.at(k));
  return out;
}

bool is_zero_semidecision(const Expr& e, const std::string& var, const Expr& x0) {
  if (e.is_zero()) return true;
  if (auto f = to_field(e, {var})) return f->is_zero();
  for (const auto& v : oracle_coefficients(e, var, x0, -10, 20)) {
    if (!v.is_zero()) return false;
  }
  // At the shifted point transcendental constants become opaque symbols whose
  // identities are unknown, so only opaque-free coefficients count there.
  for (const auto& v : oracle_coefficients(e, var, x0 + Expr(Rational(1, 3)), -10, 20)) {
    if (v.is_zero()) continue;
    bool opaque_free = true;
    for (const auto& s : v.symbols()) opaque_free = opaque_free && s[0] != '@';
    if (opaque_free) return false;
  }
  return true;
}

}  // namespace fps
