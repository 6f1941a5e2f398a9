#include <algorithm>
#include <map>

#include "fps/expr.hpp"
#include "fps/field.hpp"

namespace fps {

namespace {

std::shared_ptr<const Node> make_node(Kind k, std::vector<Expr> args, std::string name, Rational value) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  n->args = std::move(args);
  n->name = std::move(name);
  n->value = std::move(value);
  return n;
}

int kind_rank(const Expr& e) {
  switch (e.kind()) {
    case Kind::Const: return 0;
    case Kind::ImaginaryUnit: return 1;
    case Kind::Pi: return 2;
    case Kind::Variable:
    case Kind::Parameter: return 4;
    case Kind::Pow: return e.base().is_const() && e.exponent().is_const() ? 3 : 5;
    case Kind::Mul: return 6;
    case Kind::Add: return 7;
    case Kind::Func: return 8;
  }
  return 9;
}

}  // namespace

Expr::Expr() : node_(make_node(Kind::Const, {}, {}, 0)) {}
Expr::Expr(long v) : node_(make_node(Kind::Const, {}, {}, Rational(v))) {}
Expr::Expr(const Rational& v) : node_(make_node(Kind::Const, {}, {}, v)) {}

Expr Expr::imaginary_unit() { return Expr(make_node(Kind::ImaginaryUnit, {}, {}, 0)); }
Expr Expr::pi() { return Expr(make_node(Kind::Pi, {}, {}, 0)); }
Expr Expr::variable(const std::string& name) { return Expr(make_node(Kind::Variable, {}, name, 0)); }
Expr Expr::parameter(const std::string& name) { return Expr(make_node(Kind::Parameter, {}, name, 0)); }

Expr Expr::raw(Kind k, std::vector<Expr> args, std::string name, Rational value) {
  return Expr(make_node(k, std::move(args), std::move(name), std::move(value)));
}

bool Expr::operator==(const Expr& o) const { return node_ == o.node_ || compare(*this, o) == 0; }

int compare(const Expr& a, const Expr& b) {
  const int ra = kind_rank(a);
  const int rb = kind_rank(b);
  if (ra != rb) return ra < rb ? -1 : 1;
  switch (a.kind()) {
    case Kind::Const:
      return a.value() < b.value() ? -1 : (a.value() == b.value() ? 0 : 1);
    case Kind::ImaginaryUnit:
    case Kind::Pi:
      return 0;
    case Kind::Variable:
    case Kind::Parameter:
      return a.name().compare(b.name()) < 0 ? -1 : (a.name() == b.name() ? 0 : 1);
    case Kind::Func:
      if (a.name() != b.name()) return a.name() < b.name() ? -1 : 1;
      [[fallthrough]];
    default: {
      const auto& x = a.args();
      const auto& y = b.args();
      const std::size_t n = std::min(x.size(), y.size());
      for (std::size_t i = 0; i < n; ++i) {
        if (int c = compare(x[i], y[i]); c != 0) return c;
      }
      if (x.size() != y.size()) return x.size() < y.size() ? -1 : 1;
      return 0;
    }
  }
}

// ---------------------------------------------------------------------------
// Helpers

std::pair<Rational, Expr> split_coefficient(const Expr& e) {
  if (e.is_const()) return {e.value(), Expr(1)};
  if (e.kind() == Kind::Mul && e.arg(0).is_const()) {
    std::vector<Expr> rest(e.args().begin() + 1, e.args().end());
    if (rest.size() == 1) return {e.arg(0).value(), rest[0]};
    return {e.arg(0).value(), Expr::raw(Kind::Mul, std::move(rest))};
  }
  return {Rational(1), e};
}

namespace {

/// c * rest where rest is canonical and c != 0.
Expr scale_raw(const Rational& c, const Expr& rest) {
  if (rest.is_one()) return Expr(c);
  if (c == 1) return rest;
  std::vector<Expr> f{Expr(c)};
  if (rest.kind() == Kind::Mul) {
    f.insert(f.end(), rest.args().begin(), rest.args().end());
  } else {
    f.push_back(rest);
  }
  return Expr::raw(Kind::Mul, std::move(f));
}

bool is_positive_factor(const Expr& e) {
  switch (e.kind()) {
    case Kind::Const: return e.value() > 0;
    case Kind::Pi:
    case Kind::Variable:
    case Kind::Parameter: return true;
    case Kind::Pow: return is_positive_factor(e.base());
    case Kind::Func: return e.name() == "exp" || e.name() == "factorial";
    default: return false;
  }
}

/// Integer power with a size guard.
std::optional<Rational> rational_power(const Rational& b, const Integer& e) {
  if (!e.fits_slong_p()) return std::nullopt;
  long n = e.get_si();
  if (b == 0) {
    if (n <= 0) return std::nullopt;
    return Rational(0);
  }
  const std::size_t bits = mpz_sizeinbase(b.get_num_mpz_t(), 2) + mpz_sizeinbase(b.get_den_mpz_t(), 2);
  if (static_cast<double>(bits) * static_cast<double>(std::labs(n)) > 2e6) return std::nullopt;
  Integer num;
  Integer den;
  const unsigned long an = static_cast<unsigned long>(std::labs(n));
  mpz_pow_ui(num.get_mpz_t(), b.get_num_mpz_t(), an);
  mpz_pow_ui(den.get_mpz_t(), b.get_den_mpz_t(), an);
  Rational r = n >= 0 ? Rational(num, den) : Rational(den, num);
  r.canonicalize();
  return r;
}

/// Split a positive integer M = s^q * t with t free of small q-th powers.
void extract_power(const Integer& m, unsigned q, Integer& s, Integer& t) {
  s = 1;
  t = m;
  Integer r;
  if (mpz_root(r.get_mpz_t(), m.get_mpz_t(), q) != 0) {
    s = r;
    t = 1;
    return;
  }
  for (unsigned long p = 2; p < 2000; ++p) {
    Integer pq;
    mpz_ui_pow_ui(pq.get_mpz_t(), p, q);
    if (pq > t) break;
    while (t % pq == 0) {
      t /= pq;
      s *= p;
    }
  }
}

Expr pow_const(const Rational& b, const Rational& e) {
  if (e.get_den() == 1) {
    if (auto r = rational_power(b, e.get_num())) return Expr(*r);
    return Expr::raw(Kind::Pow, {Expr(b), Expr(e)});
  }
  if (b < 0) {
    if (e.get_den() == 2) {
      return mul({pow(Expr::imaginary_unit(), Expr(Rational(e.get_num()))), pow_const(-b, e)});
    }
    return Expr::raw(Kind::Pow, {Expr(b), Expr(e)});
  }
  if (!e.get_den().fits_ulong_p() || e.get_den() > 64) return Expr::raw(Kind::Pow, {Expr(b), Expr(e)});
  // b^e = b^n * N^f * D^(1-f) / D, f in (0,1).
  Integer n;
  mpz_fdiv_q(n.get_mpz_t(), e.get_num_mpz_t(), e.get_den_mpz_t());
  const Rational f = e - Rational(n);
  const unsigned q = static_cast<unsigned>(e.get_den().get_ui());
  auto bn = rational_power(b, n);
  if (!bn) return Expr::raw(Kind::Pow, {Expr(b), Expr(e)});
  Rational coef = *bn / Rational(b.get_den());
  const Rational f2 = 1 - f;
  std::vector<Expr> factors;
  auto emit = [&](const Integer& m, const Rational& ex) {
    if (m == 1) return;
    Integer s;
    Integer t;
    extract_power(m, q, s, t);
    // m^ex = s^(q ex) * t^ex, q*ex integer
    const Rational qe = ex * q;
    if (auto sp = rational_power(Rational(s), qe.get_num())) coef *= *sp;
    if (t != 1) factors.push_back(Expr::raw(Kind::Pow, {Expr(Rational(t)), Expr(ex)}));
  };
  emit(b.get_num(), f);
  emit(b.get_den(), f2);
  // Merge t^f * u^f2 only when both present would differ; keep separate.
  std::sort(factors.begin(), factors.end(), ExprLess{});
  if (factors.empty()) return Expr(coef);
  if (coef == 1 && factors.size() == 1) return factors[0];
  std::vector<Expr> all{Expr(coef)};
  all.insert(all.end(), factors.begin(), factors.end());
  if (coef == 1) all.erase(all.begin());
  return Expr::raw(Kind::Mul, std::move(all));
}

bool is_symbolic_negative(const Expr& e) {
  if (e.is_const()) return e.value() < 0;
  if (e.kind() == Kind::Mul) return e.arg(0).is_const() && e.arg(0).value() < 0;
  if (e.kind() == Kind::Add) {
    // Sign of the term with the largest coefficient-free part.
    const Expr* best = nullptr;
    Expr best_rest;
    for (const auto& t : e.args()) {
      if (t.is_const()) continue;
      auto [c, rest] = split_coefficient(t);
      if (best == nullptr || compare(rest, best_rest) > 0) {
        best = &t;
        best_rest = rest;
      }
    }
    return best != nullptr && is_symbolic_negative(*best);
  }
  return false;
}

std::optional<Rational> pi_multiple(const Expr& e) {
  if (e.kind() == Kind::Pi) return Rational(1);
  if (e.kind() == Kind::Mul && e.args().size() == 2 && e.arg(0).is_const() && e.arg(1).kind() == Kind::Pi) {
    return e.arg(0).value();
  }
  return std::nullopt;
}

Expr half_sqrt(long d, const Rational& c) { return mul({Expr(c), pow(Expr(d), Expr(Rational(1, 2)))}); }

std::vector<Rational> chebyshev_coeffs(long n, bool second_kind) {
  std::vector<Rational> a{1};
  std::vector<Rational> b = second_kind ? std::vector<Rational>{0, 2} : std::vector<Rational>{0, 1};
  if (n == 0) return a;
  for (long i = 1; i < n; ++i) {
    std::vector<Rational> c(b.size() + 1);
    for (std::size_t j = 0; j < b.size(); ++j) c[j + 1] += 2 * b[j];
    for (std::size_t j = 0; j < a.size(); ++j) c[j] -= a[j];
    a = std::move(b);
    b = std::move(c);
  }
  return b;
}

std::vector<Rational> legendre_coeffs(long n) {
  std::vector<Rational> a{1};
  std::vector<Rational> b{0, 1};
  if (n == 0) return a;
  for (long i = 1; i < n; ++i) {
    // (i+1) P_{i+1} = (2i+1) x P_i - i P_{i-1}
    std::vector<Rational> c(b.size() + 1);
    for (std::size_t j = 0; j < b.size(); ++j) c[j + 1] += Rational(2 * i + 1) * b[j];
    for (std::size_t j = 0; j < a.size(); ++j) c[j] -= Rational(i) * a[j];
    for (auto& v : c) v /= (i + 1);
    a = std::move(b);
    b = std::move(c);
  }
  return b;
}

std::vector<Rational> hermite_coeffs(long n) {
  std::vector<Rational> a{1};
  std::vector<Rational> b{0, 2};
  if (n == 0) return a;
  for (long i = 1; i < n; ++i) {
    // H_{i+1} = 2x H_i - 2i H_{i-1}
    std::vector<Rational> c(b.size() + 1);
    for (std::size_t j = 0; j < b.size(); ++j) c[j + 1] += 2 * b[j];
    for (std::size_t j = 0; j < a.size(); ++j) c[j] -= Rational(2 * i) * a[j];
    a = std::move(b);
    b = std::move(c);
  }
  return b;
}

Expr poly_in(const std::vector<Rational>& c, const Expr& x) {
  std::vector<Expr> terms;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i] != 0) terms.push_back(mul({Expr(c[i]), pow(x, Expr(static_cast<long>(i)))}));
  }
  return add(std::move(terms));
}

std::optional<long> small_nonneg_int(const Expr& e, long limit) {
  if (!e.is_integer() || e.value() < 0 || e.value() > limit) return std::nullopt;
  return e.value().get_num().get_si();
}

Expr func_impl(const std::string& head, std::vector<Expr> args) {
  auto raw = [&]() { return Expr::raw(Kind::Func, args, head); };
  const std::size_t n = args.size();
  if (head == "exp" && n == 1) {
    const Expr& a = args[0];
    if (a.is_zero()) return Expr(1);
    if (a.is_func("log")) return a.arg(0);
    if (a.kind() == Kind::Mul && a.args().size() == 2 && a.arg(1).is_func("log")) {
      return pow(a.arg(1).arg(0), a.arg(0));
    }
    return raw();
  }
  if (head == "log" && n == 1) {
    const Expr& a = args[0];
    if (a.is_one()) return Expr(0);
    if (a.is_func("exp")) return a.arg(0);
    return raw();
  }
  if ((head == "sin" || head == "cos") && n == 1) {
    const Expr& a = args[0];
    if (auto q = pi_multiple(a)) {
      auto v = head == "sin" ? sin_rational_pi(*q) : cos_rational_pi(*q);
      if (v) return *v;
    }
    if (a.is_zero()) return Expr(head == "sin" ? 0 : 1);
    if (is_symbolic_negative(a)) {
      Expr f = func_impl(head, {-a});
      return head == "sin" ? -f : f;
    }
    return raw();
  }
  if ((head == "tan" || head == "arcsin" || head == "arctan" || head == "arcsinh" || head == "erf") && n == 1) {
    const Expr& a = args[0];
    if (a.is_zero()) return Expr(0);
    if (is_symbolic_negative(a)) return -func_impl(head, {-a});
    return raw();
  }
  if (head == "factorial" && n == 1) {
    if (auto v = small_nonneg_int(args[0], 5000)) {
      Integer f;
      mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(*v));
      return Expr(Rational(f));
    }
    return raw();
  }
  if (head == "pochhammer" && n == 2) {
    const Expr& a = args[0];
    const Expr& m = args[1];
    if (m.is_zero()) return Expr(1);
    if (m.is_integer() && m.value() > 0 && m.value() <= (a.is_const() ? 5000 : 12)) {
      std::vector<Expr> f;
      const long mm = m.value().get_num().get_si();
      for (long j = 0; j < mm; ++j) f.push_back(a + Expr(j));
      return mul(std::move(f));
    }
    if (m.is_integer() && m.value() < 0 && m.value() >= -12) {
      std::vector<Expr> f;
      const long mm = -m.value().get_num().get_si();
      for (long j = 1; j <= mm; ++j) f.push_back(pow(a - Expr(j), Expr(-1)));
      return mul(std::move(f));
    }
    return raw();
  }
  if ((head == "product" || head == "sum") && n == 4) {
    const Expr& lo = args[2];
    const Expr& hi = args[3];
    if (lo.is_integer() && hi.is_integer()) {
      const Integer len = hi.value().get_num() - lo.value().get_num() + 1;
      if (len <= 0) return Expr(head == "product" ? 1 : 0);
      if (len <= 500) {
        std::vector<Expr> items;
        for (Integer i = lo.value().get_num(); i <= hi.value().get_num(); ++i) {
          items.push_back(substitute(args[0], args[1].name(), Expr(Rational(i))));
        }
        return head == "product" ? mul(std::move(items)) : add(std::move(items));
      }
    }
    if (head == "product" && free_of(args[0], args[1].name())) {
      return pow(args[0], hi - lo + Expr(1));
    }
    return raw();
  }
  if ((head == "bessel_j" || head == "bessel_i") && n == 2) {
    const Expr& nu = args[0];
    if (nu.is_integer() && nu.value() < 0) {
      // J_{-n} = (-1)^n J_n, I_{-n} = I_n
      Expr f = func_impl(head, {-nu, args[1]});
      const bool odd = mpz_odd_p(nu.value().get_num_mpz_t()) != 0;
      return head == "bessel_j" && odd ? -f : f;
    }
    if (args[1].is_zero() && nu.is_integer()) return Expr(nu.is_zero() ? 1 : 0);
    return raw();
  }
  if (head == "laguerre" && n == 2) return func_impl(head, {args[0], Expr(0), args[1]});
  if (head == "laguerre" && n == 3) {
    if (auto deg = small_nonneg_int(args[0], 40)) {
      // L_n^a(x) = sum_i (-1)^i poch(a+i+1, n-i)/((n-i)! i!) x^i
      std::vector<Expr> terms;
      for (long i = 0; i <= *deg; ++i) {
        Integer fi;
        Integer fni;
        mpz_fac_ui(fi.get_mpz_t(), static_cast<unsigned long>(i));
        mpz_fac_ui(fni.get_mpz_t(), static_cast<unsigned long>(*deg - i));
        Rational c(i % 2 == 0 ? 1 : -1);
        c /= Rational(fi * fni);
        terms.push_back(mul({Expr(c), expand(pochhammer(args[1] + Expr(i + 1), Expr(*deg - i))),
                             pow(args[2], Expr(i))}));
      }
      return expand(add(std::move(terms)));
    }
    return raw();
  }
  if ((head == "chebyshev_t" || head == "chebyshev_u" || head == "legendre_p" || head == "hermite_h") && n == 2) {
    if (auto deg = small_nonneg_int(args[0], 60)) {
      std::vector<Rational> c;
      if (head == "chebyshev_t") c = chebyshev_coeffs(*deg, false);
      if (head == "chebyshev_u") c = chebyshev_coeffs(*deg, true);
      if (head == "legendre_p") c = legendre_coeffs(*deg);
      if (head == "hermite_h") c = hermite_coeffs(*deg);
      return poly_in(c, args[1]);
    }
    return raw();
  }
  return raw();
}

}  // namespace

// ---------------------------------------------------------------------------
// Builders

Expr add(std::vector<Expr> terms) {
  std::vector<Expr> flat;
  for (auto& t : terms) {
    if (t.kind() == Kind::Add) {
      flat.insert(flat.end(), t.args().begin(), t.args().end());
    } else {
      flat.push_back(std::move(t));
    }
  }
  Rational c = 0;
  std::map<Expr, Rational, ExprLess> coll;
  for (const auto& t : flat) {
    if (t.is_const()) {
      c += t.value();
      continue;
    }
    auto [k, rest] = split_coefficient(t);
    coll[rest] += k;
  }
  std::vector<Expr> out;
  if (c != 0) out.emplace_back(c);
  for (const auto& [rest, k] : coll) {
    if (k != 0) out.push_back(scale_raw(k, rest));
  }
  if (out.empty()) return Expr(0);
  if (out.size() == 1) return out[0];
  std::sort(out.begin(), out.end(), ExprLess{});
  return Expr::raw(Kind::Add, std::move(out));
}

namespace {

/// Merge factorial(a)^p * factorial(b)^q when a - b is a small integer.
void merge_factorials(std::map<Expr, std::vector<Expr>, ExprLess>& powers, std::vector<Expr>& extra) {
  std::vector<Expr> facts;
  for (const auto& [b, e] : powers) {
    if (b.is_func("factorial")) facts.push_back(b);
  }
  for (std::size_t i = 0; i < facts.size(); ++i) {
    for (std::size_t j = 0; j < facts.size(); ++j) {
      if (i == j) continue;
      auto ei = powers.find(facts[i]);
      auto ej = powers.find(facts[j]);
      if (ei == powers.end() || ej == powers.end()) continue;
      const Expr pi = add(ei->second);
      const Expr pj = add(ej->second);
      if (!pi.is_integer() || !pj.is_integer() || pi.value() <= 0 || pj.value() >= 0) continue;
      const Expr d = facts[i].arg(0) - facts[j].arg(0);
      if (!d.is_integer() || d.value() <= 0 || d.value() > 12) continue;
      // a! / b! = (b+1)...(a) with a = b + d
      const Rational cnt = std::min<Rational>(pi.value(), Rational(-pj.value()));
      const long dd = d.value().get_num().get_si();
      for (long s = 1; s <= dd; ++s) extra.push_back(pow(facts[j].arg(0) + Expr(s), Expr(cnt)));
      ei->second = {pi - Expr(cnt)};
      ej->second = {pj + Expr(cnt)};
    }
  }
}

}  // namespace

Expr mul(std::vector<Expr> factors) {
  for (int round = 0; round < 8; ++round) {
    std::vector<Expr> flat;
    for (auto& f : factors) {
      if (f.kind() == Kind::Mul) {
        flat.insert(flat.end(), f.args().begin(), f.args().end());
      } else {
        flat.push_back(std::move(f));
      }
    }
    Rational c = 1;
    std::map<Expr, std::vector<Expr>, ExprLess> powers;
    for (const auto& f : flat) {
      if (f.is_const()) {
        c *= f.value();
      } else if (f.kind() == Kind::Pow) {
        powers[f.base()].push_back(f.exponent());
      } else {
        powers[f].push_back(Expr(1));
      }
    }
    if (c == 0) return Expr(0);
    std::vector<Expr> extra;
    if (powers.size() > 1) merge_factorials(powers, extra);
    std::vector<Expr> out;
    bool again = !extra.empty();
    for (auto& x : extra) out.push_back(x);
    for (const auto& [b, es] : powers) {
      const bool merged = es.size() > 1;
      Expr p = merged || !(es[0].is_one()) ? pow(b, add(es)) : b;
      if (p.is_const()) {
        c *= p.value();
        continue;
      }
      if (p.kind() == Kind::Mul || (merged && p.kind() == Kind::Pow && compare(p.base(), b) != 0)) again = true;
      out.push_back(p);
    }
    if (again) {
      out.emplace_back(c);
      factors = std::move(out);
      continue;
    }
    std::sort(out.begin(), out.end(), ExprLess{});
    if (out.empty()) return Expr(c);
    if (c == 1 && out.size() == 1) return out[0];
    if (c != 1) out.insert(out.begin(), Expr(c));
    return Expr::raw(Kind::Mul, std::move(out));
  }
  // Fallback: give up merging further.
  std::sort(factors.begin(), factors.end(), ExprLess{});
  return Expr::raw(Kind::Mul, std::move(factors));
}

Expr pow(const Expr& b, const Expr& e) {
  if (e.is_zero()) return Expr(1);
  if (e.is_one()) return b;
  if (b.is_one()) return Expr(1);
  if (b.is_zero() && e.is_const() && e.value() > 0) return Expr(0);
  if (b.is_const() && e.is_const()) return pow_const(b.value(), e.value());
  if (b.kind() == Kind::ImaginaryUnit && e.is_integer()) {
    Integer r;
    mpz_fdiv_r_ui(r.get_mpz_t(), e.value().get_num_mpz_t(), 4);
    const long k = r.get_si();
    if (k == 0) return Expr(1);
    if (k == 1) return b;
    if (k == 2) return Expr(-1);
    return mul({Expr(-1), b});
  }
  if (b.is_func("exp") && b.arg(0).is_one()) return exp(e);
  if (b.kind() == Kind::Pow) {
    const Expr& b2 = b.base();
    if (e.is_integer() || b2.is_symbol() || (b2.is_const() && b2.value() > 0) || b2.kind() == Kind::Pi) {
      return pow(b2, mul({b.exponent(), e}));
    }
  }
  if (b.kind() == Kind::Mul) {
    if (e.is_integer()) {
      std::vector<Expr> f;
      for (const auto& x : b.args()) f.push_back(pow(x, e));
      return mul(std::move(f));
    }
    std::vector<Expr> pos;
    std::vector<Expr> rest;
    for (const auto& x : b.args()) (is_positive_factor(x) ? pos : rest).push_back(x);
    if (!pos.empty()) {
      std::vector<Expr> f;
      for (const auto& x : pos) f.push_back(pow(x, e));
      if (!rest.empty()) {
        const Expr r = rest.size() == 1 ? rest[0] : Expr::raw(Kind::Mul, rest);
        f.push_back(Expr::raw(Kind::Pow, {r, e}));
      }
      return mul(std::move(f));
    }
  }
  return Expr::raw(Kind::Pow, {b, e});
}

Expr func(const std::string& head, std::vector<Expr> args) { return func_impl(head, std::move(args)); }

Expr operator+(const Expr& a, const Expr& b) { return add({a, b}); }
Expr operator-(const Expr& a, const Expr& b) { return add({a, mul({Expr(-1), b})}); }
Expr operator-(const Expr& a) { return mul({Expr(-1), a}); }
Expr operator*(const Expr& a, const Expr& b) { return mul({a, b}); }
Expr operator/(const Expr& a, const Expr& b) { return mul({a, pow(b, Expr(-1))}); }
Expr sqrt(const Expr& a) { return pow(a, Expr(Rational(1, 2))); }
Expr exp(const Expr& a) { return func("exp", {a}); }
Expr log(const Expr& a) { return func("log", {a}); }
Expr sin(const Expr& a) { return func("sin", {a}); }
Expr cos(const Expr& a) { return func("cos", {a}); }
Expr factorial(const Expr& a) { return func("factorial", {a}); }
Expr pochhammer(const Expr& a, const Expr& n) { return func("pochhammer", {a, n}); }
Expr product(const Expr& f, const std::string& j, const Expr& lo, const Expr& hi) {
  return func("product", {f, Expr::variable(j), lo, hi});
}

bool is_known_head(const std::string& head) {
  static const std::set<std::string> heads = {
      "exp",        "log",         "sin",        "cos",        "tan",       "arcsin",    "arctan",
      "arcsinh",    "factorial",   "pochhammer", "product",    "sum",       "bessel_j",  "bessel_i",
      "bessel_y",   "airy_ai",     "airy_ai_prime", "laguerre", "chebyshev_t", "chebyshev_u",
      "legendre_p", "hermite_h",   "erf"};
  return heads.contains(head);
}

// ---------------------------------------------------------------------------
// Traversal

namespace {

Expr rebuild(const Expr& e, std::vector<Expr> args) {
  switch (e.kind()) {
    case Kind::Add: return add(std::move(args));
    case Kind::Mul: return mul(std::move(args));
    case Kind::Pow: return pow(args[0], args[1]);
    case Kind::Func: return func(e.name(), std::move(args));
    default: return e;
  }
}

}  // namespace

Expr map_expr(const Expr& e, const std::function<Expr(const Expr&)>& f) {
  if (e.args().empty()) return f(e);
  std::vector<Expr> args;
  args.reserve(e.args().size());
  bool changed = false;
  for (const auto& a : e.args()) {
    args.push_back(map_expr(a, f));
    changed = changed || !(args.back() == a);
  }
  return f(changed ? rebuild(e, std::move(args)) : e);
}

Expr normalize(const Expr& e) {
  if (e.args().empty()) return e;
  std::vector<Expr> args;
  for (const auto& a : e.args()) args.push_back(normalize(a));
  return rebuild(e, std::move(args));
}

bool free_of(const Expr& e, const std::string& var) {
  if (e.is_symbol()) return e.name() != var;
  for (const auto& a : e.args()) {
    if (!free_of(a, var)) return false;
  }
  return true;
}

bool contains_head(const Expr& e, const std::string& head) {
  if (e.is_func(head)) return true;
  for (const auto& a : e.args()) {
    if (contains_head(a, head)) return true;
  }
  return false;
}

void collect_symbols(const Expr& e, std::set<std::string>& out) {
  if (e.is_symbol()) out.insert(e.name());
  for (const auto& a : e.args()) collect_symbols(a, out);
}

Expr substitute(const Expr& e, const std::string& var, const Expr& value) {
  if (e.is_symbol()) return e.name() == var ? value : e;
  if (free_of(e, var)) return e;
  if ((e.is_func("product") || e.is_func("sum")) && e.arg(1).name() == var) {
    return func(e.name(), {e.arg(0), e.arg(1), substitute(e.arg(2), var, value), substitute(e.arg(3), var, value)});
  }
  std::vector<Expr> args;
  for (const auto& a : e.args()) args.push_back(substitute(a, var, value));
  return rebuild(e, std::move(args));
}

Expr mark_parameters(const Expr& e, const std::string& main) {
  if (e.is_symbol()) return e.name() == main ? Expr::variable(e.name()) : Expr::parameter(e.name());
  if (e.args().empty()) return e;
  std::vector<Expr> args;
  for (const auto& a : e.args()) args.push_back(mark_parameters(a, main));
  return Expr::raw(e.kind(), std::move(args), e.name(), e.value());
}

Expr expand(const Expr& e) {
  switch (e.kind()) {
    case Kind::Add: {
      std::vector<Expr> t;
      for (const auto& a : e.args()) t.push_back(expand(a));
      return add(std::move(t));
    }
    case Kind::Mul: {
      std::vector<Expr> acc{Expr(1)};
      for (const auto& a : e.args()) {
        const Expr x = expand(a);
        const std::vector<Expr> xs = x.kind() == Kind::Add ? x.args() : std::vector<Expr>{x};
        std::vector<Expr> next;
        for (const auto& p : acc) {
          for (const auto& q : xs) next.push_back(mul({p, q}));
        }
        acc = {add(std::move(next))};
        if (acc[0].kind() == Kind::Add) acc = acc[0].args();
      }
      return add(std::move(acc));
    }
    case Kind::Pow: {
      const Expr b = expand(e.base());
      if (b.kind() == Kind::Add && e.exponent().is_integer() && e.exponent().value() > 1 &&
          e.exponent().value() <= 32) {
        const long n = e.exponent().value().get_num().get_si();
        std::vector<Expr> acc{Expr(1)};
        for (long i = 0; i < n; ++i) {
          std::vector<Expr> next;
          for (const auto& p : acc) {
            for (const auto& q : b.args()) next.push_back(mul({p, q}));
          }
          const Expr sum = add(std::move(next));
          acc = sum.kind() == Kind::Add ? sum.args() : std::vector<Expr>{sum};
        }
        return add(std::move(acc));
      }
      return pow(b, e.exponent());
    }
    default:
      return e;
  }
}

// ---------------------------------------------------------------------------
// Trigonometric table

std::optional<Expr> sin_rational_pi(const Rational& q0) {
  // Reduce to r in [0, 1/2] with a sign.
  Rational q = q0;
  Integer fl;
  Rational two = 2;
  mpz_fdiv_q(fl.get_mpz_t(), Rational(q / two).get_num_mpz_t(), Rational(q / two).get_den_mpz_t());
  q -= two * Rational(fl);
  int sign = 1;
  if (q >= 1) {
    q -= 1;
    sign = -1;
  }
  if (q > Rational(1, 2)) q = 1 - q;
  Expr v;
  if (q == 0) {
    v = Expr(0);
  } else if (q == Rational(1, 6)) {
    v = Expr(Rational(1, 2));
  } else if (q == Rational(1, 4)) {
    v = half_sqrt(2, Rational(1, 2));
  } else if (q == Rational(1, 3)) {
    v = half_sqrt(3, Rational(1, 2));
  } else if (q == Rational(1, 2)) {
    v = Expr(1);
  } else if (q == Rational(1, 12)) {
    v = half_sqrt(6, Rational(1, 4)) - half_sqrt(2, Rational(1, 4));
  } else if (q == Rational(5, 12)) {
    v = half_sqrt(6, Rational(1, 4)) + half_sqrt(2, Rational(1, 4));
  } else {
    return std::nullopt;
  }
  return sign > 0 ? v : -v;
}

std::optional<Expr> cos_rational_pi(const Rational& q) { return sin_rational_pi(q + Rational(1, 2)); }

}  // namespace fps
