#include "kernel.hpp"

#include <functional>

#include "fps/bridge.hpp"
#include "fps/database.hpp"
#include "fps/de.hpp"

namespace fps::detail {

namespace {

bool is_log_like(const std::string& h) {
  return h == "log" || h == "arctan" || h == "arcsin" || h == "arcsinh" || h == "erf";
}

/// e = k + rest with k an integer taken from the constant part of e.
std::pair<long, Field> split_exponent(const Field& e) {
  Rational c;
  if (e.is_rational()) {
    c = e.constant_value();
  } else {
    const Rational d = e.den().constant_term();
    if (d == 0) return {0, e};
    c = e.num().constant_term() / d;
  }
  Integer k;
  mpz_fdiv_q(k.get_mpz_t(), c.get_num_mpz_t(), c.get_den_mpz_t());
  const long kl = k.get_si();
  return {kl, e - Field(kl)};
}

/// Split an argument into its variable-free part and the rest.
std::pair<Expr, Expr> split_constant_part(const Expr& g, const std::string& var) {
  if (g.kind() != Kind::Add) return free_of(g, var) ? std::pair{g, Expr(0)} : std::pair{Expr(0), g};
  std::vector<Expr> c;
  std::vector<Expr> u;
  for (const auto& t : g.args()) (free_of(t, var) ? c : u).push_back(t);
  return {add(c), add(u)};
}

template <class M>
void bump(M& m, const Expr& k, int da, int db) {
  auto& p = m[k];
  p.first += da;
  p.second += db;
  if (p.first == 0 && p.second == 0) m.erase(k);
}

Expr derivative_marker(const Expr& f) { return Expr::raw(Kind::Func, {f}, "~d"); }

}  // namespace

bool Sig::empty() const {
  return powers.empty() && exp_arg.is_zero() && trig.empty() && tans.empty() && logs.empty() && holo.empty();
}

Expr Sig::key() const {
  std::vector<Expr> f;
  for (const auto& [b, e] : powers) f.push_back(Expr::raw(Kind::Pow, {b, e}));
  if (!exp_arg.is_zero()) f.push_back(Expr::raw(Kind::Func, {exp_arg}, "exp"));
  for (const auto& [u, p] : trig) {
    f.push_back(Expr::raw(Kind::Pow, {Expr::raw(Kind::Func, {u}, "sin"), Expr(p.first)}));
    f.push_back(Expr::raw(Kind::Pow, {Expr::raw(Kind::Func, {u}, "cos"), Expr(p.second)}));
  }
  for (const auto& [u, k] : tans) f.push_back(Expr::raw(Kind::Pow, {Expr::raw(Kind::Func, {u}, "tan"), Expr(k)}));
  for (const auto& [g, k] : logs) f.push_back(Expr::raw(Kind::Pow, {g, Expr(k)}));
  for (const auto& [g, p] : holo) {
    f.push_back(Expr::raw(Kind::Pow, {g, Expr(p.first)}));
    f.push_back(Expr::raw(Kind::Pow, {derivative_marker(g), Expr(p.second)}));
  }
  return Expr::raw(Kind::Mul, std::move(f));
}

Expr Sig::to_expr() const {
  std::vector<Expr> f;
  for (const auto& [b, e] : powers) f.push_back(pow(b, e));
  if (!exp_arg.is_zero()) f.push_back(exp(exp_arg));
  for (const auto& [u, p] : trig) {
    f.push_back(pow(sin(u), Expr(p.first)));
    f.push_back(pow(cos(u), Expr(p.second)));
  }
  for (const auto& [u, k] : tans) f.push_back(pow(func("tan", {u}), Expr(k)));
  for (const auto& [g, k] : logs) f.push_back(pow(g, Expr(k)));
  for (const auto& [g, p] : holo) {
    f.push_back(pow(g, Expr(p.first)));
    if (p.second == 0) continue;
    const Expr u = g.args().back();
    Expr d;
    if (g.name() == "airy_ai") {
      d = func("airy_ai_prime", {u});
    } else {
      std::vector<Expr> a(g.args().begin(), g.args().end() - 1);
      a.push_back(Expr::variable("~t"));
      d = substitute(differentiate(func(g.name(), a), "~t"), "~t", u);
    }
    f.push_back(pow(d, Expr(p.second)));
  }
  return mul(std::move(f));
}

LinComb KernelAlgebra::constant(const Field& c) const { return single(Sig{}, c); }

LinComb KernelAlgebra::single(const Sig& s, const Field& c) const {
  LinComb out;
  add_to(out, s, c);
  return out;
}

void KernelAlgebra::add_to(LinComb& out, const Sig& s, const Field& c) const {
  if (c.is_zero()) return;
  const int deg = std::max(c.num().degree(var_), c.den().degree(var_));
  if (deg > guard_) throw DegreeExceeded{deg};
  const Expr k = s.key();
  auto it = out.find(k);
  if (it == out.end()) {
    out.emplace(k, std::pair{s, c});
    return;
  }
  it->second.second += c;
  if (it->second.second.is_zero()) out.erase(it);
}

void KernelAlgebra::add_all(LinComb& out, const LinComb& l, const Field& scale) const {
  for (const auto& [k, sc] : l) add_to(out, sc.first, sc.second * scale);
}

namespace {

/// Rewrite cos^2 = 1 - sin^2 until every cos power is 0 or 1.
void reduce_into(const Sig& s, const Field& c, const std::function<void(const Sig&, const Field&)>& emit) {
  for (const auto& [u, p] : s.trig) {
    if (p.second < 2) continue;
    Sig a = s;
    a.trig[u].second -= 2;
    if (a.trig[u] == std::pair{0, 0}) a.trig.erase(u);
    reduce_into(a, c, emit);
    Sig b = s;
    b.trig[u].second -= 2;
    b.trig[u].first += 2;
    reduce_into(b, -c, emit);
    return;
  }
  emit(s, c);
}

}  // namespace

LinComb KernelAlgebra::mul_sig(const Sig& a, const Sig& b) const {
  Sig s = a;
  Field pref(1);
  for (const auto& [base, e] : b.powers) {
    auto it = s.powers.find(base);
    if (it == s.powers.end()) {
      s.powers.emplace(base, e);
      continue;
    }
    auto [k, rest] = split_exponent(to_field_or_throw(it->second) + to_field_or_throw(e));
    pref *= to_field_or_throw(base).pow(k);
    if (rest.is_zero()) {
      s.powers.erase(it);
    } else {
      it->second = from_field(rest);
    }
  }
  s.exp_arg = s.exp_arg + b.exp_arg;
  for (const auto& [u, p] : b.trig) bump(s.trig, u, p.first, p.second);
  for (const auto& [u, k] : b.tans) {
    if ((s.tans[u] += k) == 0) s.tans.erase(u);
  }
  for (const auto& [g, k] : b.logs) {
    if ((s.logs[g] += k) == 0) s.logs.erase(g);
  }
  for (const auto& [g, p] : b.holo) bump(s.holo, g, p.first, p.second);
  LinComb out;
  reduce_into(s, pref, [&](const Sig& r, const Field& c) { add_to(out, r, c); });
  return out;
}

LinComb KernelAlgebra::mul(const LinComb& a, const LinComb& b) const {
  LinComb out;
  for (const auto& [ka, sa] : a) {
    for (const auto& [kb, sb] : b) add_all(out, mul_sig(sa.first, sb.first), sa.second * sb.second);
  }
  return out;
}

LinComb KernelAlgebra::power_of_field(const Field& b, const Field& e) const {
  if (!b.has_symbol(var_)) return constant(to_field_or_throw(pow(from_field(b), from_field(e))));
  // Scale the base so that its value at 0 (or its leading coefficient) is 1.
  Field c0;
  const Poly num0 = b.num().substitute(var_, Poly());
  const Poly den0 = b.den().substitute(var_, Poly());
  if (!num0.is_zero() && !den0.is_zero()) {
    c0 = Field(num0, den0);
  } else {
    c0 = Field(b.num().coefficients_in(var_).back(), b.den().coefficients_in(var_).back());
  }
  const Field b0 = b / c0;
  auto [k, rest] = split_exponent(e);
  Field pref = b0.pow(k);
  if (!c0.is_one()) pref *= to_field_or_throw(pow(from_field(c0), from_field(e)));
  Sig s;
  if (!rest.is_zero()) s.powers.emplace(from_field(b0), from_field(rest));
  return single(s, pref);
}

LinComb KernelAlgebra::pow_term(const Sig& s, const Field& c, const Expr& e) const {
  if (!s.trig.empty() || !s.tans.empty() || !s.logs.empty() || !s.holo.empty()) {
    throw NonDecomposable("non-integer power of a transcendental kernel");
  }
  const Field ef = to_field_or_throw(e);
  LinComb out = power_of_field(c, ef);
  Sig t;
  Field pref(1);
  for (const auto& [base, x] : s.powers) {
    auto [k, rest] = split_exponent(to_field_or_throw(x) * ef);
    pref *= to_field_or_throw(base).pow(k);
    if (!rest.is_zero()) t.powers.emplace(base, from_field(rest));
  }
  if (!s.exp_arg.is_zero()) t.exp_arg = s.exp_arg * e;
  return mul(out, single(t, pref));
}

LinComb KernelAlgebra::decompose(const Expr& e) const {
  if (free_of(e, var_)) return constant(to_field_or_throw(e));
  if (auto f = to_field(e, {var_})) return constant(*f);
  switch (e.kind()) {
    case Kind::Add: {
      LinComb out;
      for (const auto& t : e.args()) add_all(out, decompose(t), Field(1));
      return out;
    }
    case Kind::Mul: {
      LinComb out = constant(Field(1));
      for (const auto& t : e.args()) out = mul(out, decompose(t));
      return out;
    }
    case Kind::Pow: {
      const Expr& x = e.exponent();
      if (!free_of(x, var_)) return decompose(exp(x * log(e.base())));
      LinComb b = decompose(e.base());
      if (x.is_integer() && x.value() > 0) {
        LinComb out = b;
        for (long i = 1; i < x.value().get_num().get_si(); ++i) out = mul(out, b);
        return out;
      }
      if (b.size() != 1) throw NonDecomposable("power of a sum of kernels: " + to_text(e));
      const auto& [s, c] = b.begin()->second;
      return pow_term(s, c, x);
    }
    case Kind::Func: return atom(e);
    default: throw NonDecomposable("unsupported node in " + to_text(e));
  }
}

LinComb KernelAlgebra::atom(const Expr& e) const {
  const std::string& h = e.name();
  Sig s;
  if (h == "exp") {
    auto [c, u] = split_constant_part(e.arg(0), var_);
    s.exp_arg = u;
    return single(s, to_field_or_throw(exp(c)));
  }
  if (h == "sin" || h == "cos") {
    auto [c, u] = split_constant_part(e.arg(0), var_);
    if (!c.is_zero()) {
      if (h == "sin") return decompose(sin(u) * cos(c) + cos(u) * sin(c));
      return decompose(cos(u) * cos(c) - sin(u) * sin(c));
    }
    s.trig[u] = h == "sin" ? std::pair{1, 0} : std::pair{0, 1};
    return single(s, Field(1));
  }
  if (h == "tan") {
    s.tans[e.arg(0)] = 1;
    return single(s, Field(1));
  }
  if (is_log_like(h)) {
    s.logs[e] = 1;
    return single(s, Field(1));
  }
  if (is_holonomic_head(h) || h == "airy_ai_prime") {
    const Expr& u = e.args().back();
    std::vector<Field> params;
    for (std::size_t i = 0; i + 1 < e.args().size(); ++i) {
      if (!free_of(e.arg(i), var_)) throw NonDecomposable("index depends on the variable in " + to_text(e));
      params.push_back(to_field_or_throw(e.arg(i)));
    }
    if (!to_field(u, {var_})) throw NonDecomposable("non-rational argument in " + to_text(e));
    const std::string head = h == "airy_ai_prime" ? "airy_ai" : h;
    if (!function_ode(head, params, "~u")) throw NonDecomposable("no differential equation for " + to_text(e));
    const Expr key = h == "airy_ai_prime" ? func("airy_ai", {u}) : e;
    s.holo[key] = h == "airy_ai_prime" ? std::pair{0, 1} : std::pair{1, 0};
    return single(s, Field(1));
  }
  throw NonDecomposable("no kernel rule for " + to_text(e));
}

LinComb KernelAlgebra::decompose_diff(const Expr& e) const { return decompose(differentiate(e, var_)); }

LinComb KernelAlgebra::sig_derivative(const Sig& s) const {
  LinComb out;
  for (const auto& [base, x] : s.powers) {
    const Field b = to_field_or_throw(base);
    add_to(out, s, to_field_or_throw(x) * b.derivative(var_) / b);
  }
  if (!s.exp_arg.is_zero()) add_all(out, mul(decompose_diff(s.exp_arg), single(s, Field(1))), Field(1));
  for (const auto& [u, p] : s.trig) {
    LinComb piece;
    auto [a, b] = p;
    auto emit = [&](const Sig& r, const Field& c) { add_to(piece, r, c); };
    if (a > 0) {
      Sig t = s;
      bump(t.trig, u, -1, 1);
      reduce_into(t, Field(static_cast<long>(a)), emit);
    }
    if (b > 0) {
      Sig t = s;
      bump(t.trig, u, 1, -1);
      reduce_into(t, Field(static_cast<long>(-b)), emit);
    }
    add_all(out, mul(piece, decompose_diff(u)), Field(1));
  }
  for (const auto& [u, k] : s.tans) {
    LinComb piece;
    Sig lo = s;
    if (--lo.tans[u] == 0) lo.tans.erase(u);
    Sig hi = s;
    ++hi.tans[u];
    add_to(piece, lo, Field(static_cast<long>(k)));
    add_to(piece, hi, Field(static_cast<long>(k)));
    add_all(out, mul(piece, decompose_diff(u)), Field(1));
  }
  for (const auto& [g, k] : s.logs) {
    Sig lo = s;
    if (--lo.logs[g] == 0) lo.logs.erase(g);
    add_all(out, mul(single(lo, Field(static_cast<long>(k))), decompose_diff(g)), Field(1));
  }
  for (const auto& [g, p] : s.holo) {
    const Field u = *to_field(g.args().back(), {var_});
    std::vector<Field> params;
    for (std::size_t i = 0; i + 1 < g.args().size(); ++i) params.push_back(to_field_or_throw(g.arg(i)));
    const auto ode = *function_ode(g.name(), params, "~u");
    const Field c2 = ode.c2.substitute("~u", u);
    const Field c1 = ode.c1.substitute("~u", u);
    const Field c0 = ode.c0.substitute("~u", u);
    const Field du = u.derivative(var_);
    auto [a, b] = p;
    if (a > 0) {
      Sig t = s;
      bump(t.holo, g, -1, 1);
      add_to(out, t, Field(static_cast<long>(a)) * du);
    }
    if (b > 0) {
      add_to(out, s, -Field(static_cast<long>(b)) * du * c1 / c2);
      Sig t = s;
      bump(t.holo, g, 1, -1);
      add_to(out, t, -Field(static_cast<long>(b)) * du * c0 / c2);
    }
  }
  return out;
}

LinComb KernelAlgebra::derivative(const LinComb& l) const {
  LinComb out;
  for (const auto& [k, sc] : l) {
    const auto& [s, c] = sc;
    add_to(out, s, c.derivative(var_));
    add_all(out, sig_derivative(s), c);
  }
  return out;
}

}  // namespace fps::detail

namespace fps {

std::vector<KernelTerm> kernel_decompose(const Expr& e, const std::string& var) {
  detail::KernelAlgebra alg(var, 1 << 20);
  std::vector<KernelTerm> out;
  for (const auto& [k, sc] : alg.decompose(e)) out.push_back({sc.first.to_expr(), sc.second});
  return out;
}

}  // namespace fps
