#include "fps/field.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace fps {

// ---------------------------------------------------------------------------
// Field

Field::Field(const Poly& num, const Poly& den) : num_(num), den_(den) { normalize(); }

void Field::normalize() {
  if (den_.is_zero()) throw std::domain_error("division by zero");
  while (den_.has_surds()) {
    std::string s;
    for (const auto& sym : den_.symbols()) {
      if (is_surd_symbol(sym)) {
        s = sym;
        break;
      }
    }
    const Poly c = den_.conjugate(s);
    num_ = num_ * c;
    den_ = den_ * c;
  }
  if (num_.is_zero()) {
    den_ = Poly(1);
    return;
  }
  if (den_.is_constant()) {
    if (!den_.is_one()) {
      num_ = num_.scaled(1 / den_.constant_value());
      den_ = Poly(1);
    }
    return;
  }
  const Poly g = gcd(num_, den_);
  if (!g.is_constant()) {
    num_ = num_.exact_div(g);
    den_ = den_.exact_div(g);
  }
  const Rational lc = den_.leading().coef;
  if (lc != 1) {
    num_ = num_.scaled(1 / lc);
    den_ = den_.scaled(1 / lc);
  }
}

Rational Field::constant_value() const {
  if (!is_constant()) throw std::logic_error("field element is not constant: " + to_string(*this));
  return num_.constant_value() / den_.constant_value();
}

std::set<std::string> Field::symbols() const {
  auto s = num_.symbols();
  auto d = den_.symbols();
  s.insert(d.begin(), d.end());
  return s;
}

Field Field::operator-() const {
  Field f = *this;
  f.num_ = -f.num_;
  return f;
}

Field& Field::operator+=(const Field& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  if (den_ == o.den_) {
    num_ += o.num_;
    if (!den_.is_one()) normalize();
    return *this;
  }
  if (o.den_.is_one()) {
    num_ += o.num_ * den_;
    return *this;  // still in lowest terms
  }
  if (den_.is_one()) {
    num_ = num_ * o.den_ + o.num_;
    den_ = o.den_;
    return *this;
  }
  num_ = num_ * o.den_ + o.num_ * den_;
  den_ = den_ * o.den_;
  normalize();
  return *this;
}

Field& Field::operator-=(const Field& o) { return *this += -o; }

Field& Field::operator*=(const Field& o) {
  if (is_zero() || o.is_zero()) return *this = Field();
  if (o.is_constant()) {
    num_ = num_.scaled(o.constant_value());
    return *this;
  }
  if (is_constant()) {
    const Rational c = constant_value();
    *this = o;
    num_ = num_.scaled(c);
    return *this;
  }
  num_ = num_ * o.num_;
  den_ = den_ * o.den_;
  if (!den_.is_one()) normalize();
  return *this;
}

Field& Field::operator/=(const Field& o) {
  if (o.is_zero()) throw std::domain_error("division by zero");
  if (o.is_constant()) {
    num_ = num_.scaled(1 / o.constant_value());
    return *this;
  }
  Field inv;
  inv.num_ = o.den_;
  inv.den_ = o.num_;
  inv.normalize();
  return *this *= inv;
}

Field Field::pow(long n) const {
  if (n < 0) return Field(1) / pow(-n);
  Field result(1);
  Field base = *this;
  while (n > 0) {
    if (n & 1) result *= base;
    n >>= 1;
    if (n > 0) base *= base;
  }
  return result;
}

bool Field::operator==(const Field& o) const {
  if (num_ == o.num_ && den_ == o.den_) return true;
  return (num_ * o.den_ - o.num_ * den_).is_zero();
}

Field Field::derivative(const std::string& var) const {
  if (!has_symbol(var)) return {};
  if (den_.is_one()) return Field(num_.derivative(var));
  return Field(num_.derivative(var) * den_ - num_ * den_.derivative(var), den_ * den_);
}

namespace {

Field horner(const Poly& p, const std::string& var, const Field& value) {
  auto coeffs = p.coefficients_in(var);
  Field r;
  for (std::size_t i = coeffs.size(); i-- > 0;) r = r * value + Field(coeffs[i]);
  return r;
}

}  // namespace

Field Field::substitute(const std::string& var, const Field& value) const {
  if (!has_symbol(var)) return *this;
  if (value.is_polynomial() && value.den_.is_one()) {
    return Field(num_.substitute(var, value.num_), den_.substitute(var, value.num_));
  }
  return horner(num_, var, value) / horner(den_, var, value);
}

Field Field::substitute_all(const std::vector<std::pair<std::string, Field>>& values) const {
  // Substitute through fresh placeholders so replacements do not interact.
  Field r = *this;
  std::vector<std::pair<std::string, Field>> staged;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!r.has_symbol(values[i].first)) continue;
    const std::string tmp = "~" + std::to_string(i);
    r = r.substitute(values[i].first, Field::symbol(tmp));
    staged.emplace_back(tmp, values[i].second);
  }
  for (const auto& [tmp, v] : staged) r = r.substitute(tmp, v);
  return r;
}

Field Field::conjugate(const std::string& surd) const { return Field(num_.conjugate(surd), den_); }

int compare(const Field& a, const Field& b) {
  if (int c = compare(a.den(), b.den()); c != 0) return c;
  return compare(a.num(), b.num());
}

std::string to_string(const Field& f) {
  if (f.den().is_one()) return to_string(f.num());
  return "(" + to_string(f.num()) + ")/(" + to_string(f.den()) + ")";
}

// ---------------------------------------------------------------------------
// Radicals

namespace {

/// Trial-division factorization; returns false if a large cofactor remains
/// that is not certainly prime.
bool factor_integer(Integer n, std::map<Integer, int>& out) {
  if (n < 0) n = -n;
  for (Integer p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    while (n % p == 0) {
      ++out[p];
      n /= p;
    }
    if (p > 1000000) {
      if (mpz_probab_prime_p(n.get_mpz_t(), 30) == 0) return false;
      break;
    }
  }
  if (n > 1) ++out[n];
  return true;
}

}  // namespace

std::optional<Field> sqrt_rational(const Rational& r) {
  if (r == 0) return Field();
  Integer m = r.get_num() * r.get_den();
  const bool negative = m < 0;
  std::map<Integer, int> f;
  if (!factor_integer(m, f)) return std::nullopt;
  Integer square = 1;
  Field result(1);
  for (const auto& [p, e] : f) {
    for (int i = 0; i < e / 2; ++i) square *= p;
    if (e % 2 == 1) {
      if (!p.fits_slong_p()) return std::nullopt;
      result *= Field::symbol(surd_symbol(p.get_si()));
    }
  }
  if (negative) result *= Field::symbol(surd_symbol(-1));
  return result * Field(Rational(square, r.get_den()));
}

std::optional<Rational> rational_root(const Rational& r, unsigned p) {
  if (r < 0) {
    if (p % 2 == 0) return std::nullopt;
    auto s = rational_root(-r, p);
    if (!s) return std::nullopt;
    return Rational(-*s);
  }
  Integer a;
  Integer b;
  if (mpz_root(a.get_mpz_t(), r.get_num_mpz_t(), p) == 0) return std::nullopt;
  if (mpz_root(b.get_mpz_t(), r.get_den_mpz_t(), p) == 0) return std::nullopt;
  return Rational(a, b);
}

// ---------------------------------------------------------------------------
// UPoly

UPoly::UPoly(std::vector<Field> coeffs) : c_(std::move(coeffs)) { trim(); }

void UPoly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

UPoly UPoly::from_field(const Field& f, const std::string& var) {
  if (f.den().has_symbol(var)) throw std::logic_error("not a polynomial in " + var);
  const Field inv_den = Field(1) / Field(f.den());
  std::vector<Field> c;
  for (const auto& p : f.num().coefficients_in(var)) c.push_back(Field(p) * inv_den);
  return UPoly(std::move(c));
}

UPoly UPoly::monomial(int degree, const Field& c) {
  std::vector<Field> v(static_cast<std::size_t>(degree + 1));
  v.back() = c;
  return UPoly(std::move(v));
}

Field UPoly::to_field(const std::string& var) const { return eval(Field::symbol(var)); }

Field UPoly::eval(const Field& x) const {
  Field r;
  for (std::size_t i = c_.size(); i-- > 0;) r = r * x + c_[i];
  return r;
}

UPoly UPoly::operator-() const {
  UPoly p = *this;
  for (auto& c : p.c_) c = -c;
  return p;
}

UPoly operator+(const UPoly& a, const UPoly& b) {
  std::vector<Field> c(std::max(a.c_.size(), b.c_.size()));
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i < a.c_.size()) c[i] += a.c_[i];
    if (i < b.c_.size()) c[i] += b.c_[i];
  }
  return UPoly(std::move(c));
}

UPoly operator-(const UPoly& a, const UPoly& b) { return a + (-b); }

UPoly operator*(const UPoly& a, const UPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Field> c(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
  }
  return UPoly(std::move(c));
}

UPoly UPoly::scaled(const Field& k) const {
  std::vector<Field> c = c_;
  for (auto& x : c) x *= k;
  return UPoly(std::move(c));
}

UPoly UPoly::monic() const {
  if (is_zero()) return {};
  return scaled(Field(1) / lc());
}

UPoly UPoly::derivative() const {
  std::vector<Field> c;
  for (std::size_t i = 1; i < c_.size(); ++i) c.push_back(c_[i] * Field(static_cast<long>(i)));
  return UPoly(std::move(c));
}

UPoly UPoly::taylor_shift(const Field& a) const {
  // Horner with the polynomial (x + a).
  const UPoly xa(std::vector<Field>{a, Field(1)});
  UPoly r;
  for (std::size_t i = c_.size(); i-- > 0;) r = r * xa + UPoly(std::vector<Field>{c_[i]});
  return r;
}

void UPoly::divmod(const UPoly& d, UPoly& q, UPoly& r) const {
  if (d.is_zero()) throw std::domain_error("polynomial division by zero");
  std::vector<Field> rem = c_;
  const int dd = d.degree();
  std::vector<Field> quo(static_cast<std::size_t>(std::max(degree() - dd + 1, 0)));
  const Field inv = Field(1) / d.lc();
  for (int i = degree(); i >= dd; --i) {
    const Field c = rem[static_cast<std::size_t>(i)] * inv;
    if (c.is_zero()) continue;
    quo[static_cast<std::size_t>(i - dd)] = c;
    for (int j = 0; j <= dd; ++j) rem[static_cast<std::size_t>(i - dd + j)] -= c * d.c_[static_cast<std::size_t>(j)];
  }
  q = UPoly(std::move(quo));
  r = UPoly(std::move(rem));
}

UPoly gcd(const UPoly& a, const UPoly& b) {
  UPoly x = a;
  UPoly y = b;
  while (!y.is_zero()) {
    UPoly q;
    UPoly r;
    x.divmod(y, q, r);
    x = std::move(y);
    y = r.monic();
  }
  return x.monic();
}

// ---------------------------------------------------------------------------
// Roots

namespace {

bool all_rational(const UPoly& p) {
  return std::all_of(p.coeffs().begin(), p.coeffs().end(), [](const Field& f) { return f.is_rational(); });
}

std::vector<Integer> divisors(const Integer& n) {
  std::map<Integer, int> f;
  std::vector<Integer> out{1};
  if (n == 0 || !factor_integer(n, f)) return out;
  for (const auto& [p, e] : f) {
    const std::size_t sz = out.size();
    Integer pk = 1;
    for (int i = 1; i <= e; ++i) {
      pk *= p;
      for (std::size_t j = 0; j < sz; ++j) out.push_back(out[j] * pk);
    }
    if (out.size() > 20000) break;
  }
  return out;
}

/// Integer coefficients (content removed) of a rational UPoly.
std::vector<Integer> integer_coeffs(const UPoly& p) {
  Integer l = 1;
  for (const auto& c : p.coeffs()) {
    const Rational v = c.constant_value();
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
  }
  std::vector<Integer> out;
  for (const auto& c : p.coeffs()) {
    Rational v = c.constant_value() * l;
    out.push_back(v.get_num());
  }
  return out;
}

Rational eval_q(const std::vector<Integer>& c, const Rational& x) {
  Rational r = 0;
  for (std::size_t i = c.size(); i-- > 0;) r = r * x + Rational(c[i]);
  return r;
}

/// Distinct rational roots of a rational-coefficient polynomial.
std::vector<Rational> distinct_rational_roots(const UPoly& p0) {
  std::vector<Rational> roots;
  if (p0.degree() < 1) return roots;
  UPoly p = p0;
  if (p.degree() >= 2) {
    const UPoly g = gcd(p, p.derivative());
    if (g.degree() > 0) {
      UPoly q;
      UPoly r;
      p.divmod(g, q, r);
      p = q;
    }
  }
  std::vector<Integer> c = integer_coeffs(p);
  std::size_t low = 0;
  while (low < c.size() && c[low] == 0) ++low;
  if (low > 0) {
    roots.emplace_back(0);
    c.erase(c.begin(), c.begin() + static_cast<long>(low));
  }
  if (c.size() <= 1) return roots;
  const auto dn = divisors(c.front());
  const auto dd = divisors(c.back());
  std::set<Rational> seen;
  for (const auto& a : dn) {
    for (const auto& b : dd) {
      for (int s : {1, -1}) {
        Rational x(a * s, b);
        x.canonicalize();
        if (!seen.insert(x).second) continue;
        if (eval_q(c, x) == 0) roots.push_back(x);
      }
    }
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

int multiplicity(const UPoly& p, const Field& r) {
  int m = 0;
  UPoly cur = p;
  const UPoly lin(std::vector<Field>{-r, Field(1)});
  while (!cur.is_zero() && cur.degree() >= 1) {
    UPoly q;
    UPoly rem;
    cur.divmod(lin, q, rem);
    if (!rem.is_zero()) break;
    ++m;
    cur = q;
  }
  return m;
}

UPoly deflate(const UPoly& p, const Field& r, int times) {
  UPoly cur = p;
  const UPoly lin(std::vector<Field>{-r, Field(1)});
  for (int i = 0; i < times; ++i) {
    UPoly q;
    UPoly rem;
    cur.divmod(lin, q, rem);
    cur = q;
  }
  return cur;
}

std::optional<Field> field_sqrt(const Field& d) {
  if (d.is_rational()) return sqrt_rational(d.constant_value());
  if (auto s = try_sqrt(d)) return s;
  if (auto s = try_sqrt(-d)) return *s * Field::symbol(surd_symbol(-1));
  return std::nullopt;
}

}  // namespace

std::vector<std::pair<Rational, int>> rational_roots(const UPoly& p) {
  std::vector<std::pair<Rational, int>> out;
  if (!all_rational(p)) throw std::logic_error("rational_roots needs rational coefficients");
  for (const auto& r : distinct_rational_roots(p)) out.emplace_back(r, multiplicity(p, Field(r)));
  return out;
}

std::vector<long> integer_roots(const Poly& p, const std::string& var) {
  std::vector<long> out;
  if (p.is_zero() || !p.has_symbol(var)) return out;
  // Split into parameter-monomial components; each must vanish at the root.
  std::map<std::string, std::vector<Poly::Term>> parts;
  for (const auto& t : p.terms()) {
    const Monomial rest = t.mono.without(var);
    parts[to_string(Poly::monomial(rest, 1))].push_back({Monomial::variable(var, t.mono.degree(var)), t.coef});
  }
  UPoly g;
  for (const auto& [key, terms] : parts) {
    const UPoly u = UPoly::from_field(Field(Poly::from_terms(terms)), var);
    g = g.is_zero() ? u : gcd(g, u);
  }
  if (g.degree() < 1) return out;
  for (const auto& r : distinct_rational_roots(g)) {
    if (r.get_den() == 1 && r.get_num().fits_slong_p()) out.push_back(r.get_num().get_si());
  }
  return out;
}

std::optional<std::vector<Root>> solve_roots(const UPoly& p) {
  std::vector<Root> out;
  if (p.degree() < 1) return out;
  if (all_rational(p)) {
    UPoly rest = p;
    for (const auto& [r, m] : rational_roots(p)) {
      out.push_back({Field(r), m});
      rest = deflate(rest, Field(r), m);
    }
    if (rest.degree() < 1) return out;
    // Square-free part of the remainder, then quadratics / even polynomials.
    const UPoly g = gcd(rest, rest.derivative());
    UPoly sf = rest;
    if (g.degree() > 0) {
      UPoly r;
      rest.divmod(g, sf, r);
    }
    if (sf.degree() == 2) {
      const Field a = sf.coeff(2);
      const Field b = sf.coeff(1);
      const Field c = sf.coeff(0);
      auto s = sqrt_rational((b * b - Field(4) * a * c).constant_value());
      if (!s) return std::nullopt;
      for (int sign : {1, -1}) {
        const Field root = (-b + Field(sign) * *s) / (Field(2) * a);
        out.push_back({root, multiplicity(rest, root)});
      }
      return out;
    }
    bool even = true;
    for (int i = 1; i <= sf.degree(); i += 2) even = even && sf.coeff(i).is_zero();
    if (even) {
      std::vector<Field> half;
      for (int i = 0; i <= sf.degree(); i += 2) half.push_back(sf.coeff(i));
      auto mu = solve_roots(UPoly(std::move(half)));
      if (!mu) return std::nullopt;
      for (const auto& m : *mu) {
        if (!m.value.is_rational()) return std::nullopt;
        auto s = sqrt_rational(m.value.constant_value());
        if (!s) return std::nullopt;
        for (int sign : {1, -1}) {
          const Field root = Field(sign) * *s;
          out.push_back({root, multiplicity(rest, root)});
        }
      }
      return out;
    }
    return std::nullopt;
  }
  // Parameterized coefficients: linear and quadratic only.
  if (p.degree() == 1) {
    out.push_back({-p.coeff(0) / p.coeff(1), 1});
    return out;
  }
  if (p.degree() == 2) {
    const Field a = p.coeff(2);
    const Field b = p.coeff(1);
    const Field c = p.coeff(0);
    const Field disc = b * b - Field(4) * a * c;
    if (disc.is_zero()) {
      out.push_back({-b / (Field(2) * a), 2});
      return out;
    }
    auto s = field_sqrt(disc);
    if (!s) return std::nullopt;
    for (int sign : {1, -1}) out.push_back({(-b + Field(sign) * *s) / (Field(2) * a), 1});
    return out;
  }
  return std::nullopt;
}

namespace {

std::optional<Poly> poly_sqrt(const Poly& p) {
  if (p.is_zero()) return Poly();
  const auto& lt = p.leading();
  for (const auto& [n, e] : lt.mono.entries()) {
    if (e % 2 != 0 || is_surd_symbol(n)) return std::nullopt;
  }
  auto c = rational_root(lt.coef, 2);
  if (!c) return std::nullopt;
  std::vector<Monomial::Entry> half;
  for (const auto& [n, e] : lt.mono.entries()) half.emplace_back(n, e / 2);
  const Poly::Term s0{Monomial(half), *c};
  Poly s = Poly::monomial(s0.mono, s0.coef);
  const Poly two_s0 = Poly::monomial(s0.mono, 2 * s0.coef);
  for (std::size_t iter = 0; iter <= p.terms().size() + 1; ++iter) {
    const Poly r = p - s * s;
    if (r.is_zero()) return s;
    const auto& rt = r.leading();
    if (!s0.mono.divides(rt.mono)) return std::nullopt;
    Poly t;
    if (!Poly::monomial(rt.mono, rt.coef).try_div(two_s0, t)) return std::nullopt;
    if (compare(t.leading().mono, s0.mono) >= 0) return std::nullopt;
    s += t;
  }
  return std::nullopt;
}

}  // namespace

std::optional<Field> try_sqrt(const Field& f) {
  auto n = poly_sqrt(f.num());
  if (!n) return std::nullopt;
  auto d = poly_sqrt(f.den());
  if (!d) return std::nullopt;
  return Field(*n, *d);
}

}  // namespace fps
