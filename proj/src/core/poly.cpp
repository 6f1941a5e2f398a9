#include "fps/poly.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace fps {

bool is_surd_symbol(const std::string& name) { return !name.empty() && name[0] == '$'; }

long surd_radicand(const std::string& name) { return std::stol(name.substr(1)); }

std::string surd_symbol(long radicand) { return "$" + std::to_string(radicand); }

bool is_opaque_symbol(const std::string& name) { return !name.empty() && name[0] == '@'; }

// ---------------------------------------------------------------------------
// Monomial

Monomial::Monomial(std::vector<Entry> entries) : entries_(std::move(entries)) {
  std::sort(entries_.begin(), entries_.end());
  std::vector<Entry> merged;
  for (auto& e : entries_) {
    if (!merged.empty() && merged.back().first == e.first) {
      merged.back().second += e.second;
    } else {
      merged.push_back(e);
    }
  }
  std::erase_if(merged, [](const Entry& e) { return e.second == 0; });
  entries_ = std::move(merged);
}

Monomial Monomial::variable(const std::string& name, int exponent) {
  Monomial m;
  if (exponent != 0) m.entries_.emplace_back(name, exponent);
  return m;
}

int Monomial::degree(const std::string& var) const {
  for (const auto& [n, e] : entries_) {
    if (n == var) return e;
  }
  return 0;
}

int Monomial::total_degree() const {
  int d = 0;
  for (const auto& e : entries_) d += e.second;
  return d;
}

bool Monomial::divides(const Monomial& other) const {
  std::size_t j = 0;
  for (const auto& [n, e] : entries_) {
    while (j < other.entries_.size() && other.entries_[j].first < n) ++j;
    if (j == other.entries_.size() || other.entries_[j].first != n || other.entries_[j].second < e) {
      return false;
    }
  }
  return true;
}

Monomial Monomial::without(const std::string& var) const {
  Monomial m;
  for (const auto& e : entries_) {
    if (e.first != var) m.entries_.push_back(e);
  }
  return m;
}

Monomial Monomial::times(const Monomial& other, Rational& factor) const {
  Monomial m;
  m.entries_.reserve(entries_.size() + other.entries_.size());
  std::size_t i = 0;
  std::size_t j = 0;
  auto push = [&](const std::string& n, int e) {
    if (is_surd_symbol(n) && e >= 2) {
      const long d = surd_radicand(n);
      Rational p = 1;
      for (int t = 0; t < e / 2; ++t) p *= d;
      factor *= p;
      e %= 2;
    }
    if (e != 0) m.entries_.emplace_back(n, e);
  };
  while (i < entries_.size() || j < other.entries_.size()) {
    if (j == other.entries_.size() || (i < entries_.size() && entries_[i].first < other.entries_[j].first)) {
      push(entries_[i].first, entries_[i].second);
      ++i;
    } else if (i == entries_.size() || other.entries_[j].first < entries_[i].first) {
      push(other.entries_[j].first, other.entries_[j].second);
      ++j;
    } else {
      push(entries_[i].first, entries_[i].second + other.entries_[j].second);
      ++i;
      ++j;
    }
  }
  return m;
}

Monomial Monomial::divided_by(const Monomial& other) const {
  std::vector<Entry> out = entries_;
  for (const auto& [n, e] : other.entries_) {
    auto it = std::find_if(out.begin(), out.end(), [&](const Entry& x) { return x.first == n; });
    if (it == out.end() || it->second < e) throw std::logic_error("monomial division not exact");
    it->second -= e;
  }
  std::erase_if(out, [](const Entry& x) { return x.second == 0; });
  Monomial m;
  m.entries_ = std::move(out);
  return m;
}

Monomial Monomial::gcd(const Monomial& other) const {
  Monomial m;
  std::size_t j = 0;
  for (const auto& [n, e] : entries_) {
    while (j < other.entries_.size() && other.entries_[j].first < n) ++j;
    if (j < other.entries_.size() && other.entries_[j].first == n) {
      m.entries_.emplace_back(n, std::min(e, other.entries_[j].second));
    }
  }
  return m;
}

int compare(const Monomial& a, const Monomial& b) {
  const auto& x = a.entries();
  const auto& y = b.entries();
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < x.size() && j < y.size()) {
    if (x[i].first == y[j].first) {
      if (x[i].second != y[j].second) return x[i].second > y[j].second ? 1 : -1;
      ++i;
      ++j;
    } else {
      return x[i].first < y[j].first ? 1 : -1;
    }
  }
  if (i < x.size()) return 1;
  if (j < y.size()) return -1;
  return 0;
}

// ---------------------------------------------------------------------------
// Poly

Poly::Poly(long c) {
  if (c != 0) terms_.push_back({Monomial{}, Rational(c)});
}

Poly::Poly(const Rational& c) {
  if (c != 0) terms_.push_back({Monomial{}, c});
}

Poly Poly::symbol(const std::string& name, int exponent) {
  Poly p;
  Rational f = 1;
  Monomial m = Monomial{}.times(Monomial::variable(name, exponent), f);
  p.terms_.push_back({std::move(m), f});
  return p;
}

Poly Poly::monomial(Monomial m, Rational c) {
  Poly p;
  if (c != 0) p.terms_.push_back({std::move(m), std::move(c)});
  return p;
}

Poly Poly::from_terms(std::vector<Term> terms) {
  Poly p;
  p.terms_ = std::move(terms);
  p.canonicalize();
  return p;
}

void Poly::canonicalize() {
  std::sort(terms_.begin(), terms_.end(),
            [](const Term& a, const Term& b) { return compare(a.mono, b.mono) > 0; });
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (auto& t : terms_) {
    if (!out.empty() && out.back().mono == t.mono) {
      out.back().coef += t.coef;
    } else {
      if (!out.empty() && out.back().coef == 0) out.pop_back();
      out.push_back(std::move(t));
    }
  }
  if (!out.empty() && out.back().coef == 0) out.pop_back();
  terms_ = std::move(out);
}

bool Poly::is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }

Rational Poly::constant_value() const {
  if (terms_.empty()) return 0;
  if (!is_constant()) throw std::logic_error("polynomial is not constant");
  return terms_[0].coef;
}

Rational Poly::constant_term() const {
  if (!terms_.empty() && terms_.back().mono.is_one()) return terms_.back().coef;
  return 0;
}

bool Poly::is_one() const { return terms_.size() == 1 && terms_[0].mono.is_one() && terms_[0].coef == 1; }

std::set<std::string> Poly::symbols() const {
  std::set<std::string> s;
  for (const auto& t : terms_) {
    for (const auto& e : t.mono.entries()) s.insert(e.first);
  }
  return s;
}

bool Poly::has_symbol(const std::string& name) const {
  for (const auto& t : terms_) {
    if (t.mono.degree(name) != 0) return true;
  }
  return false;
}

bool Poly::has_surds() const {
  for (const auto& t : terms_) {
    for (const auto& e : t.mono.entries()) {
      if (is_surd_symbol(e.first)) return true;
    }
  }
  return false;
}

int Poly::degree(const std::string& var) const {
  int d = terms_.empty() ? -1 : 0;
  for (const auto& t : terms_) d = std::max(d, t.mono.degree(var));
  return d;
}

int Poly::total_degree() const {
  int d = terms_.empty() ? -1 : 0;
  for (const auto& t : terms_) d = std::max(d, t.mono.total_degree());
  return d;
}

std::vector<Poly> Poly::coefficients_in(const std::string& var) const {
  const int d = degree(var);
  std::vector<std::vector<Term>> buckets(static_cast<std::size_t>(std::max(d + 1, 0)));
  for (const auto& t : terms_) {
    buckets[static_cast<std::size_t>(t.mono.degree(var))].push_back({t.mono.without(var), t.coef});
  }
  std::vector<Poly> out;
  out.reserve(buckets.size());
  for (auto& b : buckets) out.push_back(from_terms(std::move(b)));
  return out;
}

Poly Poly::from_coefficients(const std::string& var, const std::vector<Poly>& coeffs) {
  std::vector<Term> terms;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    const Monomial vi = Monomial::variable(var, static_cast<int>(i));
    for (const auto& t : coeffs[i].terms()) {
      Rational f = t.coef;
      terms.push_back({t.mono.times(vi, f), f});
    }
  }
  return from_terms(std::move(terms));
}

Poly Poly::operator-() const {
  Poly p = *this;
  for (auto& t : p.terms_) t.coef = -t.coef;
  return p;
}

namespace {

std::vector<Poly::Term> merge_add(const std::vector<Poly::Term>& a, const std::vector<Poly::Term>& b, bool negate_b) {
  std::vector<Poly::Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() || j < b.size()) {
    int c = 0;
    if (i == a.size()) {
      c = -1;
    } else if (j == b.size()) {
      c = 1;
    } else {
      c = compare(a[i].mono, b[j].mono);
    }
    if (c > 0) {
      out.push_back(a[i++]);
    } else if (c < 0) {
      out.push_back(b[j]);
      if (negate_b) out.back().coef = -out.back().coef;
      ++j;
    } else {
      Rational s = negate_b ? Rational(a[i].coef - b[j].coef) : Rational(a[i].coef + b[j].coef);
      if (s != 0) out.push_back({a[i].mono, s});
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

Poly& Poly::operator+=(const Poly& o) {
  terms_ = merge_add(terms_, o.terms_, false);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  terms_ = merge_add(terms_, o.terms_, true);
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  if (a.is_constant()) return b.scaled(a.constant_value());
  if (b.is_constant()) return a.scaled(b.constant_value());
  if (b.terms_.size() == 1) return a.times_monomial(b.terms_[0].mono, b.terms_[0].coef);
  if (a.terms_.size() == 1) return b.times_monomial(a.terms_[0].mono, a.terms_[0].coef);
  std::vector<Poly::Term> terms;
  terms.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& x : a.terms_) {
    for (const auto& y : b.terms_) {
      Rational f = x.coef * y.coef;
      Monomial m = x.mono.times(y.mono, f);
      terms.push_back({std::move(m), std::move(f)});
    }
  }
  return Poly::from_terms(std::move(terms));
}

Poly Poly::scaled(const Rational& c) const {
  if (c == 0) return {};
  Poly p = *this;
  for (auto& t : p.terms_) t.coef *= c;
  return p;
}

Poly Poly::times_monomial(const Monomial& m, const Rational& c) const {
  if (c == 0) return {};
  std::vector<Term> terms;
  terms.reserve(terms_.size());
  bool reduced = false;
  for (const auto& t : terms_) {
    Rational f = t.coef * c;
    Monomial mm = t.mono.times(m, f);
    if (mm.total_degree() != t.mono.total_degree() + m.total_degree()) reduced = true;
    terms.push_back({std::move(mm), std::move(f)});
  }
  Poly p;
  p.terms_ = std::move(terms);
  // Lex order is preserved by multiplication unless surd reduction happened.
  if (reduced) p.canonicalize();
  return p;
}

Poly Poly::pow(unsigned n) const {
  Poly result(1);
  Poly base = *this;
  while (n > 0) {
    if (n & 1U) result = result * base;
    n >>= 1U;
    if (n > 0) base = base * base;
  }
  return result;
}

Poly Poly::derivative(const std::string& var) const {
  std::vector<Term> terms;
  for (const auto& t : terms_) {
    const int e = t.mono.degree(var);
    if (e == 0) continue;
    std::vector<Monomial::Entry> entries = t.mono.entries();
    for (auto& en : entries) {
      if (en.first == var) en.second -= 1;
    }
    terms.push_back({Monomial(std::move(entries)), t.coef * e});
  }
  return from_terms(std::move(terms));
}

Poly Poly::substitute(const std::string& var, const Poly& value) const {
  if (!has_symbol(var)) return *this;
  auto coeffs = coefficients_in(var);
  Poly r;
  for (std::size_t i = coeffs.size(); i-- > 0;) {
    r = r * value + coeffs[i];
  }
  return r;
}

Poly Poly::conjugate(const std::string& surd) const {
  Poly p = *this;
  for (auto& t : p.terms_) {
    if (t.mono.degree(surd) % 2 == 1) t.coef = -t.coef;
  }
  return p;
}

bool Poly::try_div(const Poly& d, Poly& q) const {
  if (d.is_zero()) throw std::domain_error("division by zero polynomial");
  q = Poly{};
  if (is_zero()) return true;
  if (d.is_constant()) {
    q = scaled(1 / d.constant_value());
    return true;
  }
  Poly r = *this;
  const Term& lt = d.leading();
  std::vector<Term> qterms;
  while (!r.is_zero()) {
    const Term& rt = r.leading();
    if (!lt.mono.divides(rt.mono)) return false;
    Monomial m = rt.mono.divided_by(lt.mono);
    Rational c = rt.coef / lt.coef;
    r -= d.times_monomial(m, c);
    qterms.push_back({std::move(m), std::move(c)});
  }
  q = from_terms(std::move(qterms));
  return true;
}

Poly Poly::exact_div(const Poly& d) const {
  Poly q;
  if (!try_div(d, q)) throw std::logic_error("polynomial division is not exact");
  return q;
}

Rational Poly::rational_content() const {
  if (terms_.empty()) return 1;
  Integer g = 0;
  Integer l = 1;
  for (const auto& t : terms_) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.coef.get_num_mpz_t());
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), t.coef.get_den_mpz_t());
  }
  Rational c(g, l);
  c.canonicalize();
  if (terms_.front().coef < 0) c = -c;
  return c;
}

Poly Poly::integer_primitive() const {
  if (terms_.empty()) return {};
  return scaled(1 / rational_content());
}

Poly Poly::monic() const {
  if (terms_.empty()) return {};
  return scaled(1 / terms_.front().coef);
}

int compare(const Poly& a, const Poly& b) {
  const auto& x = a.terms();
  const auto& y = b.terms();
  const std::size_t n = std::min(x.size(), y.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (int c = compare(x[i].mono, y[i].mono); c != 0) return c;
    if (x[i].coef != y[i].coef) return x[i].coef < y[i].coef ? -1 : 1;
  }
  if (x.size() != y.size()) return x.size() < y.size() ? -1 : 1;
  return 0;
}

// ---------------------------------------------------------------------------
// gcd

namespace {

Poly monomial_content(const Poly& p) {
  Monomial g = p.terms().front().mono;
  for (const auto& t : p.terms()) g = g.gcd(t.mono);
  return Poly::monomial(g, 1);
}

/// Pseudo-remainder of a by b as polynomials in var (up to a var-free factor).
Poly pseudo_remainder(const Poly& a, const Poly& b, const std::string& var) {
  std::vector<Poly> r = a.coefficients_in(var);
  const std::vector<Poly> bc = b.coefficients_in(var);
  const std::size_t db = bc.size() - 1;
  const Poly& lb = bc.back();
  while (!r.empty() && r.size() - 1 >= db) {
    const Poly lr = r.back();
    const std::size_t shift = r.size() - 1 - db;
    for (auto& c : r) c = c * lb;
    for (std::size_t i = 0; i <= db; ++i) r[i + shift] -= lr * bc[i];
    while (!r.empty() && r.back().is_zero()) r.pop_back();
    if (!r.empty()) {
      // Keep coefficient sizes in check.
      Poly tmp = Poly::from_coefficients(var, r).integer_primitive();
      r = tmp.coefficients_in(var);
    }
  }
  return Poly::from_coefficients(var, r);
}

Poly gcd_impl(const Poly& a, const Poly& b);

Poly primitive_part_in(const Poly& p, const std::string& var) {
  return p.exact_div(content_in(p, var));
}

Poly gcd_impl(const Poly& a0, const Poly& b0) {
  if (a0.is_zero()) return b0.monic();
  if (b0.is_zero()) return a0.monic();
  if (a0.is_constant() || b0.is_constant()) return Poly(1);
  if (a0 == b0) return a0.monic();
  if (a0.terms().size() == 1) return Poly::monomial(a0.leading().mono.gcd(monomial_content(b0).leading().mono), 1);
  if (b0.terms().size() == 1) return Poly::monomial(b0.leading().mono.gcd(monomial_content(a0).leading().mono), 1);

  Poly a = a0;
  Poly b = b0;
  // Variables present in only one argument: reduce to contents.
  for (;;) {
    const auto sa = a.symbols();
    const auto sb = b.symbols();
    std::string only;
    bool in_a = false;
    for (const auto& s : sa) {
      if (!sb.contains(s)) {
        only = s;
        in_a = true;
        break;
      }
    }
    if (only.empty()) {
      for (const auto& s : sb) {
        if (!sa.contains(s)) {
          only = s;
          break;
        }
      }
    }
    if (only.empty()) break;
    if (in_a) {
      a = content_in(a, only);
    } else {
      b = content_in(b, only);
    }
    if (a.is_constant() || b.is_constant()) return Poly(1);
  }
  // Choose the common variable of least total degree.
  const auto syms = a.symbols();
  std::string var;
  int best = -1;
  for (const auto& s : syms) {
    const int d = a.degree(s) + b.degree(s);
    if (best < 0 || d < best) {
      best = d;
      var = s;
    }
  }
  const Poly ca = content_in(a, var);
  const Poly cb = content_in(b, var);
  Poly pa = a.exact_div(ca);
  Poly pb = b.exact_div(cb);
  const Poly g = gcd_impl(ca, cb);
  if (pa.degree(var) < pb.degree(var)) std::swap(pa, pb);
  Poly G;
  for (;;) {
    Poly r = pseudo_remainder(pa, pb, var);
    if (r.is_zero()) {
      G = pb;
      break;
    }
    if (r.degree(var) == 0) {
      G = Poly(1);
      break;
    }
    pa = std::move(pb);
    pb = primitive_part_in(r, var).integer_primitive();
  }
  return (g * G).monic();
}

}  // namespace

Poly content_in(const Poly& p, const std::string& var) {
  if (p.is_zero()) return {};
  auto coeffs = p.coefficients_in(var);
  // Start from the smallest coefficient for cheaper gcds.
  std::sort(coeffs.begin(), coeffs.end(),
            [](const Poly& x, const Poly& y) { return x.terms().size() < y.terms().size(); });
  Poly g;
  for (const auto& c : coeffs) {
    if (c.is_zero()) continue;
    g = g.is_zero() ? c.monic() : gcd_impl(g, c);
    if (g.is_constant()) return Poly(1);
  }
  return g;
}

Poly gcd(const Poly& a, const Poly& b) { return gcd_impl(a, b); }

Poly lcm(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  return (a * b.exact_div(gcd(a, b))).monic();
}

std::string to_string(const Poly& p) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : p.terms()) {
    if (!first) os << (t.coef < 0 ? " - " : " + ");
    else if (t.coef < 0) os << "-";
    first = false;
    Rational c = abs(t.coef);
    bool printed = false;
    if (c != 1 || t.mono.is_one()) {
      os << c.get_str();
      printed = true;
    }
    for (const auto& [n, e] : t.mono.entries()) {
      if (printed) os << "*";
      os << n;
      if (e != 1) os << "^" << e;
      printed = true;
    }
  }
  return os.str();
}

}  // namespace fps
