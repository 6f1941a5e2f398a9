#include <algorithm>

#include "fps/bridge.hpp"
#include "fps/series.hpp"
#include "fps/taylor.hpp"

namespace fps {

std::optional<HypergeometricRE> classify(const LinearRecurrence& re) {
  std::vector<std::pair<int, Poly>> nz;
  for (const auto& [s, p] : re.coeffs) {
    if (!p.is_zero()) nz.emplace_back(s, p);
  }
  if (nz.size() != 2) return std::nullopt;
  const auto& [s0, c0] = nz[0];
  const auto& [s1, c1] = nz[1];
  HypergeometricRE h;
  h.m = s1 - s0;
  h.index = re.index;
  // c0(k) a_{k+s0} + c1(k) a_{k+s1} = 0 with j = k + s0.
  const Field shifted = Field::symbol(re.index) - Field(static_cast<long>(s0));
  h.ratio = (-(Field(c0) / Field(c1))).substitute(re.index, shifted);
  h.k0 = re.valid_from ? static_cast<int>(*re.valid_from) + s0 : 0;
  return h;
}

InitialValues initial_values(const Expr& f, const std::string& var, const Expr& x0, int count,
                             std::optional<int> start) {
  if (count < 1) throw std::invalid_argument("initial_values needs count >= 1");
  TaylorSeries s = taylor_oracle(f, var, x0, count + 4);
  InitialValues out;
  if (s.identically_zero) {
    out.identically_zero = true;
    return out;
  }
  out.valuation = s.offset;
  out.offset = start.value_or(s.offset);
  const int need = out.offset + count - 1 - s.offset;
  if (need > count + 4) s = taylor_oracle(f, var, x0, need);
  out.values = s.range(out.offset, count);
  return out;
}

std::vector<ClosedFormTerm> solve_hypergeometric(const HypergeometricRE& h, std::vector<MonomialTerm>* finite) {
  if (h.ratio.is_zero()) throw std::invalid_argument("hypergeometric ratio vanishes");
  const std::string iv = "~i";
  std::vector<ClosedFormTerm> out;
  for (int r = 0; r < h.m && r < static_cast<int>(h.initial.size()); ++r) {
    const Field& a = h.initial[static_cast<std::size_t>(r)];
    if (a.is_zero()) continue;
    const long s = h.k0 + r;
    const Field rt = h.ratio.substitute(h.index, Field(s) + Field(static_cast<long>(h.m)) * Field::symbol(iv));
    for (long root : integer_roots(rt.den(), iv)) {
      if (root >= 0) throw std::domain_error("recurrence is singular inside its validity range");
    }
    long stop = -1;
    for (long root : integer_roots(rt.num(), iv)) {
      if (root >= 0 && (stop < 0 || root < stop)) stop = root;
    }
    if (stop >= 0) {
      if (finite == nullptr) throw std::logic_error("terminating residue class without output slot");
      Field v = a;
      for (long i = 0; i <= stop; ++i) {
        finite->push_back(MonomialTerm{s + h.m * i, from_field(v)});
        v *= rt.substitute(iv, Field(i));
      }
      continue;
    }
    ClosedFormTerm t;
    t.modulus = h.m;
    t.shift = s;
    t.coefficient = from_field(a) * product_closed_form(rt, iv, "k");
    out.push_back(std::move(t));
  }
  return out;
}

Field FormalSeries::coefficient(long e) const {
  Field c;
  for (const auto& p : polynomial) {
    if (p.exponent == e) c += to_field_or_throw(p.coefficient);
  }
  for (const auto& t : terms) {
    const long d = e - t.shift;
    if (d < 0 || d % t.modulus != 0) continue;
    c += to_field_or_throw(substitute(t.coefficient, "k", Expr(d / t.modulus)));
  }
  return c;
}

Expr series_power(const FormalSeries& s, const Expr& exponent_numerator) {
  const Expr base = s.x0.is_zero() ? Expr::variable(s.variable) : Expr::variable(s.variable) - s.x0;
  return pow(base, exponent_numerator / Expr(static_cast<long>(s.puiseux_n)));
}

namespace {

std::vector<Expr> series_parts(const FormalSeries& s, std::vector<bool>& is_sum) {
  std::vector<MonomialTerm> poly = s.polynomial;
  std::stable_sort(poly.begin(), poly.end(), [](const auto& a, const auto& b) { return a.exponent < b.exponent; });
  std::vector<Expr> parts;
  for (const auto& p : poly) {
    parts.push_back(p.coefficient * series_power(s, Expr(p.exponent)));
    is_sum.push_back(false);
  }
  std::vector<ClosedFormTerm> terms = s.terms;
  std::stable_sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) { return a.shift < b.shift; });
  const Expr k = Expr::variable("k");
  for (const auto& t : terms) {
    parts.push_back(t.coefficient * series_power(s, Expr(static_cast<long>(t.modulus)) * k + Expr(t.shift)));
    is_sum.push_back(true);
  }
  return parts;
}

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& it : items) {
    if (out.empty()) {
      out = it;
    } else if (!it.empty() && it[0] == '-') {
      out += " - " + it.substr(1);
    } else {
      out += " + " + it;
    }
  }
  return out.empty() ? "0" : out;
}

}  // namespace

std::string series_to_text(const FormalSeries& s) {
  std::vector<bool> is_sum;
  const std::vector<Expr> parts = series_parts(s, is_sum);
  std::vector<std::string> items;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    items.push_back(is_sum[i] ? "Sum[" + to_text(parts[i]) + ", {k, 0, Infinity}]" : to_text(parts[i]));
  }
  return join(items);
}

std::string series_to_latex(const FormalSeries& s) {
  std::vector<bool> is_sum;
  const std::vector<Expr> parts = series_parts(s, is_sum);
  std::vector<std::string> items;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    items.push_back(is_sum[i] ? "\\sum_{k=0}^{\\infty} " + to_latex(parts[i]) : to_latex(parts[i]));
  }
  return join(items);
}

}  // namespace fps
