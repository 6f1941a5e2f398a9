#include "../common/primitive.hpp"
#include "fps/bridge.hpp"
#include "fps/recurrence.hpp"

namespace fps {

LinearRecurrence make_recurrence(const std::string& index, const std::map<int, Field>& coeffs,
                                 std::optional<long> valid_from, bool remove_common_factor) {
  std::vector<int> shifts;
  std::vector<Field> vals;
  for (const auto& [m, c] : coeffs) {
    if (c.is_zero()) continue;
    shifts.push_back(m);
    vals.push_back(c);
  }
  if (shifts.empty()) throw std::invalid_argument("recurrence with all coefficients zero");
  std::vector<Poly> p = detail::primitive_polys(vals, remove_common_factor);
  const int base = shifts.front();
  LinearRecurrence re;
  re.index = index;
  if (valid_from) re.valid_from = *valid_from + base;
  // Re-base: k -> k - base.
  const Poly shifted = Poly::symbol(index) - Poly(static_cast<long>(base));
  for (std::size_t i = 0; i < shifts.size(); ++i) {
    re.coeffs[shifts[i] - base] = base == 0 ? p[i] : p[i].substitute(index, shifted);
  }
  if (re.coeffs.rbegin()->second.leading().coef < 0) {
    for (auto& [m, c] : re.coeffs) c = -c;
  }
  return re;
}

std::string recurrence_to_text(const LinearRecurrence& re, const std::string& seq) {
  std::string out;
  const Expr k = Expr::variable(re.index);
  for (const auto& [m, p] : re.coeffs) {
    const Expr c = from_poly(p);
    const std::string a = seq + "[" + to_text(k + Expr(static_cast<long>(m))) + "]";
    std::string term;
    if (c.is_one()) {
      term = a;
    } else if (c == Expr(-1)) {
      term = "-" + a;
    } else if (c.kind() == Kind::Add) {
      term = "(" + to_text(c) + ")*" + a;
    } else {
      term = to_text(c) + "*" + a;
    }
    if (out.empty()) {
      out = term;
    } else if (term[0] == '-') {
      out += " - " + term.substr(1);
    } else {
      out += " + " + term;
    }
  }
  return out + " == 0";
}

Field recurrence_residual(const LinearRecurrence& re, long k, const std::function<Field(long)>& a) {
  Field r;
  const Poly kv{Rational(k)};
  for (const auto& [m, p] : re.coeffs) {
    const Field c(p.substitute(re.index, kv));
    if (!c.is_zero()) r += c * a(k + m);
  }
  return r;
}

LinearRecurrence de_to_re(const LinearODE& ode, const std::string& index, bool remove_common_factor) {
  const Field k = Field::symbol(index);
  std::map<int, Field> out;
  for (int d = 0; d <= ode.order(); ++d) {
    const auto cs = ode.coeffs[static_cast<std::size_t>(d)].coefficients_in(ode.variable);
    for (std::size_t j = 0; j < cs.size(); ++j) {
      if (cs[j].is_zero()) continue;
      Field poch(1);
      for (int t = 0; t < d; ++t) poch *= k + Field(static_cast<long>(t + 1) - static_cast<long>(j));
      out[d - static_cast<int>(j)] += Field(cs[j]) * poch;
    }
  }
  return make_recurrence(index, out, std::nullopt, remove_common_factor);
}

namespace {

/// Differential operator sum_i c[i](x) D^i.
using Op = std::vector<Field>;

/// (theta - s) o op with theta = x D.
Op theta_minus(const Op& op, const Field& s, const std::string& x) {
  const Field xv = Field::symbol(x);
  Op out(op.size() + 1);
  for (std::size_t i = 0; i < op.size(); ++i) {
    out[i] += xv * op[i].derivative(x) - s * op[i];
    out[i + 1] += xv * op[i];
  }
  return out;
}

}  // namespace

LinearODE re_to_de(const LinearRecurrence& re, const std::string& var) {
  if (!re.for_all_k()) {
    throw ValidityNotForAllK("recurrence holds only for " + re.index + " >= " + std::to_string(*re.valid_from) +
                             "; extend its validity first");
  }
  // sum_m p_m(k) a_{k+m} = 0 for all k  <=>  sum_m x^(M-m) p_m(theta - m) f = 0.
  const int top = re.max_shift();
  const Field xv = Field::symbol(var);
  Op total;
  for (const auto& [m, p] : re.coeffs) {
    const auto cs = p.coefficients_in(re.index);
    Op acc;
    Op power{Field(1)};
    for (std::size_t j = 0; j < cs.size(); ++j) {
      if (j > 0) power = theta_minus(power, Field(static_cast<long>(m)), var);
      if (cs[j].is_zero()) continue;
      if (acc.size() < power.size()) acc.resize(power.size());
      for (std::size_t i = 0; i < power.size(); ++i) acc[i] += Field(cs[j]) * power[i];
    }
    const Field scale = xv.pow(top - m);
    if (total.size() < acc.size()) total.resize(acc.size());
    for (std::size_t i = 0; i < acc.size(); ++i) total[i] += scale * acc[i];
  }
  return make_ode(var, total);
}

namespace {

LinearRecurrence extend(const LinearRecurrence& re, long k_min, const std::function<bool(long)>& violated) {
  const long from = re.valid_from ? std::max(*re.valid_from, k_min) : k_min;
  Field factor(1);
  const Field k = Field::symbol(re.index);
  for (long r = k_min - re.max_shift(); r < from; ++r) {
    if (violated(r)) factor *= k - Field(r);
  }
  std::map<int, Field> c;
  for (const auto& [m, p] : re.coeffs) c[m] = Field(p) * factor;
  return make_recurrence(re.index, c, std::nullopt, false);
}

}  // namespace

LinearRecurrence extend_validity(const LinearRecurrence& re, long k_min) {
  if (re.for_all_k()) return re;
  return extend(re, k_min, [&](long r) {
    for (const auto& [m, p] : re.coeffs) {
      if (r + m >= k_min && !p.substitute(re.index, Poly(Rational(r))).is_zero()) return true;
    }
    return false;
  });
}

LinearRecurrence extend_validity(const LinearRecurrence& re, long k_min, const std::function<Field(long)>& values) {
  if (re.for_all_k()) return re;
  return extend(re, k_min, [&](long r) {
    return !recurrence_residual(re, r, [&](long i) { return i < k_min ? Field() : values(i); }).is_zero();
  });
}

}  // namespace fps
