#include <cstdlib>

#include "fps/bridge.hpp"
#include "fps/de.hpp"
#include "fps/taylor.hpp"
#include "../common/linear.hpp"
#include "../common/primitive.hpp"
#include "kernel.hpp"

namespace fps {

LinearODE make_ode(const std::string& var, const std::vector<Field>& coeffs) {
  std::vector<Poly> p = detail::primitive_polys(coeffs);
  while (p.size() > 1 && p.back().is_zero()) p.pop_back();
  if (!p.empty() && !p.back().is_zero() && p.back().leading().coef < 0) {
    for (auto& q : p) q = -q;
  }
  return LinearODE{var, std::move(p)};
}

std::string ode_to_text(const LinearODE& ode, const std::string& fname) {
  std::string out;
  for (std::size_t j = 0; j < ode.coeffs.size(); ++j) {
    if (ode.coeffs[j].is_zero()) continue;
    std::string d;
    if (j == 0) {
      d = fname + "[" + ode.variable + "]";
    } else if (j <= 3) {
      d = fname + std::string(j, '\'') + "[" + ode.variable + "]";
    } else {
      d = "Derivative[" + std::to_string(j) + "][" + fname + "][" + ode.variable + "]";
    }
    const Expr c = from_poly(ode.coeffs[j]);
    std::string term;
    if (c.is_one()) {
      term = d;
    } else if (c == Expr(-1)) {
      term = "-" + d;
    } else if (c.kind() == Kind::Add) {
      term = "(" + to_text(c) + ")*" + d;
    } else {
      term = to_text(c) + "*" + d;
    }
    if (out.empty()) {
      out = term;
    } else if (term[0] == '-') {
      out += " - " + term.substr(1);
    } else {
      out += " + " + term;
    }
  }
  return (out.empty() ? "0" : out) + " == 0";
}

int default_degree_guard() {
  if (const char* s = std::getenv("FPS_MAX_DEGREE_GUARD")) {
    char* end = nullptr;
    const long v = std::strtol(s, &end, 10);
    if (end != s && v > 0) return static_cast<int>(v);
  }
  return 64;
}

LinearODE simple_de(const Expr& f, const std::string& var, int max_order) {
  DEOptions o;
  o.max_order = max_order;
  o.degree_guard = default_degree_guard();
  return simple_de(f, var, o);
}

LinearODE simple_de(const Expr& f, const std::string& var, const DEOptions& opts) {
  // Orders beyond this are never reached in practice before the degree guard.
  constexpr int kHardCap = 32;
  const int max_order = opts.max_order == kUnboundedOrder ? kHardCap : opts.max_order;
  detail::KernelAlgebra alg(var, opts.degree_guard);
  std::vector<detail::LinComb> d;
  try {
    d.push_back(alg.decompose(f));
  } catch (const std::invalid_argument& e) {
    throw NonDecomposable(e.what());
  }
  for (int n = 1; n <= max_order; ++n) {
    try {
      d.push_back(alg.derivative(d.back()));
    } catch (const detail::KernelAlgebra::DegreeExceeded& e) {
      throw NoDEFound(n - 1, "degree guard " + std::to_string(opts.degree_guard) + " exceeded at order " +
                                 std::to_string(n) + " (degree " + std::to_string(e.degree) + ")");
    }
    std::map<Expr, std::size_t, ExprLess> rows;
    for (const auto& l : d) {
      for (const auto& [k, sc] : l) rows.emplace(k, rows.size());
    }
    const auto cols = static_cast<std::size_t>(n);
    std::vector<std::vector<Field>> m(rows.size(), std::vector<Field>(cols + 1));
    for (std::size_t j = 0; j <= cols; ++j) {
      for (const auto& [k, sc] : d[j]) {
        auto& cell = m[rows.at(k)][j];
        cell = j == cols ? -sc.second : sc.second;
      }
    }
    if (auto a = detail::solve_linear(std::move(m), cols)) {
      a->push_back(Field(1));
      return make_ode(var, *a);
    }
  }
  throw NoDEFound(max_order, "");
}

bool ode_residual_vanishes(const LinearODE& ode, const Expr& f, int terms) {
  const int n = ode.order();
  int maxdeg = 0;
  for (const auto& c : ode.coeffs) maxdeg = std::max(maxdeg, c.is_zero() ? 0 : c.degree(ode.variable));
  const int len = terms > 0 ? terms : n + maxdeg + 12;
  std::string last_error;
  for (const Expr& x0 : {Expr(0), Expr(1), Expr(Rational(1, 3))}) {
    TaylorSeries s;
    try {
      s = taylor_oracle(f, ode.variable, x0, len + n + maxdeg);
    } catch (const OracleError& e) {
      last_error = e.what();
      continue;
    }
    if (s.identically_zero) return true;
    const Field x0f = to_field_or_throw(x0);
    std::vector<UPoly> p;
    for (const auto& c : ode.coeffs) p.push_back(UPoly::from_field(Field(c), ode.variable).taylor_shift(x0f));
    const int top = s.offset + static_cast<int>(s.coeffs.size()) - 1;
    auto a = [&](int k) { return k < s.offset ? Field() : s.coeffs[static_cast<std::size_t>(k - s.offset)]; };
    for (int k = s.offset - n; k + n <= top; ++k) {
      Field r;
      for (int j = 0; j <= n; ++j) {
        const UPoly& pj = p[static_cast<std::size_t>(j)];
        for (int i = 0; i <= pj.degree(); ++i) {
          const int idx = k - i + j;
          if (idx < s.offset || pj.coeff(i).is_zero()) continue;
          Rational rise = 1;
          for (int t = 1; t <= j; ++t) rise *= (k - i + t);
          r += pj.coeff(i) * Field(rise) * a(idx);
        }
      }
      if (!r.is_zero()) return false;
    }
    return true;
  }
  throw OracleError("no expansion point available for the residual check: " + last_error);
}

}  // namespace fps
