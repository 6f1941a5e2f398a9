#include <map>

#include "fps/bridge.hpp"
#include "fps/findrec.hpp"
#include "fps/taylor.hpp"
#include "solve.hpp"
#include "../common/linear.hpp"

namespace fps {

namespace {

/// Coefficients of x^lo .. x^hi of a basis function, plus the odd powers of
/// t that must vanish when x = t^2.
struct Stream {
  std::vector<Field> even;
  std::vector<Field> odd;
};

Stream coefficient_stream(const Expr& f, const detail::SolutionBasis& b, long lo, long hi) {
  Stream s;
  const auto count = static_cast<int>(hi - lo + 1);
  if (!b.squared) {
    s.even = oracle_coefficients(f, b.var, Expr(0), static_cast<int>(lo), count);
    return s;
  }
  const std::vector<Field> c = oracle_coefficients(f, b.var, Expr(0), static_cast<int>(2 * lo), 2 * count);
  for (std::size_t i = 0; i < c.size(); ++i) (i % 2 == 0 ? s.even : s.odd).push_back(c[i]);
  return s;
}

Expr back_substitute(const Expr& f, const detail::SolutionBasis& b, const std::string& var) {
  if (!b.squared) return f;
  return substitute(f, b.var, sqrt(Expr::variable(var)));
}

/// num/den with an integer primitive denominator whose constant term is positive.
Expr display_fraction(const Field& f) {
  if (f.den().is_constant()) return from_field(f);
  Rational c = f.den().rational_content();
  for (const auto& t : f.den().terms()) {
    if (t.mono.entries().empty() && t.coef / c < 0) c = -c;
  }
  const Poly scale{Rational(1) / c};
  return from_poly(f.num() * scale) / from_poly(f.den() * scale);
}

/// sum c_i f_i, combined into one fraction when every f_i is rational.
Expr combine(const std::vector<Field>& c, const std::vector<Expr>& fs, const std::string& var) {
  Field rational;
  bool all_rational = true;
  std::vector<Expr> parts;
  for (std::size_t i = 0; i < fs.size(); ++i) {
    if (c[i].is_zero()) continue;
    parts.push_back(from_field(c[i]) * fs[i]);
    if (auto r = to_field(fs[i], {var})) {
      rational += c[i] * *r;
    } else {
      all_rational = false;
    }
  }
  if (all_rational) return display_fraction(rational);
  return add(std::move(parts));
}

}  // namespace

OdeSolveOutcome ode_solve_limited(const LinearODE& ode, const std::string& var, const GfOptions& opts) {
  OdeSolveOutcome out;
  out.ode = ode;
  const auto bases = detail::solution_bases(ode, var, opts, out.attempted, out.diagnostics);
  if (bases.empty()) return out;
  const auto& b = bases.front();
  std::vector<Expr> parts;
  for (std::size_t i = 0; i < b.functions.size(); ++i) {
    parts.push_back(Expr::variable("C" + std::to_string(i + 1)) * back_substitute(b.functions[i], b, var));
  }
  out.solved = true;
  out.strategy = b.squared ? "x = t^2" : b.strategy;
  out.closed_form = add(std::move(parts));
  return out;
}

ConvertResult convert(const Expr& term, const std::string& index, const std::string& gf_var, long k_start,
                      const GfOptions& opts, const std::function<void(const std::string&)>& trace) {
  auto info = [&](const std::string& line) {
    if (trace) trace("info: " + line);
  };
  ConvertResult res;
  // The summand is a_k gf_var^k.
  const Expr coefficient = term / pow(Expr::variable(gf_var), Expr::variable(index));
  if (!free_of(coefficient, gf_var)) {
    throw ConvertStageError("recurrence", "summand is not of the form a[" + index + "] " + gf_var + "^" + index);
  }
  try {
    FindRecursionOptions fo;
    fo.max_order = opts.max_order;
    fo.max_degree = opts.max_degree;
    res.recurrence = find_recursion(coefficient, index, fo);
  } catch (const std::exception& e) {
    throw ConvertStageError("recurrence", e.what());
  }
  info(std::to_string(res.recurrence.order()) + " step(s) for RE: " + recurrence_to_text(res.recurrence));

  std::map<long, Field> cache;
  auto value = [&](long k) -> Field {
    if (k < k_start) return Field();
    auto it = cache.find(k);
    if (it == cache.end()) it = cache.emplace(k, evaluate_term(coefficient, index, k)).first;
    return it->second;
  };
  try {
    LinearRecurrence re = res.recurrence;
    re.valid_from = std::max(re.valid_from.value_or(k_start), k_start);
    res.extended = extend_validity(re, k_start, value);
    res.outcome.ode = re_to_de(res.extended, gf_var);
  } catch (const std::exception& e) {
    throw ConvertStageError("differential equation", e.what());
  }
  OdeSolveOutcome& out = res.outcome;
  info("DE: " + ode_to_text(out.ode));
  info("trying to solve DE ...");

  const int n = out.ode.order();
  const long lo = std::min(k_start, 0L) - 2;
  const long fit_hi = k_start + n + 1;
  const long hi = std::max(fit_hi, k_start + opts.verify_terms - 1);
  std::vector<detail::SolutionBasis> bases;
  try {
    bases = detail::solution_bases(out.ode, gf_var, opts, out.attempted, out.diagnostics);
  } catch (const std::exception& e) {
    out.diagnostics.push_back(std::string("solver: ") + e.what());
  }
  for (const auto& b : bases) {
    const std::string name = b.squared ? "x = t^2" : b.strategy;
    std::vector<Expr> fs;
    std::vector<Stream> streams;
    for (const auto& f : b.functions) {
      try {
        streams.push_back(coefficient_stream(f, b, lo, hi));
        fs.push_back(f);
      } catch (const std::exception& e) {
        out.diagnostics.push_back(name + ": no expansion at 0 for " + to_text(f) + " (" + e.what() + ")");
      }
    }
    if (fs.empty()) continue;
    // Constants from the first coefficients; the rest verifies.
    auto rows_for = [&](long upto) {
      std::vector<std::vector<Field>> m;
      for (long j = lo; j <= upto; ++j) {
        const auto idx = static_cast<std::size_t>(j - lo);
        std::vector<Field> row;
        for (const auto& s : streams) row.push_back(s.even[idx]);
        row.push_back(value(j));
        m.push_back(std::move(row));
        if (!b.squared) continue;
        std::vector<Field> odd;
        for (const auto& s : streams) odd.push_back(s.odd[idx]);
        odd.emplace_back();
        m.push_back(std::move(odd));
      }
      return m;
    };
    const auto c = detail::solve_linear(rows_for(fit_hi), fs.size());
    if (!c) {
      out.diagnostics.push_back(name + ": initial values do not fit");
      continue;
    }
    bool ok = true;
    for (const auto& row : rows_for(hi)) {
      Field s;
      for (std::size_t i = 0; i < fs.size(); ++i) s += (*c)[i] * row[i];
      if (s != row.back()) ok = false;
    }
    if (!ok) {
      out.diagnostics.push_back(name + ": verification failed");
      continue;
    }
    for (std::size_t i = 0; i < fs.size(); ++i) info("C" + std::to_string(i + 1) + " = " + to_text(from_field((*c)[i])));
    std::vector<Expr> back;
    for (const auto& f : fs) back.push_back(back_substitute(f, b, gf_var));
    out.solved = true;
    out.strategy = name;
    out.closed_form = combine(*c, back, gf_var);
    res.verified = true;
    info("solved by " + name);
    return res;
  }
  info("DE not solved");
  return res;
}

}  // namespace fps
