#include "solve.hpp"

#include "fps/bridge.hpp"
#include "../common/linear.hpp"
#include "../common/partial.hpp"

namespace fps::detail {

namespace {

const std::string kImag = "$-1";

Field apply(const LinearODE& ode, Field f, const std::string& var) {
  Field out;
  for (std::size_t i = 0; i < ode.coeffs.size(); ++i) {
    if (i > 0) f = f.derivative(var);
    if (!ode.coeffs[i].is_zero()) out += Field(ode.coeffs[i]) * f;
  }
  return out;
}

std::vector<Field> rational_solutions(const LinearODE& ode, const std::string& var, const GfOptions& opts) {
  const Field x = Field::symbol(var);
  const Field lc(ode.coeffs.back());
  std::vector<Field> best;
  for (int e = 0; e <= opts.rational_power; ++e) {
    const Field d = lc.pow(e);
    std::vector<Field> monomials;
    std::vector<Field> cols;
    for (int m = 0; m <= opts.rational_degree; ++m) {
      monomials.push_back(x.pow(m) / d);
      cols.push_back(apply(ode, monomials.back(), var));
    }
    const auto kernel = kernel_basis(identity_rows(cols, var), cols.size());
    if (kernel.size() <= best.size()) continue;
    best.clear();
    for (const auto& u : kernel) {
      Field f;
      for (std::size_t m = 0; m < u.size(); ++m) {
        if (!u[m].is_zero()) f += u[m] * monomials[m];
      }
      best.push_back(f);
    }
    if (static_cast<int>(best.size()) == ode.order()) break;
  }
  return best;
}

/// z = re + i im.
std::pair<Field, Field> split_complex(const Field& z) {
  const std::vector<Poly> c = z.num().coefficients_in(kImag);
  const Field re = c.empty() ? Field() : Field(c[0], z.den());
  const Field im = c.size() < 2 ? Field() : Field(c[1], z.den());
  return {re, im};
}

/// Index of the pole whose root and leading coefficient are the complex
/// conjugates of those of pole i.
std::size_t conjugate_pole(const std::vector<PolePart>& poles, std::size_t i) {
  if (!poles[i].root.has_symbol(kImag)) return poles.size();
  for (std::size_t j = i + 1; j < poles.size(); ++j) {
    if (poles[j].root == poles[i].root.conjugate(kImag) && poles[j].c.size() == poles[i].c.size()) return j;
  }
  return poles.size();
}

/// F with F'/F = r: prod (1 - x/rho)^c exp(E), E(0) = 0.
struct Hyperexponential {
  Expr expr;
  std::optional<Field> rational;  // when all exponents are integers and E = 0
};

std::optional<Hyperexponential> hyperexponential(const Field& r, const std::string& var) {
  const auto pf = partial_fractions(UPoly::from_field(Field(r.num()), var), UPoly::from_field(Field(r.den()), var));
  if (!pf) return std::nullopt;
  const Field x = Field::symbol(var);
  Field e;
  for (int i = 0; i <= pf->poly.degree(); ++i) e += pf->poly.coeff(i) * x.pow(i + 1) / Field(i + 1);
  std::vector<Expr> factors;
  Field rational(1);
  bool is_rational = true;
  std::vector<bool> done(pf->poles.size());
  for (std::size_t i = 0; i < pf->poles.size(); ++i) {
    if (done[i]) continue;
    const PolePart& p = pf->poles[i];
    for (std::size_t l = 2; l <= p.c.size(); ++l) {
      if (p.root.is_zero()) return std::nullopt;  // essential singularity at 0
      const Field term = -p.c[l - 1] / Field(static_cast<long>(l - 1));
      e += term / (x - p.root).pow(static_cast<long>(l - 1)) - term / (-p.root).pow(static_cast<long>(l - 1));
    }
    const Field& c = p.c[0];
    if (c.is_zero()) continue;
    Field base = p.root.is_zero() ? x : Field(1) - x / p.root;
    const std::size_t j = conjugate_pole(pf->poles, i);
    if (j < pf->poles.size() && pf->poles[j].c[0] == c.conjugate(kImag) && !c.has_symbol(kImag)) {
      done[j] = true;
      base *= Field(1) - x / pf->poles[j].root;
    } else if (c.has_symbol(kImag) || p.root.has_symbol(kImag)) {
      return std::nullopt;
    }
    factors.push_back(pow(from_field(base), from_field(c)));
    if (c.is_rational() && c.constant_value().get_den() == 1) {
      rational *= base.pow(c.constant_value().get_num().get_si());
    } else {
      is_rational = false;
    }
  }
  if (!e.is_zero()) {
    factors.push_back(exp(from_field(e)));
    is_rational = false;
  }
  Hyperexponential h{mul(std::move(factors)), std::nullopt};
  if (is_rational) h.rational = rational;
  return h;
}

/// Antiderivative of a rational function from polynomials, logarithms,
/// arctangents and rational poles, vanishing at 0 where it is analytic.
std::optional<Expr> antiderivative(const Field& f, const std::string& var) {
  const auto pf = partial_fractions(UPoly::from_field(Field(f.num()), var), UPoly::from_field(Field(f.den()), var));
  if (!pf) return std::nullopt;
  const Field x = Field::symbol(var);
  Field rational;
  for (int i = 0; i <= pf->poly.degree(); ++i) rational += pf->poly.coeff(i) * x.pow(i + 1) / Field(i + 1);
  std::vector<Expr> parts;
  std::vector<bool> done(pf->poles.size());
  for (std::size_t i = 0; i < pf->poles.size(); ++i) {
    if (done[i]) continue;
    const PolePart& p = pf->poles[i];
    for (std::size_t l = 2; l <= p.c.size(); ++l) {
      rational -= p.c[l - 1] / (Field(static_cast<long>(l - 1)) * (x - p.root).pow(static_cast<long>(l - 1)));
    }
    const Field& c = p.c[0];
    if (c.is_zero()) continue;
    const std::size_t j = conjugate_pole(pf->poles, i);
    if (p.root.has_symbol(kImag)) {
      if (j == pf->poles.size() || pf->poles[j].c[0] != c.conjugate(kImag)) return std::nullopt;
      done[j] = true;
      // c/(x - rho) + conj = (2u(x - alpha) - 2v beta)/((x - alpha)^2 + beta^2)
      const auto [alpha, beta] = split_complex(p.root);
      const auto [u, v] = split_complex(c);
      if (!u.is_zero()) {
        const Field q = ((x - alpha).pow(2) + beta.pow(2)) / (alpha.pow(2) + beta.pow(2));
        parts.push_back(from_field(u) * log(from_field(q)));
      }
      if (!v.is_zero()) parts.push_back(from_field(Field(-2) * v) * func("arctan", {from_field((x - alpha) / beta)}));
      continue;
    }
    if (p.root.has_surds()) return std::nullopt;
    parts.push_back(from_field(c) * log(from_field(p.root.is_zero() ? x : Field(1) - x / p.root)));
  }
  parts.push_back(from_field(rational));
  return add(std::move(parts));
}

std::vector<Expr> with_reduction_of_order(const LinearODE& ode, const std::vector<Field>& rational,
                                          const std::string& var) {
  std::vector<Expr> out;
  for (const auto& f : rational) out.push_back(from_field(f));
  if (ode.order() != 2 || rational.size() != 1) return out;
  // y2 = y1 * int W / y1^2 with W'/W = -p1/p2
  const auto w = hyperexponential(-Field(ode.coeffs[1]) / Field(ode.coeffs[2]), var);
  if (!w || !w->rational) return out;
  const auto integral = antiderivative(*w->rational / rational[0].pow(2), var);
  if (integral) out.push_back(from_field(rational[0]) * *integral);
  return out;
}

std::vector<Expr> constant_coefficient_solutions(const LinearODE& ode, const std::string& var) {
  std::vector<Field> chi;
  for (const auto& c : ode.coeffs) {
    if (c.has_symbol(var)) return {};
    chi.push_back(Field(c));
  }
  const auto roots = solve_roots(UPoly(chi));
  if (!roots) return {};
  const Expr xv = Expr::variable(var);
  std::vector<Expr> out;
  std::vector<bool> done(roots->size());
  for (std::size_t i = 0; i < roots->size(); ++i) {
    if (done[i]) continue;
    const Field& rho = (*roots)[i].value;
    const int mu = (*roots)[i].multiplicity;
    if (rho.has_symbol(kImag)) {
      std::size_t j = i + 1;
      while (j < roots->size() && (*roots)[j].value != rho.conjugate(kImag)) ++j;
      if (j < roots->size()) {
        done[j] = true;
        const auto [alpha, beta] = split_complex(rho);
        const Expr growth = exp(from_field(alpha) * xv);
        for (int p = 0; p < mu; ++p) {
          const Expr xp = pow(xv, Expr(p));
          out.push_back(xp * growth * cos(from_field(beta) * xv));
          out.push_back(xp * growth * sin(from_field(beta) * xv));
        }
        continue;
      }
    }
    for (int p = 0; p < mu; ++p) out.push_back(pow(xv, Expr(p)) * exp(from_field(rho) * xv));
  }
  return out;
}

/// The ODE satisfied by G(t) = F(t^2).
LinearODE squared_argument(const LinearODE& ode, const std::string& var, const std::string& t) {
  const Field tv = Field::symbol(t);
  std::vector<Field> op{Field(1)};  // d^i/dx^i in terms of d^j/dt^j
  std::vector<Field> total(ode.coeffs.size());
  for (std::size_t i = 0; i < ode.coeffs.size(); ++i) {
    if (i > 0) {
      std::vector<Field> next(op.size() + 1);
      for (std::size_t j = 0; j < op.size(); ++j) {
        next[j] += op[j].derivative(t) / (Field(2) * tv);
        next[j + 1] += op[j] / (Field(2) * tv);
      }
      op = std::move(next);
    }
    const Field p = Field(ode.coeffs[i]).substitute(var, tv.pow(2));
    for (std::size_t j = 0; j < op.size(); ++j) total[j] += p * op[j];
  }
  return make_ode(t, total);
}

void collect(const LinearODE& ode, const std::string& var, const GfOptions& opts, bool squared,
             std::vector<SolutionBasis>& out, std::vector<std::string>& attempted,
             std::vector<std::string>& diagnostics) {
  const std::string suffix = squared ? " (x = t^2)" : "";
  auto push = [&](const std::string& name, std::vector<Expr> fs) {
    attempted.push_back(name + suffix);
    if (fs.empty()) {
      diagnostics.push_back(name + suffix + ": no solutions");
      return;
    }
    out.push_back(SolutionBasis{name, std::move(fs), squared, var});
  };
  push("rational", with_reduction_of_order(ode, rational_solutions(ode, var, opts), var));
  if (ode.order() == 1) {
    std::vector<Expr> fs;
    if (auto h = hyperexponential(-Field(ode.coeffs[0]) / Field(ode.coeffs[1]), var)) fs.push_back(h->expr);
    push("hyperexponential", std::move(fs));
  }
  push("constant coefficients", constant_coefficient_solutions(ode, var));
}

}  // namespace

std::vector<SolutionBasis> solution_bases(const LinearODE& ode, const std::string& var, const GfOptions& opts,
                                          std::vector<std::string>& attempted, std::vector<std::string>& diagnostics) {
  std::vector<SolutionBasis> out;
  if (ode.order() < 1) return out;
  collect(ode, var, opts, false, out, attempted, diagnostics);
  const std::string t = "~t";
  collect(squared_argument(ode, var, t), t, opts, true, out, attempted, diagnostics);
  return out;
}

}  // namespace fps::detail
