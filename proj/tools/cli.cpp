#include "cli.hpp"

#include <algorithm>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "fps/bridge.hpp"
#include "fps/json_io.hpp"
#include "fps/taylor.hpp"

namespace fps::cli {

namespace {

struct Config {
  std::string expr;
  std::string var;
  std::string at = "0";
  std::string gf_var = "x";
  std::string index = "k";
  long from = 0;
  int max_de_order = 5;
  int max_order = 4;
  int max_degree = 8;
  int oracle_check = 0;
  std::string strategy;
  std::string format = "text";
  bool verbose = false;
};

/// Exit status 2: emitted partial result.
constexpr int kPartial = 2;

std::string wrap_latex(const Expr& c) {
  const std::string s = to_latex(c);
  return c.kind() == Kind::Add ? "\\left(" + s + "\\right)" : s;
}

/// "c_0 F(x) + c_1 F'(x) + ... = 0"
std::string ode_to_latex(const LinearODE& ode) {
  std::vector<std::string> parts;
  for (std::size_t i = 0; i < ode.coeffs.size(); ++i) {
    if (ode.coeffs[i].is_zero()) continue;
    std::string d;
    if (i <= 2) {
      d = "F" + std::string(i, '\'') + "(" + ode.variable + ")";
    } else {
      d = "F^{(" + std::to_string(i) + ")}(" + ode.variable + ")";
    }
    const Expr c = from_poly(ode.coeffs[i]);
    if (c.is_one()) {
      parts.push_back(d);
    } else if (c == Expr(-1)) {
      parts.push_back("-" + d);
    } else {
      parts.push_back(wrap_latex(c) + " " + d);
    }
  }
  std::string s;
  for (const auto& p : parts) s += (s.empty() ? "" : p[0] == '-' ? " - " : " + ") + (s.empty() || p[0] != '-' ? p : p.substr(1));
  return s + " = 0";
}

std::string recurrence_to_latex(const LinearRecurrence& re) {
  std::string s;
  for (const auto& [m, p] : re.coeffs) {
    const Expr idx = Expr::variable(re.index) + Expr(static_cast<long>(m));
    const std::string a = "a_{" + to_latex(idx) + "}";
    const Expr c = from_poly(p);
    std::string term;
    bool negative = false;
    if (c.is_one()) {
      term = a;
    } else if (c == Expr(-1)) {
      term = a;
      negative = true;
    } else {
      term = wrap_latex(c) + " " + a;
    }
    if (s.empty()) {
      s = (negative ? "-" : "") + term;
    } else {
      s += (negative ? " - " : " + ") + term;
    }
  }
  return s + " = 0";
}

std::vector<Strategy> parse_strategies(const std::string& text) {
  std::vector<Strategy> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item == "hypergeometric" || item == "h") {
      out.push_back(Strategy::Hypergeometric);
    } else if (item == "rational" || item == "r") {
      out.push_back(Strategy::Rational);
    } else if (item == "exponential" || item == "e") {
      out.push_back(Strategy::Exponential);
    } else {
      throw std::invalid_argument("unknown strategy '" + item + "'");
    }
  }
  if (out.empty()) throw std::invalid_argument("empty strategy list");
  return out;
}

class Runner {
 public:
  Runner(const Config& cfg, std::istream& in, std::ostream& out, std::ostream& err)
      : cfg_(cfg), in_(in), out_(out), err_(err) {}

  TraceSink sink() const {
    if (!cfg_.verbose) return {};
    return [this](const std::string& line) { err_ << line << "\n"; };
  }

  void info(const std::string& line) const {
    if (cfg_.verbose) err_ << "info: " << line << "\n";
  }

  void emit(const std::string& text, const std::string& latex, const Json& json) const {
    if (cfg_.format == "json") {
      out_ << dump(json);
    } else if (cfg_.format == "latex") {
      out_ << latex << "\n";
    } else {
      out_ << text << "\n";
    }
  }

  void emit_ode(const LinearODE& ode) const { emit(ode_to_text(ode), ode_to_latex(ode), ode_to_json(ode)); }
  void emit_re(const LinearRecurrence& re) const {
    emit(recurrence_to_text(re), recurrence_to_latex(re), recurrence_to_json(re));
  }

  DEOptions de_options() const {
    DEOptions o;
    o.max_order = cfg_.max_de_order;
    o.degree_guard = default_degree_guard();
    return o;
  }

  LinearODE find_de(const Expr& f) const {
    const LinearODE ode = simple_de(f, cfg_.var, de_options());
    info(std::to_string(ode.order()) + " step(s) for DE: " + ode_to_text(ode));
    return ode;
  }

  int series() const {
    const Expr f = parse(cfg_.expr);
    const Expr x0 = parse(cfg_.at);
    SeriesOptions o;
    o.max_de_order = cfg_.max_de_order;
    o.degree_guard = default_degree_guard();
    if (!cfg_.strategy.empty()) o.order = parse_strategies(cfg_.strategy);
    o.trace = sink();
    FormalSeries s;
    try {
      s = power_series(f, cfg_.var, x0, o);
    } catch (const NotOfImplementedType& e) {
      err_ << "error: NotOfImplementedType: " << e.what() << "\n";
      Json j{{"type", "NotOfImplementedType"}, {"message", e.what()}};
      std::string text;
      std::string latex;
      if (e.de()) {
        j["de"] = ode_to_json(*e.de());
        text += "DE: " + ode_to_text(*e.de());
        latex += ode_to_latex(*e.de());
      }
      if (e.re()) {
        j["re"] = recurrence_to_json(*e.re());
        text += (text.empty() ? "" : "\n") + std::string("RE: ") + recurrence_to_text(*e.re());
        latex += (latex.empty() ? "" : "\n") + recurrence_to_latex(*e.re());
      }
      emit(text.empty() ? "NotOfImplementedType" : text, latex, j);
      return kPartial;
    }
    if (cfg_.oracle_check > 0) {
      // Expansion in t = (x - x0)^(1/n).
      Expr g = x0.is_zero() ? f : substitute(f, cfg_.var, Expr::variable(cfg_.var) + x0);
      if (s.puiseux_n > 1) g = substitute(g, cfg_.var, pow(Expr::variable(cfg_.var), Expr(s.puiseux_n)));
      const TaylorSeries t = taylor_oracle(g, cfg_.var, Expr(0), cfg_.oracle_check - 1);
      long low = t.identically_zero ? 0 : t.offset;
      for (const auto& m : s.polynomial) low = std::min(low, m.exponent);
      for (long e = low; e < low + cfg_.oracle_check; ++e) {
        const Field want = t.identically_zero ? Field() : t.coeff(static_cast<int>(e));
        if (s.coefficient(e) != want) {
          err_ << "error: oracle check failed at exponent " << e << "/" << s.puiseux_n << ": series gives "
               << to_string(s.coefficient(e)) << ", oracle gives " << to_string(want) << "\n";
          return 1;
        }
      }
      info("oracle check passed for " + std::to_string(cfg_.oracle_check) + " coefficients");
    }
    emit(series_to_text(s), series_to_latex(s), series_to_json(s));
    return 0;
  }

  int de() const {
    emit_ode(find_de(parse(cfg_.expr)));
    return 0;
  }

  int re() const {
    const LinearRecurrence r = de_to_re(find_de(parse(cfg_.expr)), cfg_.index);
    info("RE: " + recurrence_to_text(r));
    emit_re(r);
    return 0;
  }

  int de2re() const {
    const LinearODE ode = ode_from_json(Json::parse(in_));
    emit_re(de_to_re(ode, cfg_.index));
    return 0;
  }

  int re2de() const {
    LinearRecurrence r = recurrence_from_json(Json::parse(in_));
    if (!r.for_all_k()) {
      r = extend_validity(r, *r.valid_from);
      info("RE valid for all k: " + recurrence_to_text(r));
    }
    emit_ode(re_to_de(r, cfg_.var));
    return 0;
  }

  int findrec() const {
    FindRecursionOptions o;
    o.max_order = cfg_.max_order;
    o.max_degree = cfg_.max_degree;
    const LinearRecurrence r = find_recursion(parse(cfg_.expr), cfg_.var, o);
    info(std::to_string(r.order()) + " step(s) for RE: " + recurrence_to_text(r));
    emit_re(r);
    return 0;
  }

  int convert() const {
    GfOptions o;
    o.max_order = cfg_.max_order;
    o.max_degree = cfg_.max_degree;
    const ConvertResult r = fps::convert(parse(cfg_.expr), cfg_.var, cfg_.gf_var, cfg_.from, o, sink());
    const OdeSolveOutcome& oc = r.outcome;
    if (oc.solved) {
      emit(to_text(oc.closed_form), to_latex(oc.closed_form), convert_to_json(r));
      return 0;
    }
    err_ << "error: UnsolvedODE: no closed form from " << oc.attempted.size() << " strategies\n";
    for (const auto& d : oc.diagnostics) info(d);
    emit("UnsolvedODE: " + ode_to_text(oc.ode), ode_to_latex(oc.ode), convert_to_json(r));
    return kPartial;
  }

 private:
  const Config& cfg_;
  std::istream& in_;
  std::ostream& out_;
  std::ostream& err_;
};

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  Config cfg;
  CLI::App app{"Formal power series, differential equations and recurrences", "fps"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"text", "latex", "json"}));
  app.add_flag("-v,--verbose", cfg.verbose, "Trace pipeline stages on stderr");
  app.add_option("--max-de-order", cfg.max_de_order, "Largest DE order searched")->check(CLI::PositiveNumber);
  app.add_option("--max-order", cfg.max_order, "Largest recurrence order searched")->check(CLI::PositiveNumber);
  app.add_option("--max-degree", cfg.max_degree, "Largest recurrence coefficient degree")
      ->check(CLI::NonNegativeNumber);

  auto* series = app.add_subcommand("series", "Closed-form power series of an expression");
  series->add_option("expr", cfg.expr, "Expression")->required();
  series->add_option("--var", cfg.var, "Expansion variable");
  series->add_option("--at", cfg.at, "Expansion point");
  series->add_option("--strategy", cfg.strategy, "Comma separated: hypergeometric,rational,exponential");
  series->add_option("--oracle-check", cfg.oracle_check, "Compare N coefficients with the Taylor oracle")
      ->check(CLI::NonNegativeNumber);

  auto* de = app.add_subcommand("de", "Simple differential equation of an expression");
  de->add_option("expr", cfg.expr, "Expression")->required();
  de->add_option("--var", cfg.var, "Independent variable");

  auto* re = app.add_subcommand("re", "Recurrence for the series coefficients of an expression");
  re->add_option("expr", cfg.expr, "Expression")->required();
  re->add_option("--var", cfg.var, "Independent variable");
  re->add_option("--index", cfg.index, "Recurrence index");

  auto* de2re = app.add_subcommand("de2re", "Recurrence from a JSON ODE on stdin");
  de2re->add_option("--index", cfg.index, "Recurrence index");

  auto* re2de = app.add_subcommand("re2de", "ODE from a JSON recurrence on stdin");
  re2de->add_option("--var", cfg.var, "Independent variable");

  auto* findrec = app.add_subcommand("findrec", "Recurrence satisfied by a term");
  findrec->add_option("term", cfg.expr, "Term")->required();
  findrec->add_option("--var", cfg.var, "Index variable");

  auto* conv = app.add_subcommand("convert", "Generating function of sum_k term");
  conv->add_option("term", cfg.expr, "Summand a_k x^k")->required();
  conv->add_option("--var", cfg.var, "Summation index");
  conv->add_option("--gf-var", cfg.gf_var, "Generating function variable");
  conv->add_option("--from", cfg.from, "First summation index");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }
  const bool index_command = findrec->parsed() || conv->parsed();
  if (cfg.var.empty()) cfg.var = index_command ? "k" : "x";

  Runner r(cfg, in, out, err);
  try {
    if (series->parsed()) return r.series();
    if (de->parsed()) return r.de();
    if (re->parsed()) return r.re();
    if (de2re->parsed()) return r.de2re();
    if (re2de->parsed()) return r.re2de();
    if (findrec->parsed()) return r.findrec();
    if (conv->parsed()) return r.convert();
  } catch (const NoDEFound& e) {
    err << "error: NoDEFound(" << e.max_order() << "): " << e.what() << "\n";
    if (cfg.format == "json") {
      out << dump(Json{{"type", "NoDEFound"}, {"max_order", e.max_order()}, {"message", e.what()}});
    }
    return kPartial;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace fps::cli
