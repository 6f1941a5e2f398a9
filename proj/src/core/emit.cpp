#include <map>
#include <sstream>

#include "fps/expr.hpp"

namespace fps {

namespace {

const std::map<std::string, std::string>& text_heads() {
  static const std::map<std::string, std::string> m = {
      {"exp", "Exp"},
      {"log", "Log"},
      {"sin", "Sin"},
      {"cos", "Cos"},
      {"tan", "Tan"},
      {"arcsin", "ArcSin"},
      {"arctan", "ArcTan"},
      {"arcsinh", "ArcSinh"},
      {"factorial", "Factorial"},
      {"pochhammer", "Pochhammer"},
      {"product", "Product"},
      {"sum", "Sum"},
      {"bessel_j", "BesselJ"},
      {"bessel_i", "BesselI"},
      {"bessel_y", "BesselY"},
      {"airy_ai", "AiryAi"},
      {"airy_ai_prime", "AiryAiPrime"},
      {"laguerre", "LaguerreL"},
      {"chebyshev_t", "ChebyshevT"},
      {"chebyshev_u", "ChebyshevU"},
      {"legendre_p", "LegendreP"},
      {"hermite_h", "HermiteH"},
      {"erf", "Erf"},
  };
  return m;
}

// Precedence levels: 1 sum, 2 product, 3 unary minus, 4 power, 5 atom.
int precedence(const Expr& e) {
  switch (e.kind()) {
    case Kind::Add: return 1;
    case Kind::Mul: return 2;
    case Kind::Const:
      if (e.value() < 0) return 3;
      return e.value().get_den() == 1 ? 5 : 2;
    case Kind::Pow: {
      const Expr& x = e.exponent();
      if (x.is_const() && x.value() == Rational(1, 2)) return 5;
      if (x.is_const() && x.value() < 0) return 2;
      if (x.kind() == Kind::Mul && x.arg(0).is_const() && x.arg(0).value() < 0) return 2;
      return 4;
    }
    case Kind::Func:
      return e.name() == "factorial" ? 4 : 5;
    default: return 5;
  }
}

struct Split {
  Rational coef{1};
  std::vector<Expr> num;
  std::vector<Expr> den;
};

Split split_fraction(const Expr& e) {
  Split s;
  const std::vector<Expr> factors = e.kind() == Kind::Mul ? e.args() : std::vector<Expr>{e};
  for (const auto& f : factors) {
    if (f.is_const()) {
      s.coef *= f.value();
    } else if (f.kind() == Kind::Pow && f.exponent().is_const() && f.exponent().value() < 0) {
      s.den.push_back(pow(f.base(), Expr(Rational(-f.exponent().value()))));
    } else if (f.kind() == Kind::Pow && f.exponent().kind() == Kind::Mul && f.exponent().arg(0).is_const() &&
               f.exponent().arg(0).value() < 0) {
      s.den.push_back(pow(f.base(), -f.exponent()));
    } else {
      s.num.push_back(f);
    }
  }
  return s;
}

class TextEmitter {
 public:
  std::string emit(const Expr& e) {
    switch (e.kind()) {
      case Kind::Const: return e.value().get_str();
      case Kind::ImaginaryUnit: return "I";
      case Kind::Pi: return "Pi";
      case Kind::Variable:
      case Kind::Parameter: return e.name();
      case Kind::Add: return emit_add(e);
      case Kind::Mul: return emit_mul(e);
      case Kind::Pow: return emit_pow(e);
      case Kind::Func: return emit_func(e);
    }
    return "?";
  }

 private:
  std::string wrap(const Expr& e, int min_prec) {
    std::string s = emit(e);
    return precedence(e) < min_prec ? "(" + s + ")" : s;
  }

  std::string emit_add(const Expr& e) {
    std::string out;
    bool first = true;
    for (const auto& t : e.args()) {
      std::string s = emit(t);
      if (first) {
        out = s;
      } else if (!s.empty() && s[0] == '-') {
        out += " - " + s.substr(1);
      } else {
        out += " + " + s;
      }
      first = false;
    }
    return out;
  }

  std::string product_of(const std::vector<Expr>& fs) {
    std::string out;
    for (std::size_t i = 0; i < fs.size(); ++i) {
      if (i > 0) out += "*";
      out += wrap(fs[i], 3);
    }
    return out;
  }

  std::string emit_mul(const Expr& e) {
    Split s = split_fraction(e);
    std::string sign;
    if (s.coef < 0) {
      sign = "-";
      s.coef = -s.coef;
    }
    std::vector<std::string> top;
    if (s.coef.get_num() != 1 || s.num.empty()) top.push_back(s.coef.get_num().get_str());
    std::string num = product_of(s.num);
    if (!num.empty()) top.push_back(num);
    std::string out;
    for (std::size_t i = 0; i < top.size(); ++i) out += (i > 0 ? "*" : "") + top[i];
    std::vector<std::string> bottom;
    if (s.coef.get_den() != 1) bottom.push_back(s.coef.get_den().get_str());
    for (const auto& d : s.den) bottom.push_back(wrap(d, 3));
    if (!bottom.empty()) {
      out += "/";
      if (bottom.size() == 1) {
        out += bottom[0];
      } else {
        out += "(";
        for (std::size_t i = 0; i < bottom.size(); ++i) out += (i > 0 ? "*" : "") + bottom[i];
        out += ")";
      }
    }
    return sign + out;
  }

  std::string emit_pow(const Expr& e) {
    const Expr& ex = e.exponent();
    if (ex.is_const() && ex.value() == Rational(1, 2)) return "Sqrt[" + emit(e.base()) + "]";
    if (precedence(e) == 2) return emit_mul(e);
    std::string b = wrap(e.base(), 5);
    std::string x = (ex.is_symbol() || (ex.is_integer() && ex.value() >= 0)) ? emit(ex) : "(" + emit(ex) + ")";
    return b + "^" + x;
  }

  std::string emit_func(const Expr& e) {
    if (e.name() == "factorial") return wrap(e.arg(0), 5) + "!";
    const std::string head = text_heads().at(e.name());
    if (e.name() == "product" || e.name() == "sum") {
      return head + "[" + emit(e.arg(0)) + ", {" + emit(e.arg(1)) + ", " + emit(e.arg(2)) + ", " + emit(e.arg(3)) +
             "}]";
    }
    std::string out = head + "[";
    for (std::size_t i = 0; i < e.args().size(); ++i) out += (i > 0 ? ", " : "") + emit(e.arg(i));
    return out + "]";
  }
};

const std::map<std::string, std::string>& latex_heads() {
  static const std::map<std::string, std::string> m = {
      {"log", "\\log"},       {"sin", "\\sin"},         {"cos", "\\cos"},
      {"tan", "\\tan"},       {"arcsin", "\\arcsin"},   {"arctan", "\\arctan"},
      {"arcsinh", "\\operatorname{arcsinh}"},           {"erf", "\\operatorname{erf}"},
      {"airy_ai", "\\operatorname{Ai}"},                {"airy_ai_prime", "\\operatorname{Ai}'"},
  };
  return m;
}

class LatexEmitter {
 public:
  std::string emit(const Expr& e) {
    switch (e.kind()) {
      case Kind::Const: {
        const Rational& v = e.value();
        if (v.get_den() == 1) return v.get_num().get_str();
        std::string s = v < 0 ? "-" : "";
        return s + "\\frac{" + Integer(abs(v.get_num())).get_str() + "}{" + v.get_den().get_str() + "}";
      }
      case Kind::ImaginaryUnit: return "i";
      case Kind::Pi: return "\\pi";
      case Kind::Variable:
      case Kind::Parameter: return e.name().size() > 1 ? "\\" + e.name() : e.name();
      case Kind::Add: {
        std::string out;
        bool first = true;
        for (const auto& t : e.args()) {
          std::string s = emit(t);
          if (first) {
            out += s;
          } else if (!s.empty() && s[0] == '-') {
            out += " - " + s.substr(1);
          } else {
            out += " + " + s;
          }
          first = false;
        }
        return out;
      }
      case Kind::Mul:
      case Kind::Pow:
        if (e.kind() == Kind::Pow && precedence(e) != 2) return emit_pow(e);
        return emit_mul(e);
      case Kind::Func: return emit_func(e);
    }
    return "?";
  }

 private:
  std::string wrap(const Expr& e, int min_prec) {
    std::string s = emit(e);
    return precedence(e) < min_prec ? "\\left(" + s + "\\right)" : s;
  }

  std::string factors(const std::vector<Expr>& fs) {
    std::string out;
    for (std::size_t i = 0; i < fs.size(); ++i) out += (i > 0 ? " " : "") + wrap(fs[i], 3);
    return out;
  }

  std::string emit_mul(const Expr& e) {
    Split s = split_fraction(e);
    std::string sign;
    if (s.coef < 0) {
      sign = "-";
      s.coef = -s.coef;
    }
    std::string top = factors(s.num);
    if (s.coef.get_num() != 1 || top.empty()) top = s.coef.get_num().get_str() + (top.empty() ? "" : " " + top);
    std::string bottom = s.den.size() == 1 && s.coef.get_den() == 1 ? emit(s.den[0]) : factors(s.den);
    if (s.coef.get_den() != 1) bottom = s.coef.get_den().get_str() + (bottom.empty() ? "" : " " + bottom);
    if (bottom.empty()) return sign + top;
    return sign + "\\frac{" + top + "}{" + bottom + "}";
  }

  std::string emit_pow(const Expr& e) {
    const Expr& ex = e.exponent();
    if (ex.is_const() && ex.value() == Rational(1, 2)) return "\\sqrt{" + emit(e.base()) + "}";
    const Expr& b = e.base();
    const bool paren = precedence(b) < 5 || b.is_func("exp") || b.kind() == Kind::Pow;
    return (paren ? "\\left(" + emit(b) + "\\right)" : emit(b)) + "^{" + emit(ex) + "}";
  }

  std::string emit_func(const Expr& e) {
    const std::string& h = e.name();
    auto args = [&](std::size_t from) {
      std::string out;
      for (std::size_t i = from; i < e.args().size(); ++i) out += (i > from ? ", " : "") + emit(e.arg(i));
      return out;
    };
    if (h == "exp") return "e^{" + emit(e.arg(0)) + "}";
    if (h == "factorial") return wrap(e.arg(0), 5) + "!";
    if (h == "pochhammer") return "\\left(" + emit(e.arg(0)) + "\\right)_{" + emit(e.arg(1)) + "}";
    if (h == "product" || h == "sum") {
      return std::string(h == "product" ? "\\prod" : "\\sum") + "_{" + emit(e.arg(1)) + "=" + emit(e.arg(2)) + "}^{" +
             emit(e.arg(3)) + "} \\left(" + emit(e.arg(0)) + "\\right)";
    }
    if (h == "bessel_j" || h == "bessel_i" || h == "bessel_y") {
      const char c = h == "bessel_j" ? 'J' : (h == "bessel_i" ? 'I' : 'Y');
      return std::string(1, c) + "_{" + emit(e.arg(0)) + "}\\left(" + emit(e.arg(1)) + "\\right)";
    }
    if (h == "laguerre") {
      return "L_{" + emit(e.arg(0)) + "}^{(" + emit(e.arg(1)) + ")}\\left(" + emit(e.arg(2)) + "\\right)";
    }
    if (h == "chebyshev_t" || h == "chebyshev_u" || h == "legendre_p" || h == "hermite_h") {
      const char c = h == "chebyshev_t" ? 'T' : (h == "chebyshev_u" ? 'U' : (h == "legendre_p" ? 'P' : 'H'));
      return std::string(1, c) + "_{" + emit(e.arg(0)) + "}\\left(" + emit(e.arg(1)) + "\\right)";
    }
    return latex_heads().at(h) + "\\left(" + args(0) + "\\right)";
  }
};

}  // namespace

std::string to_text(const Expr& e) { return TextEmitter().emit(e); }
std::string to_latex(const Expr& e) { return LatexEmitter().emit(e); }

}  // namespace fps
