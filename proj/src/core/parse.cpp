#include <cctype>
#include <map>

#include "fps/expr.hpp"

namespace fps {

namespace {

const std::map<std::string, std::string>& head_names() {
  static const std::map<std::string, std::string> m = {
      {"Exp", "exp"},
      {"Log", "log"},
      {"Sin", "sin"},
      {"Cos", "cos"},
      {"Tan", "tan"},
      {"ArcSin", "arcsin"},
      {"ArcTan", "arctan"},
      {"ArcSinh", "arcsinh"},
      {"Sqrt", "sqrt"},
      {"Factorial", "factorial"},
      {"Pochhammer", "pochhammer"},
      {"Product", "product"},
      {"Sum", "sum"},
      {"BesselJ", "bessel_j"},
      {"BesselI", "bessel_i"},
      {"BesselY", "bessel_y"},
      {"AiryAi", "airy_ai"},
      {"AiryAiPrime", "airy_ai_prime"},
      {"LaguerreL", "laguerre"},
      {"ChebyshevT", "chebyshev_t"},
      {"ChebyshevU", "chebyshev_u"},
      {"LegendreP", "legendre_p"},
      {"HermiteH", "hermite_h"},
      {"Erf", "erf"},
  };
  return m;
}

std::pair<std::size_t, std::size_t> arity(const std::string& head) {
  if (head == "pochhammer" || head == "bessel_j" || head == "bessel_i" || head == "bessel_y" ||
      head == "chebyshev_t" || head == "chebyshev_u" || head == "legendre_p" || head == "hermite_h") {
    return {2, 2};
  }
  if (head == "laguerre") return {2, 3};
  if (head == "product" || head == "sum") return {2, 2};
  return {1, 1};
}

class Parser {
 public:
  explicit Parser(const std::string& s) : s_(s) {}

  Expr run() {
    Expr e = sum();
    skip();
    if (pos_ < s_.size()) throw SyntaxError(std::string("unexpected '") + s_[pos_] + "'", pos_);
    return e;
  }

 private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])) != 0) ++pos_;
  }
  bool peek(char c) {
    skip();
    return pos_ < s_.size() && s_[pos_] == c;
  }
  void expect(char c) {
    skip();
    if (pos_ >= s_.size()) throw SyntaxError(std::string("expected '") + c + "' but input ended", pos_);
    if (s_[pos_] != c) throw SyntaxError(std::string("expected '") + c + "'", pos_);
    ++pos_;
  }

  Expr sum() {
    Expr e = term();
    for (;;) {
      if (peek('+')) {
        ++pos_;
        e = e + term();
      } else if (peek('-')) {
        ++pos_;
        e = e - term();
      } else {
        return e;
      }
    }
  }

  Expr term() {
    Expr e = unary();
    for (;;) {
      if (peek('*')) {
        ++pos_;
        e = e * unary();
      } else if (peek('/')) {
        ++pos_;
        e = e / unary();
      } else {
        return e;
      }
    }
  }

  Expr unary() {
    if (peek('-')) {
      ++pos_;
      return -unary();
    }
    if (peek('+')) {
      ++pos_;
      return unary();
    }
    return power();
  }

  Expr power() {
    Expr b = postfix();
    if (peek('^')) {
      ++pos_;
      Expr e = unary();
      return pow(b, e);
    }
    return b;
  }

  Expr postfix() {
    Expr e = primary();
    while (peek('!')) {
      ++pos_;
      e = factorial(e);
    }
    return e;
  }

  Expr primary() {
    skip();
    if (pos_ >= s_.size()) throw SyntaxError("unexpected end of input", pos_);
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Expr e = sum();
      expect(')');
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) != 0) {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])) != 0) ++pos_;
      if (pos_ < s_.size() && s_[pos_] == '.') throw SyntaxError("floating-point literals are not supported", pos_);
      return Expr(Rational(Integer(s_.substr(start, pos_ - start))));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) != 0) {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) != 0 || s_[pos_] == '_')) ++pos_;
      const std::string id = s_.substr(start, pos_ - start);
      if (peek('[')) return application(id, start);
      if (id == "I") return Expr::imaginary_unit();
      if (id == "Pi") return Expr::pi();
      if (id == "E") return exp(Expr(1));
      return Expr::variable(id);
    }
    throw SyntaxError(std::string("unexpected '") + c + "'", pos_);
  }

  Expr application(const std::string& id, std::size_t at) {
    std::string head;
    if (auto it = head_names().find(id); it != head_names().end()) {
      head = it->second;
    } else if (is_known_head(id) || id == "sqrt") {
      head = id;
    } else {
      throw UnknownHead("unknown function head '" + id + "' at offset " + std::to_string(at));
    }
    expect('[');
    std::vector<Expr> args;
    std::vector<std::vector<Expr>> lists;
    if (!peek(']')) {
      for (;;) {
        if (peek('{')) {
          ++pos_;
          std::vector<Expr> items{sum()};
          while (peek(',')) {
            ++pos_;
            items.push_back(sum());
          }
          expect('}');
          lists.push_back(std::move(items));
          args.emplace_back();
        } else {
          args.push_back(sum());
        }
        if (peek(',')) {
          ++pos_;
          continue;
        }
        break;
      }
    }
    expect(']');
    const auto [lo, hi] = arity(head);
    if (args.size() < lo || args.size() > hi) {
      throw SyntaxError("wrong number of arguments for " + id, at);
    }
    if (head == "sqrt") return sqrt(args[0]);
    if (head == "product" || head == "sum") {
      if (lists.size() != 1 || lists[0].size() < 2 || lists[0].size() > 3 || !lists[0][0].is_symbol()) {
        throw SyntaxError("expected iterator {j, lo, hi} in " + id, at);
      }
      const auto& it = lists[0];
      const Expr lo_e = it.size() == 3 ? it[1] : Expr(1);
      const Expr hi_e = it.back();
      return func(head, {args[0], Expr::variable(it[0].name()), lo_e, hi_e});
    }
    if (!lists.empty()) throw SyntaxError("unexpected list argument", at);
    return func(head, std::move(args));
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

}  // namespace

Expr parse(const std::string& text) { return Parser(text).run(); }

}  // namespace fps
