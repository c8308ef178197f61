#include "kolchin/expr.hpp"

#include <cctype>

namespace kolchin {

Ast Ast::number(const mpz_class& v) {
  Ast a;
  a.kind = Kind::number;
  a.value = v;
  return a;
}

Ast Ast::tvar(int i) {
  Ast a;
  a.kind = Kind::tvar;
  a.index = i;
  return a;
}

Ast Ast::xvar(int i) {
  Ast a;
  a.kind = Kind::xvar;
  a.index = i;
  return a;
}

Ast Ast::unary(Kind k, Ast child, int index, int power) {
  Ast a;
  a.kind = k;
  a.index = index;
  a.power = power;
  a.children.push_back(std::move(child));
  return a;
}

Ast Ast::binary(Kind k, Ast l, Ast r) {
  Ast a;
  a.kind = k;
  a.children.push_back(std::move(l));
  a.children.push_back(std::move(r));
  return a;
}

bool operator==(const Ast& a, const Ast& b) {
  return a.kind == b.kind && a.value == b.value && a.index == b.index && a.power == b.power &&
         a.children == b.children;
}

namespace {

class Parser {
 public:
  explicit Parser(const std::string& s) : s_(s) {}

  Ast whole() {
    Ast a = expr();
    skip();
    if (pos_ < s_.size()) fail(s_[pos_] == ',' ? "unexpected ','" : "unexpected '" + std::string(1, s_[pos_]) + "'");
    return a;
  }

  std::vector<Ast> list() {
    std::vector<Ast> out;
    skip();
    if (pos_ == s_.size()) return out;
    while (true) {
      out.push_back(expr());
      skip();
      if (pos_ == s_.size()) return out;
      if (s_[pos_] != ',') fail("expected ',' or end of input");
      ++pos_;
    }
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw SyntaxError(static_cast<int>(pos_) + 1, msg); }
  [[noreturn]] void fail_at(std::size_t at, const std::string& msg) const {
    throw SyntaxError(static_cast<int>(at) + 1, msg);
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  int integer(bool allow_sign) {
    skip();
    std::size_t start = pos_;
    bool neg = false;
    if (allow_sign && pos_ < s_.size() && s_[pos_] == '-') {
      neg = true;
      ++pos_;
    }
    std::size_t digits = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (pos_ == digits) fail("expected an integer");
    if (pos_ - digits > 6) fail_at(start, "exponent too large");
    int v = std::stoi(s_.substr(digits, pos_ - digits));
    return neg ? -v : v;
  }

  Ast expr() {
    Ast a;
    if (accept('-')) a = Ast::unary(Ast::Kind::neg, term());
    else a = term();
    while (true) {
      if (accept('+')) a = Ast::binary(Ast::Kind::add, std::move(a), term());
      else if (accept('-')) a = Ast::binary(Ast::Kind::sub, std::move(a), term());
      else return a;
    }
  }

  Ast term() {
    Ast a = factor();
    while (true) {
      if (accept('*')) a = Ast::binary(Ast::Kind::mul, std::move(a), factor());
      else if (accept('/')) a = Ast::binary(Ast::Kind::div, std::move(a), factor());
      else return a;
    }
  }

  Ast factor() {
    Ast a = atom();
    if (accept('^')) {
      Ast p = Ast::unary(Ast::Kind::pow, std::move(a));
      p.power = integer(true);
      return p;
    }
    return a;
  }

  Ast argument() {
    skip();
    if (pos_ == s_.size() || s_[pos_] != '(') fail("operator must be applied to a parenthesized argument");
    ++pos_;
    skip();
    if (pos_ < s_.size() && s_[pos_] == ')') fail("operator takes one argument, got none");
    Ast a = expr();
    skip();
    if (pos_ < s_.size() && s_[pos_] == ',') fail("operator takes one argument");
    expect(')');
    return a;
  }

  Ast atom() {
    skip();
    if (pos_ == s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return Ast::number(mpz_class(s_.substr(start, pos_ - start)));
    }
    if (c == '(') {
      ++pos_;
      Ast a = expr();
      expect(')');
      return a;
    }
    if (!std::isalpha(static_cast<unsigned char>(c))) fail("unexpected '" + std::string(1, c) + "'");
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    std::string word = s_.substr(start, pos_ - start);
    std::size_t digits = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    std::string num = s_.substr(digits, pos_ - digits);
    if (word == "s" && num.empty()) {
      int power = 1;
      if (accept('^')) power = integer(true);
      return Ast::unary(Ast::Kind::shift, argument(), 0, power);
    }
    if ((word != "t" && word != "x" && word != "d") || num.empty())
      fail_at(start, "unknown identifier '" + word + num + "'");
    if (num.size() > 6 || std::stoi(num) == 0) fail_at(digits, "index must be a positive integer");
    int index = std::stoi(num);
    if (word == "t") return Ast::tvar(index);
    if (word == "x") return Ast::xvar(index);
    int power = 1;
    if (accept('^')) {
      std::size_t at = pos_;
      power = integer(false);
      if (power == 0) fail_at(at, "derivation power must be positive");
    }
    return Ast::unary(Ast::Kind::deriv, argument(), index, power);
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

int precedence(const Ast& a) {
  switch (a.kind) {
    case Ast::Kind::neg:
    case Ast::Kind::add:
    case Ast::Kind::sub: return 1;
    case Ast::Kind::mul:
    case Ast::Kind::div: return 2;
    case Ast::Kind::pow: return 3;
    default: return 4;
  }
}

std::string power_suffix(int p) { return p == 1 ? "" : "^" + std::to_string(p); }

std::string print_at(const Ast& a, int min_prec) {
  std::string s;
  switch (a.kind) {
    case Ast::Kind::number: s = a.value.get_str(); break;
    case Ast::Kind::tvar: s = "t" + std::to_string(a.index); break;
    case Ast::Kind::xvar: s = "x" + std::to_string(a.index); break;
    case Ast::Kind::neg: s = "-" + print_at(a.children[0], 2); break;
    case Ast::Kind::add: s = print_at(a.children[0], 1) + " + " + print_at(a.children[1], 2); break;
    case Ast::Kind::sub: s = print_at(a.children[0], 1) + " - " + print_at(a.children[1], 2); break;
    case Ast::Kind::mul: s = print_at(a.children[0], 2) + "*" + print_at(a.children[1], 3); break;
    case Ast::Kind::div: s = print_at(a.children[0], 2) + "/" + print_at(a.children[1], 3); break;
    case Ast::Kind::pow: s = print_at(a.children[0], 4) + "^" + std::to_string(a.power); break;
    case Ast::Kind::deriv:
      s = "d" + std::to_string(a.index) + power_suffix(a.power) + "(" + print_at(a.children[0], 0) + ")";
      break;
    case Ast::Kind::shift: s = "s" + power_suffix(a.power) + "(" + print_at(a.children[0], 0) + ")"; break;
  }
  return precedence(a) < min_prec ? "(" + s + ")" : s;
}

}  // namespace

Ast parse_expr(const std::string& text) { return Parser(text).whole(); }

std::vector<Ast> parse_expr_list(const std::string& text) { return Parser(text).list(); }

std::string print_expr(const Ast& a) { return print_at(a, 0); }

void ExprUsage::merge(const ExprUsage& o) {
  n = std::max(n, o.n);
  m = std::max(m, o.m);
  k = std::max(k, o.k);
}

ExprUsage expr_usage(const Ast& a) {
  ExprUsage u;
  if (a.kind == Ast::Kind::xvar) u.n = a.index;
  if (a.kind == Ast::Kind::tvar) u.k = a.index;
  if (a.kind == Ast::Kind::deriv) u.m = a.index;
  for (const auto& c : a.children) u.merge(expr_usage(c));
  return u;
}

namespace {

Scalar require_scalar(const DiffPoly& f, const char* what) {
  if (!f.is_constant()) throw PreconditionError(std::string(what) + " must be an element of the base field, got " + f.to_string());
  return f.constant_term();
}

}  // namespace

DiffPoly evaluate_expr(const DiffRing& R, const Ast& a) {
  auto sub = [&](int i) { return evaluate_expr(R, a.children[i]); };
  switch (a.kind) {
    case Ast::Kind::number: return DiffPoly(Scalar(mpq_class(a.value)));
    case Ast::Kind::tvar:
      if (a.index > R.field().k())
        throw PreconditionError("t" + std::to_string(a.index) + " outside the base field (k = " +
                                std::to_string(R.field().k()) + ")");
      return DiffPoly(Scalar::t(a.index));
    case Ast::Kind::xvar:
      if (a.index > R.n())
        throw PreconditionError("x" + std::to_string(a.index) + " outside the ring (n = " + std::to_string(R.n()) + ")");
      return R.x(a.index);
    case Ast::Kind::neg: return -sub(0);
    case Ast::Kind::add: return sub(0) + sub(1);
    case Ast::Kind::sub: return sub(0) - sub(1);
    case Ast::Kind::mul: return sub(0) * sub(1);
    case Ast::Kind::div: {
      Scalar d = require_scalar(sub(1), "divisor");
      if (d.is_zero()) throw DivisionByZero();
      return sub(0) * DiffPoly(d.inverse());
    }
    case Ast::Kind::pow: {
      DiffPoly base = sub(0);
      if (a.power >= 0) return base.pow(a.power);
      Scalar c = require_scalar(base, "base of a negative power");
      if (c.is_zero()) throw DivisionByZero();
      return DiffPoly(c.pow(a.power));
    }
    case Ast::Kind::deriv: {
      if (a.index > R.m())
        throw PreconditionError("d" + std::to_string(a.index) + " outside the ring (m = " + std::to_string(R.m()) + ")");
      DiffPoly f = sub(0);
      for (int i = 0; i < a.power; ++i) f = R.apply_delta(f, a.index);
      return f;
    }
    case Ast::Kind::shift: return R.apply_sigma(sub(0), a.power, true);
  }
  return {};
}

}  // namespace kolchin
