#pragma once

#include <string>
#include <vector>

#include <gmpxx.h>

#include "kolchin/diffpoly.hpp"
#include "kolchin/errors.hpp"

namespace kolchin {

// Parse failure; column is 1-based and may point one past the end.
class SyntaxError : public Error {
 public:
  SyntaxError(int column, const std::string& message)
      : Error("syntax error at column " + std::to_string(column) + ": " + message), column_(column), detail_(message) {}
  int column() const { return column_; }
  const std::string& detail() const { return detail_; }

 private:
  int column_;
  std::string detail_;
};

struct Ast {
  enum class Kind { number, tvar, xvar, neg, add, sub, mul, div, pow, deriv, shift };

  Kind kind = Kind::number;
  mpz_class value;     // number
  int index = 0;       // tvar, xvar, deriv
  int power = 0;       // pow exponent, deriv and shift powers
  std::vector<Ast> children;

  static Ast number(const mpz_class& v);
  static Ast tvar(int i);
  static Ast xvar(int i);
  static Ast unary(Kind k, Ast a, int index = 0, int power = 0);
  static Ast binary(Kind k, Ast a, Ast b);

  friend bool operator==(const Ast& a, const Ast& b);
  friend bool operator!=(const Ast& a, const Ast& b) { return !(a == b); }
};

// expr := ['-'] term (('+'|'-') term)*; term := factor (('*'|'/') factor)*;
// factor := atom ('^' int)?; atom := int | tN | xN | dN('^'int)? '(' expr ')'
// | s('^'int)? '(' expr ')' | '(' expr ')'.
Ast parse_expr(const std::string& text);
// Comma-separated expressions; an empty string gives an empty list.
std::vector<Ast> parse_expr_list(const std::string& text);
// Minimal parentheses; parse_expr(print_expr(a)) == a.
std::string print_expr(const Ast& a);

// Largest indices of x, d and t that occur.
struct ExprUsage {
  int n = 0, m = 0, k = 0;
  void merge(const ExprUsage& o);
};
ExprUsage expr_usage(const Ast& a);

// Division and negative powers need a divisor in K. Throws PreconditionError
// for indices outside the ring.
DiffPoly evaluate_expr(const DiffRing& R, const Ast& a);

}  // namespace kolchin
