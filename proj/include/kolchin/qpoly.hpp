#pragma once

#include <gmpxx.h>

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace kolchin {

// Exponent vector with trailing zeros trimmed, so a constant has the empty
// exponent regardless of how many variables the surrounding ring declares.
using Exponent = std::vector<int>;

void trim(Exponent& e);
int total_degree(const Exponent& e);
inline int exponent_at(const Exponent& e, std::size_t i) { return i < e.size() ? e[i] : 0; }
Exponent exponent_add(const Exponent& a, const Exponent& b);
bool exponent_divides(const Exponent& a, const Exponent& b);
Exponent exponent_sub(const Exponent& b, const Exponent& a);

// Graded-lex, larger first.
struct DegLexGreater {
  bool operator()(const Exponent& a, const Exponent& b) const;
};

// Sparse multivariate polynomial over Q. Variables are numbered from 0; the
// number of variables is implicit (the longest exponent in use).
class QPoly {
 public:
  using TermMap = std::map<Exponent, mpq_class, DegLexGreater>;

  QPoly() = default;
  QPoly(const mpq_class& c);  // NOLINT(google-explicit-constructor)
  QPoly(long c) : QPoly(mpq_class(c)) {}  // NOLINT(google-explicit-constructor)

  static QPoly variable(int i);
  static QPoly monomial(Exponent e, const mpq_class& c);

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  bool is_one() const;
  mpq_class constant_term() const;
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  // Leading term under graded-lex.
  const Exponent& leading_exponent() const { return terms_.begin()->first; }
  const mpq_class& leading_coefficient() const { return terms_.begin()->second; }

  int total_degree() const;
  int degree_in(int var) const;
  // Highest variable index with positive degree, -1 for constants.
  int top_variable() const;
  int num_variables() const;

  QPoly operator-() const;
  QPoly& operator+=(const QPoly& o);
  QPoly& operator-=(const QPoly& o);
  QPoly& operator*=(const QPoly& o);
  QPoly& operator*=(const mpq_class& c);
  friend QPoly operator+(QPoly a, const QPoly& b) { return a += b; }
  friend QPoly operator-(QPoly a, const QPoly& b) { return a -= b; }
  friend QPoly operator*(const QPoly& a, const QPoly& b);
  friend QPoly operator*(QPoly a, const mpq_class& c) { return a *= c; }
  friend bool operator==(const QPoly& a, const QPoly& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const QPoly& a, const QPoly& b) { return !(a == b); }

  QPoly pow(unsigned e) const;
  QPoly derivative(int var) const;
  // Substitutes t_i -> t_i + offsets[i].
  QPoly translate(const std::vector<mpq_class>& offsets) const;
  mpq_class evaluate(const std::vector<mpq_class>& point) const;
  // Substitutes variable `var` by the constant `value`.
  QPoly substitute(int var, const mpq_class& value) const;

  // Coefficients as a polynomial in `var`: result[i] multiplies var^i.
  std::vector<QPoly> coefficients_in(int var) const;
  static QPoly from_coefficients(int var, const std::vector<QPoly>& coeffs);

  // Leading coefficient normalised to 1 (zero stays zero).
  QPoly monic() const;
  // Makes coefficients integral and coprime, positive leading coefficient.
  QPoly primitive_integral() const;

  std::string to_string(const std::function<std::string(int)>& name) const;

 private:
  void add_term(const Exponent& e, const mpq_class& c);
  TermMap terms_;
};

// Exact division; nullopt when b does not divide a.
std::optional<QPoly> divide_exact(const QPoly& a, const QPoly& b);
// Monic greatest common divisor (gcd(0,0) = 0).
QPoly gcd(const QPoly& a, const QPoly& b);
QPoly content_in(const QPoly& a, int var);
QPoly primitive_part_in(const QPoly& a, int var);
QPoly pseudo_remainder(QPoly a, const QPoly& b, int var);

}  // namespace kolchin
