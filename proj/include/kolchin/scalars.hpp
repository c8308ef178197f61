#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "kolchin/errors.hpp"
#include "kolchin/qpoly.hpp"

namespace kolchin {

// Element of Q(t1..tk): a reduced fraction of polynomials whose denominator
// is monic under graded-lex, so equal elements are structurally equal.
class Scalar {
 public:
  Scalar() = default;
  Scalar(long c) : q_(c) {}                  // NOLINT(google-explicit-constructor)
  Scalar(const mpq_class& c) : q_(c) { q_.canonicalize(); }  // NOLINT(google-explicit-constructor)
  explicit Scalar(QPoly p) : Scalar(std::move(p), QPoly(1)) {}
  // Throws DivisionByZero when den is zero.
  Scalar(QPoly num, QPoly den);

  static Scalar t(int i);  // the i-th base indeterminate, 1-based

  QPoly numerator() const { return rational_ ? QPoly(q_.get_num()) : num_; }
  QPoly denominator() const { return rational_ ? QPoly(q_.get_den()) : den_; }

  bool is_zero() const { return rational_ && q_ == 0; }
  bool is_one() const { return rational_ && q_ == 1; }
  bool is_rational() const { return rational_; }
  mpq_class rational_value() const { return q_; }  // precondition: is_rational()
  // Leading numerator coefficient is negative; used for sign-aware printing.
  bool leading_negative() const;
  // Number of base indeterminates mentioned.
  int num_variables() const;

  Scalar operator-() const;
  friend Scalar operator+(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a, const Scalar& b);
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  friend Scalar operator/(const Scalar& a, const Scalar& b);
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
  Scalar& operator/=(const Scalar& o) { return *this = *this / o; }
  friend bool operator==(const Scalar& a, const Scalar& b) {
    if (a.rational_ != b.rational_) return false;
    if (a.rational_) return a.q_ == b.q_;
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  Scalar pow(int e) const;
  Scalar inverse() const;

  // Exact text: "3", "-1/2", "t1^2 - 1", "(t1 + 1)/t1".
  std::string to_string() const;
  // to_string, parenthesised when it would not bind as a single factor.
  std::string to_factor_string() const;

 private:
  void normalize();
  // num/den already coprime; only fixes the leading coefficient of den.
  static Scalar from_coprime(QPoly num, QPoly den);
  // Rational elements live in q_ alone; the others keep a reduced fraction
  // num_/den_ with at least one side nonconstant.
  bool rational_ = true;
  mpq_class q_;
  QPoly num_, den_;
};

// One term "c*mono" of a sum, with the sign pulled out: " - 2*x1" when not
// first. An empty mono prints the bare coefficient.
std::string format_term(const Scalar& c, const std::string& mono, bool first);

// The coefficient field Q(t1..tk) with delta_i = d/dt_i for i <= m and
// sigma(t_i) = t_i + c_i.
class ScalarField {
 public:
  ScalarField() = default;
  ScalarField(int k, int m, std::vector<mpq_class> shift_offsets);

  static ScalarField rationals(int m) { return ScalarField(0, m, {}); }

  int k() const { return k_; }
  int m() const { return m_; }
  const std::vector<mpq_class>& shift_offsets() const { return shifts_; }
  bool sigma_is_identity() const;

  // i is 1-based; 1 <= i <= m. Derivations with i > k act as zero.
  Scalar derive(const Scalar& a, int i) const;
  Scalar derive_n(const Scalar& a, int i, int times) const;
  Scalar shift(const Scalar& a, int power) const;
  // delta_i(a) == 0 for all i and sigma(a) == a.
  bool is_constant(const Scalar& a) const;
  // Element lies in this field (mentions no t beyond k).
  bool contains(const Scalar& a) const { return a.num_variables() <= k_; }

 private:
  int k_ = 0;
  int m_ = 0;
  std::vector<mpq_class> shifts_;
};

}  // namespace kolchin
