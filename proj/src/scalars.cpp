#include "kolchin/scalars.hpp"

#include <algorithm>

namespace kolchin {

namespace {

std::string t_name(int i) { return "t" + std::to_string(i + 1); }

bool is_variable_power(const QPoly& p) {
  if (p.size() != 1 || p.leading_coefficient() != 1) return false;
  int nonzero = 0;
  for (int e : p.leading_exponent()) nonzero += e != 0;
  return nonzero == 1;
}

}  // namespace

Scalar::Scalar(QPoly num, QPoly den) : rational_(false), num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw DivisionByZero();
  normalize();
}

Scalar Scalar::t(int i) { return Scalar(QPoly::variable(i - 1)); }

void Scalar::normalize() {
  if (num_.is_constant() && den_.is_constant()) {
    q_ = num_.constant_term() / den_.constant_term();
    num_ = QPoly();
    den_ = QPoly();
    rational_ = true;
    return;
  }
  rational_ = false;
  if (den_.is_constant()) {
    if (!den_.is_one()) {
      num_ *= mpq_class(1) / den_.constant_term();
      den_ = QPoly(1);
    }
    return;
  }
  QPoly g = gcd(num_, den_);
  if (!g.is_one()) {
    num_ = *divide_exact(num_, g);
    den_ = *divide_exact(den_, g);
  }
  mpq_class lc = den_.leading_coefficient();
  if (lc != 1) {
    mpq_class inv = mpq_class(1) / lc;
    num_ *= inv;
    den_ *= inv;
  }
  if (num_.is_constant() && den_.is_constant()) normalize();
}

Scalar Scalar::from_coprime(QPoly num, QPoly den) {
  Scalar r;
  r.num_ = std::move(num);
  r.den_ = std::move(den);
  r.rational_ = false;
  if (r.den_.is_constant()) {
    r.normalize();
    return r;
  }
  mpq_class lc = r.den_.leading_coefficient();
  if (lc != 1) {
    mpq_class inv = mpq_class(1) / lc;
    r.num_ *= inv;
    r.den_ *= inv;
  }
  return r;
}

bool Scalar::leading_negative() const {
  if (rational_) return q_ < 0;
  return !num_.is_zero() && num_.leading_coefficient() < 0;
}

int Scalar::num_variables() const {
  if (rational_) return 0;
  return std::max(num_.num_variables(), den_.num_variables());
}

Scalar Scalar::operator-() const {
  Scalar r(*this);
  if (rational_) r.q_ = -q_;
  else r.num_ = -r.num_;
  return r;
}

Scalar operator+(const Scalar& a, const Scalar& b) {
  if (a.rational_ && b.rational_) return Scalar(mpq_class(a.q_ + b.q_));
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.rational_) return Scalar(b.num_ + b.den_ * a.q_, b.den_);
  if (b.rational_) return Scalar(a.num_ + a.den_ * b.q_, a.den_);
  if (a.den_ == b.den_) return Scalar(a.num_ + b.num_, a.den_);
  QPoly g = gcd(a.den_, b.den_);
  if (g.is_one()) return Scalar::from_coprime(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  QPoly da = *divide_exact(a.den_, g), db = *divide_exact(b.den_, g);
  QPoly t = a.num_ * db + b.num_ * da;
  if (t.is_zero()) return Scalar();
  QPoly h = gcd(t, g);
  if (h.is_one()) return Scalar::from_coprime(std::move(t), da * b.den_);
  return Scalar::from_coprime(*divide_exact(t, h), da * *divide_exact(b.den_, h));
}

Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }

Scalar operator*(const Scalar& a, const Scalar& b) {
  if (a.rational_ && b.rational_) return Scalar(mpq_class(a.q_ * b.q_));
  if (a.is_zero() || b.is_zero()) return Scalar();
  if (a.rational_) {
    Scalar r(b);
    r.num_ *= a.q_;
    return r;
  }
  if (b.rational_) {
    Scalar r(a);
    r.num_ *= b.q_;
    return r;
  }
  QPoly g1 = gcd(a.num_, b.den_), g2 = gcd(b.num_, a.den_);
  QPoly n1 = g1.is_one() ? a.num_ : *divide_exact(a.num_, g1);
  QPoly d2 = g1.is_one() ? b.den_ : *divide_exact(b.den_, g1);
  QPoly n2 = g2.is_one() ? b.num_ : *divide_exact(b.num_, g2);
  QPoly d1 = g2.is_one() ? a.den_ : *divide_exact(a.den_, g2);
  return Scalar::from_coprime(n1 * n2, d1 * d2);
}

Scalar operator/(const Scalar& a, const Scalar& b) {
  if (b.is_zero()) throw DivisionByZero();
  if (a.rational_ && b.rational_) return Scalar(mpq_class(a.q_ / b.q_));
  if (b.rational_) {
    Scalar r(a);
    r.num_ *= mpq_class(1) / b.q_;
    return r;
  }
  return Scalar(a.numerator() * b.den_, a.denominator() * b.num_);
}

Scalar Scalar::inverse() const { return Scalar(1) / *this; }

Scalar Scalar::pow(int e) const {
  if (e < 0) return inverse().pow(-e);
  Scalar r(1), base(*this);
  while (e) {
    if (e & 1) r *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return r;
}

std::string Scalar::to_string() const {
  if (rational_) return q_.get_str();
  if (den_.is_one()) return num_.to_string(t_name);
  std::string n = num_.to_string(t_name);
  if (num_.size() > 1) n = "(" + n + ")";
  std::string d = den_.to_string(t_name);
  if (!is_variable_power(den_)) d = "(" + d + ")";
  return n + "/" + d;
}

std::string Scalar::to_factor_string() const {
  if (!rational_ && den_.is_one() && num_.size() > 1) return "(" + to_string() + ")";
  return to_string();
}

std::string format_term(const Scalar& c, const std::string& mono, bool first) {
  bool neg = c.leading_negative();
  Scalar a = neg ? -c : c;
  std::string body;
  if (mono.empty()) {
    // a sign pulled out of a sum must keep the sum together
    body = neg ? a.to_factor_string() : a.to_string();
  } else if (a.is_one()) {
    body = mono;
  } else {
    body = a.to_factor_string() + "*" + mono;
  }
  if (first) return neg ? "-" + body : body;
  return (neg ? " - " : " + ") + body;
}

ScalarField::ScalarField(int k, int m, std::vector<mpq_class> shift_offsets)
    : k_(k), m_(m), shifts_(std::move(shift_offsets)) {
  if (k < 0 || m < 0) throw PreconditionError("negative field parameters");
  shifts_.resize(k, 0);
}

bool ScalarField::sigma_is_identity() const {
  return std::all_of(shifts_.begin(), shifts_.end(), [](const mpq_class& c) { return c == 0; });
}

Scalar ScalarField::derive(const Scalar& a, int i) const {
  if (i < 1 || i > m_) throw PreconditionError("derivation index out of range: " + std::to_string(i));
  if (i > k_ || a.is_rational()) return Scalar();
  int v = i - 1;
  const QPoly& n = a.numerator();
  const QPoly& d = a.denominator();
  if (d.is_one()) return Scalar(n.derivative(v));
  // (n/d)' = (n' d - n d') / d^2
  return Scalar(n.derivative(v) * d - n * d.derivative(v), d * d);
}

Scalar ScalarField::derive_n(const Scalar& a, int i, int times) const {
  Scalar r(a);
  for (int j = 0; j < times && !r.is_zero(); ++j) r = derive(r, i);
  return r;
}

Scalar ScalarField::shift(const Scalar& a, int power) const {
  if (power == 0 || a.is_rational() || sigma_is_identity()) return a;
  std::vector<mpq_class> off(shifts_.size());
  for (std::size_t i = 0; i < off.size(); ++i) off[i] = shifts_[i] * power;
  return Scalar(a.numerator().translate(off), a.denominator().translate(off));
}

bool ScalarField::is_constant(const Scalar& a) const {
  for (int i = 1; i <= m_; ++i)
    if (!derive(a, i).is_zero()) return false;
  return shift(a, 1) == a;
}

}  // namespace kolchin
