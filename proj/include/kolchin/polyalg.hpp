#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "kolchin/factor.hpp"
#include "kolchin/scalars.hpp"

namespace kolchin {

// Exponent vector of fixed length (the ring's variable count).
using Mono = std::vector<int>;

int mono_degree(const Mono& a);
bool mono_divides(const Mono& a, const Mono& b);  // a | b
Mono mono_lcm(const Mono& a, const Mono& b);
Mono mono_mul(const Mono& a, const Mono& b);
Mono mono_div(const Mono& b, const Mono& a);  // b / a, precondition a | b
bool mono_coprime(const Mono& a, const Mono& b);

enum class OrderKind { grevlex, lex, deglex, elimination };

// Variable 0 is the largest in every order. The elimination order compares
// the first `block` variables by grevlex, then the rest by grevlex.
struct MonomialOrder {
  OrderKind kind = OrderKind::grevlex;
  int block = 0;

  static MonomialOrder grevlex() { return {OrderKind::grevlex, 0}; }
  static MonomialOrder lex() { return {OrderKind::lex, 0}; }
  static MonomialOrder deglex() { return {OrderKind::deglex, 0}; }
  static MonomialOrder elimination(int block) { return {OrderKind::elimination, block}; }

  bool greater(const Mono& a, const Mono& b) const;
  friend bool operator==(const MonomialOrder& a, const MonomialOrder& b) {
    return a.kind == b.kind && a.block == b.block;
  }
};

std::string default_var_name(int i);  // "x1", "x2", ...

// Sparse polynomial over Q(t1..tk) in a fixed number of variables, terms kept
// in decreasing order for its monomial order.
class CPoly {
 public:
  struct Greater {
    MonomialOrder order;
    bool operator()(const Mono& a, const Mono& b) const { return order.greater(a, b); }
  };
  using Terms = std::map<Mono, Scalar, Greater>;

  CPoly() : terms_(Greater{}) {}
  explicit CPoly(int nvars, MonomialOrder order = {}) : nvars_(nvars), terms_(Greater{order}) {}

  static CPoly constant(int nvars, const Scalar& c, MonomialOrder order = {});
  static CPoly variable(int nvars, int i, MonomialOrder order = {});
  static CPoly monomial(const Mono& m, const Scalar& c, MonomialOrder order = {});

  int nvars() const { return nvars_; }
  MonomialOrder order() const { return terms_.key_comp().order; }
  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  bool is_one() const;

  const Mono& leading_monomial() const { return terms_.begin()->first; }
  const Scalar& leading_coefficient() const { return terms_.begin()->second; }
  Scalar coefficient(const Mono& m) const;

  int total_degree() const;
  int degree_in(int v) const;
  bool involves(int v) const { return degree_in(v) > 0; }

  CPoly with_order(const MonomialOrder& order) const;
  CPoly monic() const;

  void add_term(const Mono& m, const Scalar& c);
  // *this -= c * x^m * g
  void sub_mul_term(const Mono& m, const Scalar& c, const CPoly& g);
  CPoly mul_term(const Mono& m, const Scalar& c) const;

  CPoly operator-() const;
  CPoly& operator+=(const CPoly& o);
  CPoly& operator-=(const CPoly& o);
  friend CPoly operator+(CPoly a, const CPoly& b) { return a += b; }
  friend CPoly operator-(CPoly a, const CPoly& b) { return a -= b; }
  friend CPoly operator*(const CPoly& a, const CPoly& b);
  friend CPoly operator*(const Scalar& c, const CPoly& a);
  friend bool operator==(const CPoly& a, const CPoly& b);
  friend bool operator!=(const CPoly& a, const CPoly& b) { return !(a == b); }
  CPoly pow(int e) const;

  // Formal partial derivative in variable v; coefficients untouched.
  CPoly derivative(int v) const;
  CPoly map_coefficients(const std::function<Scalar(const Scalar&)>& fn) const;
  Scalar evaluate(const std::vector<Scalar>& point) const;
  // Replaces every variable i by values[i] (a polynomial in the target ring).
  CPoly compose(const std::vector<CPoly>& values) const;
  // Moves variable i to index var_map[i] of a ring with new_nvars variables.
  CPoly rename(int new_nvars, const std::vector<int>& var_map, MonomialOrder order = {}) const;

  std::string to_string(const std::function<std::string(int)>& name = default_var_name) const;

 private:
  int nvars_ = 0;
  Terms terms_;
};

// Resource limits for Groebner computations. KOLCHIN_BUDGET, when set, reads
// like "degree=24,basis=512,pairs=20000" and overrides the defaults.
struct Budget {
  int max_degree = 24;
  int max_basis = 512;
  long max_pairs = 20000;
  static Budget defaults();
};

struct IdealBasis {
  int nvars = 0;
  std::vector<CPoly> generators;
  MonomialOrder order;
  bool groebner = false;

  IdealBasis() = default;
  IdealBasis(int n, std::vector<CPoly> gens, MonomialOrder o = {});
  bool is_unit() const;  // only meaningful for a reduced basis
};

struct Division {
  CPoly remainder;
  std::vector<CPoly> quotients;  // f = sum quotients[i] * divisors[i] + remainder
};
Division divide(const CPoly& f, const std::vector<CPoly>& divisors);

// Reduced, monic Groebner basis sorted by increasing leading monomial.
IdealBasis groebner(const IdealBasis& ideal, const Budget& budget = Budget::defaults());

// cofactors[i][j]: basis[i] = sum_j cofactors[i][j] * ideal.generators[j].
struct GroebnerCertificate {
  IdealBasis basis;
  std::vector<std::vector<CPoly>> cofactors;
};
GroebnerCertificate groebner_with_cofactors(const IdealBasis& ideal,
                                            const Budget& budget = Budget::defaults());

// All S-polynomials reduce to zero and the basis is interreduced.
bool is_reduced_groebner(const IdealBasis& basis);

CPoly normal_form(const CPoly& f, const IdealBasis& gb);

struct Membership {
  bool member = false;
  std::vector<CPoly> cofactors;  // f = sum cofactors[j] * generators[j] when member
};
Membership ideal_member(const CPoly& f, const IdealBasis& ideal,
                        const Budget& budget = Budget::defaults());
bool ideal_contains(const IdealBasis& gb, const CPoly& f);  // gb must be a Groebner basis

struct Saturation {
  IdealBasis ideal;             // reduced Groebner basis of I : h^oo
  std::vector<int> exponents;   // h^exponents[i] * ideal.generators[i] lies in I
  int exponent_bound = 0;
};
Saturation saturate(const IdealBasis& ideal, const CPoly& h,
                    const Budget& budget = Budget::defaults());

enum class PrimeAnswer { prime, not_prime, unknown };
std::string to_string(PrimeAnswer a);

struct PrimeResult {
  PrimeAnswer answer = PrimeAnswer::unknown;
  std::string reason;
  // not_prime: two non-members whose product lies in the ideal (empty for the
  // unit ideal); prime: the Groebner basis the certificate refers to.
  std::vector<CPoly> witness;
};
PrimeResult is_prime_bounded(const IdealBasis& ideal, const Budget& budget = Budget::defaults(),
                             const FactorLimits& limits = {});

// Factor search over Q(t1..tk)[vars]; reducible answers carry two factors of
// positive degree.
struct CFactorResult {
  FactorAnswer answer = FactorAnswer::unknown;
  CPoly left, right;
  std::string reason;
};
CFactorResult find_factor(const CPoly& f, const FactorLimits& limits = {});

}  // namespace kolchin
