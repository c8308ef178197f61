#pragma once

#include <functional>
#include <map>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "kolchin/scalars.hpp"

namespace kolchin {

// delta_m^{e_m} ... delta_1^{e_1} sigma^sigma, stored as an exponent vector so
// commutativity holds by construction.
struct DerivOp {
  std::vector<int> exps;
  int sigma = 0;

  int order() const;
  friend bool operator==(const DerivOp& a, const DerivOp& b) { return a.exps == b.exps && a.sigma == b.sigma; }
  friend bool operator!=(const DerivOp& a, const DerivOp& b) { return !(a == b); }
};

// theta x_var; var is 1-based.
struct AlgInd {
  DerivOp op;
  int var = 1;

  int order() const { return op.order(); }
  std::string to_string() const;
  friend bool operator==(const AlgInd& a, const AlgInd& b) { return a.var == b.var && a.op == b.op; }
  friend bool operator!=(const AlgInd& a, const AlgInd& b) { return !(a == b); }
};

// Canonical ranking: (sum e, var, e_m, ..., e_1) lexicographically. Returns
// -1, 0 or 1. Throws PreconditionError on sigma powers or mismatched m.
int compare_indets(const AlgInd& u, const AlgInd& v);

// Total order used for storage: the ranking, with sigma powers as tiebreak.
struct AlgIndLess {
  bool operator()(const AlgInd& u, const AlgInd& v) const;
};

// u = theta v for some theta (same variable and sigma power).
bool is_derivative_of(const AlgInd& u, const AlgInd& v);
bool is_proper_derivative_of(const AlgInd& u, const AlgInd& v);
// theta with theta v = u; precondition is_derivative_of(u, v).
DerivOp derivative_quotient(const AlgInd& u, const AlgInd& v);

// Monomial: indeterminates in increasing rank with positive exponents.
using DMono = std::vector<std::pair<AlgInd, int>>;

int dmono_degree(const DMono& m);
DMono dmono_mul(const DMono& a, const DMono& b);

// grevlex over indeterminates sorted by rank.
struct DMonoGreater {
  bool operator()(const DMono& a, const DMono& b) const;
};

class DiffPoly {
 public:
  using Terms = std::map<DMono, Scalar, DMonoGreater>;

  DiffPoly() = default;
  DiffPoly(const Scalar& c);  // NOLINT(google-explicit-constructor)
  DiffPoly(long c) : DiffPoly(Scalar(c)) {}  // NOLINT(google-explicit-constructor)
  static DiffPoly indet(const AlgInd& u, int power = 1);

  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  // Lies in K (no indeterminates).
  bool is_constant() const;
  Scalar constant_term() const;

  void add_term(const DMono& m, const Scalar& c);

  DiffPoly operator-() const;
  DiffPoly& operator+=(const DiffPoly& o);
  DiffPoly& operator-=(const DiffPoly& o);
  friend DiffPoly operator+(DiffPoly a, const DiffPoly& b) { return a += b; }
  friend DiffPoly operator-(DiffPoly a, const DiffPoly& b) { return a -= b; }
  friend DiffPoly operator*(const DiffPoly& a, const DiffPoly& b);
  friend bool operator==(const DiffPoly& a, const DiffPoly& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const DiffPoly& a, const DiffPoly& b) { return !(a == b); }
  DiffPoly pow(int e) const;

  // Indeterminates that occur, in increasing rank.
  std::vector<AlgInd> indeterminates() const;
  int degree_in(const AlgInd& u) const;
  // result[i] multiplies u^i.
  std::vector<DiffPoly> coefficients_in(const AlgInd& u) const;
  // Formal partial derivative with respect to the indeterminate u.
  DiffPoly partial(const AlgInd& u) const;
  // Replaces u by the polynomial value.
  DiffPoly substitute(const AlgInd& u, const DiffPoly& value) const;
  // Applies fn to every indeterminate.
  DiffPoly map_indets(const std::function<AlgInd(const AlgInd&)>& fn) const;

  std::string to_string() const;

 private:
  Terms terms_;
};

inline std::ostream& operator<<(std::ostream& os, const DiffPoly& f) { return os << f.to_string(); }
inline std::ostream& operator<<(std::ostream& os, const AlgInd& u) { return os << u.to_string(); }

struct LeaderData {
  AlgInd leader;
  int degree = 0;
  DiffPoly separant;
  DiffPoly initial;
};

// K{x1..xn} with m derivations and sigma, over a ScalarField with the same m.
class DiffRing {
 public:
  DiffRing() = default;
  DiffRing(int n, int m, ScalarField field);
  DiffRing(int n, int m) : DiffRing(n, m, ScalarField::rationals(m)) {}

  int n() const { return n_; }
  int m() const { return m_; }
  const ScalarField& field() const { return field_; }

  // theta x_var with theta = prod delta_i^{exps[i-1]} sigma^sigma; var is 1-based.
  AlgInd indet(int var, std::vector<int> exps = {}, int sigma = 0) const;
  DiffPoly x(int var) const { return DiffPoly::indet(indet(var)); }
  // delta_i applied `times` times to x_var.
  DiffPoly dx(int var, int i, int times = 1) const;

  // Validates that f only mentions x1..xn and m-vectors of exponents.
  void check(const DiffPoly& f) const;

  DiffPoly apply_delta(const DiffPoly& f, int i) const;
  DiffPoly apply_theta(const DiffPoly& f, const DerivOp& theta) const;
  // Coefficients go through sigma^power; indeterminates move too when
  // move_indets is set.
  DiffPoly apply_sigma(const DiffPoly& f, int power, bool move_indets = false) const;
  AlgInd apply_delta(const AlgInd& u, int i) const;

  // Throws PreconditionError for f in K.
  LeaderData leader_data(const DiffPoly& f) const;
  // Rank comparison (v_f, d_f); elements of K rank below everything else.
  int compare_rank(const DiffPoly& f, const DiffPoly& g) const;

  Scalar evaluate_indet(const AlgInd& u, const std::vector<Scalar>& point) const;
  Scalar evaluate(const DiffPoly& f, const std::vector<Scalar>& point) const;

 private:
  int n_ = 0, m_ = 0;
  ScalarField field_;
};

}  // namespace kolchin
