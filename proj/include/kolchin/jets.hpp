#pragma once

#include <string>
#include <vector>

#include "kolchin/matrix.hpp"
#include "kolchin/polyalg.hpp"

namespace kolchin {

// Multi-indices alpha with 1 <= |alpha| <= r: graded, then lex with x1 first.
std::vector<Mono> jet_operators(int n, int r);
std::string jet_operator_name(const Mono& alpha);  // "x1", "x1^2", "x1*x2"

// Coefficient of u^alpha in p(a + u) for each alpha in ops.
Vector taylor_row(const CPoly& p, const std::vector<Scalar>& a, const std::vector<Mono>& ops);
// p(a + u) as a polynomial in u.
CPoly recenter(const CPoly& p, const std::vector<Scalar>& a);

// j_r V_a in Taylor-coefficient coordinates: u_alpha pairs with the
// coefficient of (x - a)^alpha, i.e. D f(a) / alpha!.
struct JetSubspace {
  std::vector<Scalar> point;
  int order = 0;
  std::vector<Mono> operators;
  std::vector<Vector> equations;  // reduced echelon basis of the equations
  std::vector<Vector> basis;      // kernel basis

  int ambient() const { return static_cast<int>(operators.size()); }
  int dimension() const { return static_cast<int>(basis.size()); }
};

// Throws PreconditionError when a generator does not vanish at a.
JetSubspace jet_space(const std::vector<CPoly>& gens, int n, const std::vector<Scalar>& a, int r);

// j_r X_a inside j_r Y_a; requires every Y-generator in the ideal of X.
bool jet_include(const std::vector<CPoly>& x_gens, const std::vector<CPoly>& y_gens, int n,
                 const std::vector<Scalar>& a, int r, const Budget& budget = Budget::defaults());

struct JetSeparation {
  bool separated = false;
  int order = 0;  // first order with different jet spaces, or r_max when equal
};
JetSeparation jet_separate(const std::vector<CPoly>& x_gens, const std::vector<CPoly>& y_gens, int n,
                           const std::vector<Scalar>& a, int r_max);

}  // namespace kolchin
