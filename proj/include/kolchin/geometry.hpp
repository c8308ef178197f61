#pragma once

#include <string>
#include <vector>

#include "kolchin/diffpoly.hpp"
#include "kolchin/polyalg.hpp"
#include "kolchin/rittkolchin.hpp"

namespace kolchin {

enum class Verdict { pass, fail, unknown };
std::string to_string(Verdict v);
Verdict verdict_of(Tristate t);

struct Check {
  std::string name;
  Verdict verdict = Verdict::unknown;
  std::string witness;
};

struct WitnessReport {
  std::vector<Check> checks;

  void add(std::string name, Verdict v, std::string witness = {});
  // fail if any check failed, else unknown if any is unknown, else pass.
  Verdict overall() const;
  const Check* find(const std::string& name) const;
};

// a in V(L) \ V(H_L).
bool vstar_member(const DiffRing& R, const std::vector<Scalar>& a, const AutoreducedSet& L);

// Moves x_i to x_{var_map[i-1]}.
DiffPoly rename_vars(const DiffPoly& f, const std::vector<int>& var_map);
// x_i -> x_{n+i}.
DiffPoly to_y_block(const DiffPoly& f, int n);

// V*(Gamma) inside V(L) x V(L^sigma). R2 carries 2n variables, R1 the first n.
WitnessReport containment_check(const DiffRing& R2, const AutoreducedSet& gamma, const DiffRing& R1,
                                const AutoreducedSet& L, const Budget& budget = Budget::defaults());

// Hypotheses and witness for one instance of the geometric axiom: a in V*(L)
// with (a, sigma a) in V*(Gamma).
WitnessReport axiom_instance_verify(const DiffRing& R1, const AutoreducedSet& L, const DiffRing& R2,
                                    const AutoreducedSet& gamma, const std::vector<Scalar>& a,
                                    const Budget& budget = Budget::defaults());

// V~ = V x V^sigma x ... x V^{sigma^{k-1}} on blocks x_0..x_{k-1} (variables
// j*n+1..j*n+n) and W~ on (x_0..x_{k-1}, y_0..y_{k-1}) with y_j at
// k*n + j*n + 1... .
struct PowerTrick {
  int n = 0, k = 0;
  std::vector<DiffPoly> v_tilde;
  std::vector<DiffPoly> w_tilde;
  std::vector<std::string> w_rows;  // "V^s^j", "glue", "W" per w_tilde entry
};
PowerTrick sigma_power_reduction(const DiffRing& R1, const std::vector<DiffPoly>& v_gens,
                                 const std::vector<DiffPoly>& w_gens, int k);
// Substitutes x_j -> sigma^j z and y_j -> sigma^{j+1} z into every W~ row,
// giving polynomials in z_1..z_n with moved indeterminates.
std::vector<DiffPoly> pattern_substitution(const PowerTrick& p);

// s[i][l]: l-th coordinate of the section s_{i+1}; all CPolys in n variables.
struct DVariety {
  int n = 0;
  std::vector<CPoly> v_generators;
  std::vector<std::vector<CPoly>> sections;
};

WitnessReport dvariety_check(const ScalarField& field, const DVariety& D, const Budget& budget = Budget::defaults());
// Coefficient-differentiated reading of the integrability condition.
WitnessReport integrability_check(const ScalarField& field, const DVariety& D,
                                  const Budget& budget = Budget::defaults());
// Both checks plus a best-effort irreducibility check; throws
// PreconditionError if either check fails.
WitnessReport validate_dvariety(const ScalarField& field, const DVariety& D,
                                const Budget& budget = Budget::defaults());

// s_i(a) = delta_i(a); throws PreconditionError when a is not on V.
bool sharp_point_check(const ScalarField& field, const DVariety& D, const std::vector<Scalar>& a);

}  // namespace kolchin
