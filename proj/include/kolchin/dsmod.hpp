#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kolchin/geometry.hpp"
#include "kolchin/jets.hpp"
#include "kolchin/matrix.hpp"

namespace kolchin {

// U^d with partial_i = delta_i + A[i] and Sigma = B sigma.
struct DSigmaModule {
  int d = 0;
  std::vector<Matrix> A;  // one d x d matrix per derivation
  Matrix B;
};

Matrix derive(const ScalarField& field, const Matrix& m, int i);
Matrix shift(const ScalarField& field, const Matrix& m, int power = 1);
Vector derive(const ScalarField& field, const Vector& v, int i);
Vector shift(const ScalarField& field, const Vector& v, int power = 1);

// Checks the shape and det B != 0, and the commutation identities unless
// unchecked is set. Throws PreconditionError.
DSigmaModule make_module(const ScalarField& field, std::vector<Matrix> A, Matrix B, bool unchecked = false);

// delta_j A_i - delta_i A_j = [A_i, A_j] for i < j; B sigma(A_i) =
// delta_i(B) + A_i B; and the consequence B^-1 A_i = delta_i(B^-1) +
// sigma(A_i) B^-1.
WitnessReport check_commutation(const ScalarField& field, const DSigmaModule& M);
// delta_j A_i - delta_i A_j = [A_i, A_j] only.
WitnessReport check_delta_commutation(const ScalarField& field, const std::vector<Matrix>& A);

// A_i* = -A_i^T.
std::vector<Matrix> dual_module(const std::vector<Matrix>& A);

// A_i' = P^-1 A_i P + P^-1 delta_i(P), B' = P^-1 B sigma(P).
DSigmaModule gauge_transform(const ScalarField& field, const DSigmaModule& M, const Matrix& P);

// delta_i v + A_i v = 0 and B sigma(v) = v.
bool is_sharp_vector(const ScalarField& field, const DSigmaModule& M, const Vector& v);
// N nonsingular, B sigma(N) = N, delta_i N + A_i N = 0.
bool sharp_verify(const ScalarField& field, const DSigmaModule& M, const Matrix& N);

struct SharpSpace {
  std::vector<Vector> basis;
  bool complete = false;  // basis is also a basis of the whole space
  std::string caveat;
};

// Constant entries only: {v : (B - I) v = 0, A_i v = 0}.
SharpSpace sharp_solve_constant(const ScalarField& field, const DSigmaModule& M);

struct JetModule {
  DSigmaModule module;            // in the coordinates of jets.basis
  JetSubspace jets;               // j_r V_a
  std::vector<Mono> standard;     // basis monomials of M/(I + M^{r+1}) in x - a
  DSigmaModule standard_module;   // the same module in the dual standard basis
};

// The (Delta, sigma)-module on j_r V_a induced by a D-variety, a sharp point a
// and a polynomial map phi : V -> V^sigma with phi(a) = sigma(a).
JetModule jet_module(const ScalarField& field, const DVariety& D, const std::vector<Scalar>& a,
                     const std::vector<CPoly>& phi, int r, const Budget& budget = Budget::defaults());

// Constant modules go through sharp_solve_constant; otherwise the candidates
// are verified one by one. Throws PreconditionError for a non-constant module
// without candidates.
SharpSpace sharp_jet_space(const ScalarField& field, const DSigmaModule& M,
                           const std::optional<std::vector<Vector>>& candidates = std::nullopt);

}  // namespace kolchin
