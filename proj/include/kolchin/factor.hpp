#pragma once

#include <string>
#include <vector>

#include "kolchin/qpoly.hpp"

namespace kolchin {

struct FactorLimits {
  int max_total_degree = 8;          // above this only cheap criteria are tried
  int max_image_degree = 64;         // Kronecker substitution image
  int max_subset_factors = 16;
};

enum class FactorAnswer { irreducible, reducible, unknown };

struct FactorResult {
  FactorAnswer answer = FactorAnswer::unknown;
  QPoly left, right;  // left * right == f (up to a rational unit) when reducible
  std::string reason;
};

// Decides irreducibility of a nonconstant f in Q[vars] with bounded search.
// A reducible answer always carries two nonconstant factors.
FactorResult find_factor(const QPoly& f, const FactorLimits& limits = {});

// Complete factorisation into irreducibles (with multiplicity), or nullopt-like
// empty vector plus ok=false when some piece stayed undecided.
struct Factorization {
  bool complete = false;
  std::vector<QPoly> factors;
};
Factorization factor_completely(const QPoly& f, const FactorLimits& limits = {});

// Possible degrees of rational factors of a squarefree univariate polynomial,
// from distinct-degree factorisations modulo several small primes. Element i
// is true when a factor of degree i is not excluded.
std::vector<bool> admissible_factor_degrees(const std::vector<mpz_class>& coeffs, int primes = 12);

}  // namespace kolchin
