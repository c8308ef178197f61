#pragma once

#include <map>
#include <string>
#include <vector>

#include "kolchin/diffpoly.hpp"
#include "kolchin/polyalg.hpp"

namespace kolchin {

bool is_partially_reduced(const DiffRing& R, const DiffPoly& g, const DiffPoly& f);
bool is_reduced(const DiffRing& R, const DiffPoly& g, const DiffPoly& f);

struct AutoreducedSet {
  std::vector<DiffPoly> elements;  // strictly increasing rank
  std::vector<LeaderData> data;    // leader_data of each element
  DiffPoly h_product;              // prod S_f * I_f

  std::size_t size() const { return elements.size(); }
};

// Sorts by rank and checks pairwise reducedness; throws PreconditionError
// naming the offending pair.
AutoreducedSet make_autoreduced(const DiffRing& R, std::vector<DiffPoly> elements);
// -1 when a ranks lower than b.
int compare_autoreduced(const DiffRing& R, const AutoreducedSet& a, const AutoreducedSet& b);

enum class FactorKind { separant, initial };

struct CertificateFactor {
  int index = 0;  // into AutoreducedSet::elements
  FactorKind kind = FactorKind::separant;
  int exponent = 0;
};

// coefficient * theta(elements[index])
struct TraceTerm {
  DiffPoly coefficient;
  DerivOp theta;
  int index = 0;
};

struct ReductionResult {
  DiffPoly remainder;
  std::vector<CertificateFactor> certificate;
  std::vector<TraceTerm> trace;

  DiffPoly multiplier(const AutoreducedSet& L) const;  // H = prod of the certificate
};

// H * g - remainder == sum of trace terms, remainder reduced w.r.t. every
// element of L.
ReductionResult ritt_reduce(const DiffRing& R, const DiffPoly& g, const AutoreducedSet& L);
// Expands the trace; used to audit certificates.
DiffPoly expand_trace(const DiffRing& R, const ReductionResult& r, const AutoreducedSet& L);

struct CharacteristicSetRun {
  AutoreducedSet set;
  std::vector<DiffPoly> accumulated;  // input plus every nonzero remainder adjoined
  int rounds = 0;
};

// Lowest-ranking autoreduced subset (greedy basic set).
AutoreducedSet basic_set(const DiffRing& R, const std::vector<DiffPoly>& F);
// Ritt's process. Throws InconsistentSystem when a remainder lands in K.
CharacteristicSetRun characteristic_set_run(const DiffRing& R, const std::vector<DiffPoly>& F);
AutoreducedSet characteristic_set(const DiffRing& R, const std::vector<DiffPoly>& F);

struct DeltaPair {
  int i = 0, j = 0;
  AlgInd common;  // least common derivative of the two leaders
  DiffPoly poly;
  DiffPoly remainder;
};
std::vector<DeltaPair> delta_pairs(const DiffRing& R, const AutoreducedSet& L);
bool is_coherent(const DiffRing& R, const AutoreducedSet& L);

// Commutative polynomial ring on a finite set of indeterminates. Variable 0
// is the highest-ranked one.
class IndetRing {
 public:
  IndetRing() = default;
  explicit IndetRing(std::vector<AlgInd> indets);
  // Indeterminates of all the polynomials.
  static IndetRing covering(const std::vector<DiffPoly>& polys);

  int nvars() const { return static_cast<int>(vars_.size()); }
  const std::vector<AlgInd>& vars() const { return vars_; }
  bool contains(const AlgInd& u) const { return index_.count(u) > 0; }
  CPoly to_cpoly(const DiffPoly& f, MonomialOrder order = {}) const;
  DiffPoly from_cpoly(const CPoly& p) const;
  std::string name(int i) const { return vars_.at(i).to_string(); }

 private:
  std::vector<AlgInd> vars_;
  std::map<AlgInd, int, AlgIndLess> index_;
};

enum class Tristate { yes, no, unknown };
std::string to_string(Tristate t);

struct PrimeCharEvidence {
  Tristate answer = Tristate::unknown;
  bool coherent = false;
  PrimeAnswer algebraic = PrimeAnswer::unknown;
  std::vector<std::string> variables;  // the finite variable set of the algebraic check
  std::vector<DiffPoly> saturation;    // Groebner basis of (L) : H^oo
  std::vector<DiffPoly> failed_probes;
  std::vector<DeltaPair> pairs;
  std::string reason;
};

// yes: characteristic set of a prime differential ideal; no: refuted by
// incoherence or a non-prime algebraic saturation.
PrimeCharEvidence is_char_set_of_prime(const DiffRing& R, const AutoreducedSet& L,
                                       const Budget& budget = Budget::defaults(),
                                       const FactorLimits& limits = {});

struct SaturationMembership {
  Tristate answer = Tristate::unknown;
  ReductionResult reduction;
  std::string reason;
};

// Membership of g in [L] : H_L^oo.
SaturationMembership saturation_member(const DiffRing& R, const DiffPoly& g, const AutoreducedSet& L,
                                       const Budget& budget = Budget::defaults());

}  // namespace kolchin
