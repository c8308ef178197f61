#include "kolchin/geometry.hpp"

namespace kolchin {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    default: return "unknown";
  }
}

Verdict verdict_of(Tristate t) {
  switch (t) {
    case Tristate::yes: return Verdict::pass;
    case Tristate::no: return Verdict::fail;
    default: return Verdict::unknown;
  }
}

void WitnessReport::add(std::string name, Verdict v, std::string witness) {
  checks.push_back({std::move(name), v, std::move(witness)});
}

Verdict WitnessReport::overall() const {
  Verdict out = Verdict::pass;
  for (const auto& c : checks) {
    if (c.verdict == Verdict::fail) return Verdict::fail;
    if (c.verdict == Verdict::unknown) out = Verdict::unknown;
  }
  return out;
}

const Check* WitnessReport::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

namespace {

// Empty string when a lies in V*(L), else the reason it does not.
std::string vstar_failure(const DiffRing& R, const std::vector<Scalar>& a, const AutoreducedSet& L) {
  for (const auto& f : L.elements) {
    Scalar v = R.evaluate(f, a);
    if (!v.is_zero()) return f.to_string() + " evaluates to " + v.to_string();
  }
  Scalar h = R.evaluate(L.h_product, a);
  if (h.is_zero()) return "H = " + L.h_product.to_string() + " vanishes";
  return {};
}

std::string point_string(const std::vector<Scalar>& a) {
  std::string s = "(";
  for (std::size_t i = 0; i < a.size(); ++i) s += (i ? ", " : "") + a[i].to_string();
  return s + ")";
}

}  // namespace

bool vstar_member(const DiffRing& R, const std::vector<Scalar>& a, const AutoreducedSet& L) {
  return vstar_failure(R, a, L).empty();
}

DiffPoly rename_vars(const DiffPoly& f, const std::vector<int>& var_map) {
  return f.map_indets([&](const AlgInd& u) {
    AlgInd v(u);
    v.var = var_map.at(u.var - 1);
    return v;
  });
}

DiffPoly to_y_block(const DiffPoly& f, int n) {
  return f.map_indets([&](const AlgInd& u) {
    if (u.var > n) throw PreconditionError("variable outside the x-block");
    AlgInd v(u);
    v.var += n;
    return v;
  });
}

WitnessReport containment_check(const DiffRing& R2, const AutoreducedSet& gamma, const DiffRing& R1,
                                const AutoreducedSet& L, const Budget& budget) {
  if (R2.n() != 2 * R1.n() || R2.m() != R1.m()) throw PreconditionError("Gamma must live over (x, y) with y a copy of x");
  WitnessReport rep;
  rep.add("Gamma coherent", is_coherent(R2, gamma) ? Verdict::pass : Verdict::fail);
  auto member = [&](const std::string& label, const DiffPoly& g) {
    SaturationMembership sm = saturation_member(R2, g, gamma, budget);
    std::string w = sm.answer == Tristate::yes ? "" : "remainder " + sm.reduction.remainder.to_string() + "; " + sm.reason;
    rep.add(label + " " + g.to_string(), verdict_of(sm.answer), w);
  };
  for (const auto& f : L.elements) member("L:", f);
  for (const auto& f : L.elements) member("L^s:", to_y_block(R1.apply_sigma(f, 1), R1.n()));
  return rep;
}

WitnessReport axiom_instance_verify(const DiffRing& R1, const AutoreducedSet& L, const DiffRing& R2,
                                    const AutoreducedSet& gamma, const std::vector<Scalar>& a, const Budget& budget) {
  WitnessReport rep;
  PrimeCharEvidence pl = is_char_set_of_prime(R1, L, budget);
  rep.add("L characteristic set of a prime", verdict_of(pl.answer), pl.reason);
  PrimeCharEvidence pg = is_char_set_of_prime(R2, gamma, budget);
  rep.add("Gamma characteristic set of a prime", verdict_of(pg.answer), pg.reason);

  WitnessReport cont = containment_check(R2, gamma, R1, L, budget);
  std::string cw;
  for (const auto& c : cont.checks)
    if (c.verdict != Verdict::pass) {
      cw = c.name + ": " + to_string(c.verdict) + (c.witness.empty() ? "" : " (" + c.witness + ")");
      break;
    }
  rep.add("V*(Gamma) in V(L) x V(L^s)", cont.overall(), cw);

  std::string fa = vstar_failure(R1, a, L);
  rep.add("a in V*(L)", fa.empty() ? Verdict::pass : Verdict::fail, fa.empty() ? point_string(a) : fa);
  std::vector<Scalar> pair(a);
  for (const auto& c : a) pair.push_back(R1.field().shift(c, 1));
  std::string fg = vstar_failure(R2, pair, gamma);
  rep.add("(a, s(a)) in V*(Gamma)", fg.empty() ? Verdict::pass : Verdict::fail, fg.empty() ? point_string(pair) : fg);
  return rep;
}

PowerTrick sigma_power_reduction(const DiffRing& R1, const std::vector<DiffPoly>& v_gens,
                                 const std::vector<DiffPoly>& w_gens, int k) {
  if (k < 1) throw PreconditionError("power must be at least 1");
  const int n = R1.n();
  PowerTrick p;
  p.n = n;
  p.k = k;
  auto block = [&](int offset) {
    std::vector<int> map(n);
    for (int i = 0; i < n; ++i) map[i] = offset + i + 1;
    return map;
  };
  for (const auto& f : v_gens) R1.check(f);
  for (int j = 0; j < k; ++j)
    for (const auto& f : v_gens) {
      DiffPoly g = rename_vars(R1.apply_sigma(f, j), block(j * n));
      p.v_tilde.push_back(g);
      p.w_tilde.push_back(g);
      p.w_rows.push_back(j == 0 ? "V" : j == 1 ? "V^s" : "V^s^" + std::to_string(j));
    }
  DiffRing R2k(2 * k * n, R1.m(), R1.field());
  for (int i = 0; i + 1 < k; ++i)
    for (int c = 1; c <= n; ++c) {
      p.w_tilde.push_back(R2k.x((i + 1) * n + c) - R2k.x(k * n + i * n + c));
      p.w_rows.push_back("glue");
    }
  std::vector<int> wmap(2 * n);
  for (int c = 0; c < n; ++c) {
    wmap[c] = c + 1;
    wmap[n + c] = k * n + (k - 1) * n + c + 1;
  }
  for (const auto& f : w_gens) {
    for (const auto& u : f.indeterminates())
      if (u.var > 2 * n) throw PreconditionError("W must live over 2n variables");
    p.w_tilde.push_back(rename_vars(f, wmap));
    p.w_rows.push_back("W");
  }
  return p;
}

std::vector<DiffPoly> pattern_substitution(const PowerTrick& p) {
  const int kn = p.k * p.n;
  std::vector<DiffPoly> out;
  for (const auto& f : p.w_tilde) {
    out.push_back(f.map_indets([&](const AlgInd& u) {
      AlgInd v(u);
      int idx = u.var - 1;
      int shift = 0;
      if (idx >= kn) {
        idx -= kn;
        shift = 1;
      }
      v.var = idx % p.n + 1;
      v.op.sigma += idx / p.n + shift;
      return v;
    }));
  }
  return out;
}

namespace {

void check_shape(const ScalarField& field, const DVariety& D) {
  if (static_cast<int>(D.sections.size()) != field.m())
    throw PreconditionError("a D-variety needs one section per derivation");
  for (const auto& s : D.sections) {
    if (static_cast<int>(s.size()) != D.n) throw PreconditionError("each section needs n coordinates");
    for (const auto& c : s)
      if (c.nvars() != D.n) throw PreconditionError("section coordinates must be polynomials in n variables");
  }
  for (const auto& g : D.v_generators)
    if (g.nvars() != D.n) throw PreconditionError("generators must be polynomials in n variables");
}

CPoly coefficient_derivative(const ScalarField& field, const CPoly& f, int i) {
  return f.map_coefficients([&](const Scalar& c) { return field.derive(c, i); });
}

// Membership in the ideal generated by D.v_generators; unknown when the
// Groebner basis ran out of budget.
class IdealOracle {
 public:
  IdealOracle(const DVariety& D, const Budget& budget) {
    if (D.v_generators.empty()) return;
    try {
      gb_ = groebner(IdealBasis(D.n, D.v_generators), budget);
      ok_ = true;
    } catch (const BudgetExceeded&) {
      failed_ = true;
    }
  }
  Verdict contains(const CPoly& p) const {
    if (failed_) return Verdict::unknown;
    if (!ok_) return p.is_zero() ? Verdict::pass : Verdict::fail;
    return ideal_contains(gb_, p) ? Verdict::pass : Verdict::fail;
  }

 private:
  IdealBasis gb_;
  bool ok_ = false, failed_ = false;
};

}  // namespace

WitnessReport dvariety_check(const ScalarField& field, const DVariety& D, const Budget& budget) {
  check_shape(field, D);
  IdealOracle ideal(D, budget);
  WitnessReport rep;
  for (std::size_t g = 0; g < D.v_generators.size(); ++g) {
    const CPoly& f = D.v_generators[g];
    for (int i = 1; i <= field.m(); ++i) {
      CPoly p = coefficient_derivative(field, f, i);
      for (int k = 0; k < D.n; ++k) p += f.derivative(k) * D.sections[i - 1][k];
      Verdict v = ideal.contains(p);
      rep.add("generator " + std::to_string(g + 1) + ", derivation " + std::to_string(i), v,
              v == Verdict::pass ? "" : p.to_string());
    }
  }
  return rep;
}

WitnessReport integrability_check(const ScalarField& field, const DVariety& D, const Budget& budget) {
  check_shape(field, D);
  IdealOracle ideal(D, budget);
  WitnessReport rep;
  for (int i = 1; i <= field.m(); ++i)
    for (int j = i + 1; j <= field.m(); ++j)
      for (int l = 0; l < D.n; ++l) {
        const CPoly& si = D.sections[i - 1][l];
        const CPoly& sj = D.sections[j - 1][l];
        CPoly lhs = coefficient_derivative(field, si, j);
        CPoly rhs = coefficient_derivative(field, sj, i);
        for (int k = 0; k < D.n; ++k) {
          lhs += si.derivative(k) * D.sections[j - 1][k];
          rhs += sj.derivative(k) * D.sections[i - 1][k];
        }
        CPoly diff = lhs - rhs;
        Verdict v = ideal.contains(diff);
        rep.add("d" + std::to_string(i) + ", d" + std::to_string(j) + ", coordinate " + std::to_string(l + 1), v,
                v == Verdict::pass ? "" : lhs.to_string() + " vs " + rhs.to_string());
      }
  return rep;
}

WitnessReport validate_dvariety(const ScalarField& field, const DVariety& D, const Budget& budget) {
  WitnessReport rep;
  for (const auto& c : dvariety_check(field, D, budget).checks) rep.checks.push_back(c);
  for (const auto& c : integrability_check(field, D, budget).checks) rep.checks.push_back(c);
  for (const auto& c : rep.checks)
    if (c.verdict == Verdict::fail) throw PreconditionError("not a D-variety: " + c.name + " fails (" + c.witness + ")");
  PrimeResult pr = D.v_generators.empty() ? PrimeResult{PrimeAnswer::prime, "zero ideal", {}}
                                          : is_prime_bounded(IdealBasis(D.n, D.v_generators), budget);
  if (pr.answer == PrimeAnswer::not_prime) throw PreconditionError("V is reducible: " + pr.reason);
  rep.add("irreducible over K", pr.answer == PrimeAnswer::prime ? Verdict::pass : Verdict::unknown, pr.reason);
  return rep;
}

bool sharp_point_check(const ScalarField& field, const DVariety& D, const std::vector<Scalar>& a) {
  check_shape(field, D);
  if (static_cast<int>(a.size()) != D.n) throw PreconditionError("point must have n coordinates");
  for (const auto& g : D.v_generators)
    if (!g.evaluate(a).is_zero()) throw PreconditionError("point is not on V: " + g.to_string() + " does not vanish");
  for (int i = 1; i <= field.m(); ++i)
    for (int l = 0; l < D.n; ++l)
      if (D.sections[i - 1][l].evaluate(a) != field.derive(a[l], i)) return false;
  return true;
}

}  // namespace kolchin
