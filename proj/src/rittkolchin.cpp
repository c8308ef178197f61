#include "kolchin/rittkolchin.hpp"

#include <algorithm>

namespace kolchin {

namespace {

AlgInd leader_of(const DiffRing& R, const DiffPoly& f) {
  if (f.is_constant()) throw PreconditionError("reduction with respect to an element of K");
  return R.leader_data(f).leader;
}

}  // namespace

bool is_partially_reduced(const DiffRing& R, const DiffPoly& g, const DiffPoly& f) {
  AlgInd v = leader_of(R, f);
  for (const auto& u : g.indeterminates())
    if (is_proper_derivative_of(u, v)) return false;
  return true;
}

bool is_reduced(const DiffRing& R, const DiffPoly& g, const DiffPoly& f) {
  if (!is_partially_reduced(R, g, f)) return false;
  LeaderData d = R.leader_data(f);
  return g.degree_in(d.leader) < d.degree;
}

AutoreducedSet make_autoreduced(const DiffRing& R, std::vector<DiffPoly> elements) {
  if (elements.empty()) throw PreconditionError("an autoreduced set must be nonempty");
  for (const auto& f : elements) {
    R.check(f);
    if (f.is_constant()) throw PreconditionError("autoreduced sets exclude elements of K: " + f.to_string());
  }
  std::stable_sort(elements.begin(), elements.end(),
                   [&](const DiffPoly& a, const DiffPoly& b) { return R.compare_rank(a, b) < 0; });
  for (std::size_t i = 0; i < elements.size(); ++i)
    for (std::size_t j = 0; j < elements.size(); ++j)
      if (i != j && !is_reduced(R, elements[i], elements[j]))
        throw PreconditionError("not autoreduced: " + elements[i].to_string() + " is not reduced with respect to " +
                                elements[j].to_string());
  AutoreducedSet L;
  L.h_product = DiffPoly(1);
  for (const auto& f : elements) {
    LeaderData d = R.leader_data(f);
    L.h_product = L.h_product * d.separant * d.initial;
    L.data.push_back(std::move(d));
  }
  L.elements = std::move(elements);
  return L;
}

int compare_autoreduced(const DiffRing& R, const AutoreducedSet& a, const AutoreducedSet& b) {
  std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    int c = R.compare_rank(a.elements[i], b.elements[i]);
    if (c != 0) return c;
  }
  if (a.size() == b.size()) return 0;
  return a.size() > b.size() ? -1 : 1;
}

DiffPoly ReductionResult::multiplier(const AutoreducedSet& L) const {
  DiffPoly h(1);
  for (const auto& c : certificate) {
    const LeaderData& d = L.data.at(c.index);
    h = h * (c.kind == FactorKind::separant ? d.separant : d.initial).pow(c.exponent);
  }
  return h;
}

ReductionResult ritt_reduce(const DiffRing& R, const DiffPoly& g, const AutoreducedSet& L) {
  R.check(g);
  ReductionResult res;
  DiffPoly& r = res.remainder;
  r = g;
  std::map<std::pair<int, int>, int> cert;
  auto scale = [&](const DiffPoly& m) {
    for (auto& t : res.trace) t.coefficient = t.coefficient * m;
  };

  // Phase 1: remove proper derivatives of leaders, highest first.
  for (;;) {
    auto indets = r.indeterminates();
    int idx = -1;
    AlgInd u;
    for (auto it = indets.rbegin(); it != indets.rend() && idx < 0; ++it) {
      for (std::size_t k = 0; k < L.size(); ++k) {
        if (is_proper_derivative_of(*it, L.data[k].leader)) {
          idx = static_cast<int>(k);
          u = *it;
          break;
        }
      }
    }
    if (idx < 0) break;
    const LeaderData& d = L.data[idx];
    DerivOp theta = derivative_quotient(u, d.leader);
    DiffPoly tf = R.apply_theta(L.elements[idx], theta);
    auto coeffs = r.coefficients_in(u);
    int e = static_cast<int>(coeffs.size()) - 1;
    DiffPoly q = coeffs.back() * DiffPoly::indet(u, e - 1);
    r = d.separant * r - q * tf;
    scale(d.separant);
    res.trace.push_back({q, theta, idx});
    ++cert[{idx, 0}];
  }

  // Phase 2: pseudo-divide by leaders from the highest element down.
  for (int idx = static_cast<int>(L.size()) - 1; idx >= 0; --idx) {
    const LeaderData& d = L.data[idx];
    DerivOp id{std::vector<int>(R.m(), 0), 0};
    for (;;) {
      auto coeffs = r.coefficients_in(d.leader);
      int e = static_cast<int>(coeffs.size()) - 1;
      if (e < d.degree) break;
      DiffPoly q = coeffs.back() * DiffPoly::indet(d.leader, e - d.degree);
      r = d.initial * r - q * L.elements[idx];
      scale(d.initial);
      res.trace.push_back({q, id, idx});
      ++cert[{idx, 1}];
    }
  }

  for (const auto& [key, e] : cert)
    res.certificate.push_back({key.first, key.second == 0 ? FactorKind::separant : FactorKind::initial, e});
  return res;
}

DiffPoly expand_trace(const DiffRing& R, const ReductionResult& r, const AutoreducedSet& L) {
  DiffPoly sum;
  for (const auto& t : r.trace) sum += t.coefficient * R.apply_theta(L.elements.at(t.index), t.theta);
  return sum;
}

AutoreducedSet basic_set(const DiffRing& R, const std::vector<DiffPoly>& F) {
  std::vector<DiffPoly> sorted;
  for (const auto& f : F)
    if (!f.is_constant()) sorted.push_back(f);
  if (sorted.empty()) throw PreconditionError("no element outside K");
  std::stable_sort(sorted.begin(), sorted.end(),
                   [&](const DiffPoly& a, const DiffPoly& b) { return R.compare_rank(a, b) < 0; });
  std::vector<DiffPoly> chosen;
  for (const auto& f : sorted) {
    bool ok = true;
    for (const auto& c : chosen)
      if (!is_reduced(R, f, c) || !is_reduced(R, c, f)) {
        ok = false;
        break;
      }
    if (ok) chosen.push_back(f);
  }
  return make_autoreduced(R, chosen);
}

CharacteristicSetRun characteristic_set_run(const DiffRing& R, const std::vector<DiffPoly>& F) {
  if (F.empty()) throw PreconditionError("characteristic set of an empty family");
  CharacteristicSetRun run;
  for (const auto& f : F) {
    R.check(f);
    if (f.is_constant()) {
      if (!f.is_zero()) throw InconsistentSystem("input contains the nonzero constant " + f.to_string());
      throw PreconditionError("characteristic set input must lie outside K");
    }
    if (std::find(run.accumulated.begin(), run.accumulated.end(), f) == run.accumulated.end())
      run.accumulated.push_back(f);
  }
  for (;;) {
    run.set = basic_set(R, run.accumulated);
    std::vector<DiffPoly> fresh;
    for (const auto& f : run.accumulated) {
      if (std::find(run.set.elements.begin(), run.set.elements.end(), f) != run.set.elements.end()) continue;
      DiffPoly r = ritt_reduce(R, f, run.set).remainder;
      if (r.is_zero()) continue;
      if (r.is_constant()) throw InconsistentSystem(f.to_string() + " reduces to the nonzero constant " + r.to_string());
      if (std::find(fresh.begin(), fresh.end(), r) == fresh.end() &&
          std::find(run.accumulated.begin(), run.accumulated.end(), r) == run.accumulated.end())
        fresh.push_back(r);
    }
    if (fresh.empty()) return run;
    run.accumulated.insert(run.accumulated.end(), fresh.begin(), fresh.end());
    ++run.rounds;
  }
}

AutoreducedSet characteristic_set(const DiffRing& R, const std::vector<DiffPoly>& F) {
  return characteristic_set_run(R, F).set;
}

std::vector<DeltaPair> delta_pairs(const DiffRing& R, const AutoreducedSet& L) {
  std::vector<DeltaPair> out;
  for (std::size_t i = 0; i < L.size(); ++i) {
    for (std::size_t j = i + 1; j < L.size(); ++j) {
      const AlgInd& a = L.data[i].leader;
      const AlgInd& b = L.data[j].leader;
      if (a.var != b.var || a.op.sigma != b.op.sigma) continue;
      AlgInd w = a;
      for (std::size_t k = 0; k < w.op.exps.size(); ++k) w.op.exps[k] = std::max(a.op.exps[k], b.op.exps[k]);
      DeltaPair p;
      p.i = static_cast<int>(i);
      p.j = static_cast<int>(j);
      p.common = w;
      p.poly = L.data[j].separant * R.apply_theta(L.elements[i], derivative_quotient(w, a)) -
               L.data[i].separant * R.apply_theta(L.elements[j], derivative_quotient(w, b));
      p.remainder = ritt_reduce(R, p.poly, L).remainder;
      out.push_back(std::move(p));
    }
  }
  return out;
}

bool is_coherent(const DiffRing& R, const AutoreducedSet& L) {
  for (const auto& p : delta_pairs(R, L))
    if (!p.remainder.is_zero()) return false;
  return true;
}

// ---- IndetRing ----

IndetRing::IndetRing(std::vector<AlgInd> indets) : vars_(std::move(indets)) {
  std::sort(vars_.begin(), vars_.end(), [](const AlgInd& a, const AlgInd& b) { return AlgIndLess()(b, a); });
  vars_.erase(std::unique(vars_.begin(), vars_.end()), vars_.end());
  for (std::size_t i = 0; i < vars_.size(); ++i) index_.emplace(vars_[i], static_cast<int>(i));
}

IndetRing IndetRing::covering(const std::vector<DiffPoly>& polys) {
  std::vector<AlgInd> all;
  for (const auto& f : polys)
    for (const auto& u : f.indeterminates()) all.push_back(u);
  return IndetRing(std::move(all));
}

CPoly IndetRing::to_cpoly(const DiffPoly& f, MonomialOrder order) const {
  CPoly p(nvars(), order);
  for (const auto& [m, c] : f.terms()) {
    Mono e(nvars(), 0);
    for (const auto& [u, k] : m) {
      auto it = index_.find(u);
      if (it == index_.end()) throw PreconditionError("indeterminate " + u.to_string() + " outside the variable set");
      e[it->second] = k;
    }
    p.add_term(e, c);
  }
  return p;
}

DiffPoly IndetRing::from_cpoly(const CPoly& p) const {
  DiffPoly f;
  for (const auto& [e, c] : p.terms()) {
    DiffPoly t(c);
    for (int i = 0; i < nvars(); ++i)
      if (e[i]) t = t * DiffPoly::indet(vars_[i], e[i]);
    f += t;
  }
  return f;
}

std::string to_string(Tristate t) {
  switch (t) {
    case Tristate::yes: return "yes";
    case Tristate::no: return "no";
    default: return "unknown";
  }
}

namespace {

// Monomials of total degree 1..2 in the variable set, leader exponents kept
// below the leader's degree.
std::vector<Mono> probe_monomials(const IndetRing& ring, const AutoreducedSet& L) {
  int n = ring.nvars();
  std::vector<int> cap(n, 2);
  for (const auto& d : L.data)
    for (int i = 0; i < n; ++i)
      if (ring.vars()[i] == d.leader) cap[i] = std::min(2, d.degree - 1);
  std::vector<Mono> out;
  for (int i = 0; i < n; ++i) {
    if (cap[i] < 1) continue;
    Mono e(n, 0);
    e[i] = 1;
    out.push_back(e);
    for (int j = i; j < n; ++j) {
      Mono f = e;
      ++f[j];
      if (f[j] <= cap[j]) out.push_back(f);
    }
  }
  return out;
}

}  // namespace

PrimeCharEvidence is_char_set_of_prime(const DiffRing& R, const AutoreducedSet& L, const Budget& budget,
                                       const FactorLimits& limits) {
  PrimeCharEvidence ev;
  ev.pairs = delta_pairs(R, L);
  ev.coherent = true;
  for (const auto& p : ev.pairs) {
    if (p.remainder.is_zero()) continue;
    ev.coherent = false;
    ev.answer = Tristate::no;
    ev.reason = "Delta-polynomial of elements " + std::to_string(p.i + 1) + " and " + std::to_string(p.j + 1) +
                " reduces to " + p.remainder.to_string();
    return ev;
  }

  IndetRing ring = IndetRing::covering(L.elements);
  for (int i = 0; i < ring.nvars(); ++i) ev.variables.push_back(ring.name(i));
  try {
    std::vector<CPoly> gens;
    for (const auto& f : L.elements) gens.push_back(ring.to_cpoly(f));
    Saturation sat = saturate(IdealBasis(ring.nvars(), gens), ring.to_cpoly(L.h_product), budget);
    for (const auto& g : sat.ideal.generators) ev.saturation.push_back(ring.from_cpoly(g));
    PrimeResult pr = is_prime_bounded(sat.ideal, budget, limits);
    ev.algebraic = pr.answer;
    if (pr.answer == PrimeAnswer::not_prime) {
      ev.answer = Tristate::no;
      ev.reason = "algebraic saturation is not prime: " + pr.reason;
      return ev;
    }
    if (pr.answer == PrimeAnswer::unknown) {
      ev.reason = "primality of the algebraic saturation undecided: " + pr.reason;
      return ev;
    }
    for (const auto& e : probe_monomials(ring, L)) {
      CPoly m = CPoly::monomial(e, Scalar(1));
      if (ideal_contains(sat.ideal, m)) ev.failed_probes.push_back(ring.from_cpoly(m));
    }
    if (!ev.failed_probes.empty()) {
      ev.reason = "reduced probe " + ev.failed_probes.front().to_string() + " lies in the algebraic saturation";
      return ev;
    }
    ev.answer = Tristate::yes;
    ev.reason = "coherent; algebraic saturation prime (" + pr.reason + "); no reduced probe in the saturation";
  } catch (const BudgetExceeded& e) {
    ev.answer = Tristate::unknown;
    ev.reason = std::string("budget exceeded: ") + e.what();
  }
  return ev;
}

SaturationMembership saturation_member(const DiffRing& R, const DiffPoly& g, const AutoreducedSet& L,
                                       const Budget& budget) {
  SaturationMembership res;
  res.reduction = ritt_reduce(R, g, L);
  if (res.reduction.remainder.is_zero()) {
    res.answer = Tristate::yes;
    res.reason = "remainder is zero, so H*g lies in [L]";
    return res;
  }
  PrimeCharEvidence pc = is_char_set_of_prime(R, L, budget);
  if (pc.answer == Tristate::yes) {
    res.answer = Tristate::no;
    res.reason = "nonzero reduced remainder and L is the characteristic set of a prime differential ideal";
  } else {
    res.reason = "nonzero remainder but L is not certified (" + pc.reason + ")";
  }
  return res;
}

}  // namespace kolchin
