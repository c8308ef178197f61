#include "kolchin/polyalg.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <optional>
#include <sstream>

namespace kolchin {

int mono_degree(const Mono& a) { return std::accumulate(a.begin(), a.end(), 0); }

bool mono_divides(const Mono& a, const Mono& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

Mono mono_lcm(const Mono& a, const Mono& b) {
  Mono r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = std::max(a[i], b[i]);
  return r;
}

Mono mono_mul(const Mono& a, const Mono& b) {
  Mono r(a);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += b[i];
  return r;
}

Mono mono_div(const Mono& b, const Mono& a) {
  Mono r(b);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] -= a[i];
  return r;
}

bool mono_coprime(const Mono& a, const Mono& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > 0 && b[i] > 0) return false;
  return true;
}

namespace {

// grevlex restricted to indices [lo, hi)
int grevlex_cmp(const Mono& a, const Mono& b, std::size_t lo, std::size_t hi) {
  int da = 0, db = 0;
  for (std::size_t i = lo; i < hi; ++i) {
    da += a[i];
    db += b[i];
  }
  if (da != db) return da > db ? 1 : -1;
  for (std::size_t i = hi; i-- > lo;)
    if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
  return 0;
}

}  // namespace

bool MonomialOrder::greater(const Mono& a, const Mono& b) const {
  switch (kind) {
    case OrderKind::grevlex:
      return grevlex_cmp(a, b, 0, a.size()) > 0;
    case OrderKind::lex:
      return a > b;
    case OrderKind::deglex: {
      int da = mono_degree(a), db = mono_degree(b);
      if (da != db) return da > db;
      return a > b;
    }
    case OrderKind::elimination: {
      std::size_t k = std::min<std::size_t>(block, a.size());
      int c = grevlex_cmp(a, b, 0, k);
      if (c != 0) return c > 0;
      return grevlex_cmp(a, b, k, a.size()) > 0;
    }
  }
  return false;
}

std::string default_var_name(int i) { return "x" + std::to_string(i + 1); }

// ---- CPoly ----

CPoly CPoly::constant(int nvars, const Scalar& c, MonomialOrder order) {
  CPoly p(nvars, order);
  p.add_term(Mono(nvars, 0), c);
  return p;
}

CPoly CPoly::variable(int nvars, int i, MonomialOrder order) {
  Mono m(nvars, 0);
  m.at(i) = 1;
  return monomial(m, Scalar(1), order);
}

CPoly CPoly::monomial(const Mono& m, const Scalar& c, MonomialOrder order) {
  CPoly p(static_cast<int>(m.size()), order);
  p.add_term(m, c);
  return p;
}

bool CPoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && mono_degree(terms_.begin()->first) == 0);
}

bool CPoly::is_one() const { return is_constant() && !is_zero() && leading_coefficient().is_one(); }

Scalar CPoly::coefficient(const Mono& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Scalar() : it->second;
}

int CPoly::total_degree() const {
  int d = is_zero() ? -1 : 0;
  for (const auto& [m, c] : terms_) d = std::max(d, mono_degree(m));
  return d;
}

int CPoly::degree_in(int v) const {
  int d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m[v]);
  return d;
}

CPoly CPoly::with_order(const MonomialOrder& order) const {
  if (order == this->order()) return *this;
  CPoly r(nvars_, order);
  for (const auto& [m, c] : terms_) r.terms_.emplace(m, c);
  return r;
}

CPoly CPoly::monic() const {
  if (is_zero() || leading_coefficient().is_one()) return *this;
  Scalar inv = leading_coefficient().inverse();
  return inv * *this;
}

void CPoly::add_term(const Mono& m, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (inserted) return;
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

void CPoly::sub_mul_term(const Mono& m, const Scalar& c, const CPoly& g) {
  for (const auto& [gm, gc] : g.terms_) add_term(mono_mul(m, gm), -(c * gc));
}

CPoly CPoly::mul_term(const Mono& m, const Scalar& c) const {
  CPoly r(nvars_, order());
  if (c.is_zero()) return r;
  for (const auto& [gm, gc] : terms_) r.terms_.emplace_hint(r.terms_.end(), mono_mul(m, gm), c * gc);
  return r;
}

CPoly CPoly::operator-() const {
  CPoly r(*this);
  for (auto& [m, c] : r.terms_) c = -c;
  return r;
}

CPoly& CPoly::operator+=(const CPoly& o) {
  if (nvars_ == 0 && terms_.empty()) nvars_ = o.nvars_;
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

CPoly& CPoly::operator-=(const CPoly& o) {
  if (nvars_ == 0 && terms_.empty()) nvars_ = o.nvars_;
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

CPoly operator*(const CPoly& a, const CPoly& b) {
  CPoly r(std::max(a.nvars_, b.nvars_), a.order());
  for (const auto& [m, c] : a.terms_)
    for (const auto& [n, d] : b.terms_) r.add_term(mono_mul(m, n), c * d);
  return r;
}

CPoly operator*(const Scalar& c, const CPoly& a) {
  CPoly r(a.nvars_, a.order());
  if (c.is_zero()) return r;
  for (const auto& [m, d] : a.terms_) r.terms_.emplace_hint(r.terms_.end(), m, c * d);
  return r;
}

bool operator==(const CPoly& a, const CPoly& b) {
  if (a.size() != b.size()) return false;
  for (const auto& [m, c] : a.terms_) {
    auto it = b.terms_.find(m);
    if (it == b.terms_.end() || it->second != c) return false;
  }
  return true;
}

CPoly CPoly::pow(int e) const {
  CPoly r = constant(nvars_, Scalar(1), order());
  for (int i = 0; i < e; ++i) r = r * *this;
  return r;
}

CPoly CPoly::derivative(int v) const {
  CPoly r(nvars_, order());
  for (const auto& [m, c] : terms_) {
    if (m[v] == 0) continue;
    Mono n(m);
    --n[v];
    r.add_term(n, c * Scalar(m[v]));
  }
  return r;
}

CPoly CPoly::map_coefficients(const std::function<Scalar(const Scalar&)>& fn) const {
  CPoly r(nvars_, order());
  for (const auto& [m, c] : terms_) r.add_term(m, fn(c));
  return r;
}

Scalar CPoly::evaluate(const std::vector<Scalar>& point) const {
  if (static_cast<int>(point.size()) < nvars_) throw PreconditionError("point has too few coordinates");
  Scalar sum;
  for (const auto& [m, c] : terms_) {
    Scalar t = c;
    for (int i = 0; i < nvars_; ++i)
      if (m[i]) t *= point[i].pow(m[i]);
    sum += t;
  }
  return sum;
}

CPoly CPoly::compose(const std::vector<CPoly>& values) const {
  if (static_cast<int>(values.size()) != nvars_) throw PreconditionError("compose: wrong number of values");
  int target = values.empty() ? 0 : values[0].nvars();
  MonomialOrder ord = values.empty() ? order() : values[0].order();
  std::vector<std::vector<CPoly>> powers(nvars_);
  CPoly r(target, ord);
  for (const auto& [m, c] : terms_) {
    CPoly t = constant(target, c, ord);
    for (int i = 0; i < nvars_; ++i) {
      if (m[i] == 0) continue;
      auto& pw = powers[i];
      if (pw.empty()) pw.push_back(constant(target, Scalar(1), ord));
      while (static_cast<int>(pw.size()) <= m[i]) pw.push_back(pw.back() * values[i]);
      t = t * pw[m[i]];
    }
    r += t;
  }
  return r;
}

CPoly CPoly::rename(int new_nvars, const std::vector<int>& var_map, MonomialOrder order) const {
  CPoly r(new_nvars, order);
  for (const auto& [m, c] : terms_) {
    Mono n(new_nvars, 0);
    for (int i = 0; i < nvars_; ++i)
      if (m[i]) n.at(var_map[i]) += m[i];
    r.add_term(n, c);
  }
  return r;
}

std::string CPoly::to_string(const std::function<std::string(int)>& name) const {
  if (is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    std::string mono;
    for (int i = 0; i < nvars_; ++i) {
      if (m[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += name(i);
      if (m[i] > 1) mono += "^" + std::to_string(m[i]);
    }
    out += format_term(c, mono, first);
    first = false;
  }
  return out;
}

// ---- budgets and ideals ----

Budget Budget::defaults() {
  Budget b;
  const char* env = std::getenv("KOLCHIN_BUDGET");
  if (!env || !*env) return b;
  std::stringstream ss(env);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos) throw PreconditionError("KOLCHIN_BUDGET: expected key=value, got '" + item + "'");
    std::string key = item.substr(0, eq);
    long value = 0;
    try {
      value = std::stol(item.substr(eq + 1));
    } catch (const std::exception&) {
      throw PreconditionError("KOLCHIN_BUDGET: bad number in '" + item + "'");
    }
    if (value <= 0) throw PreconditionError("KOLCHIN_BUDGET: limits must be positive");
    if (key == "degree") b.max_degree = static_cast<int>(value);
    else if (key == "basis") b.max_basis = static_cast<int>(value);
    else if (key == "pairs") b.max_pairs = value;
    else throw PreconditionError("KOLCHIN_BUDGET: unknown key '" + key + "'");
  }
  return b;
}

IdealBasis::IdealBasis(int n, std::vector<CPoly> gens, MonomialOrder o) : nvars(n), order(o) {
  for (auto& g : gens) {
    if (g.nvars() != n && !g.is_zero()) throw PreconditionError("generator lives in a different ring");
    generators.push_back(g.with_order(o));
  }
}

bool IdealBasis::is_unit() const {
  for (const auto& g : generators)
    if (!g.is_zero() && g.is_constant()) return true;
  return false;
}

Division divide(const CPoly& f, const std::vector<CPoly>& divisors) {
  Division d;
  d.remainder = CPoly(f.nvars(), f.order());
  for (std::size_t i = 0; i < divisors.size(); ++i) d.quotients.emplace_back(f.nvars(), f.order());
  CPoly p = f;
  while (!p.is_zero()) {
    Mono lm = p.leading_monomial();
    Scalar lc = p.leading_coefficient();
    bool reduced = false;
    for (std::size_t i = 0; i < divisors.size(); ++i) {
      const CPoly& g = divisors[i];
      if (g.is_zero() || !mono_divides(g.leading_monomial(), lm)) continue;
      Mono m = mono_div(lm, g.leading_monomial());
      Scalar c = lc / g.leading_coefficient();
      p.sub_mul_term(m, c, g);
      d.quotients[i].add_term(m, c);
      reduced = true;
      break;
    }
    if (!reduced) {
      d.remainder.add_term(lm, lc);
      p.add_term(lm, -lc);
    }
  }
  return d;
}

// ---- Buchberger ----

namespace {

struct Entry {
  CPoly p;
  int sugar = 0;
  std::vector<CPoly> cof;
};

struct Pair {
  int i, j;
  Mono lcm;
  int sugar;
};

class Buchberger {
 public:
  Buchberger(const IdealBasis& ideal, const Budget& budget, bool track)
      : n_(ideal.nvars), order_(ideal.order), ngens_(static_cast<int>(ideal.generators.size())),
        track_(track), budget_(budget) {}

  void run(const IdealBasis& ideal) {
    for (int j = 0; j < ngens_; ++j) {
      const CPoly& g = ideal.generators[j];
      if (g.is_zero()) continue;
      Entry e{g.with_order(order_), g.total_degree(), {}};
      if (track_) {
        e.cof = zero_cofactors();
        e.cof[j] = CPoly::constant(n_, Scalar(1), order_);
      }
      insert(std::move(e));
      if (unit_) return;
    }
    long processed = 0;
    while (!pairs_.empty()) {
      if (++processed > budget_.max_pairs)
        throw BudgetExceeded("Groebner pair budget exceeded (" + std::to_string(budget_.max_pairs) + ")");
      std::size_t best = 0;
      for (std::size_t k = 1; k < pairs_.size(); ++k) {
        const Pair& a = pairs_[k];
        const Pair& b = pairs_[best];
        if (a.sugar != b.sugar ? a.sugar < b.sugar : order_.greater(b.lcm, a.lcm)) best = k;
      }
      Pair p = pairs_[best];
      pairs_.erase(pairs_.begin() + static_cast<long>(best));
      insert(spoly(p));
      if (unit_) return;
    }
  }

  IdealBasis result(std::vector<std::vector<CPoly>>* cofactors) {
    IdealBasis out;
    out.nvars = n_;
    out.order = order_;
    out.groebner = true;
    std::vector<Entry> reduced;
    if (unit_) {
      reduced.push_back(store_[active_.back()]);
    } else {
      for (int i : active_) {
        std::vector<int> others;
        for (int j : active_)
          if (j != i) others.push_back(j);
        Entry e = reduce(store_[i], others);
        normalize(e);
        reduced.push_back(std::move(e));
      }
    }
    std::sort(reduced.begin(), reduced.end(), [&](const Entry& a, const Entry& b) {
      return order_.greater(b.p.leading_monomial(), a.p.leading_monomial());
    });
    for (auto& e : reduced) {
      out.generators.push_back(e.p);
      if (cofactors) cofactors->push_back(e.cof);
    }
    return out;
  }

 private:
  std::vector<CPoly> zero_cofactors() const {
    return std::vector<CPoly>(ngens_, CPoly(n_, order_));
  }

  const Mono& lm(int i) const { return store_[i].p.leading_monomial(); }

  Entry spoly(const Pair& p) const {
    const Entry& a = store_[p.i];
    const Entry& b = store_[p.j];
    Mono ma = mono_div(p.lcm, a.p.leading_monomial());
    Mono mb = mono_div(p.lcm, b.p.leading_monomial());
    Entry e;
    e.p = a.p.mul_term(ma, Scalar(1));
    e.p.sub_mul_term(mb, Scalar(1), b.p);
    e.sugar = p.sugar;
    if (track_) {
      e.cof = zero_cofactors();
      for (int j = 0; j < ngens_; ++j) {
        e.cof[j] = a.cof[j].mul_term(ma, Scalar(1));
        e.cof[j].sub_mul_term(mb, Scalar(1), b.cof[j]);
      }
    }
    return e;
  }

  // Full reduction of e by the entries listed in `by`.
  Entry reduce(Entry e, const std::vector<int>& by) const {
    CPoly rem(n_, order_);
    while (!e.p.is_zero()) {
      Mono m = e.p.leading_monomial();
      Scalar c = e.p.leading_coefficient();
      int hit = -1;
      for (int i : by)
        if (mono_divides(lm(i), m)) {
          hit = i;
          break;
        }
      if (hit < 0) {
        rem.add_term(m, c);
        e.p.add_term(m, -c);
        continue;
      }
      const Entry& g = store_[hit];
      Mono q = mono_div(m, g.p.leading_monomial());
      Scalar k = c / g.p.leading_coefficient();
      e.p.sub_mul_term(q, k, g.p);
      e.sugar = std::max(e.sugar, mono_degree(q) + g.sugar);
      if (track_)
        for (int j = 0; j < ngens_; ++j) e.cof[j].sub_mul_term(q, k, g.cof[j]);
    }
    e.p = std::move(rem);
    return e;
  }

  void normalize(Entry& e) const {
    if (e.p.leading_coefficient().is_one()) return;
    Scalar inv = e.p.leading_coefficient().inverse();
    e.p = inv * e.p;
    for (auto& c : e.cof) c = inv * c;
  }

  void insert(Entry e) {
    e = reduce(std::move(e), active_);
    if (e.p.is_zero()) return;
    normalize(e);
    if (e.p.total_degree() > budget_.max_degree)
      throw BudgetExceeded("Groebner degree budget exceeded (" + std::to_string(budget_.max_degree) + ")");
    int h = static_cast<int>(store_.size());
    store_.push_back(std::move(e));
    if (store_[h].p.is_constant()) {
      unit_ = true;
      active_ = {h};
      pairs_.clear();
      return;
    }
    update(h);
    if (static_cast<int>(active_.size()) > budget_.max_basis)
      throw BudgetExceeded("Groebner basis-size budget exceeded (" + std::to_string(budget_.max_basis) + ")");
  }

  // Gebauer-Moeller installation of h.
  void update(int h) {
    const Mono& lh = lm(h);
    std::vector<int> kept;
    for (std::size_t a = 0; a < active_.size(); ++a) {
      int g1 = active_[a];
      Mono l1 = mono_lcm(lh, lm(g1));
      bool keep = true;
      if (!mono_coprime(lh, lm(g1))) {
        for (std::size_t b = a + 1; b < active_.size() && keep; ++b)
          if (mono_divides(mono_lcm(lh, lm(active_[b])), l1)) keep = false;
        for (int g2 : kept)
          if (keep && mono_divides(mono_lcm(lh, lm(g2)), l1)) keep = false;
      }
      if (keep) kept.push_back(g1);
    }
    std::vector<Pair> next;
    for (const Pair& p : pairs_) {
      if (!mono_divides(lh, p.lcm) || mono_lcm(lm(p.i), lh) == p.lcm || mono_lcm(lm(p.j), lh) == p.lcm)
        next.push_back(p);
    }
    int sh = store_[h].sugar;
    for (int g : kept) {
      if (mono_coprime(lh, lm(g))) continue;
      Mono l = mono_lcm(lh, lm(g));
      int d = mono_degree(l);
      int sugar = std::max(store_[g].sugar + d - mono_degree(lm(g)), sh + d - mono_degree(lh));
      next.push_back({g, h, l, sugar});
    }
    pairs_ = std::move(next);
    std::vector<int> act;
    for (int g : active_)
      if (!mono_divides(lh, lm(g))) act.push_back(g);
    act.push_back(h);
    active_ = std::move(act);
  }

  int n_;
  MonomialOrder order_;
  int ngens_;
  bool track_;
  Budget budget_;
  std::vector<Entry> store_;
  std::vector<int> active_;
  std::vector<Pair> pairs_;
  bool unit_ = false;
};

}  // namespace

IdealBasis groebner(const IdealBasis& ideal, const Budget& budget) {
  Buchberger b(ideal, budget, false);
  b.run(ideal);
  return b.result(nullptr);
}

GroebnerCertificate groebner_with_cofactors(const IdealBasis& ideal, const Budget& budget) {
  Buchberger b(ideal, budget, true);
  b.run(ideal);
  GroebnerCertificate cert;
  cert.basis = b.result(&cert.cofactors);
  return cert;
}

bool is_reduced_groebner(const IdealBasis& basis) {
  const auto& G = basis.generators;
  for (std::size_t i = 0; i < G.size(); ++i) {
    if (G[i].is_zero() || !G[i].leading_coefficient().is_one()) return false;
    for (std::size_t j = 0; j < G.size(); ++j) {
      if (i == j) continue;
      for (const auto& [m, c] : G[i].terms())
        if (mono_divides(G[j].leading_monomial(), m)) return false;
    }
  }
  for (std::size_t i = 0; i < G.size(); ++i)
    for (std::size_t j = i + 1; j < G.size(); ++j) {
      Mono l = mono_lcm(G[i].leading_monomial(), G[j].leading_monomial());
      CPoly s = G[i].mul_term(mono_div(l, G[i].leading_monomial()), Scalar(1));
      s.sub_mul_term(mono_div(l, G[j].leading_monomial()), Scalar(1), G[j]);
      if (!divide(s, G).remainder.is_zero()) return false;
    }
  return true;
}

CPoly normal_form(const CPoly& f, const IdealBasis& gb) {
  return divide(f.with_order(gb.order), gb.generators).remainder;
}

bool ideal_contains(const IdealBasis& gb, const CPoly& f) { return normal_form(f, gb).is_zero(); }

Membership ideal_member(const CPoly& f, const IdealBasis& ideal, const Budget& budget) {
  Membership res;
  CPoly g = f.with_order(ideal.order);
  if (g.is_zero()) {
    res.member = true;
    res.cofactors.assign(ideal.generators.size(), CPoly(ideal.nvars, ideal.order));
    return res;
  }
  GroebnerCertificate cert = groebner_with_cofactors(ideal, budget);
  Division d = divide(g, cert.basis.generators);
  if (!d.remainder.is_zero()) return res;
  res.member = true;
  res.cofactors.assign(ideal.generators.size(), CPoly(ideal.nvars, ideal.order));
  for (std::size_t i = 0; i < d.quotients.size(); ++i)
    for (std::size_t j = 0; j < ideal.generators.size(); ++j)
      res.cofactors[j] += d.quotients[i] * cert.cofactors[i][j];
  return res;
}

Saturation saturate(const IdealBasis& ideal, const CPoly& h, const Budget& budget) {
  if (h.is_zero()) throw PreconditionError("saturate: h must be nonzero");
  int n = ideal.nvars;
  Saturation res;
  IdealBasis gbI = groebner(ideal, budget);
  if (h.is_constant() || gbI.is_unit()) {
    res.ideal = gbI;
  } else {
    // z is variable 0 of the extended ring and gets eliminated.
    std::vector<int> shift(n);
    std::iota(shift.begin(), shift.end(), 1);
    MonomialOrder elim = MonomialOrder::elimination(1);
    std::vector<CPoly> gens;
    for (const auto& g : ideal.generators) gens.push_back(g.rename(n + 1, shift, elim));
    CPoly zh = CPoly::variable(n + 1, 0, elim) * h.rename(n + 1, shift, elim);
    gens.push_back(CPoly::constant(n + 1, Scalar(1), elim) - zh);
    IdealBasis ext = groebner(IdealBasis(n + 1, gens, elim), budget);
    std::vector<int> back(n + 1, 0);
    for (int i = 1; i <= n; ++i) back[i] = i - 1;
    std::vector<CPoly> kept;
    for (const auto& g : ext.generators)
      if (!g.involves(0)) kept.push_back(g.rename(n, back, ideal.order));
    res.ideal = groebner(IdealBasis(n, kept, ideal.order), budget);
  }
  CPoly hh = h.with_order(gbI.order);
  for (const auto& f : res.ideal.generators) {
    int N = 0;
    CPoly r = normal_form(f, gbI);
    while (!r.is_zero()) {
      if (++N > 4 * budget.max_degree)
        throw BudgetExceeded("saturation exponent search exceeded its bound");
      r = normal_form(hh * r, gbI);
    }
    res.exponents.push_back(N);
    res.exponent_bound = std::max(res.exponent_bound, N);
  }
  return res;
}

// ---- factoring over Q(t)[x] ----

namespace {

// Clears denominators and the content over the x-variables, then views the
// result in Q[x1..xn, t1..tk] with t_i as variable n + i - 1.
QPoly to_integral_qpoly(const CPoly& f) {
  int n = f.nvars();
  QPoly L(1);
  for (const auto& [m, c] : f.terms())
    if (!c.denominator().is_one()) L = L * *divide_exact(c.denominator(), gcd(L, c.denominator()));
  std::vector<std::pair<Mono, QPoly>> nums;
  QPoly content;
  for (const auto& [m, c] : f.terms()) {
    QPoly num = c.numerator() * *divide_exact(L, c.denominator());
    content = gcd(content, num);
    nums.emplace_back(m, num);
  }
  QPoly out;
  for (auto& [m, num] : nums) {
    num = *divide_exact(num, content);
    for (const auto& [e, q] : num.terms()) {
      Exponent ex(n + e.size(), 0);
      for (int i = 0; i < n; ++i) ex[i] = m[i];
      for (std::size_t i = 0; i < e.size(); ++i) ex[n + i] = e[i];
      out += QPoly::monomial(ex, q);
    }
  }
  return out.primitive_integral();
}

CPoly from_integral_qpoly(const QPoly& q, int n, MonomialOrder order) {
  CPoly out(n, order);
  for (const auto& [e, c] : q.terms()) {
    Mono m(n, 0);
    for (int i = 0; i < n; ++i) m[i] = exponent_at(e, i);
    Exponent te;
    for (std::size_t i = n; i < e.size(); ++i) te.push_back(e[i]);
    trim(te);
    out.add_term(m, Scalar(QPoly::monomial(te, c)));
  }
  return out;
}

}  // namespace

CFactorResult find_factor(const CPoly& f, const FactorLimits& limits) {
  CFactorResult res;
  if (f.is_constant()) {
    res.reason = "constant";
    return res;
  }
  QPoly q = to_integral_qpoly(f);
  FactorResult r = find_factor(q, limits);
  res.answer = r.answer;
  res.reason = r.reason;
  if (r.answer == FactorAnswer::reducible) {
    res.left = from_integral_qpoly(r.left, f.nvars(), f.order());
    res.right = from_integral_qpoly(r.right, f.nvars(), f.order());
  }
  return res;
}

// ---- bounded primality ----

std::string to_string(PrimeAnswer a) {
  switch (a) {
    case PrimeAnswer::prime: return "prime";
    case PrimeAnswer::not_prime: return "not_prime";
    case PrimeAnswer::unknown: return "unknown";
  }
  return "unknown";
}

namespace {

std::string var_list(const std::vector<int>& vars) {
  std::string s;
  for (int v : vars) {
    if (!s.empty()) s += ", ";
    s += default_var_name(v);
  }
  return s;
}

std::vector<std::vector<int>> candidate_orders(int n, const IdealBasis& gb) {
  std::vector<std::vector<int>> out;
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  if (n <= 4) {
    do out.push_back(perm);
    while (std::next_permutation(perm.begin(), perm.end()));
    return out;
  }
  out.push_back(perm);
  std::vector<int> rev(perm.rbegin(), perm.rend());
  out.push_back(rev);
  // variables that appear linearly as leading monomials go first
  std::vector<int> mains, rest;
  for (const auto& g : gb.generators) {
    const Mono& m = g.leading_monomial();
    if (mono_degree(m) == 1) mains.push_back(static_cast<int>(std::find(m.begin(), m.end(), 1) - m.begin()));
  }
  for (int v = 0; v < n; ++v)
    if (std::find(mains.begin(), mains.end(), v) == mains.end()) rest.push_back(v);
  std::vector<int> rank(n);
  int k = 0;
  for (int v : mains) rank[v] = k++;
  for (int v : rest) rank[v] = k++;
  out.push_back(rank);
  return out;
}

// perm[i] is the position of variable i in a lex order (0 largest).
std::optional<PrimeResult> triangular_certificate(const IdealBasis& gb, const Budget& budget) {
  int n = gb.nvars;
  for (const auto& perm : candidate_orders(n, gb)) {
    std::vector<int> inv(n);
    for (int i = 0; i < n; ++i) inv[perm[i]] = i;
    std::vector<CPoly> gens;
    for (const auto& g : gb.generators) gens.push_back(g.rename(n, perm, MonomialOrder::lex()));
    IdealBasis lexgb;
    try {
      lexgb = groebner(IdealBasis(n, gens, MonomialOrder::lex()), budget);
    } catch (const BudgetExceeded&) {
      continue;
    }
    std::vector<int> mains;
    CPoly C = CPoly::constant(n, Scalar(1), MonomialOrder::lex());
    bool ok = true;
    for (const auto& g : lexgb.generators) {
      const Mono& m = g.leading_monomial();
      if (mono_degree(m) != 1) {
        ok = false;
        break;
      }
      int v = static_cast<int>(std::find(m.begin(), m.end(), 1) - m.begin());
      if (std::find(mains.begin(), mains.end(), v) != mains.end()) {
        ok = false;
        break;
      }
      mains.push_back(v);
      CPoly init(n, MonomialOrder::lex());
      for (const auto& [mm, c] : g.terms()) {
        if (mm[v] == 0) continue;
        Mono r(mm);
        r[v] = 0;
        init.add_term(r, c);
      }
      if (!init.is_constant()) C = C * init;
    }
    if (!ok) continue;
    std::vector<int> orig;
    for (int v : mains) orig.push_back(inv[v]);
    std::string vars = var_list(orig);
    PrimeResult pr;
    pr.answer = PrimeAnswer::prime;
    for (const auto& g : lexgb.generators) pr.witness.push_back(g.rename(n, inv, gb.order));
    if (C.is_constant()) {
      pr.reason = "triangular set linear in " + vars + " with constant initials";
      return pr;
    }
    try {
      Saturation s = saturate(lexgb, C, budget);
      if (s.ideal.generators == lexgb.generators) {
        pr.reason = "triangular set linear in " + vars + ", saturated by its initials";
        return pr;
      }
    } catch (const BudgetExceeded&) {
    }
  }
  return std::nullopt;
}

bool zero_dimensional(const IdealBasis& gb) {
  for (int v = 0; v < gb.nvars; ++v) {
    bool pure = false;
    for (const auto& g : gb.generators) {
      const Mono& m = g.leading_monomial();
      pure = pure || (m[v] > 0 && m[v] == mono_degree(m));
    }
    if (!pure) return false;
  }
  return true;
}

long count_standard_monomials(const IdealBasis& gb) {
  int n = gb.nvars;
  std::vector<int> bound(n, 0);
  for (const auto& g : gb.generators) {
    const Mono& m = g.leading_monomial();
    for (int v = 0; v < n; ++v)
      if (m[v] == mono_degree(m)) bound[v] = bound[v] ? std::min(bound[v], m[v]) : m[v];
  }
  long count = 0;
  Mono m(n, 0);
  while (true) {
    bool standard = true;
    for (const auto& g : gb.generators)
      if (mono_divides(g.leading_monomial(), m)) {
        standard = false;
        break;
      }
    count += standard;
    int v = 0;
    while (v < n && ++m[v] >= bound[v]) m[v++] = 0;
    if (v == n) break;
  }
  return count;
}

// Minimal polynomial of the linear form ell modulo a zero-dimensional ideal:
// a factorisation refutes primality, an irreducible one of full degree makes
// K[x]/I a field.
std::optional<PrimeResult> eliminant_certificate(const IdealBasis& gb, const Budget& budget,
                                                 const FactorLimits& limits) {
  int n = gb.nvars;
  long dim = count_standard_monomials(gb);
  std::vector<std::vector<int>> forms;
  for (int v = n - 1; v >= 0; --v) {
    std::vector<int> c(n, 0);
    c[v] = 1;
    forms.push_back(c);
  }
  for (int shift = 0; shift < 3; ++shift) {
    std::vector<int> c(n);
    for (int i = 0; i < n; ++i) c[i] = (i * (shift + 2)) % 5 + 1 - shift;
    forms.push_back(c);
  }
  std::vector<int> ident(n);
  std::iota(ident.begin(), ident.end(), 0);
  MonomialOrder lex = MonomialOrder::lex();
  for (const auto& c : forms) {
    CPoly ell(n, gb.order);
    for (int i = 0; i < n; ++i) ell += CPoly::constant(n, Scalar(c[i]), gb.order) * CPoly::variable(n, i, gb.order);
    if (ell.is_zero()) continue;
    std::vector<CPoly> gens;
    for (const auto& g : gb.generators) gens.push_back(g.rename(n + 1, ident, lex));
    gens.push_back(CPoly::variable(n + 1, n, lex) - ell.rename(n + 1, ident, lex));
    IdealBasis lexgb;
    try {
      lexgb = groebner(IdealBasis(n + 1, gens, lex), budget);
    } catch (const BudgetExceeded&) {
      continue;
    }
    const CPoly& elim = lexgb.generators.front();
    std::vector<CPoly> back;
    for (int i = 0; i < n; ++i) back.push_back(CPoly::variable(n, i, gb.order));
    back.push_back(ell);
    std::string what = "eliminant of " + ell.to_string();
    CFactorResult fr = find_factor(elim, limits);
    if (fr.answer == FactorAnswer::reducible) {
      CPoly a = fr.left.compose(back), b = fr.right.compose(back);
      if (!ideal_contains(gb, a) && !ideal_contains(gb, b))
        return PrimeResult{PrimeAnswer::not_prime, what + " factors", {a, b}};
      continue;
    }
    if (fr.answer == FactorAnswer::irreducible && elim.degree_in(n) == dim) {
      PrimeResult pr{PrimeAnswer::prime,
                     "zero-dimensional of degree " + std::to_string(dim) + ", " + what + " irreducible of full degree",
                     {elim.compose(back)}};
      return pr;
    }
  }
  return std::nullopt;
}

}  // namespace

PrimeResult is_prime_bounded(const IdealBasis& ideal, const Budget& budget, const FactorLimits& limits) {
  try {
    IdealBasis gb = groebner(ideal, budget);
    if (gb.generators.empty()) return {PrimeAnswer::prime, "zero ideal", {}};
    if (gb.is_unit()) return {PrimeAnswer::not_prime, "unit ideal", {}};
    bool all_irreducible = true;
    for (const auto& g : gb.generators) {
      CFactorResult fr = find_factor(g, limits);
      if (fr.answer == FactorAnswer::reducible) {
        all_irreducible = false;
        if (!ideal_contains(gb, fr.left) && !ideal_contains(gb, fr.right))
          return {PrimeAnswer::not_prime, "basis element factors", {fr.left, fr.right}};
      } else if (fr.answer == FactorAnswer::unknown) {
        all_irreducible = false;
      }
    }
    if (gb.generators.size() == 1 && all_irreducible)
      return {PrimeAnswer::prime, "principal ideal with irreducible generator", gb.generators};
    if (auto tri = triangular_certificate(gb, budget)) return *tri;
    if (gb.nvars <= 3 && zero_dimensional(gb))
      if (auto el = eliminant_certificate(gb, budget, limits)) return *el;
    return {PrimeAnswer::unknown, "outside the implemented primality classes", {}};
  } catch (const BudgetExceeded& e) {
    return {PrimeAnswer::unknown, e.what(), {}};
  }
}

}  // namespace kolchin
