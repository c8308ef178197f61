#include "kolchin/diffpoly.hpp"

#include <algorithm>
#include <numeric>

namespace kolchin {

int DerivOp::order() const { return std::accumulate(exps.begin(), exps.end(), 0); }

std::string AlgInd::to_string() const {
  std::string s = "x" + std::to_string(var);
  if (op.sigma == 1) s = "s(" + s + ")";
  else if (op.sigma != 0) s = "s^" + std::to_string(op.sigma) + "(" + s + ")";
  for (std::size_t i = 0; i < op.exps.size(); ++i) {
    int e = op.exps[i];
    if (e == 0) continue;
    std::string d = "d" + std::to_string(i + 1);
    if (e > 1) d += "^" + std::to_string(e);
    s = d + "(" + s + ")";
  }
  return s;
}

namespace {

int ranking_cmp(const AlgInd& u, const AlgInd& v) {
  int ou = u.order(), ov = v.order();
  if (ou != ov) return ou < ov ? -1 : 1;
  if (u.var != v.var) return u.var < v.var ? -1 : 1;
  std::size_t m = std::max(u.op.exps.size(), v.op.exps.size());
  for (std::size_t k = m; k-- > 0;) {
    int a = k < u.op.exps.size() ? u.op.exps[k] : 0;
    int b = k < v.op.exps.size() ? v.op.exps[k] : 0;
    if (a != b) return a < b ? -1 : 1;
  }
  return 0;
}

}  // namespace

int compare_indets(const AlgInd& u, const AlgInd& v) {
  if (u.op.sigma != 0 || v.op.sigma != 0)
    throw PreconditionError("the ranking is defined for sigma-free indeterminates");
  if (u.op.exps.size() != v.op.exps.size()) throw PreconditionError("indeterminates from different contexts");
  return ranking_cmp(u, v);
}

bool AlgIndLess::operator()(const AlgInd& u, const AlgInd& v) const {
  int c = ranking_cmp(u, v);
  if (c != 0) return c < 0;
  return u.op.sigma < v.op.sigma;
}

bool is_derivative_of(const AlgInd& u, const AlgInd& v) {
  if (u.var != v.var || u.op.sigma != v.op.sigma) return false;
  std::size_t m = std::max(u.op.exps.size(), v.op.exps.size());
  for (std::size_t k = 0; k < m; ++k) {
    int a = k < u.op.exps.size() ? u.op.exps[k] : 0;
    int b = k < v.op.exps.size() ? v.op.exps[k] : 0;
    if (a < b) return false;
  }
  return true;
}

bool is_proper_derivative_of(const AlgInd& u, const AlgInd& v) {
  return is_derivative_of(u, v) && u.order() > v.order();
}

DerivOp derivative_quotient(const AlgInd& u, const AlgInd& v) {
  DerivOp d;
  d.exps = u.op.exps;
  for (std::size_t k = 0; k < v.op.exps.size(); ++k) d.exps[k] -= v.op.exps[k];
  return d;
}

int dmono_degree(const DMono& m) {
  int d = 0;
  for (const auto& [u, e] : m) d += e;
  return d;
}

DMono dmono_mul(const DMono& a, const DMono& b) {
  DMono r;
  r.reserve(a.size() + b.size());
  AlgIndLess less;
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && less(a[i].first, b[j].first))) {
      r.push_back(a[i++]);
    } else if (i == a.size() || less(b[j].first, a[i].first)) {
      r.push_back(b[j++]);
    } else {
      r.emplace_back(a[i].first, a[i].second + b[j].second);
      ++i;
      ++j;
    }
  }
  return r;
}

bool DMonoGreater::operator()(const DMono& a, const DMono& b) const {
  int da = dmono_degree(a), db = dmono_degree(b);
  if (da != db) return da > db;
  // reverse lex: at the lowest-ranked indeterminate where the exponents
  // differ, the smaller exponent wins
  AlgIndLess less;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (less(a[i].first, b[j].first)) return false;
    if (less(b[j].first, a[i].first)) return true;
    if (a[i].second != b[j].second) return a[i].second < b[j].second;
    ++i;
    ++j;
  }
  return false;
}

// ---- DiffPoly ----

DiffPoly::DiffPoly(const Scalar& c) { add_term({}, c); }

DiffPoly DiffPoly::indet(const AlgInd& u, int power) {
  DiffPoly p;
  if (power == 0) p.add_term({}, Scalar(1));
  else p.add_term({{u, power}}, Scalar(1));
  return p;
}

bool DiffPoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
}

Scalar DiffPoly::constant_term() const {
  auto it = terms_.find(DMono{});
  return it == terms_.end() ? Scalar() : it->second;
}

void DiffPoly::add_term(const DMono& m, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (inserted) return;
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

DiffPoly DiffPoly::operator-() const {
  DiffPoly r(*this);
  for (auto& [m, c] : r.terms_) c = -c;
  return r;
}

DiffPoly& DiffPoly::operator+=(const DiffPoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

DiffPoly& DiffPoly::operator-=(const DiffPoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

DiffPoly operator*(const DiffPoly& a, const DiffPoly& b) {
  DiffPoly r;
  for (const auto& [m, c] : a.terms_)
    for (const auto& [n, d] : b.terms_) r.add_term(dmono_mul(m, n), c * d);
  return r;
}

DiffPoly DiffPoly::pow(int e) const {
  DiffPoly r(1), base(*this);
  while (e > 0) {
    if (e & 1) r = r * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return r;
}

std::vector<AlgInd> DiffPoly::indeterminates() const {
  std::vector<AlgInd> out;
  for (const auto& [m, c] : terms_)
    for (const auto& [u, e] : m) out.push_back(u);
  std::sort(out.begin(), out.end(), AlgIndLess());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

int DiffPoly::degree_in(const AlgInd& u) const {
  int d = 0;
  for (const auto& [m, c] : terms_)
    for (const auto& [v, e] : m)
      if (v == u) d = std::max(d, e);
  return d;
}

std::vector<DiffPoly> DiffPoly::coefficients_in(const AlgInd& u) const {
  std::vector<DiffPoly> out(degree_in(u) + 1);
  for (const auto& [m, c] : terms_) {
    DMono rest;
    int e = 0;
    for (const auto& [v, k] : m) {
      if (v == u) e = k;
      else rest.emplace_back(v, k);
    }
    out[e].add_term(rest, c);
  }
  return out;
}

DiffPoly DiffPoly::partial(const AlgInd& u) const {
  DiffPoly r;
  for (const auto& [m, c] : terms_) {
    for (std::size_t k = 0; k < m.size(); ++k) {
      if (m[k].first != u) continue;
      DMono n(m);
      int e = n[k].second;
      if (--n[k].second == 0) n.erase(n.begin() + static_cast<long>(k));
      r.add_term(n, c * Scalar(e));
    }
  }
  return r;
}

DiffPoly DiffPoly::substitute(const AlgInd& u, const DiffPoly& value) const {
  auto coeffs = coefficients_in(u);
  DiffPoly r;
  DiffPoly pw(1);
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (i) pw = pw * value;
    if (!coeffs[i].is_zero()) r += coeffs[i] * pw;
  }
  return r;
}

DiffPoly DiffPoly::map_indets(const std::function<AlgInd(const AlgInd&)>& fn) const {
  DiffPoly r;
  for (const auto& [m, c] : terms_) {
    DiffPoly t(c);
    for (const auto& [u, e] : m) t = t * indet(fn(u), e);
    r += t;
  }
  return r;
}

std::string DiffPoly::to_string() const {
  if (is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    std::string mono;
    for (const auto& [u, e] : m) {
      if (!mono.empty()) mono += "*";
      mono += u.to_string();
      if (e > 1) mono += "^" + std::to_string(e);
    }
    out += format_term(c, mono, first);
    first = false;
  }
  return out;
}

// ---- DiffRing ----

DiffRing::DiffRing(int n, int m, ScalarField field) : n_(n), m_(m), field_(std::move(field)) {
  if (n < 1) throw PreconditionError("a differential ring needs at least one variable");
  if (m < 0) throw PreconditionError("negative number of derivations");
  if (field_.m() != m) throw PreconditionError("scalar field carries a different number of derivations");
}

AlgInd DiffRing::indet(int var, std::vector<int> exps, int sigma) const {
  if (var < 1 || var > n_) throw PreconditionError("variable index out of range: x" + std::to_string(var));
  if (static_cast<int>(exps.size()) > m_) throw PreconditionError("more derivation exponents than derivations");
  exps.resize(m_, 0);
  for (int e : exps)
    if (e < 0) throw PreconditionError("negative derivation exponent");
  return AlgInd{DerivOp{std::move(exps), sigma}, var};
}

DiffPoly DiffRing::dx(int var, int i, int times) const {
  std::vector<int> e(m_, 0);
  if (i < 1 || i > m_) throw PreconditionError("derivation index out of range: d" + std::to_string(i));
  e[i - 1] = times;
  return DiffPoly::indet(indet(var, e));
}

void DiffRing::check(const DiffPoly& f) const {
  for (const auto& u : f.indeterminates()) {
    if (u.var < 1 || u.var > n_) throw PreconditionError("variable x" + std::to_string(u.var) + " outside the ring");
    if (static_cast<int>(u.op.exps.size()) != m_) throw PreconditionError("indeterminate from a different context");
  }
  for (const auto& [m, c] : f.terms())
    if (!field_.contains(c)) throw PreconditionError("coefficient outside the scalar field: " + c.to_string());
}

AlgInd DiffRing::apply_delta(const AlgInd& u, int i) const {
  if (i < 1 || i > m_) throw PreconditionError("derivation index out of range: d" + std::to_string(i));
  AlgInd v(u);
  v.op.exps.resize(m_, 0);
  ++v.op.exps[i - 1];
  return v;
}

DiffPoly DiffRing::apply_delta(const DiffPoly& f, int i) const {
  if (i < 1 || i > m_) throw PreconditionError("derivation index out of range: d" + std::to_string(i));
  DiffPoly r;
  for (const auto& [m, c] : f.terms()) {
    r.add_term(m, field_.derive(c, i));
    for (std::size_t k = 0; k < m.size(); ++k) {
      DMono rest(m);
      int e = rest[k].second;
      AlgInd du = apply_delta(rest[k].first, i);
      if (--rest[k].second == 0) rest.erase(rest.begin() + static_cast<long>(k));
      r.add_term(dmono_mul(rest, {{du, 1}}), c * Scalar(e));
    }
  }
  return r;
}

DiffPoly DiffRing::apply_theta(const DiffPoly& f, const DerivOp& theta) const {
  DiffPoly r = theta.sigma ? apply_sigma(f, theta.sigma, true) : f;
  for (std::size_t i = 0; i < theta.exps.size(); ++i)
    for (int k = 0; k < theta.exps[i]; ++k) r = apply_delta(r, static_cast<int>(i) + 1);
  return r;
}

DiffPoly DiffRing::apply_sigma(const DiffPoly& f, int power, bool move_indets) const {
  DiffPoly r;
  for (const auto& [m, c] : f.terms()) {
    DMono n(m);
    if (move_indets)
      for (auto& [u, e] : n) u.op.sigma += power;
    r.add_term(n, field_.shift(c, power));
  }
  return r;
}

LeaderData DiffRing::leader_data(const DiffPoly& f) const {
  if (f.is_constant()) throw PreconditionError("element of K has no leader");
  LeaderData d;
  d.leader = f.indeterminates().back();
  auto coeffs = f.coefficients_in(d.leader);
  d.degree = static_cast<int>(coeffs.size()) - 1;
  d.initial = coeffs.back();
  d.separant = f.partial(d.leader);
  return d;
}

int DiffRing::compare_rank(const DiffPoly& f, const DiffPoly& g) const {
  bool fc = f.is_constant(), gc = g.is_constant();
  if (fc || gc) return fc == gc ? 0 : (fc ? -1 : 1);
  LeaderData a = leader_data(f), b = leader_data(g);
  AlgIndLess less;
  if (less(a.leader, b.leader)) return -1;
  if (less(b.leader, a.leader)) return 1;
  if (a.degree != b.degree) return a.degree < b.degree ? -1 : 1;
  return 0;
}

Scalar DiffRing::evaluate_indet(const AlgInd& u, const std::vector<Scalar>& point) const {
  if (static_cast<int>(point.size()) != n_) throw PreconditionError("point must have n coordinates");
  Scalar a = field_.shift(point.at(u.var - 1), u.op.sigma);
  for (std::size_t i = 0; i < u.op.exps.size(); ++i) a = field_.derive_n(a, static_cast<int>(i) + 1, u.op.exps[i]);
  return a;
}

Scalar DiffRing::evaluate(const DiffPoly& f, const std::vector<Scalar>& point) const {
  std::map<AlgInd, Scalar, AlgIndLess> cache;
  Scalar sum;
  for (const auto& [m, c] : f.terms()) {
    Scalar t = c;
    for (const auto& [u, e] : m) {
      auto it = cache.find(u);
      if (it == cache.end()) it = cache.emplace(u, evaluate_indet(u, point)).first;
      t *= it->second.pow(e);
    }
    sum += t;
  }
  return sum;
}

}  // namespace kolchin
