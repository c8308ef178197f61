#include "kolchin/qpoly.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace kolchin {

void trim(Exponent& e) {
  while (!e.empty() && e.back() == 0) e.pop_back();
}

int total_degree(const Exponent& e) {
  int s = 0;
  for (int x : e) s += x;
  return s;
}

Exponent exponent_add(const Exponent& a, const Exponent& b) {
  Exponent r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = exponent_at(a, i) + exponent_at(b, i);
  return r;
}

bool exponent_divides(const Exponent& a, const Exponent& b) {
  if (a.size() > b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

Exponent exponent_sub(const Exponent& b, const Exponent& a) {
  Exponent r(b);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] -= a[i];
  trim(r);
  return r;
}

bool DegLexGreater::operator()(const Exponent& a, const Exponent& b) const {
  int da = total_degree(a), db = total_degree(b);
  if (da != db) return da > db;
  std::size_t n = std::max(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    int x = exponent_at(a, i), y = exponent_at(b, i);
    if (x != y) return x > y;
  }
  return false;
}

QPoly::QPoly(const mpq_class& c) {
  if (c != 0) terms_.emplace(Exponent{}, c);
}

QPoly QPoly::variable(int i) {
  Exponent e(i + 1, 0);
  e[i] = 1;
  return monomial(std::move(e), 1);
}

QPoly QPoly::monomial(Exponent e, const mpq_class& c) {
  QPoly p;
  trim(e);
  if (c != 0) p.terms_.emplace(std::move(e), c);
  return p;
}

bool QPoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
}

bool QPoly::is_one() const {
  return terms_.size() == 1 && terms_.begin()->first.empty() && terms_.begin()->second == 1;
}

mpq_class QPoly::constant_term() const {
  auto it = terms_.find(Exponent{});
  return it == terms_.end() ? mpq_class(0) : it->second;
}

int QPoly::total_degree() const {
  return terms_.empty() ? -1 : kolchin::total_degree(terms_.begin()->first);
}

int QPoly::degree_in(int var) const {
  if (terms_.empty()) return -1;
  int d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, exponent_at(e, var));
  return d;
}

int QPoly::top_variable() const {
  int v = -1;
  for (const auto& [e, c] : terms_) v = std::max(v, static_cast<int>(e.size()) - 1);
  return v;
}

int QPoly::num_variables() const { return top_variable() + 1; }

void QPoly::add_term(const Exponent& e, const mpq_class& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

QPoly QPoly::operator-() const {
  QPoly r(*this);
  for (auto& [e, c] : r.terms_) c = -c;
  return r;
}

QPoly& QPoly::operator+=(const QPoly& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

QPoly& QPoly::operator-=(const QPoly& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

QPoly operator*(const QPoly& a, const QPoly& b) {
  QPoly r;
  if (a.is_zero() || b.is_zero()) return r;
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) r.add_term(exponent_add(ea, eb), ca * cb);
  return r;
}

QPoly& QPoly::operator*=(const QPoly& o) { return *this = *this * o; }

QPoly& QPoly::operator*=(const mpq_class& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

QPoly QPoly::pow(unsigned e) const {
  QPoly result(1), base(*this);
  while (e) {
    if (e & 1u) result *= base;
    e >>= 1u;
    if (e) base *= base;
  }
  return result;
}

QPoly QPoly::derivative(int var) const {
  QPoly r;
  for (const auto& [e, c] : terms_) {
    int k = exponent_at(e, var);
    if (k == 0) continue;
    Exponent f(e);
    f[var] -= 1;
    trim(f);
    r.add_term(f, c * k);
  }
  return r;
}

namespace {

// (x + c)^k expanded as coefficients of x^j.
std::vector<mpq_class> binomial_row(int k, const mpq_class& c) {
  std::vector<mpq_class> row(k + 1);
  mpz_class binom = 1;
  mpq_class cpow = 1;
  // coefficient of x^(k-i) is C(k,i) c^i
  for (int i = 0; i <= k; ++i) {
    row[k - i] = mpq_class(binom) * cpow;
    binom = binom * (k - i) / (i + 1);
    cpow *= c;
  }
  return row;
}

}  // namespace

QPoly QPoly::translate(const std::vector<mpq_class>& offsets) const {
  QPoly cur(*this);
  for (std::size_t var = 0; var < offsets.size(); ++var) {
    if (offsets[var] == 0) continue;
    QPoly next;
    for (const auto& [e, c] : cur.terms_) {
      int k = exponent_at(e, var);
      if (k == 0) {
        next.add_term(e, c);
        continue;
      }
      auto row = binomial_row(k, offsets[var]);
      for (int j = 0; j <= k; ++j) {
        Exponent f(e);
        f[var] = j;
        trim(f);
        next.add_term(f, c * row[j]);
      }
    }
    cur = std::move(next);
  }
  return cur;
}

mpq_class QPoly::evaluate(const std::vector<mpq_class>& point) const {
  mpq_class sum = 0;
  for (const auto& [e, c] : terms_) {
    mpq_class t = c;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      mpq_class base = i < point.size() ? point[i] : mpq_class(0);
      mpz_class num, den;
      mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), e[i]);
      mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), e[i]);
      t *= mpq_class(num, den);
    }
    sum += t;
  }
  sum.canonicalize();
  return sum;
}

QPoly QPoly::substitute(int var, const mpq_class& value) const {
  QPoly r;
  for (const auto& [e, c] : terms_) {
    int k = exponent_at(e, var);
    if (k == 0) {
      r.add_term(e, c);
      continue;
    }
    Exponent f(e);
    f[var] = 0;
    trim(f);
    mpq_class p = 1;
    for (int i = 0; i < k; ++i) p *= value;
    r.add_term(f, c * p);
  }
  return r;
}

std::vector<QPoly> QPoly::coefficients_in(int var) const {
  int d = std::max(degree_in(var), 0);
  std::vector<QPoly> out(terms_.empty() ? 0 : d + 1);
  for (const auto& [e, c] : terms_) {
    int k = exponent_at(e, var);
    Exponent f(e);
    if (k) {
      f[var] = 0;
      trim(f);
    }
    out[k].add_term(f, c);
  }
  return out;
}

QPoly QPoly::from_coefficients(int var, const std::vector<QPoly>& coeffs) {
  QPoly r;
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    for (const auto& [e, c] : coeffs[k].terms_) {
      Exponent f(e);
      if (k) {
        if (static_cast<int>(f.size()) <= var) f.resize(var + 1, 0);
        f[var] += static_cast<int>(k);
      }
      r.add_term(f, c);
    }
  }
  return r;
}

QPoly QPoly::monic() const {
  if (terms_.empty()) return *this;
  QPoly r(*this);
  mpq_class lc = leading_coefficient();
  if (lc != 1) r *= mpq_class(1) / lc;
  return r;
}

QPoly QPoly::primitive_integral() const {
  if (terms_.empty()) return *this;
  mpz_class den_lcm = 1, num_gcd = 0;
  for (const auto& [e, c] : terms_) {
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den_mpz_t());
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num_mpz_t());
  }
  mpq_class scale(den_lcm, num_gcd);
  if (leading_coefficient() < 0) scale = -scale;
  QPoly r(*this);
  r *= scale;
  return r;
}

std::string QPoly::to_string(const std::function<std::string(int)>& name) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    bool neg = c < 0;
    mpq_class mag = neg ? mpq_class(-c) : c;
    if (first)
      os << (neg ? "-" : "");
    else
      os << (neg ? " - " : " + ");
    first = false;
    std::string mono;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += name(static_cast<int>(i));
      if (e[i] > 1) mono += "^" + std::to_string(e[i]);
    }
    if (mono.empty())
      os << mag.get_str();
    else if (mag == 1)
      os << mono;
    else
      os << mag.get_str() << "*" << mono;
  }
  return os.str();
}

std::optional<QPoly> divide_exact(const QPoly& a, const QPoly& b) {
  assert(!b.is_zero());
  QPoly q, r(a);
  const Exponent& lb = b.leading_exponent();
  const mpq_class& cb = b.leading_coefficient();
  while (!r.is_zero()) {
    const Exponent& lr = r.leading_exponent();
    if (!exponent_divides(lb, lr)) return std::nullopt;
    QPoly t = QPoly::monomial(exponent_sub(lr, lb), r.leading_coefficient() / cb);
    q += t;
    r -= t * b;
  }
  return q;
}

QPoly pseudo_remainder(QPoly a, const QPoly& b, int var) {
  int db = b.degree_in(var);
  auto bc = b.coefficients_in(var);
  const QPoly& lb = bc.back();
  while (!a.is_zero()) {
    int da = a.degree_in(var);
    if (da < db) break;
    QPoly la = a.coefficients_in(var).back();
    Exponent shift(var + 1, 0);
    shift[var] = da - db;
    a = lb * a - la * QPoly::monomial(shift, 1) * b;
  }
  return a;
}

QPoly content_in(const QPoly& a, int var) {
  if (a.is_zero()) return a;
  QPoly g;
  for (const auto& c : a.coefficients_in(var)) {
    if (c.is_zero()) continue;
    g = gcd(g, c);
    if (g.is_one()) break;
  }
  return g;
}

QPoly primitive_part_in(const QPoly& a, int var) {
  if (a.is_zero()) return a;
  QPoly c = content_in(a, var);
  return *divide_exact(a, c);
}

namespace {

// Specialises every variable but var at a point keeping both leading
// coefficients nonzero. A specialisation can only raise the degree of the
// gcd, so coprime images prove that primitive a and b are coprime.
bool images_coprime(const QPoly& a, const QPoly& b, int var) {
  int nv = std::max(a.num_variables(), b.num_variables());
  bool others = false;
  for (int i = 0; i < nv; ++i)
    if (i != var && (a.degree_in(i) > 0 || b.degree_in(i) > 0)) others = true;
  if (!others) return false;
  QPoly lca = a.coefficients_in(var).back(), lcb = b.coefficients_in(var).back();
  for (int attempt = 0; attempt < 3; ++attempt) {
    std::vector<mpq_class> point(nv);
    for (int i = 0; i < nv; ++i) point[i] = mpq_class(2 + 3 * i + 7 * attempt, 1 + attempt);
    point[var] = 0;
    if (lca.evaluate(point) == 0 || lcb.evaluate(point) == 0) continue;
    QPoly ia = a, ib = b;
    for (int i = 0; i < nv; ++i) {
      if (i == var) continue;
      ia = ia.substitute(i, point[i]);
      ib = ib.substitute(i, point[i]);
    }
    return gcd(ia, ib).is_constant();
  }
  return false;
}

}  // namespace

QPoly gcd(const QPoly& a, const QPoly& b) {
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  if (a.is_constant() || b.is_constant()) return QPoly(1);
  if (a.size() == 1 && b.size() == 1) {
    const Exponent& ea = a.leading_exponent();
    const Exponent& eb = b.leading_exponent();
    Exponent m(std::min(ea.size(), eb.size()));
    for (std::size_t i = 0; i < m.size(); ++i) m[i] = std::min(ea[i], eb[i]);
    return QPoly::monomial(m, 1);
  }
  int var = std::max(a.top_variable(), b.top_variable());
  QPoly ca = content_in(a, var), cb = content_in(b, var);
  QPoly c = gcd(ca, cb);
  QPoly pa = divide_exact(a, ca)->primitive_integral(), pb = divide_exact(b, cb)->primitive_integral();
  QPoly g(1);
  if (pa.degree_in(var) > 0 && pb.degree_in(var) > 0 && !images_coprime(pa, pb, var)) {
    if (pa.degree_in(var) < pb.degree_in(var)) std::swap(pa, pb);
    while (true) {
      QPoly r = pseudo_remainder(pa, pb, var);
      if (r.is_zero()) {
        g = pb;
        break;
      }
      if (r.degree_in(var) <= 0) break;
      pa = std::move(pb);
      pb = primitive_part_in(r, var).primitive_integral();
    }
    if (!g.is_one()) g = primitive_part_in(g, var);
  }
  return (c * g).monic();
}

}  // namespace kolchin
