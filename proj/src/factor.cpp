#include "kolchin/factor.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>

namespace kolchin {

namespace {

using ZPoly = std::vector<mpz_class>;  // coefficient of x^i at index i

int zdeg(const ZPoly& c) { return static_cast<int>(c.size()) - 1; }

ZPoly to_univariate(const QPoly& f, int var) {
  QPoly g = f.primitive_integral();
  ZPoly out(std::max(g.degree_in(var), 0) + 1);
  for (const auto& [e, c] : g.terms()) out[exponent_at(e, var)] = c.get_num();
  return out;
}

QPoly from_univariate(const ZPoly& c, int var) {
  QPoly r;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i] == 0) continue;
    Exponent e(var + 1, 0);
    e[var] = static_cast<int>(i);
    r += QPoly::monomial(e, mpq_class(c[i]));
  }
  return r;
}

// ---- arithmetic modulo a small prime ----

using PPoly = std::vector<std::uint64_t>;

void ptrim(PPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

std::uint64_t invmod(std::uint64_t a, std::uint64_t p) { return powmod(a, p - 2, p); }

PPoly pmul(const PPoly& a, const PPoly& b, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  PPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + mulmod(a[i], b[j], p)) % p;
  ptrim(r);
  return r;
}

PPoly pmod(PPoly a, const PPoly& m, std::uint64_t p) {
  std::uint64_t inv = invmod(m.back(), p);
  while (a.size() >= m.size()) {
    std::uint64_t q = mulmod(a.back(), inv, p);
    std::size_t shift = a.size() - m.size();
    for (std::size_t i = 0; i < m.size(); ++i)
      a[shift + i] = (a[shift + i] + p - mulmod(q, m[i], p)) % p;
    ptrim(a);
  }
  return a;
}

PPoly pdiv(PPoly a, const PPoly& m, std::uint64_t p) {
  std::uint64_t inv = invmod(m.back(), p);
  if (a.size() < m.size()) return {};
  PPoly q(a.size() - m.size() + 1, 0);
  while (a.size() >= m.size()) {
    std::uint64_t c = mulmod(a.back(), inv, p);
    std::size_t shift = a.size() - m.size();
    q[shift] = c;
    for (std::size_t i = 0; i < m.size(); ++i)
      a[shift + i] = (a[shift + i] + p - mulmod(c, m[i], p)) % p;
    ptrim(a);
  }
  ptrim(q);
  return q;
}

PPoly pgcd(PPoly a, PPoly b, std::uint64_t p) {
  while (!b.empty()) {
    PPoly r = pmod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    std::uint64_t inv = invmod(a.back(), p);
    for (auto& c : a) c = mulmod(c, inv, p);
  }
  return a;
}

PPoly ppowmod(PPoly base, std::uint64_t e, const PPoly& m, std::uint64_t p) {
  PPoly r{1};
  base = pmod(base, m, p);
  while (e) {
    if (e & 1) r = pmod(pmul(r, base, p), m, p);
    base = pmod(pmul(base, base, p), m, p);
    e >>= 1;
  }
  return r;
}

PPoly reduce_mod(const ZPoly& c, std::uint64_t p) {
  PPoly r(c.size());
  mpz_class pp(static_cast<unsigned long>(p));
  for (std::size_t i = 0; i < c.size(); ++i) {
    mpz_class v = c[i] % pp;
    if (v < 0) v += pp;
    r[i] = v.get_ui();
  }
  ptrim(r);
  return r;
}

PPoly pderiv(const PPoly& a, std::uint64_t p) {
  PPoly r;
  for (std::size_t i = 1; i < a.size(); ++i) r.push_back(mulmod(a[i], i % p, p));
  ptrim(r);
  return r;
}

// Degrees of the irreducible factors of a squarefree polynomial mod p.
std::vector<int> distinct_degree_pattern(PPoly g, std::uint64_t p) {
  std::vector<int> degrees;
  std::uint64_t inv = invmod(g.back(), p);
  for (auto& c : g) c = mulmod(c, inv, p);
  PPoly x{0, 1};
  PPoly h = pmod(x, g, p);
  for (int i = 1; 2 * i <= static_cast<int>(g.size()) - 1; ++i) {
    h = ppowmod(h, p, g, p);
    PPoly hx = h;
    if (hx.size() < 2) hx.resize(2, 0);
    hx[1] = (hx[1] + p - 1) % p;
    ptrim(hx);
    PPoly d = pgcd(g, hx, p);
    int dd = static_cast<int>(d.size()) - 1;
    if (dd > 0) {
      for (int k = 0; k < dd / i; ++k) degrees.push_back(i);
      g = pdiv(g, d, p);
      h = pmod(h, g, p);
    }
  }
  if (g.size() > 1) degrees.push_back(static_cast<int>(g.size()) - 1);
  return degrees;
}

bool is_prime_small(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// ---- integer divisors ----

std::optional<std::vector<mpz_class>> positive_divisors(mpz_class n) {
  if (n < 0) n = -n;
  if (n == 0) return std::nullopt;
  if (n > mpz_class("100000000000000")) return std::nullopt;
  std::vector<std::pair<mpz_class, int>> primes;
  mpz_class m = n;
  for (mpz_class d = 2; d * d <= m; ++d) {
    int k = 0;
    while (m % d == 0) {
      m /= d;
      ++k;
    }
    if (k) primes.emplace_back(d, k);
  }
  if (m > 1) primes.emplace_back(m, 1);
  std::vector<mpz_class> divs{1};
  for (const auto& [q, k] : primes) {
    std::size_t base = divs.size();
    mpz_class pw = 1;
    for (int i = 1; i <= k; ++i) {
      pw *= q;
      for (std::size_t j = 0; j < base; ++j) divs.push_back(divs[j] * pw);
    }
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}


// ---- univariate search ----

struct UniResult {
  FactorAnswer answer = FactorAnswer::unknown;
  ZPoly factor;
  std::string reason;
};

std::optional<ZPoly> rational_root_factor(const ZPoly& c, bool& complete) {
  complete = true;
  auto ps = positive_divisors(c.front());
  auto qs = positive_divisors(c.back());
  if (!ps || !qs) {
    complete = false;
    return std::nullopt;
  }
  for (const auto& q : *qs) {
    for (const auto& p : *ps) {
      mpz_class g;
      mpz_gcd(g.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t());
      if (g != 1) continue;
      for (int s : {1, -1}) {
        mpz_class pn = s * p;
        // evaluate q^n f(p/q) = sum c_i p^i q^(n-i)
        mpz_class acc = 0, ppow = 1;
        int n = zdeg(c);
        std::vector<mpz_class> qpow(n + 1);
        qpow[0] = 1;
        for (int i = 1; i <= n; ++i) qpow[i] = qpow[i - 1] * q;
        for (int i = 0; i <= n; ++i) {
          acc += c[i] * ppow * qpow[n - i];
          ppow *= pn;
        }
        if (acc == 0) return ZPoly{-pn, q};
      }
    }
  }
  return std::nullopt;
}

// ---- Zassenhaus: factor mod p, Hensel lift, recombine ----

PPoly pmonic(PPoly a, std::uint64_t p) {
  std::uint64_t inv = invmod(a.back(), p);
  for (auto& c : a) c = mulmod(c, inv, p);
  return a;
}

PPoly psub(PPoly a, const PPoly& b, std::uint64_t p) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + p - b[i]) % p;
  ptrim(a);
  return a;
}

PPoly ppowmod_big(PPoly base, const mpz_class& e, const PPoly& m, std::uint64_t p) {
  PPoly r{1};
  base = pmod(base, m, p);
  std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    r = pmod(pmul(r, r, p), m, p);
    if (mpz_tstbit(e.get_mpz_t(), i)) r = pmod(pmul(r, base, p), m, p);
  }
  return r;
}

// s*a + t*b = 1 modulo p for coprime a, b.
void pxgcd(const PPoly& a, const PPoly& b, std::uint64_t p, PPoly& s, PPoly& t) {
  PPoly r0 = a, r1 = b, s0{1}, s1, t0, t1{1};
  while (!r1.empty()) {
    PPoly q = pdiv(r0, r1, p);
    PPoly r2 = psub(r0, pmul(q, r1, p), p);
    PPoly s2 = psub(s0, pmul(q, s1, p), p);
    PPoly t2 = psub(t0, pmul(q, t1, p), p);
    r0 = std::move(r1);
    r1 = std::move(r2);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  std::uint64_t inv = invmod(r0.back(), p);
  for (auto& c : s0) c = mulmod(c, inv, p);
  for (auto& c : t0) c = mulmod(c, inv, p);
  s = s0;
  t = t0;
}

// Monic irreducible factors of a monic squarefree polynomial mod an odd prime.
std::vector<PPoly> factor_mod_p(PPoly g, std::uint64_t p, std::mt19937_64& rng) {
  std::vector<PPoly> out;
  std::vector<std::pair<int, PPoly>> groups;
  PPoly x{0, 1};
  PPoly h = pmod(x, g, p);
  for (int i = 1; 2 * i <= static_cast<int>(g.size()) - 1; ++i) {
    h = ppowmod(h, p, g, p);
    PPoly d = pgcd(g, psub(h, x, p), p);
    if (d.size() > 1) {
      groups.emplace_back(i, d);
      g = pdiv(g, d, p);
      h = pmod(h, g, p);
    }
  }
  if (g.size() > 1) groups.emplace_back(static_cast<int>(g.size()) - 1, g);
  for (auto& [d, prod] : groups) {
    std::vector<PPoly> work{prod};
    mpz_class q = 1;
    for (int i = 0; i < d; ++i) q *= static_cast<unsigned long>(p);
    mpz_class e = (q - 1) / 2;
    while (!work.empty()) {
      PPoly f = work.back();
      work.pop_back();
      if (static_cast<int>(f.size()) - 1 == d) {
        out.push_back(f);
        continue;
      }
      for (;;) {
        PPoly a(f.size() - 1);
        for (auto& c : a) c = rng() % p;
        ptrim(a);
        if (a.size() < 2) continue;
        PPoly b = ppowmod_big(a, e, f, p);
        b = psub(b, PPoly{1}, p);
        PPoly s = pgcd(f, b, p);
        if (s.size() > 1 && s.size() < f.size()) {
          work.push_back(s);
          work.push_back(pdiv(f, s, p));
          break;
        }
      }
    }
  }
  return out;
}

ZPoly zmod(ZPoly a, const mpz_class& m) {
  for (auto& c : a) {
    c %= m;
    if (c < 0) c += m;
  }
  while (a.size() > 1 && a.back() == 0) a.pop_back();
  return a;
}

ZPoly zmul(const ZPoly& a, const ZPoly& b) {
  ZPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

ZPoly lift_of(const PPoly& a) {
  ZPoly r(std::max<std::size_t>(a.size(), 1), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = static_cast<unsigned long>(a[i]);
  return r;
}

PPoly down(const ZPoly& a, std::uint64_t p) { return reduce_mod(a, p); }

// Lifts F = g*h (mod p), g monic, lc(h) = lc(F), to the same identity mod p^k.
void hensel_pair(const ZPoly& F, ZPoly& g, ZPoly& h, std::uint64_t p, int k) {
  PPoly s, t;
  pxgcd(down(g, p), down(h, p), p, s, t);
  mpz_class pj = static_cast<unsigned long>(p);
  mpz_class pk = 1;
  for (int i = 0; i < k; ++i) pk *= static_cast<unsigned long>(p);
  for (int j = 1; j < k; ++j) {
    ZPoly diff = F;
    ZPoly gh = zmul(g, h);
    if (diff.size() < gh.size()) diff.resize(gh.size(), 0);
    for (std::size_t i = 0; i < gh.size(); ++i) diff[i] -= gh[i];
    diff = zmod(diff, pk);
    for (auto& c : diff) c /= pj;
    PPoly e = down(diff, p);
    PPoly gp = down(g, p);
    PPoly dg = pmod(pmul(t, e, p), gp, p);
    PPoly dh = pdiv(psub(e, pmul(dg, down(h, p), p), p), gp, p);
    ZPoly zg = lift_of(dg), zh = lift_of(dh);
    for (std::size_t i = 0; i < zg.size(); ++i) g[i] += zg[i] * pj;
    if (h.size() < zh.size()) h.resize(zh.size(), 0);
    for (std::size_t i = 0; i < zh.size(); ++i) h[i] += zh[i] * pj;
    g = zmod(g, pk);
    h = zmod(h, pk);
    pj *= static_cast<unsigned long>(p);
  }
}

// Monic lifts mod p^k of the given monic factors of F/lc(F) mod p.
std::vector<ZPoly> hensel_lift(ZPoly F, std::vector<PPoly> factors, std::uint64_t p, int k) {
  std::vector<ZPoly> out;
  mpz_class pk = 1;
  for (int i = 0; i < k; ++i) pk *= static_cast<unsigned long>(p);
  F = zmod(F, pk);
  while (factors.size() > 1) {
    PPoly rest{1};
    for (std::size_t i = 1; i < factors.size(); ++i) rest = pmul(rest, factors[i], p);
    std::uint64_t lc = down(ZPoly{F.back()}, p)[0];
    for (auto& c : rest) c = mulmod(c, lc, p);
    ZPoly g = lift_of(factors[0]), h = lift_of(rest);
    h.back() = F.back();
    hensel_pair(F, g, h, p, k);
    out.push_back(g);
    F = h;
    factors.erase(factors.begin());
  }
  mpz_class inv;
  mpz_invert(inv.get_mpz_t(), F.back().get_mpz_t(), pk.get_mpz_t());
  for (auto& c : F) c = c * inv;
  out.push_back(zmod(F, pk));
  return out;
}

ZPoly zprimitive(ZPoly a) {
  mpz_class g = 0;
  for (const auto& c : a) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  if (g > 1)
    for (auto& c : a) c /= g;
  if (a.back() < 0)
    for (auto& c : a) c = -c;
  return a;
}

std::optional<ZPoly> zdivide(const ZPoly& a, const ZPoly& b) {
  if (zdeg(a) < zdeg(b)) return std::nullopt;
  ZPoly r(a), q(zdeg(a) - zdeg(b) + 1);
  for (int i = zdeg(a) - zdeg(b); i >= 0; --i) {
    mpz_class num = r[i + zdeg(b)];
    if (num % b.back() != 0) return std::nullopt;
    q[i] = num / b.back();
    for (int j = 0; j <= zdeg(b); ++j) r[i + j] -= q[i] * b[j];
  }
  for (const auto& v : r)
    if (v != 0) return std::nullopt;
  return q;
}

UniResult zassenhaus(const ZPoly& c, const FactorLimits& limits) {
  int n = zdeg(c);
  std::mt19937_64 rng(0x5eed + n);
  std::uint64_t best_p = 0;
  std::size_t best_count = 0;
  int tried = 0;
  for (std::uint64_t p = 3; tried < 5 && p < 5000; p += 2) {
    if (!is_prime_small(p)) continue;
    if (c.back() % mpz_class(static_cast<unsigned long>(p)) == 0) continue;
    PPoly f = reduce_mod(c, p);
    if (pgcd(f, pderiv(f, p), p).size() > 1) continue;
    ++tried;
    std::size_t cnt = distinct_degree_pattern(f, p).size();
    if (best_p == 0 || cnt < best_count) {
      best_p = p;
      best_count = cnt;
    }
  }
  if (best_p == 0) return {FactorAnswer::unknown, {}, "no suitable prime"};
  if (best_count == 1) return {FactorAnswer::irreducible, {}, "irreducible modulo a prime"};
  if (static_cast<int>(best_count) > limits.max_subset_factors)
    return {FactorAnswer::unknown, {}, "too many modular factors"};
  std::uint64_t p = best_p;
  auto mods = factor_mod_p(pmonic(reduce_mod(c, p), p), p, rng);

  // Mignotte bound on coefficients of lc(c) * (monic factor).
  mpz_class norm2 = 0;
  for (const auto& v : c) norm2 += v * v;
  mpz_class bound = sqrt(norm2) + 1;
  bound <<= n;
  mpz_class lc = c.back();
  mpz_class target = 2 * bound * abs(lc);
  int k = 1;
  mpz_class pk = static_cast<unsigned long>(p);
  while (pk <= target) {
    pk *= static_cast<unsigned long>(p);
    ++k;
  }
  auto lifted = hensel_lift(c, mods, p, k);
  std::size_t r = lifted.size();
  mpz_class half = pk / 2;
  for (std::size_t size = 1; 2 * size <= r; ++size) {
    std::vector<std::size_t> idx(size);
    for (std::size_t i = 0; i < size; ++i) idx[i] = i;
    for (;;) {
      ZPoly prod{lc};
      for (auto i : idx) prod = zmod(zmul(prod, lifted[i]), pk);
      for (auto& v : prod)
        if (v > half) v -= pk;
      ZPoly cand = zprimitive(prod);
      if (zdeg(cand) > 0 && zdivide(c, cand)) return {FactorAnswer::reducible, cand, "Zassenhaus recombination"};
      std::size_t i = size;
      while (i > 0 && idx[i - 1] == r - size + i - 1) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < size; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return {FactorAnswer::irreducible, {}, "no recombination of modular factors divides"};
}

UniResult univariate_find_factor(const ZPoly& c, const FactorLimits& limits, int var) {
  int n = zdeg(c);
  if (n <= 1) return {FactorAnswer::irreducible, {}, "degree one"};
  if (c.front() == 0) return {FactorAnswer::reducible, ZPoly{0, 1}, "zero constant term"};
  QPoly f = from_univariate(c, var);
  QPoly g = gcd(f, f.derivative(var));
  if (!g.is_constant()) return {FactorAnswer::reducible, to_univariate(g, var), "repeated factor"};
  auto adm = admissible_factor_degrees(c);
  bool any = false;
  for (int e = 1; e < n; ++e) any = any || adm[e];
  if (!any) return {FactorAnswer::irreducible, {}, "factor degrees excluded modulo small primes"};
  if (adm[1]) {
    bool complete = false;
    if (auto lin = rational_root_factor(c, complete))
      return {FactorAnswer::reducible, *lin, "rational root"};
  }
  return zassenhaus(c, limits);
}
FactorResult make_reducible(const QPoly& f, const QPoly& left, std::string reason) {
  FactorResult r;
  r.answer = FactorAnswer::reducible;
  r.left = left.primitive_integral();
  r.right = *divide_exact(f, r.left);
  r.reason = std::move(reason);
  return r;
}

std::vector<int> variables_of(const QPoly& f) {
  std::vector<int> vars;
  for (int v = 0; v < f.num_variables(); ++v)
    if (f.degree_in(v) > 0) vars.push_back(v);
  return vars;
}

}  // namespace

std::vector<bool> admissible_factor_degrees(const std::vector<mpz_class>& coeffs, int primes) {
  int n = static_cast<int>(coeffs.size()) - 1;
  std::vector<bool> adm(n + 1, true);
  int used = 0;
  for (std::uint64_t p = 3; used < primes && p < 2000; p += 2) {
    if (!is_prime_small(p)) continue;
    mpz_class lc = coeffs.back() % mpz_class(static_cast<unsigned long>(p));
    if (lc == 0) continue;
    PPoly f = reduce_mod(coeffs, p);
    if (static_cast<int>(f.size()) - 1 != n) continue;
    PPoly d = pgcd(f, pderiv(f, p), p);
    if (d.size() > 1) continue;
    ++used;
    std::vector<bool> sums(n + 1, false);
    sums[0] = true;
    for (int deg : distinct_degree_pattern(f, p))
      for (int s = n; s >= deg; --s)
        if (sums[s - deg]) sums[s] = true;
    for (int s = 0; s <= n; ++s) adm[s] = adm[s] && sums[s];
  }
  return adm;
}

FactorResult find_factor(const QPoly& input, const FactorLimits& limits) {
  FactorResult res;
  if (input.is_constant()) {
    res.reason = "constant";
    return res;
  }
  QPoly f = input.primitive_integral();
  auto vars = variables_of(f);
  if (f.total_degree() <= 1) return {FactorAnswer::irreducible, {}, {}, "linear"};

  for (int v : vars) {
    bool all = true;
    for (const auto& [e, c] : f.terms()) all = all && exponent_at(e, v) > 0;
    if (all) return make_reducible(f, QPoly::variable(v), "monomial factor");
  }
  if (vars.size() > 1) {
    for (int v : vars) {
      QPoly c = content_in(f, v);
      if (!c.is_constant()) return make_reducible(f, c, "content");
    }
  }
  for (int v : vars) {
    QPoly g = gcd(f, f.derivative(v));
    if (!g.is_constant()) return make_reducible(f, g, "repeated factor");
  }
  for (int v : vars) {
    if (f.degree_in(v) != 1) continue;
    auto cs = f.coefficients_in(v);
    QPoly g = gcd(cs[0], cs[1]);
    if (!g.is_constant()) return make_reducible(f, g, "common factor of linear coefficients");
    return {FactorAnswer::irreducible, {}, {},
            "linear in variable " + std::to_string(v + 1) + " with coprime coefficients"};
  }
  if (f.total_degree() > limits.max_total_degree) {
    res.reason = "total degree above factor-search bound";
    return res;
  }
  if (vars.size() == 1) {
    auto u = univariate_find_factor(to_univariate(f, vars[0]), limits, vars[0]);
    if (u.answer == FactorAnswer::reducible)
      return make_reducible(f, from_univariate(u.factor, vars[0]), u.reason);
    return {u.answer, {}, {}, u.reason};
  }

  // Specialising all but one variable keeps every factorisation with positive
  // degree in that variable, so an empty admissible degree set proves
  // irreducibility (content in the kept variable is already 1).
  for (int v : vars) {
    int n = f.degree_in(v);
    std::vector<bool> adm(n + 1, true);
    int tried = 0;
    for (int attempt = 0; attempt < 40 && tried < 6; ++attempt) {
      QPoly g = f;
      for (std::size_t j = 0; j < vars.size(); ++j) {
        if (vars[j] == v) continue;
        int val = 1 + (attempt * 7 + static_cast<int>(j) * 3) % 11;
        g = g.substitute(vars[j], (attempt + j) % 2 ? -val : val);
      }
      if (g.degree_in(v) != n) continue;
      ZPoly u = to_univariate(g, v);
      QPoly gq = from_univariate(u, v);
      if (!gcd(gq, gq.derivative(v)).is_constant()) continue;
      ++tried;
      auto a = admissible_factor_degrees(u);
      for (int e = 0; e <= n; ++e) adm[e] = adm[e] && a[e];
    }
    bool any = false;
    for (int e = 1; e < n; ++e) any = any || adm[e];
    if (tried > 0 && !any)
      return {FactorAnswer::irreducible, {}, {}, "specialisations admit no factor degrees"};
  }

  // Kronecker substitution x_{v_j} -> y^(D^j) onto variable 0.
  int D = 0;
  for (int v : vars) D = std::max(D, f.degree_in(v));
  ++D;
  std::vector<long> weight(vars.size());
  long w = 1;
  for (std::size_t j = 0; j < vars.size(); ++j) {
    weight[j] = w;
    w *= D;
  }
  ZPoly image;
  for (const auto& [e, c] : f.terms()) {
    long k = 0;
    for (std::size_t j = 0; j < vars.size(); ++j) k += exponent_at(e, vars[j]) * weight[j];
    if (k > limits.max_image_degree) {
      res.reason = "substitution image degree above bound";
      return res;
    }
    if (static_cast<long>(image.size()) <= k) image.resize(k + 1, 0);
    image[k] += c.get_num();
  }
  QPoly image_poly = from_univariate(image, 0);
  FactorLimits image_limits = limits;
  image_limits.max_total_degree = limits.max_image_degree;
  Factorization parts = factor_completely(image_poly, image_limits);
  if (!parts.complete) {
    res.reason = "substitution image not fully factored";
    return res;
  }
  std::size_t r = parts.factors.size();
  if (static_cast<int>(r) > limits.max_subset_factors) {
    res.reason = "too many image factors";
    return res;
  }
  for (std::uint64_t mask = 1; mask + 1 < (std::uint64_t{1} << r); ++mask) {
    QPoly prod(1);
    for (std::size_t i = 0; i < r; ++i)
      if (mask & (std::uint64_t{1} << i)) prod *= parts.factors[i];
    QPoly cand;
    bool ok = true;
    for (const auto& [e, c] : prod.terms()) {
      long k = exponent_at(e, 0);
      Exponent ex(vars.back() + 1, 0);
      for (std::size_t j = 0; j < vars.size(); ++j) {
        ex[vars[j]] = static_cast<int>(k % D);
        k /= D;
      }
      if (k != 0) {
        ok = false;
        break;
      }
      cand += QPoly::monomial(ex, c);
    }
    if (!ok || cand.is_constant() || cand.total_degree() >= f.total_degree()) continue;
    if (divide_exact(f, cand)) return make_reducible(f, cand, "Kronecker substitution");
  }
  return {FactorAnswer::irreducible, {}, {}, "no lift of substitution-image factors divides"};
}

Factorization factor_completely(const QPoly& f, const FactorLimits& limits) {
  Factorization out;
  if (f.is_constant()) {
    out.complete = true;
    return out;
  }
  auto r = find_factor(f, limits);
  if (r.answer == FactorAnswer::irreducible) {
    out.complete = true;
    out.factors.push_back(f.primitive_integral());
    return out;
  }
  if (r.answer == FactorAnswer::unknown) return out;
  auto a = factor_completely(r.left, limits);
  auto b = factor_completely(r.right, limits);
  out.complete = a.complete && b.complete;
  out.factors = std::move(a.factors);
  out.factors.insert(out.factors.end(), b.factors.begin(), b.factors.end());
  return out;
}

}  // namespace kolchin
