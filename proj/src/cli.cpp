#include "kolchin/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "kolchin/dsmod.hpp"
#include "kolchin/expr.hpp"
#include "kolchin/geometry.hpp"
#include "kolchin/jets.hpp"
#include "kolchin/polyalg.hpp"
#include "kolchin/rittkolchin.hpp"

namespace kolchin::cli {

namespace {

// Re-anchors a syntax error inside one argument.
SyntaxError in_argument(const SyntaxError& e, const std::string& what, int offset = 0) {
  return SyntaxError(e.column() + offset, what + ": " + e.detail());
}

std::vector<Ast> parse_list(const std::string& text, const std::string& what, int offset = 0) {
  try {
    return parse_expr_list(text);
  } catch (const SyntaxError& e) {
    throw in_argument(e, what, offset);
  }
}

// Rows separated by ';', entries by ','.
std::vector<std::vector<Ast>> parse_matrix(const std::string& text, const std::string& what) {
  std::vector<std::vector<Ast>> rows;
  std::size_t start = 0;
  while (true) {
    std::size_t end = text.find(';', start);
    std::string row = text.substr(start, end == std::string::npos ? std::string::npos : end - start);
    rows.push_back(parse_list(row, what, static_cast<int>(start)));
    if (rows.back().empty()) throw SyntaxError(static_cast<int>(start) + 1, what + ": empty matrix row");
    if (end == std::string::npos) break;
    start = end + 1;
  }
  return rows;
}

ExprUsage usage_of(const std::vector<Ast>& xs) {
  ExprUsage u;
  for (const auto& a : xs) u.merge(expr_usage(a));
  return u;
}

std::vector<mpq_class> parse_shifts(const std::string& text) {
  DiffRing R0(1, 0);
  std::vector<mpq_class> out;
  for (const auto& a : parse_list(text, "--shift")) {
    DiffPoly v = evaluate_expr(R0, a);
    if (!v.is_constant() || !v.constant_term().is_rational())
      throw PreconditionError("--shift: offsets must be rational numbers");
    out.push_back(v.constant_term().rational_value());
  }
  return out;
}

// Collects the expressions of one command so that n, m and k can be
// inferred before anything is evaluated.
class Workspace {
 public:
  explicit Workspace(Context ctx) : ctx_(std::move(ctx)) {}

  std::vector<Ast> list(const std::string& text, const std::string& what) {
    auto xs = parse_list(text, what);
    usage_.merge(usage_of(xs));
    return xs;
  }
  Ast one(const std::string& text, const std::string& what) {
    auto xs = list(text, what);
    if (xs.size() != 1) throw PreconditionError(what + ": expected exactly one expression");
    return xs[0];
  }
  std::vector<std::vector<Ast>> matrix(const std::string& text, const std::string& what) {
    auto rows = parse_matrix(text, what);
    for (const auto& r : rows) usage_.merge(usage_of(r));
    return rows;
  }

  // Lower bounds from the shape of the input (point length, section count).
  void at_least_n(int n) { floor_n_ = std::max(floor_n_, n); }
  void at_least_m(int m) { floor_m_ = std::max(floor_m_, m); }

  int n() const { return ctx_.n.value_or(std::max(usage_.n, floor_n_)); }
  int m() const { return ctx_.m.value_or(std::max(usage_.m, floor_m_)); }
  int k() const { return ctx_.k.value_or(std::max(usage_.k, static_cast<int>(ctx_.shifts.size()))); }

  ScalarField field() const {
    if (static_cast<int>(ctx_.shifts.size()) > k()) throw PreconditionError("more shift offsets than parameters t_i");
    return ScalarField(k(), m(), ctx_.shifts);
  }
  DiffRing ring(int n) const { return DiffRing(n, m(), field()); }
  const Context& context() const { return ctx_; }

 private:
  Context ctx_;
  ExprUsage usage_;
  int floor_n_ = 0, floor_m_ = 0;
};

std::vector<DiffPoly> polys(const DiffRing& R, const std::vector<Ast>& xs) {
  std::vector<DiffPoly> out;
  for (const auto& a : xs) out.push_back(evaluate_expr(R, a));
  return out;
}

Scalar scalar(const DiffRing& R, const Ast& a, const std::string& what) {
  DiffPoly v = evaluate_expr(R, a);
  if (!v.is_constant()) throw PreconditionError(what + ": entries must lie in the base field, got " + v.to_string());
  return v.constant_term();
}

std::vector<Scalar> scalars(const DiffRing& R, const std::vector<Ast>& xs, const std::string& what) {
  std::vector<Scalar> out;
  for (const auto& a : xs) out.push_back(scalar(R, a, what));
  return out;
}

Matrix matrix_value(const DiffRing& R, const std::vector<std::vector<Ast>>& rows, const std::string& what) {
  int cols = static_cast<int>(rows[0].size());
  Matrix M(static_cast<int>(rows.size()), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (static_cast<int>(rows[i].size()) != cols) throw PreconditionError(what + ": rows of unequal length");
    for (int j = 0; j < cols; ++j) M(static_cast<int>(i), j) = scalar(R, rows[i][j], what);
  }
  return M;
}

// Algebraic polynomial in x1..xn.
CPoly algebraic(const DiffPoly& f, int n, MonomialOrder order = {}) {
  CPoly p(n, order);
  for (const auto& [mono, c] : f.terms()) {
    Mono e(n, 0);
    for (const auto& [u, k] : mono) {
      if (u.order() != 0 || u.op.sigma != 0)
        throw PreconditionError("expected an algebraic polynomial (no derivatives or shifts), found " + u.to_string());
      e[u.var - 1] += k;
    }
    p.add_term(e, c);
  }
  return p;
}

std::vector<CPoly> algebraic(const std::vector<DiffPoly>& fs, int n, MonomialOrder order = {}) {
  std::vector<CPoly> out;
  for (const auto& f : fs) out.push_back(algebraic(f, n, order));
  return out;
}

Json strings(const std::vector<DiffPoly>& fs) {
  Json a = Json::array();
  for (const auto& f : fs) a.push_back(f.to_string());
  return a;
}

Json strings(const std::vector<CPoly>& fs) {
  Json a = Json::array();
  for (const auto& f : fs) a.push_back(f.to_string());
  return a;
}

Json vector_json(const Vector& v) {
  Json a = Json::array();
  for (const auto& c : v) a.push_back(c.to_string());
  return a;
}

Json vectors_json(const std::vector<Vector>& vs) {
  Json a = Json::array();
  for (const auto& v : vs) a.push_back(vector_json(v));
  return a;
}

Json matrix_json(const Matrix& M) {
  Json a = Json::array();
  for (int i = 0; i < M.rows(); ++i) a.push_back(vector_json(M.row(i)));
  return a;
}

Json matrices_json(const std::vector<Matrix>& Ms) {
  Json a = Json::array();
  for (const auto& M : Ms) a.push_back(matrix_json(M));
  return a;
}

Json answer_json(Tristate t) {
  if (t == Tristate::unknown) return "unknown";
  return t == Tristate::yes;
}

Json answer_json(PrimeAnswer a) {
  if (a == PrimeAnswer::unknown) return "unknown";
  return a == PrimeAnswer::prime;
}

void report_into(Json& r, const WitnessReport& rep) {
  Verdict v = rep.overall();
  r["verdict"] = to_string(v);
  Json checks = Json::array();
  for (const auto& c : rep.checks) checks.push_back({{"name", c.name}, {"verdict", to_string(c.verdict)}, {"witness", c.witness}});
  r["checks"] = checks;
  if (v == Verdict::unknown) r["status"] = "unknown";
}

Json pairs_json(const std::vector<DeltaPair>& pairs) {
  Json a = Json::array();
  for (const auto& p : pairs)
    a.push_back({{"elements", {p.i + 1, p.j + 1}},
                 {"common", p.common.to_string()},
                 {"delta", p.poly.to_string()},
                 {"remainder", p.remainder.to_string()}});
  return a;
}

// Option values of one parsed command. Positional arguments live under "@".
class Args {
 public:
  std::map<std::string, std::vector<std::string>> values;

  bool has(const std::string& name) const {
    auto it = values.find(name);
    return it != values.end() && !it->second.empty();
  }
  const std::vector<std::string>& all(const std::string& name) const {
    static const std::vector<std::string> none;
    auto it = values.find(name);
    return it == values.end() ? none : it->second;
  }
  const std::string& get(const std::string& name) const {
    const auto& v = all(name);
    if (v.empty()) throw PreconditionError("missing " + (name == "@" ? std::string("expression") : name));
    if (v.size() > 1) throw PreconditionError(name + " given more than once");
    return v[0];
  }
  int integer(const std::string& name) const {
    const std::string& s = get(name);
    try {
      std::size_t used = 0;
      int v = std::stoi(s, &used);
      if (used == s.size()) return v;
    } catch (const std::exception&) {
    }
    throw PreconditionError(name + ": expected an integer, got '" + s + "'");
  }
  // Positional arguments as one comma-joined list.
  std::string joined() const {
    std::string s;
    for (const auto& p : all("@")) s += (s.empty() ? "" : ", ") + p;
    return s;
  }
};

struct Env {
  const Args& args;
  Workspace ws;
  Budget budget;
  Session* session = nullptr;
  std::string session_path;
};

using Handler = std::function<void(Env&, Json&)>;

struct OptSpec {
  std::string name, help;
  bool required = false;
};

struct CommandSpec {
  std::string name, help, positional;  // positional empty when none
  std::vector<OptSpec> options;
  Handler run;
};

AutoreducedSet autoreduced(const DiffRing& R, const std::vector<Ast>& xs) { return make_autoreduced(R, polys(R, xs)); }

// n of the x block when the second list also carries a y block x_{n+1}..x_{2n}.
int paired_n(const Workspace& ws, const std::vector<Ast>& x, const std::vector<Ast>& xy) {
  if (ws.context().n) return *ws.context().n;
  return std::max(usage_of(x).n, (usage_of(xy).n + 1) / 2);
}

DVariety dvariety(Env& e, int extra_n = 0) {
  auto v = e.ws.list(e.args.has("--v") ? e.args.get("--v") : "", "--v");
  std::vector<std::vector<Ast>> secs;
  for (const auto& s : e.args.all("--section")) secs.push_back(e.ws.list(s, "--section"));
  if (secs.empty()) throw PreconditionError("--section: one section per derivation is required");
  e.ws.at_least_m(static_cast<int>(secs.size()));
  for (const auto& s : secs) e.ws.at_least_n(static_cast<int>(s.size()));
  e.ws.at_least_n(extra_n);
  if (e.ws.m() != static_cast<int>(secs.size()))
    throw PreconditionError("expected " + std::to_string(e.ws.m()) + " sections, got " + std::to_string(secs.size()));
  int n = e.ws.n();
  DiffRing R = e.ws.ring(n);
  DVariety D;
  D.n = n;
  D.v_generators = algebraic(polys(R, v), n);
  for (const auto& s : secs) {
    if (static_cast<int>(s.size()) != n)
      throw PreconditionError("--section: expected " + std::to_string(n) + " coordinates, got " + std::to_string(s.size()));
    D.sections.push_back(algebraic(polys(R, s), n));
  }
  return D;
}

std::vector<Ast> point_arg(Env& e) {
  auto a = e.ws.list(e.args.get("--at"), "--at");
  e.ws.at_least_n(static_cast<int>(a.size()));
  return a;
}

std::vector<Scalar> point_value(Env& e, const DiffRing& R, const std::vector<Ast>& a) {
  if (static_cast<int>(a.size()) != R.n())
    throw PreconditionError("--at: expected " + std::to_string(R.n()) + " coordinates, got " + std::to_string(a.size()));
  (void)e;
  return scalars(R, a, "--at");
}

DSigmaModule module_arg(Env& e, bool need_b = true) {
  std::vector<std::vector<std::vector<Ast>>> as;
  for (const auto& s : e.args.all("--A")) as.push_back(e.ws.matrix(s, "--A"));
  std::vector<std::vector<Ast>> b;
  if (need_b) b = e.ws.matrix(e.args.get("--B"), "--B");
  e.ws.at_least_m(static_cast<int>(as.size()));
  if (e.ws.m() != static_cast<int>(as.size()))
    throw PreconditionError("expected one --A per derivation (" + std::to_string(e.ws.m()) + "), got " +
                            std::to_string(as.size()));
  DiffRing R = e.ws.ring(1);
  DSigmaModule M;
  for (const auto& a : as) M.A.push_back(matrix_value(R, a, "--A"));
  if (need_b) M.B = matrix_value(R, b, "--B");
  M.d = need_b ? M.B.rows() : (M.A.empty() ? 0 : M.A[0].rows());
  return M;
}

std::vector<CommandSpec> commands() {
  std::vector<CommandSpec> cs;

  cs.push_back({"reduce", "Ritt reduction of an expression by an autoreduced set", "expr",
                {{"--by", "autoreduced set, comma separated", true}}, [](Env& e, Json& r) {
                  Ast g = e.ws.one(e.args.joined(), "expression");
                  auto by = e.ws.list(e.args.get("--by"), "--by");
                  DiffRing R = e.ws.ring(e.ws.n());
                  AutoreducedSet L = autoreduced(R, by);
                  DiffPoly gv = evaluate_expr(R, g);
                  ReductionResult res = ritt_reduce(R, gv, L);
                  DiffPoly H = res.multiplier(L);
                  r["set"] = strings(L.elements);
                  r["remainder"] = res.remainder.to_string();
                  Json cert = Json::array();
                  for (const auto& f : res.certificate)
                    cert.push_back({{f.kind == FactorKind::separant ? "sep" : "init", f.exponent}, {"element", f.index + 1}});
                  r["certificate"] = cert;
                  r["multiplier"] = H.to_string();
                  r["trace_terms"] = res.trace.size();
                  r["verified"] = H * gv - res.remainder == expand_trace(R, res, L);
                }});

  cs.push_back({"charset", "characteristic set by Ritt's process", "exprs", {}, [](Env& e, Json& r) {
                  auto xs = e.ws.list(e.args.joined(), "expression");
                  DiffRing R = e.ws.ring(e.ws.n());
                  try {
                    CharacteristicSetRun run = characteristic_set_run(R, polys(R, xs));
                    r["inconsistent"] = false;
                    r["charset"] = strings(run.set.elements);
                    r["rounds"] = run.rounds;
                  } catch (const InconsistentSystem& ex) {
                    r["inconsistent"] = true;
                    r["reason"] = ex.what();
                  }
                }});

  cs.push_back({"coherent?", "coherence of an autoreduced set", "exprs", {}, [](Env& e, Json& r) {
                  auto xs = e.ws.list(e.args.joined(), "expression");
                  DiffRing R = e.ws.ring(e.ws.n());
                  AutoreducedSet L = autoreduced(R, xs);
                  auto pairs = delta_pairs(R, L);
                  bool ok = true;
                  for (const auto& p : pairs) ok = ok && p.remainder.is_zero();
                  r["answer"] = ok;
                  r["set"] = strings(L.elements);
                  r["pairs"] = pairs_json(pairs);
                }});

  cs.push_back({"member?", "membership in [L] : H_L^oo", "expr",
                {{"--in", "autoreduced set L, comma separated", true}}, [](Env& e, Json& r) {
                  Ast g = e.ws.one(e.args.joined(), "expression");
                  auto in = e.ws.list(e.args.get("--in"), "--in");
                  DiffRing R = e.ws.ring(e.ws.n());
                  AutoreducedSet L = autoreduced(R, in);
                  SaturationMembership sm = saturation_member(R, evaluate_expr(R, g), L, e.budget);
                  r["answer"] = answer_json(sm.answer);
                  r["remainder"] = sm.reduction.remainder.to_string();
                  r["reason"] = sm.reason;
                  if (sm.answer == Tristate::unknown) r["status"] = "unknown";
                }});

  cs.push_back({"primechar?", "is an autoreduced set the characteristic set of a prime differential ideal", "exprs", {},
                [](Env& e, Json& r) {
                  auto xs = e.ws.list(e.args.joined(), "expression");
                  DiffRing R = e.ws.ring(e.ws.n());
                  AutoreducedSet L = autoreduced(R, xs);
                  PrimeCharEvidence ev = is_char_set_of_prime(R, L, e.budget);
                  bool unit = ev.saturation.size() == 1 && ev.saturation[0].is_constant();
                  r["answer"] = answer_json(ev.answer);
                  r["witness"] = ev.answer == Tristate::no && unit ? "saturation is unit ideal" : ev.reason;
                  r["coherent"] = ev.coherent;
                  r["algebraic"] = to_string(ev.algebraic);
                  r["variables"] = ev.variables;
                  r["saturation"] = strings(ev.saturation);
                  if (ev.answer == Tristate::unknown) r["status"] = "unknown";
                }});

  auto order_of = [](const Args& a) {
    if (!a.has("--order")) return MonomialOrder::grevlex();
    const std::string& o = a.get("--order");
    if (o == "grevlex") return MonomialOrder::grevlex();
    if (o == "lex") return MonomialOrder::lex();
    if (o == "deglex") return MonomialOrder::deglex();
    throw PreconditionError("--order: expected grevlex, lex or deglex, got '" + o + "'");
  };

  cs.push_back({"gb", "reduced Groebner basis of an ideal of Q(t)[x1..xn]", "exprs",
                {{"--order", "grevlex (default), lex or deglex"}}, [order_of](Env& e, Json& r) {
                  auto xs = e.ws.list(e.args.joined(), "expression");
                  int n = e.ws.n();
                  DiffRing R = e.ws.ring(n);
                  MonomialOrder o = order_of(e.args);
                  IdealBasis gb = groebner(IdealBasis(n, algebraic(polys(R, xs), n, o), o), e.budget);
                  r["order"] = e.args.has("--order") ? e.args.get("--order") : "grevlex";
                  r["basis"] = strings(gb.generators);
                }});

  cs.push_back({"member", "ideal membership with cofactors", "expr", {{"--in", "ideal generators", true}},
                [](Env& e, Json& r) {
                  Ast f = e.ws.one(e.args.joined(), "expression");
                  auto in = e.ws.list(e.args.get("--in"), "--in");
                  int n = e.ws.n();
                  DiffRing R = e.ws.ring(n);
                  Membership mem = ideal_member(algebraic(evaluate_expr(R, f), n), IdealBasis(n, algebraic(polys(R, in), n)),
                                                e.budget);
                  r["answer"] = mem.member;
                  r["cofactors"] = strings(mem.cofactors);
                }});

  cs.push_back({"saturate", "saturation I : h^oo", "exprs", {{"--by", "the polynomial h", true}}, [](Env& e, Json& r) {
                  auto xs = e.ws.list(e.args.joined(), "expression");
                  Ast h = e.ws.one(e.args.get("--by"), "--by");
                  int n = e.ws.n();
                  DiffRing R = e.ws.ring(n);
                  Saturation s = saturate(IdealBasis(n, algebraic(polys(R, xs), n)), algebraic(evaluate_expr(R, h), n), e.budget);
                  r["basis"] = strings(s.ideal.generators);
                  r["exponents"] = s.exponents;
                  r["exponent_bound"] = s.exponent_bound;
                }});

  cs.push_back({"prime?", "bounded primality test", "exprs", {}, [](Env& e, Json& r) {
                  auto xs = e.ws.list(e.args.joined(), "expression");
                  int n = e.ws.n();
                  DiffRing R = e.ws.ring(n);
                  PrimeResult p = is_prime_bounded(IdealBasis(n, algebraic(polys(R, xs), n)), e.budget);
                  r["answer"] = answer_json(p.answer);
                  r["reason"] = p.reason;
                  r["witness"] = strings(p.witness);
                  if (p.answer == PrimeAnswer::unknown) r["status"] = "unknown";
                }});

  cs.push_back({"vstar?", "is a point in V*(L) = V(L) minus V(H_L)", "",
                {{"--charset", "autoreduced set L", true}, {"--at", "point, comma separated", true}}, [](Env& e, Json& r) {
                  auto L = e.ws.list(e.args.get("--charset"), "--charset");
                  auto a = point_arg(e);
                  DiffRing R = e.ws.ring(e.ws.n());
                  r["answer"] = vstar_member(R, point_value(e, R, a), autoreduced(R, L));
                }});

  cs.push_back({"contain?", "V*(Gamma) inside V(L) x V(L^s); y_i is written x_{n+i}", "",
                {{"--lambda", "autoreduced set L in x1..xn", true}, {"--gamma", "autoreduced set Gamma in x1..x2n", true}},
                [](Env& e, Json& r) {
                  auto L = e.ws.list(e.args.get("--lambda"), "--lambda");
                  auto G = e.ws.list(e.args.get("--gamma"), "--gamma");
                  int n = paired_n(e.ws, L, G);
                  DiffRing R1 = e.ws.ring(n), R2 = e.ws.ring(2 * n);
                  report_into(r, containment_check(R2, autoreduced(R2, G), R1, autoreduced(R1, L), e.budget));
                }});

  cs.push_back({"axiom-verify", "hypotheses and witness of one instance of the geometric axiom", "",
                {{"--lambda", "autoreduced set L in x1..xn", true},
                 {"--gamma", "autoreduced set Gamma in x1..x2n", true},
                 {"--at", "the point a", true}},
                [](Env& e, Json& r) {
                  auto L = e.ws.list(e.args.get("--lambda"), "--lambda");
                  auto G = e.ws.list(e.args.get("--gamma"), "--gamma");
                  auto a = e.ws.list(e.args.get("--at"), "--at");
                  int n = e.ws.context().n ? *e.ws.context().n
                                           : std::max(paired_n(e.ws, L, G), static_cast<int>(a.size()));
                  DiffRing R1 = e.ws.ring(n), R2 = e.ws.ring(2 * n);
                  report_into(r, axiom_instance_verify(R1, autoreduced(R1, L), R2, autoreduced(R2, G),
                                                       point_value(e, R1, a), e.budget));
                }});

  cs.push_back({"power-trick", "reduce sigma^k to sigma on V~ and W~", "",
                {{"--v", "generators of V in x1..xn", true},
                 {"--w", "generators of W in x1..x2n", true},
                 {"--power", "the power k", true}},
                [](Env& e, Json& r) {
                  auto v = e.ws.list(e.args.get("--v"), "--v");
                  auto w = e.ws.list(e.args.get("--w"), "--w");
                  int k = e.args.integer("--power");
                  int n = paired_n(e.ws, v, w);
                  DiffRing R1 = e.ws.ring(n);
                  PowerTrick p = sigma_power_reduction(R1, polys(R1, v), polys(e.ws.ring(2 * n), w), k);
                  r["n"] = p.n;
                  r["k"] = p.k;
                  r["v_tilde"] = strings(p.v_tilde);
                  Json rows = Json::array();
                  for (std::size_t i = 0; i < p.w_tilde.size(); ++i)
                    rows.push_back({{"row", p.w_rows[i]}, {"poly", p.w_tilde[i].to_string()}});
                  r["w_tilde"] = rows;
                  r["pattern"] = strings(pattern_substitution(p));
                }});

  cs.push_back({"dvar?", "D-variety conditions for (V, s_1..s_m)", "",
                {{"--v", "generators of V"}, {"--section", "one per derivation: n coordinates, comma separated", true}},
                [](Env& e, Json& r) {
                  DVariety D = dvariety(e);
                  ScalarField F = e.ws.field();
                  WitnessReport rep = dvariety_check(F, D, e.budget);
                  for (const auto& c : integrability_check(F, D, e.budget).checks) rep.checks.push_back(c);
                  report_into(r, rep);
                }});

  cs.push_back({"sharp?", "is a point sharp: s_i(a) = delta_i(a)", "",
                {{"--v", "generators of V"}, {"--section", "one per derivation", true}, {"--at", "the point a", true}},
                [](Env& e, Json& r) {
                  auto a = point_arg(e);
                  DVariety D = dvariety(e);
                  DiffRing R = e.ws.ring(D.n);
                  r["answer"] = sharp_point_check(e.ws.field(), D, point_value(e, R, a));
                }});

  cs.push_back({"jet", "the r-th jet space of V at a", "",
                {{"--gens", "generators of V", true}, {"--at", "the point a", true}, {"--order", "jet order r", true}},
                [](Env& e, Json& r) {
                  auto g = e.ws.list(e.args.get("--gens"), "--gens");
                  auto a = point_arg(e);
                  int n = e.ws.n();
                  DiffRing R = e.ws.ring(n);
                  JetSubspace J = jet_space(algebraic(polys(R, g), n), n, point_value(e, R, a), e.args.integer("--order"));
                  r["dim"] = J.dimension();
                  r["ambient"] = J.ambient();
                  Json ops = Json::array();
                  for (const auto& o : J.operators) ops.push_back(jet_operator_name(o));
                  r["operators"] = ops;
                  r["equations"] = vectors_json(J.equations);
                  r["basis"] = vectors_json(J.basis);
                }});

  cs.push_back({"jet-sep", "first jet order separating two varieties at a", "",
                {{"--x", "generators of X", true},
                 {"--y", "generators of Y", true},
                 {"--at", "the point a", true},
                 {"--max-order", "largest order tried", true}},
                [](Env& e, Json& r) {
                  auto x = e.ws.list(e.args.get("--x"), "--x");
                  auto y = e.ws.list(e.args.get("--y"), "--y");
                  auto a = point_arg(e);
                  int n = e.ws.n();
                  DiffRing R = e.ws.ring(n);
                  JetSeparation s = jet_separate(algebraic(polys(R, x), n), algebraic(polys(R, y), n), n,
                                                 point_value(e, R, a), e.args.integer("--max-order"));
                  r["separated"] = s.separated;
                  r["order"] = s.order;
                }});

  cs.push_back({"dsmod-check", "commutation identities of a (Delta, sigma)-module", "",
                {{"--A", "matrix per derivation: rows ';', entries ','"}, {"--B", "the sigma matrix", true}},
                [](Env& e, Json& r) {
                  DSigmaModule M = module_arg(e);
                  report_into(r, check_commutation(e.ws.field(), M));
                }});

  cs.push_back({"dsmod-dual", "dual connection A* = -A^T", "", {{"--A", "matrix per derivation"}},
                [](Env& e, Json& r) {
                  DSigmaModule M = module_arg(e, false);
                  r["A"] = matrices_json(dual_module(M.A));
                }});

  cs.push_back({"dsmod-gauge", "gauge transform by P", "",
                {{"--A", "matrix per derivation"}, {"--B", "the sigma matrix", true}, {"--P", "invertible gauge matrix", true}},
                [](Env& e, Json& r) {
                  DSigmaModule M = module_arg(e);
                  Matrix P = matrix_value(e.ws.ring(1), e.ws.matrix(e.args.get("--P"), "--P"), "--P");
                  DSigmaModule G = gauge_transform(e.ws.field(), M, P);
                  r["A"] = matrices_json(G.A);
                  r["B"] = matrix_json(G.B);
                }});

  cs.push_back({"dsmod-sharp", "sharp solutions of a (Delta, sigma)-module", "",
                {{"--A", "matrix per derivation"},
                 {"--B", "the sigma matrix", true},
                 {"--candidate", "candidate sharp vector, comma separated"},
                 {"--verify", "matrix N to check as a fundamental sharp matrix"}},
                [](Env& e, Json& r) {
                  std::vector<std::vector<Ast>> cand;
                  for (const auto& c : e.args.all("--candidate")) cand.push_back(e.ws.list(c, "--candidate"));
                  std::vector<std::vector<Ast>> ver;
                  if (e.args.has("--verify")) ver = e.ws.matrix(e.args.get("--verify"), "--verify");
                  DSigmaModule M = module_arg(e);
                  ScalarField F = e.ws.field();
                  DiffRing R = e.ws.ring(1);
                  if (!ver.empty()) {
                    r["answer"] = sharp_verify(F, M, matrix_value(R, ver, "--verify"));
                    return;
                  }
                  std::optional<std::vector<Vector>> cs;
                  if (!cand.empty()) {
                    cs.emplace();
                    for (const auto& c : cand) cs->push_back(scalars(R, c, "--candidate"));
                  }
                  SharpSpace S = sharp_jet_space(F, M, cs);
                  r["dim"] = S.basis.size();
                  r["basis"] = vectors_json(S.basis);
                  r["complete"] = S.complete;
                  r["caveat"] = S.caveat;
                  if (!S.complete) r["status"] = "unknown";
                }});

  cs.push_back({"jet-module", "(Delta, sigma)-module on the r-th jet space at a sharp point", "",
                {{"--v", "generators of V"},
                 {"--section", "one per derivation", true},
                 {"--at", "the sharp point a", true},
                 {"--phi", "coordinates of phi : V -> V^s", true},
                 {"--order", "jet order r", true}},
                [](Env& e, Json& r) {
                  auto a = point_arg(e);
                  auto phi = e.ws.list(e.args.get("--phi"), "--phi");
                  DVariety D = dvariety(e, static_cast<int>(phi.size()));
                  DiffRing R = e.ws.ring(D.n);
                  ScalarField F = e.ws.field();
                  JetModule jm = jet_module(F, D, point_value(e, R, a), algebraic(polys(R, phi), D.n),
                                            e.args.integer("--order"), e.budget);
                  r["d"] = jm.module.d;
                  Json ops = Json::array();
                  for (const auto& o : jm.jets.operators) ops.push_back(jet_operator_name(o));
                  r["operators"] = ops;
                  r["jet_basis"] = vectors_json(jm.jets.basis);
                  Json std_names = Json::array();
                  for (const auto& s : jm.standard) std_names.push_back(mono_degree(s) == 0 ? "1" : jet_operator_name(s));
                  r["standard"] = std_names;
                  r["A"] = matrices_json(jm.module.A);
                  r["B"] = matrix_json(jm.module.B);
                  r["standard_A"] = matrices_json(jm.standard_module.A);
                  r["standard_B"] = matrix_json(jm.standard_module.B);
                  r["commutation"] = to_string(check_commutation(F, jm.module).overall());
                }});

  cs.push_back({"session-new", "create a session file holding the ring context", "file", {}, [](Env& e, Json& r) {
                  Session s;
                  s.context = e.ws.context();
                  std::string path = e.args.get("@");
                  s.save(path);
                  r["session"] = path;
                  r["context"] = s.to_json()["context"];
                }});

  cs.push_back({"bind", "bind NAME KIND TEXT in the session (KIND: poly, list, point, matrix)", "name kind text", {},
                [](Env& e, Json& r) {
                  if (!e.session) throw PreconditionError("bind needs --session FILE");
                  const auto& p = e.args.all("@");
                  if (p.size() != 3) throw PreconditionError("bind expects NAME KIND TEXT");
                  e.session->bind(p[0], p[1], p[2]);
                  r["name"] = p[0];
                  r["kind"] = p[1];
                  r["text"] = p[2];
                }});

  cs.push_back({"session-show", "print the session", "", {}, [](Env& e, Json& r) {
                  if (!e.session) throw PreconditionError("session-show needs --session FILE");
                  r["session"] = e.session->to_json();
                }});

  return cs;
}

Json error_json(const std::string& kind, const std::string& message, std::optional<int> column = std::nullopt) {
  Json err = {{"kind", kind}, {"message", message}};
  if (column) err["column"] = *column;
  return err;
}

// Removes a global option from args; returns its value.
std::optional<std::string> take_option(std::vector<std::string>& args, const std::string& name) {
  std::optional<std::string> value;
  for (std::size_t i = 0; i < args.size();) {
    if (args[i] == "--") break;
    if (args[i] == name) {
      if (i + 1 >= args.size()) throw PreconditionError(name + " needs a value");
      value = args[i + 1];
      args.erase(args.begin() + static_cast<long>(i), args.begin() + static_cast<long>(i) + 2);
    } else if (args[i].rfind(name + "=", 0) == 0) {
      value = args[i].substr(name.size() + 1);
      args.erase(args.begin() + static_cast<long>(i));
    } else {
      ++i;
    }
  }
  return value;
}

bool take_flag(std::vector<std::string>& args, const std::string& name) {
  bool found = false;
  for (std::size_t i = 0; i < args.size();) {
    if (args[i] == "--") break;
    if (args[i] == name) {
      found = true;
      args.erase(args.begin() + static_cast<long>(i));
    } else {
      ++i;
    }
  }
  return found;
}

int size_flag(const std::string& name, const std::string& v) {
  try {
    std::size_t used = 0;
    int x = std::stoi(v, &used);
    if (used == v.size() && x >= 0) return x;
  } catch (const std::exception&) {
  }
  throw PreconditionError(name + ": expected a nonnegative integer, got '" + v + "'");
}

void merge_size(std::optional<int>& slot, const std::optional<std::string>& flag, const std::string& name) {
  if (!flag) return;
  int v = size_flag(name, *flag);
  if (slot && *slot != v)
    throw PreconditionError(name + " " + std::to_string(v) + " conflicts with the session value " + std::to_string(*slot));
  slot = v;
}

std::string join_args(const std::vector<std::string>& args) {
  std::string s;
  for (const auto& a : args) {
    bool quote = a.empty() || a.find_first_of(" \t\"'") != std::string::npos;
    s += (s.empty() ? "" : " ") + (quote ? "\"" + a + "\"" : a);
  }
  return s;
}

}  // namespace

Outcome run(std::vector<std::string> args) {
  Outcome out;
  std::string name = "kolchin";
  for (const auto& a : args)
    if (!a.empty() && a[0] != '-') {
      name = a;
      break;
    }
  Json& r = out.result;
  r["command"] = name;
  r["status"] = "ok";
  std::vector<std::string> original = args;
  try {
    take_flag(args, "--json");
    auto session_path = take_option(args, "--session");
    auto n = take_option(args, "--n"), m = take_option(args, "--m"), k = take_option(args, "--k");
    auto shift = take_option(args, "--shift");

    std::optional<Session> session;
    if (session_path && name != "session-new") session = Session::load(*session_path);
    Context ctx = session ? session->context : Context{};
    merge_size(ctx.n, n, "--n");
    merge_size(ctx.m, m, "--m");
    merge_size(ctx.k, k, "--k");
    if (shift) {
      auto s = parse_shifts(*shift);
      if (session && !session->context.shifts.empty() && session->context.shifts != s)
        throw PreconditionError("--shift conflicts with the session value");
      ctx.shifts = s;
    }
    if (session && name != "bind")
      for (std::size_t i = 1; i < args.size(); ++i) args[i] = session->expand(args[i]);

    CLI::App app("Differential-difference algebra toolkit", "kolchin");
    app.require_subcommand(1);
    app.footer(
        "Global options (anywhere on the line): --json, --session FILE, --n N, --m M, --k K, --shift c1,...,ck.\n"
        "Unset sizes are inferred from the input. KOLCHIN_BUDGET=degree=D,basis=B,pairs=P overrides\n"
        "the Groebner budgets. Exit codes: 0 definite answer, 2 unknown, 1 error.");
    std::vector<CommandSpec> specs = commands();
    std::map<std::string, Args> parsed;
    for (const auto& spec : specs) {
      CLI::App* sub = app.add_subcommand(spec.name, spec.help);
      Args& a = parsed[spec.name];
      if (!spec.positional.empty()) sub->add_option("args", a.values["@"], spec.positional);
      for (const auto& o : spec.options) {
        auto* opt = sub->add_option(o.name, a.values[o.name], o.help)->allow_extra_args(false);
        if (o.required) opt->required();
      }
    }
    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
      app.parse(rev);
    } catch (const CLI::CallForHelp& e) {
      std::ostringstream os;
      app.exit(e, os, os);
      out.text = os.str();
      return out;
    } catch (const CLI::ParseError& e) {
      r["status"] = "error";
      r["error"] = error_json("usage", e.what());
      out.exit_code = 1;
      return out;
    }
    const CommandSpec* spec = nullptr;
    for (const auto& s : specs)
      if (app.got_subcommand(s.name)) spec = &s;
    Env env{parsed[spec->name], Workspace(ctx), Budget::defaults(), session ? &*session : nullptr,
            session_path.value_or("")};
    spec->run(env, r);
    if (session) {
      session->history.push_back(join_args(original));
      session->save(*session_path);
    }
  } catch (const SyntaxError& e) {
    r["status"] = "error";
    r["error"] = error_json("syntax", e.what(), e.column());
  } catch (const BudgetExceeded& e) {
    r["status"] = "unknown";
    r["reason"] = std::string("budget exceeded: ") + e.what();
  } catch (const DivisionByZero& e) {
    r["status"] = "error";
    r["error"] = error_json("division_by_zero", e.what());
  } catch (const InconsistentSystem& e) {
    r["status"] = "error";
    r["error"] = error_json("inconsistent", e.what());
  } catch (const Error& e) {
    r["status"] = "error";
    r["error"] = error_json("precondition", e.what());
  } catch (const Json::exception& e) {
    r["status"] = "error";
    r["error"] = error_json("session", e.what());
  }
  const std::string status = r["status"];
  out.exit_code = status == "ok" ? 0 : status == "unknown" ? 2 : 1;
  return out;
}

std::vector<std::string> split_command_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool in_word = false;
  char quote = 0;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quote) {
      if (c == quote) quote = 0;
      else if (c == '\\' && quote == '"' && i + 1 < line.size()) cur += line[++i];
      else cur += c;
    } else if (c == '"' || c == '\'') {
      quote = c;
      in_word = true;
    } else if (std::isspace(static_cast<unsigned char>(c))) {
      if (in_word) out.push_back(cur);
      cur.clear();
      in_word = false;
    } else {
      cur += c;
      in_word = true;
    }
  }
  if (quote) throw PreconditionError("unterminated quote");
  if (in_word) out.push_back(cur);
  return out;
}

void run_batch(std::istream& in, std::ostream& out, bool json_only) {
  std::string line;
  while (std::getline(in, line)) {
    std::size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    Outcome o;
    try {
      std::vector<std::string> args;
      if (line[first] == '[') args = Json::parse(line).get<std::vector<std::string>>();
      else args = split_command_line(line);
      o = run(args);
    } catch (const std::exception& e) {
      o.result = {{"command", "batch"}, {"status", "error"}, {"error", error_json("usage", e.what())}};
      o.exit_code = 1;
    }
    std::string body = o.text.empty() ? o.result.dump() : Json(o.text).dump();
    if (json_only) {
      out << body << "\n";
    } else {
      out << "$ " << line.substr(first) << "\n" << body << "\nexit " << o.exit_code << "\n";
    }
  }
}

int main(int argc, char** argv, std::ostream& out) {
  std::vector<std::string> args(argv + 1, argv + argc);
  bool json = take_flag(args, "--json");
  if (!args.empty() && args[0] == "batch") {
    if (args.size() > 2) {
      out << Json({{"command", "batch"}, {"status", "error"}, {"error", error_json("usage", "batch takes at most one file")}}).dump()
          << "\n";
      return 1;
    }
    if (args.size() == 1 || args[1] == "-") {
      run_batch(std::cin, out, json);
      return 0;
    }
    std::ifstream f(args[1]);
    if (!f) {
      out << Json({{"command", "batch"}, {"status", "error"}, {"error", error_json("io", "cannot read " + args[1])}}).dump()
          << "\n";
      return 1;
    }
    run_batch(f, out, json);
    return 0;
  }
  Outcome o = run(args);
  if (!o.text.empty()) out << o.text;
  else out << (json ? o.result.dump() : o.result.dump(2)) << "\n";
  return o.exit_code;
}

// Session.

Json Session::to_json() const {
  Json ctx = Json::object();
  if (context.n) ctx["n"] = *context.n;
  if (context.m) ctx["m"] = *context.m;
  if (context.k) ctx["k"] = *context.k;
  Json shifts = Json::array();
  for (const auto& s : context.shifts) shifts.push_back(s.get_str());
  ctx["shift"] = shifts;
  Json b = Json::object();
  for (const auto& [name, v] : bindings) b[name] = {{"kind", v.kind}, {"text", v.text}};
  return {{"format", "kolchin-session"}, {"version", 1}, {"context", ctx}, {"bindings", b}, {"history", history}};
}

Session Session::from_json(const Json& j) {
  if (j.value("format", "") != "kolchin-session") throw PreconditionError("not a session file");
  Session s;
  const Json& ctx = j.at("context");
  if (ctx.contains("n")) s.context.n = ctx["n"].get<int>();
  if (ctx.contains("m")) s.context.m = ctx["m"].get<int>();
  if (ctx.contains("k")) s.context.k = ctx["k"].get<int>();
  for (const auto& v : ctx.value("shift", Json::array())) s.context.shifts.emplace_back(v.get<std::string>());
  for (auto& c : s.context.shifts) c.canonicalize();
  for (const auto& [name, v] : j.at("bindings").items()) {
    // re-check on load so a hand-edited file cannot smuggle in bad bindings
    s.bind(name, v.at("kind").get<std::string>(), v.at("text").get<std::string>());
  }
  s.history = j.value("history", std::vector<std::string>{});
  return s;
}

Session Session::load(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw PreconditionError("cannot read session " + path);
  return from_json(Json::parse(f));
}

void Session::save(const std::string& path) const {
  std::ofstream f(path);
  if (!f) throw PreconditionError("cannot write session " + path);
  f << to_json().dump(2) << "\n";
}

void Session::bind(const std::string& name, const std::string& kind, const std::string& text) {
  if (name.empty() || !(std::isalpha(static_cast<unsigned char>(name[0])) || name[0] == '_'))
    throw PreconditionError("binding names start with a letter or '_'");
  for (char c : name)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) throw PreconditionError("bad binding name '" + name + "'");
  std::string expanded = expand(text);
  Workspace ws(context);
  if (kind == "poly") {
    Ast a = ws.one(expanded, name);
    evaluate_expr(ws.ring(ws.n()), a);
  } else if (kind == "list" || kind == "point") {
    auto xs = ws.list(expanded, name);
    DiffRing R = ws.ring(ws.n());
    if (kind == "list") polys(R, xs);
    else scalars(R, xs, name);
  } else if (kind == "matrix") {
    auto rows = ws.matrix(expanded, name);
    matrix_value(ws.ring(1), rows, name);
  } else {
    throw PreconditionError("binding kind must be poly, list, point or matrix, got '" + kind + "'");
  }
  bindings[name] = {kind, expanded};
}

std::string Session::expand(const std::string& arg) const {
  std::string out;
  for (std::size_t i = 0; i < arg.size();) {
    if (arg[i] != '$') {
      out += arg[i++];
      continue;
    }
    std::size_t j = i + 1;
    while (j < arg.size() && (std::isalnum(static_cast<unsigned char>(arg[j])) || arg[j] == '_')) ++j;
    std::string name = arg.substr(i + 1, j - i - 1);
    auto it = bindings.find(name);
    if (it == bindings.end()) throw PreconditionError("unbound name $" + name);
    out += it->second.kind == "poly" ? "(" + it->second.text + ")" : it->second.text;
    i = j;
  }
  return out;
}

}  // namespace kolchin::cli
