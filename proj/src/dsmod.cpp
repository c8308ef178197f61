#include "kolchin/dsmod.hpp"

namespace kolchin {

Matrix derive(const ScalarField& field, const Matrix& m, int i) {
  return m.map([&](const Scalar& c) { return field.derive(c, i); });
}

Matrix shift(const ScalarField& field, const Matrix& m, int power) {
  return m.map([&](const Scalar& c) { return field.shift(c, power); });
}

Vector derive(const ScalarField& field, const Vector& v, int i) {
  Vector out;
  for (const auto& c : v) out.push_back(field.derive(c, i));
  return out;
}

Vector shift(const ScalarField& field, const Vector& v, int power) {
  Vector out;
  for (const auto& c : v) out.push_back(field.shift(c, power));
  return out;
}

namespace {

void check_shape(const ScalarField& field, const DSigmaModule& M) {
  if (static_cast<int>(M.A.size()) != field.m()) throw PreconditionError("need one matrix per derivation");
  for (const auto& a : M.A)
    if (a.rows() != M.d || a.cols() != M.d) throw PreconditionError("A matrices must be d x d");
  if (M.B.rows() != M.d || M.B.cols() != M.d) throw PreconditionError("B must be d x d");
}

std::string mismatch(const Matrix& lhs, const Matrix& rhs) { return lhs.to_string() + " vs " + rhs.to_string(); }

}  // namespace

WitnessReport check_delta_commutation(const ScalarField& field, const std::vector<Matrix>& A) {
  WitnessReport rep;
  for (std::size_t i = 0; i < A.size(); ++i)
    for (std::size_t j = i + 1; j < A.size(); ++j) {
      Matrix lhs = derive(field, A[i], static_cast<int>(j) + 1) - derive(field, A[j], static_cast<int>(i) + 1);
      Matrix rhs = A[i] * A[j] - A[j] * A[i];
      bool ok = lhs == rhs;
      rep.add("uset " + std::to_string(i + 1) + "," + std::to_string(j + 1), ok ? Verdict::pass : Verdict::fail,
              ok ? "" : mismatch(lhs, rhs));
    }
  return rep;
}

WitnessReport check_commutation(const ScalarField& field, const DSigmaModule& M) {
  check_shape(field, M);
  WitnessReport rep = check_delta_commutation(field, M.A);
  bool invertible = !determinant(M.B).is_zero();
  rep.add("det B nonzero", invertible ? Verdict::pass : Verdict::fail);
  for (std::size_t i = 0; i < M.A.size(); ++i) {
    int di = static_cast<int>(i) + 1;
    Matrix lhs = M.B * shift(field, M.A[i]);
    Matrix rhs = derive(field, M.B, di) + M.A[i] * M.B;
    bool ok = lhs == rhs;
    rep.add("useg " + std::to_string(di), ok ? Verdict::pass : Verdict::fail, ok ? "" : mismatch(lhs, rhs));
  }
  Matrix Bi = invertible ? inverse(M.B) : Matrix();
  for (std::size_t i = 0; i < M.A.size() && invertible; ++i) {
    int di = static_cast<int>(i) + 1;
    Matrix lhs = Bi * M.A[i];
    Matrix rhs = derive(field, Bi, di) + shift(field, M.A[i]) * Bi;
    bool ok = lhs == rhs;
    rep.add("usec " + std::to_string(di), ok ? Verdict::pass : Verdict::fail, ok ? "" : mismatch(lhs, rhs));
  }
  return rep;
}

DSigmaModule make_module(const ScalarField& field, std::vector<Matrix> A, Matrix B, bool unchecked) {
  DSigmaModule M{B.rows(), std::move(A), std::move(B)};
  check_shape(field, M);
  if (determinant(M.B).is_zero()) throw PreconditionError("B must be invertible");
  if (!unchecked) {
    WitnessReport rep = check_commutation(field, M);
    for (const auto& c : rep.checks)
      if (c.verdict != Verdict::pass) throw PreconditionError("commutation identity " + c.name + " fails: " + c.witness);
  }
  return M;
}

std::vector<Matrix> dual_module(const std::vector<Matrix>& A) {
  std::vector<Matrix> out;
  for (const auto& a : A) out.push_back(-a.transpose());
  return out;
}

DSigmaModule gauge_transform(const ScalarField& field, const DSigmaModule& M, const Matrix& P) {
  check_shape(field, M);
  if (P.rows() != M.d || P.cols() != M.d) throw PreconditionError("gauge matrix must be d x d");
  Matrix Pi = inverse(P);
  DSigmaModule out{M.d, {}, Pi * M.B * shift(field, P)};
  for (std::size_t i = 0; i < M.A.size(); ++i)
    out.A.push_back(Pi * M.A[i] * P + Pi * derive(field, P, static_cast<int>(i) + 1));
  return out;
}

bool is_sharp_vector(const ScalarField& field, const DSigmaModule& M, const Vector& v) {
  check_shape(field, M);
  if (static_cast<int>(v.size()) != M.d) throw PreconditionError("vector must have d entries");
  if (M.B * shift(field, v) != v) return false;
  for (std::size_t i = 0; i < M.A.size(); ++i) {
    Vector dv = derive(field, v, static_cast<int>(i) + 1);
    Vector av = M.A[i] * v;
    for (int k = 0; k < M.d; ++k)
      if (!(dv[k] + av[k]).is_zero()) return false;
  }
  return true;
}

bool sharp_verify(const ScalarField& field, const DSigmaModule& M, const Matrix& N) {
  check_shape(field, M);
  if (N.rows() != M.d || N.cols() != M.d) throw PreconditionError("N must be d x d");
  if (determinant(N).is_zero()) return false;
  if (M.B * shift(field, N) != N) return false;
  for (std::size_t i = 0; i < M.A.size(); ++i)
    if (!(derive(field, N, static_cast<int>(i) + 1) + M.A[i] * N).is_zero()) return false;
  return true;
}

namespace {

bool constant_module(const ScalarField& field, const DSigmaModule& M) {
  auto constant = [&](const Matrix& m) {
    for (int i = 0; i < m.rows(); ++i)
      for (int j = 0; j < m.cols(); ++j)
        if (!field.is_constant(m(i, j))) return false;
    return true;
  };
  if (!constant(M.B)) return false;
  for (const auto& a : M.A)
    if (!constant(a)) return false;
  return true;
}

}  // namespace

SharpSpace sharp_solve_constant(const ScalarField& field, const DSigmaModule& M) {
  check_shape(field, M);
  if (!constant_module(field, M)) throw PreconditionError("sharp_solve_constant needs constant entries");
  Matrix stacked(M.d * (1 + static_cast<int>(M.A.size())), M.d);
  Matrix BI = M.B - Matrix::identity(M.d);
  for (int i = 0; i < M.d; ++i)
    for (int j = 0; j < M.d; ++j) {
      stacked(i, j) = BI(i, j);
      for (std::size_t k = 0; k < M.A.size(); ++k) stacked((static_cast<int>(k) + 1) * M.d + i, j) = M.A[k](i, j);
    }
  SharpSpace s;
  s.basis = kernel(stacked);
  s.complete = static_cast<int>(s.basis.size()) == M.d;
  if (!s.complete)
    s.caveat = "only " + std::to_string(s.basis.size()) + " of " + std::to_string(M.d) +
               " constant sharp vectors; a full sharp basis exists only over a difference-differentially closed field";
  return s;
}

SharpSpace sharp_jet_space(const ScalarField& field, const DSigmaModule& M,
                           const std::optional<std::vector<Vector>>& candidates) {
  if (constant_module(field, M)) return sharp_solve_constant(field, M);
  if (!candidates) throw PreconditionError("non-constant module: sharp vectors can only be verified from candidates");
  std::vector<Vector> ok;
  for (const auto& v : *candidates)
    if (is_sharp_vector(field, M, v)) ok.push_back(v);
  SharpSpace s;
  s.basis = row_space(ok, M.d);
  s.complete = static_cast<int>(s.basis.size()) == M.d;
  s.caveat = "verified " + std::to_string(ok.size()) + " of " + std::to_string(candidates->size()) + " candidates";
  return s;
}

namespace {

Mono unit(int n, int k) {
  Mono e(n, 0);
  e[k] = 1;
  return e;
}

}  // namespace

JetModule jet_module(const ScalarField& field, const DVariety& D, const std::vector<Scalar>& a,
                     const std::vector<CPoly>& phi, int r, const Budget& budget) {
  const int n = D.n;
  if (r < 1) throw PreconditionError("jet order must be at least 1");
  if (static_cast<int>(phi.size()) != n) throw PreconditionError("phi must have n coordinates");
  if (!sharp_point_check(field, D, a)) throw PreconditionError("a is not a sharp point of the D-variety");
  for (int k = 0; k < n; ++k)
    if (phi[k].evaluate(a) != field.shift(a[k], 1)) throw PreconditionError("phi(a) differs from sigma(a)");

  IdealBasis V = D.v_generators.empty() ? IdealBasis(n, {}) : groebner(IdealBasis(n, D.v_generators), budget);
  auto in_v = [&](const CPoly& p) { return D.v_generators.empty() ? p.is_zero() : ideal_contains(V, p); };
  auto shift_poly = [&](const CPoly& p) {
    return p.map_coefficients([&](const Scalar& c) { return field.shift(c, 1); });
  };
  for (const auto& g : D.v_generators)
    if (!in_v(shift_poly(g).compose(phi)))
      throw PreconditionError("phi does not map V into V^sigma: " + g.to_string());
  // phi intertwines s and s^sigma
  for (int i = 1; i <= field.m(); ++i)
    for (int k = 0; k < n; ++k) {
      CPoly lhs = phi[k].map_coefficients([&](const Scalar& c) { return field.derive(c, i); });
      for (int j = 0; j < n; ++j) lhs += phi[k].derivative(j) * D.sections[i - 1][j];
      CPoly rhs = shift_poly(D.sections[i - 1][k]).compose(phi);
      if (!in_v(lhs - rhs)) throw PreconditionError("phi is not a morphism of D-varieties (coordinate " +
                                                   std::to_string(k + 1) + ", derivation " + std::to_string(i) + ")");
    }

  JetModule out;
  out.jets = jet_space(D.v_generators, n, a, r);

  // J = (generators in u = x - a) + (u)^{r+1}
  std::vector<CPoly> jgens;
  for (const auto& g : D.v_generators) jgens.push_back(recenter(g, a));
  for (const auto& e : jet_operators(n, r + 1))
    if (mono_degree(e) == r + 1) jgens.push_back(CPoly::monomial(e, Scalar(1)));
  IdealBasis J = groebner(IdealBasis(n, jgens), budget);
  for (const auto& e : jet_operators(n, r)) {
    bool standard = true;
    for (const auto& g : J.generators)
      if (mono_divides(g.leading_monomial(), e)) {
        standard = false;
        break;
      }
    if (standard) out.standard.push_back(e);
  }
  const int d = static_cast<int>(out.standard.size());
  if (d != out.jets.dimension()) throw Error("jet module: basis size disagrees with the jet space dimension");

  auto coords = [&](const CPoly& p) {
    CPoly nf = normal_form(p, J);
    Vector v;
    for (const auto& e : out.standard) v.push_back(nf.coefficient(e));
    return v;
  };

  // delta_i on M/(I + M^{r+1}): delta_i(u_k) = s_i^k(a + u) - delta_i(a_k)
  std::vector<Matrix> Dm;
  for (int i = 1; i <= field.m(); ++i) {
    std::vector<CPoly> du;
    for (int k = 0; k < n; ++k)
      du.push_back(recenter(D.sections[i - 1][k], a) - CPoly::constant(n, field.derive(a[k], i)));
    std::vector<Vector> cols;
    for (const auto& e : out.standard) {
      CPoly img(n);
      for (int k = 0; k < n; ++k)
        if (e[k] > 0) img += CPoly::monomial(mono_div(e, unit(n, k)), Scalar(e[k])) * du[k];
      cols.push_back(coords(img));
    }
    Dm.push_back(Matrix::from_columns(cols, d));
  }

  // phi^*((y - sigma a)^beta) = (phi(a + u) - sigma a)^beta
  std::vector<CPoly> pu;
  for (int k = 0; k < n; ++k) pu.push_back(recenter(phi[k], a) - CPoly::constant(n, field.shift(a[k], 1)));
  std::vector<Vector> gcols;
  for (const auto& e : out.standard) {
    CPoly img = CPoly::constant(n, Scalar(1));
    for (int k = 0; k < n; ++k) img = img * pu[k].pow(e[k]);
    gcols.push_back(coords(img));
  }
  Matrix G = Matrix::from_columns(gcols, d);
  if (determinant(G).is_zero()) throw PreconditionError("the r-jet of phi at a is not invertible");

  out.standard_module = DSigmaModule{d, dual_module(Dm), inverse(G.transpose())};

  // kernel-basis coordinates: column c of P is jets.basis[c] read on the
  // standard monomials
  Matrix P(d, d);
  for (int c = 0; c < d; ++c)
    for (int b = 0; b < d; ++b) {
      int idx = 0;
      while (out.jets.operators[idx] != out.standard[b]) ++idx;
      P(b, c) = out.jets.basis[c][idx];
    }
  out.module = d == 0 ? out.standard_module : gauge_transform(field, out.standard_module, P);
  return out;
}

}  // namespace kolchin
