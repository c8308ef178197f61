#include "kolchin/jets.hpp"

#include <functional>

namespace kolchin {

std::vector<Mono> jet_operators(int n, int r) {
  std::vector<Mono> out;
  for (int d = 1; d <= r; ++d) {
    // lex-descending exponent vectors of total degree d
    Mono e(n, 0);
    std::function<void(int, int)> rec = [&](int i, int left) {
      if (i == n - 1) {
        e[i] = left;
        out.push_back(e);
        return;
      }
      for (int k = left; k >= 0; --k) {
        e[i] = k;
        rec(i + 1, left - k);
      }
    };
    rec(0, d);
  }
  return out;
}

std::string jet_operator_name(const Mono& alpha) {
  std::string s;
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    if (alpha[i] == 0) continue;
    if (!s.empty()) s += "*";
    s += default_var_name(static_cast<int>(i));
    if (alpha[i] > 1) s += "^" + std::to_string(alpha[i]);
  }
  return s;
}

CPoly recenter(const CPoly& p, const std::vector<Scalar>& a) {
  int n = p.nvars();
  if (static_cast<int>(a.size()) != n) throw PreconditionError("point must have n coordinates");
  std::vector<CPoly> shifted;
  for (int i = 0; i < n; ++i) shifted.push_back(CPoly::variable(n, i) + CPoly::constant(n, a[i]));
  return p.compose(shifted);
}

Vector taylor_row(const CPoly& p, const std::vector<Scalar>& a, const std::vector<Mono>& ops) {
  CPoly q = recenter(p, a);
  Vector row;
  row.reserve(ops.size());
  for (const auto& alpha : ops) row.push_back(q.coefficient(alpha));
  return row;
}

JetSubspace jet_space(const std::vector<CPoly>& gens, int n, const std::vector<Scalar>& a, int r) {
  if (r < 1) throw PreconditionError("jet order must be at least 1");
  if (static_cast<int>(a.size()) != n) throw PreconditionError("point must have n coordinates");
  JetSubspace J;
  J.point = a;
  J.order = r;
  J.operators = jet_operators(n, r);
  std::vector<Mono> multipliers{Mono(n, 0)};
  for (const auto& m : jet_operators(n, r - 1)) multipliers.push_back(m);
  std::vector<Vector> rows;
  for (const auto& f : gens) {
    if (f.nvars() != n) throw PreconditionError("generator in the wrong number of variables");
    if (!f.evaluate(a).is_zero()) throw PreconditionError("point is not on the variety: " + f.to_string());
    CPoly q = recenter(f, a);
    for (const auto& h : multipliers) {
      CPoly g = q.mul_term(h, Scalar(1));
      Vector row;
      for (const auto& alpha : J.operators) row.push_back(g.coefficient(alpha));
      rows.push_back(std::move(row));
    }
  }
  J.equations = row_space(rows, J.ambient());
  J.basis = kernel(J.equations.empty() ? Matrix(0, J.ambient()) : Matrix::from_rows(J.equations, J.ambient()));
  return J;
}

bool jet_include(const std::vector<CPoly>& x_gens, const std::vector<CPoly>& y_gens, int n,
                 const std::vector<Scalar>& a, int r, const Budget& budget) {
  if (!y_gens.empty()) {
    IdealBasis gb = x_gens.empty() ? IdealBasis(n, {}) : groebner(IdealBasis(n, x_gens), budget);
    for (const auto& g : y_gens) {
      bool in = x_gens.empty() ? g.is_zero() : ideal_contains(gb, g);
      if (!in) throw PreconditionError("X is not inside Y: " + g.to_string() + " is not in the ideal of X");
    }
  }
  JetSubspace jx = jet_space(x_gens, n, a, r);
  JetSubspace jy = jet_space(y_gens, n, a, r);
  return span_contains(jy.basis, jx.basis, jx.ambient());
}

JetSeparation jet_separate(const std::vector<CPoly>& x_gens, const std::vector<CPoly>& y_gens, int n,
                           const std::vector<Scalar>& a, int r_max) {
  if (r_max < 1) throw PreconditionError("jet order must be at least 1");
  for (int r = 1; r <= r_max; ++r) {
    JetSubspace jx = jet_space(x_gens, n, a, r);
    JetSubspace jy = jet_space(y_gens, n, a, r);
    int d = jx.ambient();
    if (!span_contains(jx.basis, jy.basis, d) || !span_contains(jy.basis, jx.basis, d)) return {true, r};
  }
  return {false, r_max};
}

}  // namespace kolchin
