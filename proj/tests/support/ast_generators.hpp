#pragma once

#include <algorithm>

#include "generators.hpp"
#include "kolchin/expr.hpp"

namespace kolchin::proptest {

inline Ast random_ast(proptest::Gen& g, int depth) {
  if (depth == 0 || g.coin(0.25)) {
    switch (g.uniform(0, 2)) {
      case 0: return Ast::number(g.uniform(0, 40));
      case 1: return Ast::tvar(g.uniform(1, 3));
      default: return Ast::xvar(g.uniform(1, 3));
    }
  }
  using K = Ast::Kind;
  switch (g.uniform(0, 7)) {
    case 0: return Ast::unary(K::neg, random_ast(g, depth - 1));
    case 1: return Ast::binary(K::add, random_ast(g, depth - 1), random_ast(g, depth - 1));
    case 2: return Ast::binary(K::sub, random_ast(g, depth - 1), random_ast(g, depth - 1));
    case 3: return Ast::binary(K::mul, random_ast(g, depth - 1), random_ast(g, depth - 1));
    case 4: return Ast::binary(K::div, random_ast(g, depth - 1), random_ast(g, depth - 1));
    case 5: return Ast::unary(K::pow, random_ast(g, depth - 1), 0, g.uniform(-3, 3));
    case 6: return Ast::unary(K::deriv, random_ast(g, depth - 1), g.uniform(1, 3), g.uniform(1, 3));
    default: return Ast::unary(K::shift, random_ast(g, depth - 1), 0, g.uniform(-2, 2));
  }
}

inline int depth(const Ast& a) {
  int d = 0;
  for (const auto& c : a.children) d = std::max(d, depth(c));
  return d + 1;
}

}  // namespace kolchin::proptest
