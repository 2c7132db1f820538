#pragma once

#include <random>
#include <string>

#include "seed/math_node.hpp"

namespace seed::testing {

// Random expression trees over x, y, z, small rationals, pi, e and the
// arithmetic/function kinds the parser emits. Depth-bounded.
class TreeFuzzer {
 public:
  explicit TreeFuzzer(std::uint64_t seed) : rng_(seed) {}

  Node tree(int depth = 4) {
    if (depth <= 0 || pick(10) < 3) return leaf();
    switch (pick(9)) {
      case 0:
      case 1:
        return Node::add(children(depth));
      case 2:
      case 3:
        return Node::mul(children(depth));
      case 4:
      case 5:
        return Node::pow(tree(depth - 1), exponent());
      case 6:
        return Node::mul({tree(depth - 1), Node::pow(tree(depth - 1), Node::number(-1))});
      case 7: {
        static const char* const fns[] = {"sin", "cos", "abs", "f", "arctan"};
        return Node::function(fns[pick(5)], {tree(depth - 1)});
      }
      default:
        return Node::mul({Node::number(-1), tree(depth - 1)});
    }
  }

  Node leaf() {
    switch (pick(8)) {
      case 0: return Node::number(make_rational(static_cast<long>(pick(9)) - 4, 1 + static_cast<long>(pick(3))));
      case 1: return Node::number(static_cast<long>(pick(5)) + 1);
      case 2: return Node::constant(pick(2) ? "pi" : "e");
      default: {
        static const char* const names[] = {"x", "y", "z"};
        return Node::symbol(names[pick(3)]);
      }
    }
  }

  std::size_t pick(std::size_t n) { return static_cast<std::size_t>(rng_() % n); }
  std::mt19937_64& rng() { return rng_; }

 private:
  std::vector<Node> children(int depth) {
    std::vector<Node> out;
    const std::size_t n = 2 + pick(2);
    for (std::size_t k = 0; k < n; ++k) out.push_back(tree(depth - 1));
    return out;
  }

  Node exponent() {
    static const long nums[][2] = {{2, 1}, {3, 1}, {-1, 1}, {-2, 1}, {1, 2}, {-1, 2}, {3, 2}, {1, 3}};
    if (pick(10) == 0) return Node::symbol("x");
    const auto& e = nums[pick(8)];
    return Node::number(make_rational(e[0], e[1]));
  }

  std::mt19937_64 rng_;
};

}  // namespace seed::testing
