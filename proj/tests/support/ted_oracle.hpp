#pragma once

#include <cstdint>
#include <vector>

#include "seed/math_node.hpp"

namespace seed::testing {

// Exhaustive minimum over all valid edit mappings (one-to-one, ancestor- and
// sibling-order-preserving). Unit insert/delete, rename 1 within a kind,
// 2 across kinds. Exponential; meant for trees of at most ~7 nodes.
std::int64_t brute_force_ted(const Node& a, const Node& b);

// Every ordered tree with 1..max_nodes nodes, each node labelled from
// {x, y, 2}. Deterministic order.
std::vector<Node> enumerate_trees(int max_nodes);

}  // namespace seed::testing
