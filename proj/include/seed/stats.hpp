#pragma once

#include <vector>

namespace seed {

// Ranks 1..n with ties sharing their average rank.
std::vector<long double> average_ranks(const std::vector<long double>& x);

// Pearson correlation of average ranks. Throws DegenerateInput on unequal
// lengths, fewer than two points, or a constant list.
long double spearman(const std::vector<long double>& x, const std::vector<long double>& y);

}  // namespace seed
