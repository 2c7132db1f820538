#include "seed/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "seed/errors.hpp"

namespace seed {

std::vector<long double> average_ranks(const std::vector<long double>& x) {
  std::vector<std::size_t> order(x.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
  std::vector<long double> rank(x.size());
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j + 1 < order.size() && x[order[j + 1]] == x[order[i]]) ++j;
    const long double avg = (static_cast<long double>(i) + static_cast<long double>(j)) / 2 + 1;
    for (std::size_t k = i; k <= j; ++k) rank[order[k]] = avg;
    i = j + 1;
  }
  return rank;
}

long double spearman(const std::vector<long double>& x, const std::vector<long double>& y) {
  if (x.size() != y.size()) throw DegenerateInput("lists differ in length");
  if (x.size() < 2) throw DegenerateInput("need at least two points");
  for (long double v : x) if (!std::isfinite(v)) throw DegenerateInput("non-finite value");
  for (long double v : y) if (!std::isfinite(v)) throw DegenerateInput("non-finite value");
  const auto rx = average_ranks(x);
  const auto ry = average_ranks(y);
  const long double n = static_cast<long double>(x.size());
  const long double mx = std::accumulate(rx.begin(), rx.end(), 0.0L) / n;
  const long double my = std::accumulate(ry.begin(), ry.end(), 0.0L) / n;
  long double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  if (sxx == 0 || syy == 0) throw DegenerateInput("a list is constant");
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0L, 1.0L);
}

}  // namespace seed
