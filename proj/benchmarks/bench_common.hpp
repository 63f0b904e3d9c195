#pragma once

#include <random>

#include "hysnet/network.hpp"

// Complete graph on n nodes minus the driven pair, random parameters.
inline hysnet::SpringNetwork dense_network(int n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> par(0.5, 3.0);
  std::vector<hysnet::Spring> s;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      if (!(i == 1 && j == n)) s.push_back({i, j, par(rng), par(rng)});
  return hysnet::SpringNetwork(n, std::move(s));
}
