#pragma once

// Brute-force reference implementations used only by tests. They share no
// code with the library beyond Instance accessors.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include "ucvrp/instance.hpp"

namespace ucvrp::ref {

// Minimum closed tour r -> subset -> r over all permutations.
inline double brute_tsp(const Instance& inst, std::vector<int> subset) {
  if (subset.empty()) {
    return 0.0;
  }
  std::sort(subset.begin(), subset.end());
  double best = std::numeric_limits<double>::infinity();
  do {
    double c = inst.cost(kDepot, subset.front()) + inst.cost(subset.back(), kDepot);
    for (std::size_t i = 0; i + 1 < subset.size(); ++i) {
      c += inst.cost(subset[i], subset[i + 1]);
    }
    best = std::min(best, c);
  } while (std::next_permutation(subset.begin(), subset.end()));
  return best;
}

// Minimum CVRP cost by enumerating every set partition of the customers.
inline double brute_cvrp(const Instance& inst) {
  const int n = inst.n();
  std::vector<std::vector<int>> blocks;
  double best = std::numeric_limits<double>::infinity();
  std::function<void(int, double)> go = [&](int v, double partial) {
    if (partial >= best) {
      return;
    }
    if (v > n) {
      double total = 0.0;
      for (const auto& b : blocks) {
        total += brute_tsp(inst, b);
      }
      best = std::min(best, total);
      return;
    }
    for (std::size_t i = 0; i < blocks.size(); ++i) {
      int load = inst.demand(v);
      for (const int u : blocks[i]) {
        load += inst.demand(u);
      }
      if (load <= inst.capacity()) {
        blocks[i].push_back(v);
        go(v + 1, partial);
        blocks[i].pop_back();
      }
    }
    blocks.push_back({v});
    go(v + 1, partial);
    blocks.pop_back();
  };
  go(1, 0.0);
  return best;
}

struct BruteEdge {
  int u, v;
  long long w;
};

// Maximum total weight over all matchings (not necessarily perfect).
inline long long brute_matching_weight(int vertices,
                                       const std::vector<BruteEdge>& edges) {
  long long best = 0;
  std::vector<bool> used(vertices, false);
  std::function<void(std::size_t, long long)> go = [&](std::size_t e,
                                                       long long w) {
    if (e == edges.size()) {
      best = std::max(best, w);
      return;
    }
    go(e + 1, w);
    const auto& ed = edges[e];
    if (!used[ed.u] && !used[ed.v]) {
      used[ed.u] = used[ed.v] = true;
      go(e + 1, w + ed.w);
      used[ed.u] = used[ed.v] = false;
    }
  };
  go(0, 0);
  return best;
}

// min c.x s.t. A x >= 1, x >= 0 by enumerating basic feasible solutions of
// the standard form [A | -I] with m rows. Only sensible for tiny LPs.
inline double brute_covering_lp(const std::vector<std::vector<int>>& rows_of_col,
                                const std::vector<double>& cost, int m) {
  const int ncols = static_cast<int>(cost.size());
  const int total = ncols + m;
  const auto entry = [&](int r, int var) -> double {
    if (var < ncols) {
      return std::find(rows_of_col[var].begin(), rows_of_col[var].end(), r) !=
                     rows_of_col[var].end()
                 ? 1.0
                 : 0.0;
    }
    return var - ncols == r ? -1.0 : 0.0;
  };
  double best = std::numeric_limits<double>::infinity();
  std::vector<int> pick(m);
  std::function<void(int, int)> choose = [&](int start, int depth) {
    if (depth == m) {
      std::vector<std::vector<double>> a(m, std::vector<double>(m + 1, 1.0));
      for (int r = 0; r < m; ++r) {
        for (int c = 0; c < m; ++c) {
          a[r][c] = entry(r, pick[c]);
        }
      }
      for (int c = 0; c < m; ++c) {
        int p = c;
        for (int r = c + 1; r < m; ++r) {
          if (std::abs(a[r][c]) > std::abs(a[p][c])) {
            p = r;
          }
        }
        if (std::abs(a[p][c]) < 1e-12) {
          return;
        }
        std::swap(a[p], a[c]);
        for (int r = 0; r < m; ++r) {
          if (r != c) {
            const double f = a[r][c] / a[c][c];
            for (int k = c; k <= m; ++k) {
              a[r][k] -= f * a[c][k];
            }
          }
        }
      }
      double obj = 0.0;
      for (int c = 0; c < m; ++c) {
        const double x = a[c][m] / a[c][c];
        if (x < -1e-9) {
          return;
        }
        if (pick[c] < ncols) {
          obj += cost[pick[c]] * x;
        }
      }
      best = std::min(best, obj);
      return;
    }
    for (int v = start; v < total; ++v) {
      pick[depth] = v;
      choose(v + 1, depth + 1);
    }
  };
  choose(0, 0);
  return best;
}

} // namespace ucvrp::ref
