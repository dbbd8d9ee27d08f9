#include "pswaring/assignment.hpp"

#include <limits>
#include <stdexcept>

namespace pswaring {

double assignment_cost(const std::vector<std::vector<double>>& cost, std::vector<int>* match) {
  const int n = int(cost.size());
  if (n == 0) return 0.0;
  for (const auto& row : cost)
    if (int(row.size()) != n) throw std::invalid_argument("assignment_cost: matrix not square");

  constexpr double inf = std::numeric_limits<double>::infinity();
  // Potentials over rows/columns with a dummy 0 index.
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<int> p(n + 1, 0), way(n + 1, 0);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<double> minv(n + 1, inf);
    std::vector<bool> used(n + 1, false);
    do {
      used[j0] = true;
      const int i0 = p[j0];
      double delta = inf;
      int j1 = 0;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0);
  }

  if (match) {
    match->assign(n, -1);
    for (int j = 1; j <= n; ++j)
      if (p[j] > 0) (*match)[p[j] - 1] = j - 1;
  }
  double total = 0.0;
  for (int j = 1; j <= n; ++j) total += cost[p[j] - 1][j - 1];
  return total;
}

}  // namespace pswaring
