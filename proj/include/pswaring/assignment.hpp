#pragma once

#include <vector>

namespace pswaring {

// Minimum-cost perfect matching on a square cost matrix (Hungarian method,
// O(n^3)). Returns the total cost; match[i] = column assigned to row i.
double assignment_cost(const std::vector<std::vector<double>>& cost, std::vector<int>* match = nullptr);

}  // namespace pswaring
