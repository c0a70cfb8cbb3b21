#pragma once

#include <cstddef>
#include <vector>

namespace ginibre::quad {

struct Rule {
    std::vector<double> nodes;    // on (-1, 1), ascending
    std::vector<double> weights;  // sum = 2
};

// Gauss-Legendre rule of order n (cached, thread-safe).
const Rule& gauss_legendre(int n);

// Nodes/weights mapped to [a, b].
Rule mapped_rule(int n, double a, double b);

}  // namespace ginibre::quad
