#pragma once

#include <vector>

namespace anfold::quad {

struct GaussLegendre {
    std::vector<double> nodes;    // on (-1, 1), ascending
    std::vector<double> weights;  // positive, sum 2
};

/// Nodes and weights of the m-point Gauss-Legendre rule on [-1, 1].
/// Results are cached per size; thread safe.
const GaussLegendre& gauss_legendre(int m);

}  // namespace anfold::quad
