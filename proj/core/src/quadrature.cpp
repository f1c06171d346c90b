#include "anfold/quadrature.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace anfold::quad {

namespace {

GaussLegendre build(int m) {
    GaussLegendre gl;
    gl.nodes.resize(m);
    gl.weights.resize(m);
    // Newton on P_m with the Chebyshev-based initial guess; roots come in
    // symmetric pairs, so only the upper half is iterated.
    for (int i = 0; i < (m + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (m + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 64; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= m; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = m * (x * p1 - p0) / (x * x - 1.0);
            double step = p1 / dp;
            x -= step;
            if (std::abs(step) < 1e-15) break;
        }
        double w = 2.0 / ((1.0 - x * x) * dp * dp);
        gl.nodes[m - 1 - i] = x;
        gl.weights[m - 1 - i] = w;
        gl.nodes[i] = -x;
        gl.weights[i] = w;
    }
    if (m % 2 == 1) {
        gl.nodes[m / 2] = 0.0;
        // weight already set by the loop's midpoint pass
    }
    return gl;
}

}  // namespace

const GaussLegendre& gauss_legendre(int m) {
    if (m < 1 || m > (1 << 20))
        throw std::invalid_argument("gauss_legendre: node count out of range");
    static std::mutex mu;
    static std::map<int, std::unique_ptr<GaussLegendre>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(m);
    if (it == cache.end())
        it = cache.emplace(m, std::make_unique<GaussLegendre>(build(m))).first;
    return *it->second;
}

}  // namespace anfold::quad
