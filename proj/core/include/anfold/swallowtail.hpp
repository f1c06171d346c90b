#pragma once

#include "anfold/poly.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace anfold::swallowtail {

enum class RegionKind {
    Interior,        ///< n+1 distinct real roots
    Branch,          ///< exactly one real double root, all other roots real simple
    MultiDegenerate, ///< any other root collision (triple+, two doubles, complex double, ...)
    Exterior,        ///< all roots simple, at least one non-real pair
    Origin,          ///< (h, lambda) = 0
};

struct DomainClass {
    RegionKind kind = RegionKind::Exterior;
    /// For Branch: the double root occupies positions k, k+1 of the ascending
    /// real root list (1-based); 0 otherwise.
    int branch_index = 0;

    std::string label() const;
};

/// Classify a parameter point from its clustered root profile.
DomainClass classify_point(const poly::UnfoldingPoly& p, double tol = 1e-9);

struct CycleType {
    int index = 0;   ///< k = 1..n, cycle over [q_k, q_{k+1}]
    bool real = false;
};

/// Cycle k over [q_k, q_{k+1}] carries real momentum iff (-1)^(n+k) = eta.
CycleType cycle_type(int n, int eta, int k);

/// Number of real cycles, floor((n + eta) / 2).
int real_cycle_count(int n, int eta);

/// Count of connected components of the critical fiber minus the singular
/// point: 1 for even n, 1 - eta for odd n.
int ell(int n, int eta);

/// Deterministically sample `count` Interior parameter points with
/// ||(h, lambda)||_2 < radius, via balanced well-separated root tuples.
std::vector<poly::UnfoldingPoly> domain_sample(int n, int eta, double radius, int count,
                                               std::uint64_t seed);

/** Boundary growth report over a set of Interior points:
 *  lambda_{n-1} must be negative everywhere, lower-index coefficients obey
 *  |lambda_k| = O((-lambda_{n-1})^((n+1-k)/2)) and |h| =
 *  O((-lambda_{n-1})^((n+1)/2)).  The maxima of the scaled ratios are
 *  reported so tests can pin their boundedness along shrinking families.
 */
struct EstimateReport {
    bool lambda_last_all_negative = true;
    double max_lambda_ratio = 0.0;  ///< max over points and k <= n-2
    double max_h_ratio = 0.0;
};

EstimateReport estimate_check(const std::vector<poly::UnfoldingPoly>& points);

}  // namespace anfold::swallowtail
