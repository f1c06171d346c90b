#pragma once

#include "anfold/periods.hpp"
#include "anfold/poly.hpp"

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <vector>

namespace anfold::symmetry {

/** Parameter involution: for odd n it flips lambda_j with odd j; for even n
 *  it flips h and lambda_j with even j.  It corresponds to the coordinate
 *  reversal q -> -q of the fiber polynomial (up to an overall sign for even
 *  n), so it maps the swallowtail domain onto itself and reverses the cycle
 *  numbering.  Requires n >= 2.
 */
std::pair<double, std::vector<double>> psi(int n, double h, std::span<const double> lambda);
poly::UnfoldingPoly psi(const poly::UnfoldingPoly& p);

/// Action-space companion of psi: magnitudes reversed, slot types unchanged.
periods::ActionVector chi(const periods::ActionVector& a);

/// Quasi-homogeneous parameter scaling, h -> c^(2(n+1)) h,
/// lambda_j -> c^(2(n+1-j)) lambda_j.  c must be positive.
std::pair<double, std::vector<double>> scaling_psi_c(double c, int n, double h,
                                                     std::span<const double> lambda);
poly::UnfoldingPoly scaling_psi_c(double c, const poly::UnfoldingPoly& p);

/// Action-space companion of the scaling: every magnitude times c^(n+3).
periods::ActionVector scaling_chi_c(double c, const periods::ActionVector& a);

/** Point of the complexified phase space of the canonical family: unfolding
 *  parameters lambda, conjugate torus coordinates' momenta mu, and the
 *  distinguished (p, q) plane.
 */
struct PhasePoint {
    std::vector<std::complex<double>> lambda;  // n-1 entries
    std::vector<std::complex<double>> mu;      // n-1 entries
    std::complex<double> p;
    std::complex<double> q;
};

/** Phase-space involution covering psi.  Odd n:
 *    (lambda_j, mu_j, p, q) -> ((-1)^j lambda_j, (-1)^j mu_j, -p, -q),
 *  an involution.  Even n:
 *    (lambda_j, mu_j, p, q) -> ((-1)^(j+1) lambda_j, (-1)^j i mu_j, i p, -q),
 *  of order four.
 */
PhasePoint phase_involution(int n, const PhasePoint& x);

/** Energy-momentum values of the canonical family at a phase point:
 *  component 0 is eta p^2 + q^{n+1} + sum lambda_j q^j, the rest copy lambda.
 *  Composing with phase_involution must reproduce psi on these values.
 */
std::vector<std::complex<double>> canonical_energy_momentum(int n, int eta,
                                                            const PhasePoint& x);

/// Max residual |F(Psi(x)) - psi(F(x))| over seeded random complex samples.
double check_involution_compatibility(int n, int eta, int samples, std::uint64_t seed);

/// Max relative equivariance residual ||chi(I(x)) - I(psi(x))|| / ||I(x)||
/// over the given Interior sample, canonical weight.
double check_equivariance(int n, int eta, const std::vector<poly::UnfoldingPoly>& sample,
                          const periods::QuadratureSpec& spec = {});

/** Integral cycle lattice of the critical fiber with the standard A_n
 *  pairing, <d_k, d_k> = -2 and <d_k, d_(k+1)> = +1.  Reflections use the
 *  general formula s_k(x) = x - 2 <x, d_k>/<d_k, d_k> d_k, so they are
 *  involutive in either sign convention.
 */
struct CycleLattice {
    int rank = 0;
    Eigen::MatrixXi pairing;

    static CycleLattice a_n(int n);

    int pair(const Eigen::VectorXi& x, const Eigen::VectorXi& y) const;
    Eigen::VectorXi reflect(int k, const Eigen::VectorXi& x) const;  // k is 1-based
};

/** Breadth-first orbit of the middle basis cycle d_(floor(n/2)+1) under all
 *  Picard-Lefschetz reflections.  The orbit is the full root system of A_n
 *  (n(n+1) vectors); monodromy acts transitively, so every +-d_k appears.
 */
std::vector<Eigen::VectorXi> monodromy_orbit(int n);

/// True when +d_k and -d_k lie in the orbit for every k = 1..n.
bool orbit_covers_generators(int n, const std::vector<Eigen::VectorXi>& orbit);

}  // namespace anfold::symmetry
