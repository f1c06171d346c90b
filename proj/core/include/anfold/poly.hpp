#pragma once

#include <complex>
#include <span>
#include <vector>

namespace anfold::poly {

/** Parameter point of the unfolded fiber family.  The fiber polynomial is
 *      Q(q) = q^{n+1} + sum_{j=1}^{n-1} lambda_j q^j - h,
 *  so the q^n coefficient is absent (balanced roots, sum zero) and h enters
 *  as the energy value.  eta = +-1 is the momentum signature of the
 *  Hamiltonian eta p^2 + q^{n+1} + sum lambda_j q^j; even n forces eta = +1.
 */
struct UnfoldingPoly {
    int n = 1;
    int eta = +1;
    double h = 0.0;
    std::vector<double> lambda;  // lambda[j-1] multiplies q^j, j = 1..n-1

    UnfoldingPoly(int n_, int eta_, double h_, std::vector<double> lambda_);

    /// Monic coefficient vector c[0..n+1] with Q(q) = sum c[j] q^j.
    std::vector<double> coefficients() const;

    /// Largest coefficient magnitude, floored at 1 (tolerance scaling).
    double coeff_scale() const;
};

/** Roots of Q with multiplicities.  Distinct roots are stored once; real
 *  roots come first in ascending order, then non-real roots ordered by
 *  (real part, imaginary part).  `residual` is the largest |Q(root)| over
 *  the distinct roots divided by the coefficient scale; it flags
 *  ill-conditioned inputs.
 */
struct RootProfile {
    std::vector<std::complex<double>> roots;
    std::vector<int> multiplicity;
    std::vector<bool> real_mask;
    double residual = 0.0;

    int distinct_count() const { return static_cast<int>(roots.size()); }
    int total_count() const;
    int real_count_with_multiplicity() const;
    bool all_real() const;
    bool all_simple() const;
    int max_multiplicity() const;

    /// Real roots in ascending order, each repeated by multiplicity.
    std::vector<double> real_roots_ascending() const;
};

/// Companion-matrix eigenvalues refined by one simultaneous Newton sweep,
/// then clustered: roots closer than tol^(1/m) (m the cluster size, relative
/// to the coefficient scale) merge into one root of multiplicity m.
RootProfile roots_sorted(const UnfoldingPoly& poly, double tol = 1e-9);

/// Discriminant of Q computed as a resultant of (Q, Q'); the sign convention
/// makes it positive exactly when all n+1 roots are real and simple.
double discriminant(const UnfoldingPoly& poly);

/// Recover (h, lambda) from a strictly increasing balanced root tuple of
/// length n+1 (sum zero within tol * scale).  Inverse of roots_sorted on the
/// open swallowtail domain.
UnfoldingPoly parametrize_from_roots(std::span<const double> roots, int eta = +1,
                                     double tol = 1e-9);

/// Horner evaluation of Q at a complex argument.
std::complex<double> evaluate(const UnfoldingPoly& poly, std::complex<double> q);

/// Derivative Q'(q), Horner evaluation.
std::complex<double> evaluate_derivative(const UnfoldingPoly& poly, std::complex<double> q);

}  // namespace anfold::poly
