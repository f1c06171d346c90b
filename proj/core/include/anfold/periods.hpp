#pragma once

#include "anfold/poly.hpp"
#include "anfold/swallowtail.hpp"

#include <Eigen/Dense>

#include <complex>
#include <span>
#include <stdexcept>
#include <vector>

namespace anfold::periods {

/// Thrown when an operation needs an Interior parameter point.
struct NotInteriorError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Thrown when the refinement ladder exhausts max_refinements.
struct QuadratureError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct QuadratureSpec {
    int node_count = 32;          ///< initial Gauss-Legendre node count, >= 8
    double target_rel_tol = 1e-10;
    int max_refinements = 12;     ///< node doublings allowed

    void validate() const;
};

/** Polynomial weight density g(p, q, lambda).  Only even powers of p
 *  contribute to cycle integrals (odd powers cancel between the two momentum
 *  branches); the fiber primitive below integrates g over the momentum
 *  interval analytically.  The normalization requires g(0,0,0) > 0.
 */
class WeightFunction {
public:
    struct Term {
        int p_exp = 0;
        int q_exp = 0;
        std::vector<int> lambda_exp;  // exponents for lambda_1..lambda_m
        double coeff = 0.0;
    };

    WeightFunction(int lambda_vars, std::vector<Term> terms);

    static WeightFunction constant(double value);

    int lambda_vars() const { return lambda_vars_; }
    const std::vector<Term>& terms() const { return terms_; }
    bool is_constant_one() const;

    /// Pointwise evaluation contract (real momentum).
    double eval(double p, double q, std::span<const double> lambda) const;

    /** Primitive of the even part over the momentum fiber:
     *  real cycles integrate int_0^s g_even(u, q, lambda) du, imaginary
     *  cycles int_0^s g_even(i u, q, lambda) du (real valued, since only even
     *  powers of p survive).
     */
    double fiber_primitive(double s, bool imaginary, double q,
                           std::span<const double> lambda) const;

    /// d/ds of fiber_primitive: g_even at momentum s (or i s).
    double fiber_density(double s, bool imaginary, double q,
                         std::span<const double> lambda) const;

    /// d/dlambda_j of fiber_primitive at frozen (s, q); j is 1-based.
    double fiber_primitive_dlambda(int j, double s, bool imaginary, double q,
                                   std::span<const double> lambda) const;

private:
    int lambda_vars_;
    std::vector<Term> terms_;
};

/** Action magnitudes a_k > 0 over the vanishing cycles of an Interior point.
 *  Real cycles carry the value a_k, imaginary cycles the value i a_k.
 */
struct ActionVector {
    int n = 1;
    int eta = +1;
    std::vector<double> magnitudes;  // index k-1 holds a_k

    bool real_cycle(int k) const { return swallowtail::cycle_type(n, eta, k).real; }
    std::complex<double> value(int k) const;
    Eigen::VectorXd as_vector() const;
};

/// Cycle-periodic integrals of the weighted area form, one magnitude per
/// vanishing cycle, each refined until successive node doublings agree to
/// spec.target_rel_tol (sup norm, relative to the vector magnitude).
ActionVector action_vector(const poly::UnfoldingPoly& p, const WeightFunction& g,
                           const QuadratureSpec& spec = {});

/// Analytic Jacobian d a_k / d(h, lambda_1..lambda_{n-1}), an n x n matrix;
/// rows follow cycles, column 0 is the h derivative.
Eigen::MatrixXd action_jacobian(const poly::UnfoldingPoly& p, const WeightFunction& g,
                                const QuadratureSpec& spec = {});

/// Determinant of the n x n matrix of chord integrals
///   int_{z_{k+1}}^{z_{k+2}} q^j dq / sqrt(eta (1 - q^{n+1})),
/// over straight chords joining consecutive (by principal argument) roots of
/// q^{n+1} = 1.  Only the modulus is convention independent; tests pin |D|.
std::complex<double> limit_determinant(int n, int eta, const QuadratureSpec& spec = {});

struct CyclePoint {
    std::complex<double> p;
    double q = 0.0;
};

/// `count` evenly spread phase-space samples tracing vanishing cycle k; the
/// momentum is real on real cycles and purely imaginary on imaginary ones,
/// and vanishes at the two root endpoints.
std::vector<CyclePoint> cycle_points(const poly::UnfoldingPoly& p, int k, int count);

}  // namespace anfold::periods
