#pragma once

#include "anfold/germs.hpp"
#include "anfold/jet.hpp"
#include "anfold/periods.hpp"
#include "anfold/poly.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace anfold::normalform {

/// Newton inversion of the period mapping failed even with continuation.
struct NewtonDiverged : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Least-squares germ fit has a rank-deficient or near-singular design matrix.
struct IllConditionedFit : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/** Truncated Taylor data of a Hamiltonian family H(x, y; eps) around the
 *  origin, in variables (x, y, eps_1..eps_{n-1}).  `n` is the order the
 *  family claims; the classifier verifies it against the jet itself.
 */
struct JetFamily {
    int n;
    jet::Jet H;

    JetFamily(int n_, jet::Jet H_);
    int param_count() const { return n - 1; }
    int degree() const { return H.degree(); }
};

enum class JetCondition {
    None,
    CriticalPoint,   // gradient at the origin does not vanish
    HessianRank,     // quadratic part vanishes entirely
    Order,           // first surviving pure power of y does not match n
    Transversality,  // parameter directions do not unfold independently
};

std::string condition_name(JetCondition c);

struct JetDiagnostics {
    double jet_scale = 0.0;            // max |coefficient| of the input
    double gradient_norm = 0.0;        // |dH(0)| at eps = 0
    double hessian_eigs[2] = {0.0, 0.0};  // eigenvalues of the (x,y) Hessian, ascending
    int hessian_rank = 0;
    int detected_order = 0;            // first m with d_y^{m+1} != 0 after reduction
    double leading_coeff = 0.0;        // that coefficient, after sign normalization
    double order_residual = 0.0;       // largest lower-order pure-y coefficient, relative
    double transversality_sigma = 0.0; // smallest singular value of the parameter matrix
};

struct SingularityClass {
    bool accepted = false;
    JetCondition failed = JetCondition::None;
    int n = 0;    // detected order; 0 when no order could be read off
    int eta = 0;  // sign of the quadratic term after normalization; 0 when unknown
    germs::GermMap lambda0;  // unfolding parameters as germs in eps, once recovered
    bool lambda0_known = false;
    JetDiagnostics diag;

    SingularityClass() : lambda0(1, 0, 1) {}
    std::string label() const;
};

/** Checks the claimed order of a jet family: criticality, quadratic rank, the
 *  mixed-term elimination and pure-power conditions, the sign normalizations,
 *  and the parameter transversality matrix.  Thresholds are relative to the
 *  jet magnitude times tol.  The verdict is accepted only when the detected
 *  order equals fam.n and every condition holds.
 */
SingularityClass classify_jet(const JetFamily& fam, double tol = 1e-9);

struct MatchReport {
    germs::GermMap phi;               // fitted parameter germ, source n, target n
    double max_match_residual = 0.0;  // sup over the grid of the action mismatch
    double fit_residual = 0.0;        // sup over the grid of |phi(x) - y(x)|
    double linear_det = 0.0;          // determinant of the fitted linear part
    int non_interior_images = 0;      // grid points phi maps outside the domain

    MatchReport() : phi(1, 1, 1) {}
};

using TargetFunction = std::function<Eigen::VectorXd(const poly::UnfoldingPoly&)>;

/** Newton inversion of the canonical (unit weight) period mapping: parameters
 *  y with actions(y) = target, warm started at `start`.  Steps are damped and
 *  kept inside the swallowtail interior; on divergence the solve restarts
 *  along the geometric scaling family from a shrunken copy of the problem.
 */
poly::UnfoldingPoly invert_actions(const Eigen::VectorXd& target, const poly::UnfoldingPoly& start,
                                   const periods::QuadratureSpec& quad = {}, double tol = 1e-12);

/** Recover the parameter change phi with actions(phi(x)) = target(x) on the
 *  grid: per-point Newton inversion followed by a polynomial least-squares
 *  fit of total degree 1..fit_degree with phi(0) = 0.
 */
MatchReport period_match_targets(const TargetFunction& target, int n, int eta,
                                 const std::vector<poly::UnfoldingPoly>& grid,
                                 const periods::QuadratureSpec& quad, int fit_degree,
                                 double tol = 1e-10);

/// period_match_targets with target(x) = the weighted action vector of x.
MatchReport period_match(const periods::WeightFunction& g, int n, int eta,
                         const std::vector<poly::UnfoldingPoly>& grid,
                         const periods::QuadratureSpec& quad, int fit_degree,
                         double tol = 1e-10);

struct CollapsePath {
    int branch = 0;                      // index of the merging root pair
    double final_branch_magnitude = 0.0; // a_branch at the last path point
    double min_other_magnitude = 0.0;    // smallest other magnitude along the path
    bool tail_monotone = false;          // a_branch strictly decreasing on the tail
};

struct ProbeReport {
    int sample_count = 0;
    int collision_count = 0;     // equal action vectors at separated parameters
    double min_ratio = 0.0;      // min (action distance / parameter distance)
    bool magnitudes_positive = false;
    bool jacobian_sign_constant = false;
    int jacobian_sign = 0;
    std::vector<CollapsePath> paths;
};

/** Numerical injectivity probe of the period mapping: pairwise separation of
 *  action vectors on interior samples, positivity of all magnitudes, sign
 *  constancy of the Jacobian determinant, and collapse of the k-th magnitude
 *  along paths approaching the k-th boundary facet.
 */
ProbeReport injectivity_probe(int n, int eta, const periods::WeightFunction& g, int sample_count,
                              const periods::QuadratureSpec& quad = {},
                              std::uint64_t seed = 2024, double delta = 1e-3);

/// Interior points drifting toward Branch(k): roots k and k+1 close in
/// geometrically (down to a gap of about 1e-3) while the others stay put.
std::vector<poly::UnfoldingPoly> branch_collapse_path(int n, int eta, int k, int steps,
                                                      std::uint64_t seed = 2024);

}  // namespace anfold::normalform
