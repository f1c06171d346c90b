#pragma once

#include "anfold/jet.hpp"

#include <Eigen/Dense>

#include <stdexcept>
#include <vector>

namespace anfold::germs {

/// Gradients too close to dependent for the lattice constructions.
struct DegenerateGradients : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Invariants compared at different truncation degrees.
struct DegreeMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Generating-germ list whose length disagrees with the critical-fiber count.
struct WrongListLength : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/** Polynomial mapping germ (R^a, 0) -> (R^b, 0), truncated at a total degree
 *  bound.  Source variables are ordered (h, lambda_1, ..., lambda_{a-1});
 *  coefficients follow the graded monomial order of jet::MonomialBasis.
 *  Constant terms are structurally zero.
 */
class GermMap {
public:
    GermMap(int source_dim, int target_dim, int degree);
    explicit GermMap(std::vector<jet::Jet> components);

    int source_dim() const { return source_dim_; }
    int target_dim() const { return static_cast<int>(comps_.size()); }
    int degree() const { return degree_; }

    const jet::Jet& component(int i) const { return comps_.at(i); }
    void set_component(int i, jet::Jet j);

    double coeff(int comp, const std::vector<int>& exponents) const;
    void set_coeff(int comp, const std::vector<int>& exponents, double value);

    /// Component-major concatenation of all coefficient arrays; the sequence
    /// the lexicographic "biggest germ" rule runs over.
    std::vector<double> coefficient_sequence() const;

    double max_abs() const;

    /// d f_i / d lambda_j at 0; rows follow components, columns the lambda
    /// variables (source indices 1..a-1).
    Eigen::MatrixXd lambda_gradient() const;

    /// Full linear part d f_i / d x_j at 0, b x a.
    Eigen::MatrixXd linear_part() const;

    GermMap operator+(const GermMap& o) const;
    GermMap scaled(double s) const;

    /** Order by the first coefficient differing by more than
     *  tol_rel * max(coefficient magnitude); the larger coefficient wins.
     *  Returns -1, 0, +1.
     */
    static int lex_compare(const GermMap& a, const GermMap& b, double tol_rel = 1e-9);

private:
    void validate();

    int source_dim_;
    int degree_;
    std::vector<jet::Jet> comps_;
};

/// Integer matrix with determinant +1 (exact integer arithmetic check).
struct UnimodularMatrix {
    Eigen::MatrixXi m;

    explicit UnimodularMatrix(Eigen::MatrixXi mat);
    static UnimodularMatrix identity(int dim);
    long long det() const;
    int dim() const { return static_cast<int>(m.rows()); }
};

/// Exact integer determinant by cofactor expansion (small matrices).
long long integer_determinant(const Eigen::MatrixXi& m);

/// Component mixing (A f)_i = sum_j a_ij f_j.
GermMap sl_act(const UnimodularMatrix& A, const GermMap& f);

/** Canonical SL-orbit representative of a germ with target dimension equal to
 *  the number of lambda variables.  Greedy shortest-vector basis of the
 *  lattice spanned by the lambda gradients (exhaustive enumeration inside a
 *  proven radius bound, all ties kept), restricted to coordinate matrices of
 *  determinant +1, final ties resolved by the lexicographic biggest-germ
 *  rule.  Returns the representative and the matrix that produces it.
 */
std::pair<GermMap, UnimodularMatrix> special_representative(const GermMap& f,
                                                            double tol = 1e-9);

/// f composed with the parameter involution (source-variable sign flips).
/// Defined for n >= 2; n = 1 flips the single source variable h.
GermMap compose_psi(const GermMap& f, int n);

/// Full canonical form: the special representative for even n, the
/// lexicographic max of the representatives of f and f-composed-with-psi
/// for odd n.
GermMap bracket_canonical(const GermMap& f, int n, double tol = 1e-9);

/** Shift a scalar germ S by integer multiples of 2 pi J_j so that its lambda
 *  gradient at 0, written in the basis of the J gradients, has coefficients
 *  in [0, 2 pi).  Returns the shifted germ and the integer shifts.
 */
std::pair<GermMap, std::vector<long>> normalize_generating(const GermMap& S, const GermMap& J,
                                                           int n, double tol = 1e-9);

/** Packaged semi-global invariant: canonical action germ, gluing permutation
 *  and the normalized generating-function germs, one per critical-fiber
 *  component.
 */
struct SemiGlobalInvariant {
    int n = 1;
    int eta = +1;
    int ell = 0;
    GermMap J_canonical;
    std::vector<int> beta;   // permutation of 1..ell
    std::vector<GermMap> S;  // ell entries, normalized

    SemiGlobalInvariant() : J_canonical(1, 0, 1) {}
};

SemiGlobalInvariant assemble_invariant(int n, int eta, const GermMap& J,
                                       std::vector<int> beta, std::vector<GermMap> S_list,
                                       double tol = 1e-9);

/// Coefficient-wise comparison at shared truncation degree; germs within
/// tol * scale match.  Throws DegreeMismatch for different degree bounds and
/// std::invalid_argument for different (n, eta).
bool invariants_equal(const SemiGlobalInvariant& x, const SemiGlobalInvariant& y,
                      double tol = 1e-9);

}  // namespace anfold::germs
