#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace anfold::jet {

/** Enumeration of all exponent tuples with total degree <= `degree` in
 *  `vars` variables.  The order is graded: total degree ascending, and inside
 *  one degree the tuples are sorted lexicographically descending, so powers of
 *  earlier variables come first (x^2, x y, x z, y^2, y z, z^2, ...).
 *  The order is part of the on-disk and canonical-form contracts, so it must
 *  never change.
 */
class MonomialBasis {
public:
    MonomialBasis(int vars, int degree);

    int vars() const { return vars_; }
    int degree() const { return degree_; }
    int size() const { return static_cast<int>(exps_.size()); }

    const std::vector<int>& exponents(int idx) const { return exps_.at(idx); }
    int degree_of(int idx) const { return degs_.at(idx); }

    /// Index of an exponent tuple, or -1 when it exceeds the degree bound.
    int index_of(const std::vector<int>& e) const;

    bool operator==(const MonomialBasis& o) const {
        return vars_ == o.vars_ && degree_ == o.degree_;
    }

private:
    std::uint64_t key_of(const std::vector<int>& e) const;

    int vars_;
    int degree_;
    std::vector<std::vector<int>> exps_;
    std::vector<int> degs_;
    std::unordered_map<std::uint64_t, int> lookup_;
};

/** Dense truncated polynomial (a jet) with real coefficients.  Coefficients
 *  are monomial coefficients, not derivative values; the k-th derivative at 0
 *  is coeff * k!.  All arithmetic truncates at the basis degree.
 */
class Jet {
public:
    Jet(int vars, int degree);

    static Jet constant(int vars, int degree, double value);
    static Jet variable(int vars, int degree, int which, double scale = 1.0);

    int vars() const { return basis_.vars(); }
    int degree() const { return basis_.degree(); }
    const MonomialBasis& basis() const { return basis_; }

    double coeff(const std::vector<int>& e) const;
    void set_coeff(const std::vector<int>& e, double value);
    void add_coeff(const std::vector<int>& e, double value);

    double coeff_at(int idx) const { return c_.at(idx); }
    void set_coeff_at(int idx, double value) { c_.at(idx) = value; }
    int term_count() const { return static_cast<int>(c_.size()); }

    Jet& operator+=(const Jet& o);
    Jet& operator-=(const Jet& o);
    Jet& operator*=(double s);
    friend Jet operator+(Jet a, const Jet& b) { return a += b; }
    friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
    friend Jet operator*(Jet a, double s) { return a *= s; }
    friend Jet operator*(double s, Jet a) { return a *= s; }

    /// Truncated product.
    Jet mul(const Jet& o) const;

    /// Truncated power with non-negative integer exponent.
    Jet pow(int k) const;

    /// Substitute each variable i by subs[i].  All subs must share one basis,
    /// which becomes the basis of the result.
    Jet compose(const std::vector<Jet>& subs) const;

    /// Partial derivative with respect to one variable (degree bound kept).
    Jet derivative(int var) const;

    /// Multiply the coefficient of every monomial by prod_i signs[i]^e_i.
    /// Used for parity substitutions x_i -> signs[i] * x_i with signs = +-1.
    Jet flip_signs(const std::vector<int>& signs) const;

    /// Multiplicative inverse as a truncated series; requires a constant term
    /// bounded away from zero.
    Jet reciprocal() const;

    double eval(const std::vector<double>& x) const;

    double max_abs() const;

    /// True when all coefficients are below `tol` in magnitude.
    bool is_zero(double tol) const;

private:
    MonomialBasis basis_;
    std::vector<double> c_;
};

}  // namespace anfold::jet
