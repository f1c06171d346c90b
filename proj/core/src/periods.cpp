#include "anfold/periods.hpp"

#include "anfold/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace anfold::periods {

namespace {

using cplx = std::complex<double>;
constexpr double kPi = std::numbers::pi;

double pow_int(double x, int e) {
    double r = 1.0;
    for (int i = 0; i < e; ++i) r *= x;
    return r;
}

/// Interior real roots or a NotInteriorError.
std::vector<double> interior_roots(const poly::UnfoldingPoly& p) {
    auto cls = swallowtail::classify_point(p);
    if (cls.kind != swallowtail::RegionKind::Interior) {
        std::ostringstream os;
        os << "action integrals need an Interior point, got " << cls.label();
        throw NotInteriorError(os.str());
    }
    return poly::roots_sorted(p).real_roots_ascending();
}

}  // namespace

void QuadratureSpec::validate() const {
    if (node_count < 8) throw std::invalid_argument("QuadratureSpec: node_count must be >= 8");
    if (target_rel_tol <= 0.0 || target_rel_tol >= 1.0)
        throw std::invalid_argument("QuadratureSpec: target_rel_tol must lie in (0, 1)");
    if (max_refinements < 0 || max_refinements > 20)
        throw std::invalid_argument("QuadratureSpec: max_refinements out of range");
}

WeightFunction::WeightFunction(int lambda_vars, std::vector<Term> terms)
    : lambda_vars_(lambda_vars), terms_(std::move(terms)) {
    if (lambda_vars_ < 0) throw std::invalid_argument("WeightFunction: negative lambda count");
    double origin = 0.0;
    for (const Term& t : terms_) {
        if (t.p_exp < 0 || t.q_exp < 0)
            throw std::invalid_argument("WeightFunction: negative exponent");
        if (static_cast<int>(t.lambda_exp.size()) != lambda_vars_)
            throw std::invalid_argument("WeightFunction: lambda exponent tuple length mismatch");
        bool at_origin = (t.p_exp == 0 && t.q_exp == 0);
        for (int e : t.lambda_exp) {
            if (e < 0) throw std::invalid_argument("WeightFunction: negative exponent");
            if (e > 0) at_origin = false;
        }
        if (at_origin) origin += t.coeff;
    }
    if (!(origin > 0.0))
        throw std::invalid_argument("WeightFunction: g(0,0,0) must be positive");
}

WeightFunction WeightFunction::constant(double value) {
    return WeightFunction(0, {Term{0, 0, {}, value}});
}

bool WeightFunction::is_constant_one() const {
    double origin = 0.0;
    for (const Term& t : terms_) {
        bool constant = t.p_exp == 0 && t.q_exp == 0;
        for (int e : t.lambda_exp) constant = constant && e == 0;
        if (!constant && t.coeff != 0.0) return false;
        if (constant) origin += t.coeff;
    }
    return origin == 1.0;
}

double WeightFunction::eval(double p, double q, std::span<const double> lambda) const {
    if (static_cast<int>(lambda.size()) < lambda_vars_)
        throw std::invalid_argument("WeightFunction::eval: lambda too short");
    double sum = 0.0;
    for (const Term& t : terms_) {
        double v = t.coeff * pow_int(p, t.p_exp) * pow_int(q, t.q_exp);
        for (int j = 0; j < lambda_vars_; ++j) v *= pow_int(lambda[j], t.lambda_exp[j]);
        sum += v;
    }
    return sum;
}

double WeightFunction::fiber_primitive(double s, bool imaginary, double q,
                                       std::span<const double> lambda) const {
    double sum = 0.0;
    for (const Term& t : terms_) {
        if (t.p_exp % 2 != 0) continue;  // odd momentum powers cancel
        int m = t.p_exp / 2;
        double v = t.coeff * pow_int(q, t.q_exp);
        for (int j = 0; j < lambda_vars_; ++j) v *= pow_int(lambda[j], t.lambda_exp[j]);
        double mom = pow_int(s, t.p_exp + 1) / (t.p_exp + 1);
        if (imaginary && (m % 2 == 1)) mom = -mom;
        sum += v * mom;
    }
    return sum;
}

double WeightFunction::fiber_density(double s, bool imaginary, double q,
                                     std::span<const double> lambda) const {
    double sum = 0.0;
    for (const Term& t : terms_) {
        if (t.p_exp % 2 != 0) continue;
        int m = t.p_exp / 2;
        double v = t.coeff * pow_int(q, t.q_exp);
        for (int j = 0; j < lambda_vars_; ++j) v *= pow_int(lambda[j], t.lambda_exp[j]);
        double mom = pow_int(s, t.p_exp);
        if (imaginary && (m % 2 == 1)) mom = -mom;
        sum += v * mom;
    }
    return sum;
}

double WeightFunction::fiber_primitive_dlambda(int j, double s, bool imaginary, double q,
                                               std::span<const double> lambda) const {
    if (j < 1 || j > lambda_vars_) return 0.0;
    double sum = 0.0;
    for (const Term& t : terms_) {
        if (t.p_exp % 2 != 0) continue;
        if (t.lambda_exp[j - 1] == 0) continue;
        int m = t.p_exp / 2;
        double v = t.coeff * pow_int(q, t.q_exp) * t.lambda_exp[j - 1];
        for (int i = 0; i < lambda_vars_; ++i) {
            int e = t.lambda_exp[i];
            if (i == j - 1) e -= 1;
            v *= pow_int(lambda[i], e);
        }
        double mom = pow_int(s, t.p_exp + 1) / (t.p_exp + 1);
        if (imaginary && (m % 2 == 1)) mom = -mom;
        sum += v * mom;
    }
    return sum;
}

std::complex<double> ActionVector::value(int k) const {
    double a = magnitudes.at(k - 1);
    return real_cycle(k) ? cplx(a, 0.0) : cplx(0.0, a);
}

Eigen::VectorXd ActionVector::as_vector() const {
    Eigen::VectorXd v(magnitudes.size());
    for (std::size_t i = 0; i < magnitudes.size(); ++i) v(i) = magnitudes[i];
    return v;
}

namespace {

/** Shared per-point integration context.  On cycle k the substitution
 *  q = mid_k + w_k sin(theta) turns both sqrt-type and 1/sqrt-type endpoint
 *  singularities into smooth integrands:
 *    |Q(q)| = w_k^2 cos^2(theta) B(q),  B(q) = prod_{i not in {k-1,k}} |q - r_i|,
 *  so the momentum magnitude is s(q) = w_k cos(theta) sqrt(B(q)) and
 *  dq / s = dtheta / sqrt(B).
 */
struct CycleGeometry {
    std::vector<double> roots;  // ascending, n+1 of them
    int n = 0;

    double mid(int k) const { return 0.5 * (roots[k] + roots[k - 1]); }
    double halfwidth(int k) const { return 0.5 * (roots[k] - roots[k - 1]); }

    double other_product(int k, double q) const {
        double b = 1.0;
        for (int i = 0; i <= n; ++i) {
            if (i == k - 1 || i == k) continue;
            b *= std::abs(q - roots[i]);
        }
        return b;
    }
};

template <typename Body>
void for_each_node(const quad::GaussLegendre& gl, Body&& body) {
    const double half = 0.5 * kPi;
    for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
        double theta = half * gl.nodes[i];
        double wt = half * gl.weights[i];
        body(theta, wt);
    }
}

std::vector<double> action_pass(const CycleGeometry& geo, const poly::UnfoldingPoly& p,
                                const WeightFunction& g, int m_nodes) {
    const auto& gl = quad::gauss_legendre(m_nodes);
    std::vector<double> out(geo.n, 0.0);
    for (int k = 1; k <= geo.n; ++k) {
        bool imag = !swallowtail::cycle_type(p.n, p.eta, k).real;
        const double mid = geo.mid(k), w = geo.halfwidth(k);
        double acc = 0.0;
        for_each_node(gl, [&](double theta, double wt) {
            double ct = std::cos(theta);
            double q = mid + w * std::sin(theta);
            double s = w * ct * std::sqrt(geo.other_product(k, q));
            acc += wt * g.fiber_primitive(s, imag, q, p.lambda) * w * ct;
        });
        out[k - 1] = acc / kPi;
    }
    return out;
}

Eigen::MatrixXd jacobian_pass(const CycleGeometry& geo, const poly::UnfoldingPoly& p,
                              const WeightFunction& g, int m_nodes) {
    const auto& gl = quad::gauss_legendre(m_nodes);
    const int n = geo.n;
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n, n);
    const double front = p.eta / (2.0 * kPi);
    for (int k = 1; k <= n; ++k) {
        bool imag = !swallowtail::cycle_type(p.n, p.eta, k).real;
        const double mid = geo.mid(k), w = geo.halfwidth(k);
        // s^2 = +-eta (h - Q_0(q)), hence ds/dh = +-eta/(2 s): the imaginary
        // branch flips the sign of every boundary-variation column.
        const double sgn = imag ? -1.0 : 1.0;
        Eigen::RowVectorXd row = Eigen::RowVectorXd::Zero(n);
        for_each_node(gl, [&](double theta, double wt) {
            double ct = std::cos(theta);
            double q = mid + w * std::sin(theta);
            double b = geo.other_product(k, q);
            double sqb = std::sqrt(b);
            double s = w * ct * sqb;
            double dens = g.fiber_density(s, imag, q, p.lambda);
            // column 0: d/dh
            row(0) += wt * sgn * front * dens / sqb;
            // columns j: d/dlambda_j, boundary term plus explicit weight term
            double qj = 1.0;
            for (int j = 1; j <= n - 1; ++j) {
                qj *= q;
                double boundary = -sgn * front * dens * qj / sqb;
                double direct =
                    g.fiber_primitive_dlambda(j, s, imag, q, p.lambda) * w * ct / kPi;
                row(j) += wt * (boundary + direct);
            }
        });
        out.row(k - 1) = row;
    }
    return out;
}

}  // namespace

ActionVector action_vector(const poly::UnfoldingPoly& p, const WeightFunction& g,
                           const QuadratureSpec& spec) {
    spec.validate();
    CycleGeometry geo{interior_roots(p), p.n};

    std::vector<double> prev = action_pass(geo, p, g, spec.node_count);
    int m = spec.node_count;
    for (int r = 0; r < spec.max_refinements; ++r) {
        m *= 2;
        std::vector<double> next = action_pass(geo, p, g, m);
        double norm = 0.0, delta = 0.0;
        for (int k = 0; k < p.n; ++k) {
            norm = std::max(norm, std::abs(next[k]));
            delta = std::max(delta, std::abs(next[k] - prev[k]));
        }
        prev = std::move(next);
        if (delta <= spec.target_rel_tol * std::max(norm, 1e-300)) {
            ActionVector av{p.n, p.eta, std::move(prev)};
            return av;
        }
    }
    std::ostringstream os;
    os << "action_vector: no convergence after " << spec.max_refinements
       << " refinements (" << m << " nodes)";
    throw QuadratureError(os.str());
}

Eigen::MatrixXd action_jacobian(const poly::UnfoldingPoly& p, const WeightFunction& g,
                                const QuadratureSpec& spec) {
    spec.validate();
    CycleGeometry geo{interior_roots(p), p.n};

    Eigen::MatrixXd prev = jacobian_pass(geo, p, g, spec.node_count);
    int m = spec.node_count;
    for (int r = 0; r < spec.max_refinements; ++r) {
        m *= 2;
        Eigen::MatrixXd next = jacobian_pass(geo, p, g, m);
        double norm = next.cwiseAbs().maxCoeff();
        double delta = (next - prev).cwiseAbs().maxCoeff();
        prev = std::move(next);
        if (delta <= spec.target_rel_tol * std::max(norm, 1e-300)) return prev;
    }
    std::ostringstream os;
    os << "action_jacobian: no convergence after " << spec.max_refinements
       << " refinements (" << m << " nodes)";
    throw QuadratureError(os.str());
}

namespace {

Eigen::MatrixXcd chord_matrix_pass(int n, int eta, const std::vector<cplx>& rho, int m_nodes) {
    const auto& gl = quad::gauss_legendre(m_nodes);
    Eigen::MatrixXcd out(n, n);
    for (int k = 0; k < n; ++k) {
        const cplx z0 = rho[k], z1 = rho[k + 1];
        const cplx mid = 0.5 * (z0 + z1), r = 0.5 * (z1 - z0);
        // eta (1 - z^{n+1}) = eta r^2 cos^2(theta) prod_{other}(z - rho_i);
        // S(theta) below is a continuous square root of the smooth factor,
        // anchored at the chord start so refinements share one branch.
        auto smooth_factor = [&](cplx z) {
            cplx prod = static_cast<double>(eta) * r * r;
            for (int i = 0; i <= n; ++i) {
                if (i == k || i == k + 1) continue;
                prod *= (z - rho[i]);
            }
            return prod;
        };
        cplx s_prev = std::sqrt(smooth_factor(z0));
        std::vector<cplx> row_acc(n, cplx(0.0, 0.0));
        for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
            double theta = 0.5 * kPi * gl.nodes[i];
            double wt = 0.5 * kPi * gl.weights[i];
            cplx z = mid + r * std::sin(theta);
            cplx s = std::sqrt(smooth_factor(z));
            if (std::abs(s - s_prev) > std::abs(s + s_prev)) s = -s;
            s_prev = s;
            cplx base = wt * r / s;
            cplx zj(1.0, 0.0);
            for (int j = 0; j < n; ++j) {
                row_acc[j] += base * zj;
                zj *= z;
            }
        }
        for (int j = 0; j < n; ++j) out(k, j) = row_acc[j];
    }
    return out;
}

}  // namespace

std::complex<double> limit_determinant(int n, int eta, const QuadratureSpec& spec) {
    spec.validate();
    if (n < 1) throw std::invalid_argument("limit_determinant: n must be >= 1");
    if (eta != 1 && eta != -1) throw std::invalid_argument("limit_determinant: eta must be +-1");
    if (n % 2 == 0 && eta != 1)
        throw std::invalid_argument("limit_determinant: even n forces eta = +1");

    // Roots of q^{n+1} = 1 ordered by ascending principal argument in (-pi, pi].
    std::vector<cplx> rho;
    for (int m = 0; m <= n; ++m) {
        double ang = 2.0 * kPi * m / (n + 1);
        if (ang > kPi + 1e-15) ang -= 2.0 * kPi;
        rho.emplace_back(std::cos(ang), std::sin(ang));
    }
    std::sort(rho.begin(), rho.end(),
              [](const cplx& a, const cplx& b) { return std::arg(a) < std::arg(b); });

    Eigen::MatrixXcd prev = chord_matrix_pass(n, eta, rho, spec.node_count);
    int m = spec.node_count;
    for (int r = 0; r < spec.max_refinements; ++r) {
        m *= 2;
        Eigen::MatrixXcd next = chord_matrix_pass(n, eta, rho, m);
        double norm = next.cwiseAbs().maxCoeff();
        double delta = (next - prev).cwiseAbs().maxCoeff();
        prev = std::move(next);
        if (delta <= spec.target_rel_tol * std::max(norm, 1e-300))
            return prev.partialPivLu().determinant();
    }
    std::ostringstream os;
    os << "limit_determinant: no convergence after " << spec.max_refinements
       << " refinements (" << m << " nodes)";
    throw QuadratureError(os.str());
}

std::vector<CyclePoint> cycle_points(const poly::UnfoldingPoly& p, int k, int count) {
    if (count < 2) throw std::invalid_argument("cycle_points: need at least 2 samples");
    if (k < 1 || k > p.n) throw std::invalid_argument("cycle_points: k out of range 1..n");
    CycleGeometry geo{interior_roots(p), p.n};

    const bool real = swallowtail::cycle_type(p.n, p.eta, k).real;
    const double mid = geo.mid(k), w = geo.halfwidth(k);
    std::vector<CyclePoint> out;
    out.reserve(count);
    for (int i = 0; i < count; ++i) {
        double t = 2.0 * kPi * i / count;
        double q = mid - w * std::cos(t);
        double s = w * std::sin(t) * std::sqrt(geo.other_product(k, q));
        out.push_back({real ? cplx(s, 0.0) : cplx(0.0, s), q});
    }
    return out;
}

}  // namespace anfold::periods
