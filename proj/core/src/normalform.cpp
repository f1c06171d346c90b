#include "anfold/normalform.hpp"

#include "anfold/rng.hpp"
#include "anfold/swallowtail.hpp"
#include "anfold/symmetry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>

namespace anfold::normalform {

JetFamily::JetFamily(int n_, jet::Jet H_) : n(n_), H(std::move(H_)) {
    if (n < 1) throw std::invalid_argument("order must be >= 1");
    if (H.vars() != n + 1)
        throw std::invalid_argument("jet must use variables (x, y, eps_1..eps_{n-1})");
    if (H.degree() < n + 1) throw std::invalid_argument("degree bound must be at least n+1");
}

std::string condition_name(JetCondition c) {
    switch (c) {
        case JetCondition::None: return "none";
        case JetCondition::CriticalPoint: return "critical-point";
        case JetCondition::HessianRank: return "hessian-rank";
        case JetCondition::Order: return "order";
        case JetCondition::Transversality: return "transversality";
    }
    return "unknown";
}

std::string SingularityClass::label() const {
    char buf[128];
    if (accepted) {
        const char* kind = "";
        if (n == 1)
            kind = eta > 0 ? "elliptic" : "hyperbolic";
        else if (n == 2)
            kind = "parabolic";
        else if (n % 2 == 1)
            kind = eta > 0 ? "supercritical" : "subcritical";
        else
            kind = "higher even order";
        std::snprintf(buf, sizeof buf, "accepted: n=%d, eta=%+d (%s)", n, eta, kind);
    } else if (n > 0) {
        std::snprintf(buf, sizeof buf, "rejected: %s (detected order n=%d)",
                      condition_name(failed).c_str(), n);
    } else {
        std::snprintf(buf, sizeof buf, "rejected: %s", condition_name(failed).c_str());
    }
    return buf;
}

namespace {

std::vector<int> xy_exps(int vars, int i, int j) {
    std::vector<int> e(static_cast<std::size_t>(vars), 0);
    e[0] = i;
    e[1] = j;
    return e;
}

double pure_coeff(const jet::Jet& H, int i, int j) {
    return H.coeff(xy_exps(H.vars(), i, j));
}

std::vector<jet::Jet> identity_subs(int vars, int degree) {
    std::vector<jet::Jet> subs;
    subs.reserve(static_cast<std::size_t>(vars));
    for (int v = 0; v < vars; ++v) subs.push_back(jet::Jet::variable(vars, degree, v));
    return subs;
}

// Substitute x -> x - sum_j q_j y^{j+2}, every other variable fixed.
jet::Jet apply_completion(const jet::Jet& H, const std::vector<double>& q) {
    if (q.empty()) return H;
    auto subs = identity_subs(H.vars(), H.degree());
    for (std::size_t j = 0; j < q.size(); ++j) {
        std::vector<int> e(static_cast<std::size_t>(H.vars()), 0);
        e[1] = static_cast<int>(j) + 2;
        subs[0].add_coeff(e, -q[j]);
    }
    return H.compose(subs);
}

// The y^j coefficient of H as a function of eps, kept in the full variable
// ring with the x and y exponents cleared.
jet::Jet y_slice(const jet::Jet& H, int j) {
    jet::Jet out(H.vars(), H.degree());
    const auto& basis = H.basis();
    for (int idx = 0; idx < basis.size(); ++idx) {
        if (H.coeff_at(idx) == 0.0) continue;
        const auto& e = basis.exponents(idx);
        if (e[0] != 0 || e[1] != j) continue;
        std::vector<int> t = e;
        t[1] = 0;
        out.add_coeff(t, H.coeff_at(idx));
    }
    return out;
}

int newton_jet_iterations(int degree) {
    int iters = 1;
    for (int order = 1; order <= degree; order *= 2) ++iters;
    return iters;
}

// Branch of critical points in the x direction: xi(y, eps) with
// dH/dx(xi, y, eps) = 0, as a jet with no x dependence.
jet::Jet solve_critical_x(const jet::Jet& H) {
    jet::Jet Hx = H.derivative(0);
    jet::Jet Hxx = Hx.derivative(0);
    jet::Jet xi(H.vars(), H.degree());
    for (int it = 0; it < newton_jet_iterations(H.degree()); ++it) {
        auto subs = identity_subs(H.vars(), H.degree());
        subs[0] = xi;
        jet::Jet num = Hx.compose(subs);
        jet::Jet den = Hxx.compose(subs);
        xi -= num.mul(den.reciprocal());
    }
    return xi;
}

// Shift t(eps) with the y^n coefficient of R(y + t, eps) identically zero.
jet::Jet solve_shift(const jet::Jet& R, int n) {
    jet::Jet Ry = R.derivative(1);
    jet::Jet t(R.vars(), R.degree());
    for (int it = 0; it < newton_jet_iterations(R.degree()); ++it) {
        auto subs = identity_subs(R.vars(), R.degree());
        subs[1] = jet::Jet::variable(R.vars(), R.degree(), 1) + t;
        jet::Jet f = y_slice(R.compose(subs), n);
        jet::Jet fp = y_slice(Ry.compose(subs), n);
        t -= f.mul(fp.reciprocal());
    }
    return t;
}

}  // namespace

SingularityClass classify_jet(const JetFamily& fam, double tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
    SingularityClass out;
    const int vars = fam.n + 1;
    const int d = fam.degree();
    jet::Jet H = fam.H;
    const double scale = std::max(H.max_abs(), 1e-300);
    out.diag.jet_scale = H.max_abs();

    double gx = pure_coeff(H, 1, 0);
    double gy = pure_coeff(H, 0, 1);
    out.diag.gradient_norm = std::hypot(gx, gy);
    if (out.diag.gradient_norm > tol * scale) {
        out.failed = JetCondition::CriticalPoint;
        return out;
    }

    Eigen::Matrix2d hess;
    hess << 2.0 * pure_coeff(H, 2, 0), pure_coeff(H, 1, 1),
            pure_coeff(H, 1, 1), 2.0 * pure_coeff(H, 0, 2);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(hess);
    Eigen::Vector2d ev = es.eigenvalues();
    out.diag.hessian_eigs[0] = ev(0);
    out.diag.hessian_eigs[1] = ev(1);
    int rank = (std::abs(ev(0)) > tol * scale ? 1 : 0) + (std::abs(ev(1)) > tol * scale ? 1 : 0);
    out.diag.hessian_rank = rank;
    if (rank == 0) {
        out.failed = JetCondition::HessianRank;
        return out;
    }

    if (rank == 2) {
        // Non-degenerate quadratic part: an order-1 point, elliptic when the
        // Hessian is definite and hyperbolic when it is indefinite.
        out.n = 1;
        out.diag.detected_order = 1;
        out.eta = hess.determinant() > 0.0 ? +1 : -1;
        out.diag.leading_coeff = 0.5 * std::abs(ev(1));
        out.diag.transversality_sigma = 1.0;
        if (fam.n == 1) {
            out.accepted = true;
        } else {
            out.failed = JetCondition::Order;
        }
        return out;
    }

    // Rank 1: rotate the nonzero eigendirection onto x, kernel onto y, and
    // scale x so the quadratic part becomes exactly eta_pre * x^2.
    int big = std::abs(ev(1)) >= std::abs(ev(0)) ? 1 : 0;
    double mu = ev(big);
    Eigen::Vector2d u1 = es.eigenvectors().col(big);
    if (std::abs(u1(0)) >= std::abs(u1(1))) {
        if (u1(0) < 0) u1 = -u1;
    } else {
        if (u1(1) < 0) u1 = -u1;
    }
    Eigen::Vector2d u2(-u1(1), u1(0));
    int eta_pre = mu > 0 ? +1 : -1;
    double s = 1.0 / std::sqrt(std::abs(mu) / 2.0);
    {
        auto subs = identity_subs(vars, d);
        jet::Jet xs(vars, d);
        xs.add_coeff(xy_exps(vars, 1, 0), u1(0) * s);
        xs.add_coeff(xy_exps(vars, 0, 1), u2(0));
        jet::Jet ys(vars, d);
        ys.add_coeff(xy_exps(vars, 1, 0), u1(1) * s);
        ys.add_coeff(xy_exps(vars, 0, 1), u2(1));
        subs[0] = xs;
        subs[1] = ys;
        H = H.compose(subs);
    }

    // Walk the candidate orders: for each m, kill the mixed terms x y^{i+1}
    // up to i = floor((m-1)/2) and look at the pure powers of y.  The kill
    // coefficients form a triangular chain, so the prefix is shared between
    // candidate orders.
    std::vector<double> q;
    jet::Jet completed = H;
    int detected = 0;
    double lead = 0.0;
    for (int m = 2; m <= d - 1; ++m) {
        int kills = (m - 1) / 2;
        while (static_cast<int>(q.size()) < kills) {
            int i = static_cast<int>(q.size()) + 1;
            jet::Jet cur = apply_completion(H, q);
            q.push_back(pure_coeff(cur, 1, i + 1) / (2.0 * eta_pre));
        }
        completed = apply_completion(H, q);
        double cscale = std::max(completed.max_abs(), 1e-300);
        double window_max = 0.0;
        for (int k = 3; k <= m; ++k)
            window_max = std::max(window_max, std::abs(pure_coeff(completed, 0, k)));
        lead = pure_coeff(completed, 0, m + 1);
        if (window_max > tol * cscale) break;
        if (std::abs(lead) > tol * cscale) {
            detected = m;
            out.diag.order_residual = window_max / cscale;
            break;
        }
    }
    out.diag.detected_order = detected;
    if (detected == 0) {
        out.failed = JetCondition::Order;
        return out;
    }

    // Sign normalizations: make the leading pure power positive, and for even
    // detected order push the quadratic sign to +1 by negating H and y.
    int eta = eta_pre;
    if (lead < 0) {
        completed *= -1.0;
        eta = -eta;
        lead = -lead;
    }
    if (detected % 2 == 0 && eta == -1) {
        completed *= -1.0;
        std::vector<int> flips(static_cast<std::size_t>(vars), +1);
        flips[1] = -1;
        completed = completed.flip_signs(flips);
        eta = +1;
        lead = pure_coeff(completed, 0, detected + 1);
    }
    out.n = detected;
    out.eta = eta;
    out.diag.leading_coeff = lead;

    if (detected != fam.n) {
        out.failed = JetCondition::Order;
        return out;
    }

    // Scale y so the leading coefficient is exactly 1; the unfolding
    // parameters read off below then live on the canonical scale.
    {
        auto subs = identity_subs(vars, d);
        subs[1] = jet::Jet::variable(vars, d, 1, std::pow(lead, -1.0 / (detected + 1)));
        completed = completed.compose(subs);
    }

    const int b = fam.n - 1;
    if (b > 0) {
        Eigen::MatrixXd T(b, b);
        double fact = 1.0;
        for (int j = 1; j <= b; ++j) {
            fact *= j;
            for (int i = 1; i <= b; ++i) {
                std::vector<int> e(static_cast<std::size_t>(vars), 0);
                e[1] = j;
                e[static_cast<std::size_t>(1 + i)] = 1;
                T(j - 1, i - 1) = fact * completed.coeff(e);
            }
        }
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(T);
        out.diag.transversality_sigma = svd.singularValues().minCoeff();
        double tscale = std::max(1.0, T.cwiseAbs().maxCoeff());
        if (out.diag.transversality_sigma <= tol * tscale) {
            out.failed = JetCondition::Transversality;
            return out;
        }
    } else {
        out.diag.transversality_sigma = 1.0;
    }
    out.accepted = true;

    if (b > 0) {
        // Reduce to the critical branch in x, then translate y to remove the
        // y^n coefficient; what is left of y^1..y^{n-1} is the parameter germ.
        jet::Jet xi = solve_critical_x(completed);
        auto subs = identity_subs(vars, d);
        subs[0] = xi;
        jet::Jet R = completed.compose(subs);
        jet::Jet t = solve_shift(R, fam.n);
        auto shift = identity_subs(vars, d);
        shift[1] = jet::Jet::variable(vars, d, 1) + t;
        jet::Jet Rs = R.compose(shift);

        std::vector<jet::Jet> comps;
        comps.reserve(static_cast<std::size_t>(b));
        for (int j = 1; j <= b; ++j) {
            jet::Jet slice = y_slice(Rs, j);
            jet::Jet comp(b, d);
            const auto& basis = slice.basis();
            for (int idx = 0; idx < basis.size(); ++idx) {
                if (slice.coeff_at(idx) == 0.0) continue;
                const auto& e = basis.exponents(idx);
                std::vector<int> tail(e.begin() + 2, e.end());
                comp.add_coeff(tail, slice.coeff_at(idx));
            }
            comp.set_coeff_at(0, 0.0);
            comps.push_back(std::move(comp));
        }
        out.lambda0 = germs::GermMap(std::move(comps));
        out.lambda0_known = true;
    }
    return out;
}

namespace {

Eigen::VectorXd params_of(const poly::UnfoldingPoly& p) {
    Eigen::VectorXd v(p.n);
    v(0) = p.h;
    for (int j = 0; j + 1 < p.n; ++j) v(j + 1) = p.lambda[static_cast<std::size_t>(j)];
    return v;
}

poly::UnfoldingPoly poly_from_params(int n, int eta, const Eigen::VectorXd& v) {
    std::vector<double> lam(static_cast<std::size_t>(v.size() - 1));
    for (int j = 1; j < v.size(); ++j) lam[static_cast<std::size_t>(j - 1)] = v(j);
    return poly::UnfoldingPoly(n, eta, v(0), std::move(lam));
}

bool interior(const poly::UnfoldingPoly& p) {
    return swallowtail::classify_point(p).kind == swallowtail::RegionKind::Interior;
}

poly::UnfoldingPoly newton_solve(const Eigen::VectorXd& target, const poly::UnfoldingPoly& start,
                                 const periods::QuadratureSpec& quad, double tol) {
    const periods::WeightFunction one = periods::WeightFunction::constant(1.0);
    poly::UnfoldingPoly y = start;
    if (!interior(y)) throw NewtonDiverged("start point is not interior");
    Eigen::VectorXd r = target - periods::action_vector(y, one, quad).as_vector();
    double rn = r.norm();
    const double goal = tol * std::max(1.0, target.norm());
    for (int it = 0; it < 60; ++it) {
        if (rn <= goal) return y;
        Eigen::MatrixXd J = periods::action_jacobian(y, one, quad);
        Eigen::VectorXd step = J.partialPivLu().solve(r);
        if (!step.allFinite()) throw NewtonDiverged("singular jacobian step");
        bool moved = false;
        double alpha = 1.0;
        for (int half = 0; half < 30; ++half, alpha *= 0.5) {
            Eigen::VectorXd cand = params_of(y) + alpha * step;
            if (!cand.allFinite()) continue;
            poly::UnfoldingPoly yc = poly_from_params(y.n, y.eta, cand);
            if (!interior(yc)) continue;
            Eigen::VectorXd rc = target - periods::action_vector(yc, one, quad).as_vector();
            if (rc.norm() < rn) {
                y = yc;
                r = rc;
                rn = rc.norm();
                moved = true;
                break;
            }
        }
        if (!moved) throw NewtonDiverged("line search stalled");
    }
    if (rn <= goal) return y;
    throw NewtonDiverged("no convergence within the iteration budget");
}

}  // namespace

poly::UnfoldingPoly invert_actions(const Eigen::VectorXd& target, const poly::UnfoldingPoly& start,
                                   const periods::QuadratureSpec& quad, double tol) {
    if (target.size() != start.n) throw std::invalid_argument("target size must equal n");
    try {
        return newton_solve(target, start, quad, tol);
    } catch (const NewtonDiverged&) {
    }
    // Cold start failed.  Solve shrunken copies of the problem and walk the
    // scale back up; the solution re-expands along the scaling family.
    const double stages[] = {0.125, 0.25, 0.5, 0.75, 1.0};
    const double expo = start.n + 3;
    poly::UnfoldingPoly y = start;
    double prev = 0.0;
    for (double c : stages) {
        double ratio = prev == 0.0 ? c : c / prev;
        y = symmetry::scaling_psi_c(ratio, y);
        y = newton_solve(std::pow(c, expo) * target, y, quad, tol);
        prev = c;
    }
    return y;
}

MatchReport period_match_targets(const TargetFunction& target, int n, int eta,
                                 const std::vector<poly::UnfoldingPoly>& grid,
                                 const periods::QuadratureSpec& quad, int fit_degree,
                                 double tol) {
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    if (eta != 1 && eta != -1) throw std::invalid_argument("eta must be +1 or -1");
    if (n % 2 == 0 && eta != 1) throw std::invalid_argument("even n forces eta = +1");
    if (fit_degree < 1) throw std::invalid_argument("fit degree must be >= 1");
    if (grid.empty()) throw std::invalid_argument("grid is empty");
    quad.validate();

    jet::MonomialBasis basis(n, fit_degree);
    const int cols = basis.size() - 1;  // constant term excluded, phi(0) = 0
    const int rows = static_cast<int>(grid.size());
    if (rows < cols) throw IllConditionedFit("grid smaller than the monomial count");

    Eigen::MatrixXd design(rows, cols);
    Eigen::MatrixXd solved(rows, n);
    std::vector<Eigen::VectorXd> targets(grid.size());
    for (int i = 0; i < rows; ++i) {
        const auto& x = grid[static_cast<std::size_t>(i)];
        if (x.n != n || x.eta != eta) throw std::invalid_argument("grid point has wrong (n, eta)");
        Eigen::VectorXd hit = target(x);
        if (hit.size() != n) throw std::invalid_argument("target vector has wrong size");
        targets[static_cast<std::size_t>(i)] = hit;
        poly::UnfoldingPoly y = x;
        try {
            y = invert_actions(hit, x, quad, tol);
        } catch (const NewtonDiverged& e) {
            char buf[160];
            std::snprintf(buf, sizeof buf, "%s at grid point h=%.6g", e.what(), x.h);
            throw NewtonDiverged(buf);
        }
        solved.row(i) = params_of(y).transpose();
        Eigen::VectorXd xp = params_of(x);
        for (int m = 1; m < basis.size(); ++m) {
            const auto& e = basis.exponents(m);
            double v = 1.0;
            for (int var = 0; var < n; ++var)
                v *= std::pow(xp(var), e[static_cast<std::size_t>(var)]);
            design(i, m - 1) = v;
        }
    }

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
    if (qr.rank() < cols) throw IllConditionedFit("design matrix is rank deficient");
    Eigen::MatrixXd rfac = qr.matrixR().topLeftCorner(cols, cols).triangularView<Eigen::Upper>();
    double cond = std::abs(rfac(0, 0)) / std::max(std::abs(rfac(cols - 1, cols - 1)), 1e-300);
    if (cond > 1e12) throw IllConditionedFit("design matrix condition number too large");
    Eigen::MatrixXd coeffs = qr.solve(solved);

    MatchReport rep;
    germs::GermMap phi(n, n, fit_degree);
    for (int comp = 0; comp < n; ++comp) {
        jet::Jet jc(n, fit_degree);
        for (int m = 1; m < basis.size(); ++m) jc.set_coeff_at(m, coeffs(m - 1, comp));
        phi.set_component(comp, std::move(jc));
    }
    rep.phi = phi;
    rep.linear_det = phi.linear_part().determinant();

    Eigen::MatrixXd fitted = design * coeffs;
    rep.fit_residual = (fitted - solved).rowwise().norm().maxCoeff();
    const periods::WeightFunction one = periods::WeightFunction::constant(1.0);
    for (int i = 0; i < rows; ++i) {
        poly::UnfoldingPoly image = poly_from_params(n, eta, fitted.row(i).transpose());
        if (!interior(image)) {
            ++rep.non_interior_images;
            continue;
        }
        Eigen::VectorXd a = periods::action_vector(image, one, quad).as_vector();
        rep.max_match_residual =
            std::max(rep.max_match_residual, (a - targets[static_cast<std::size_t>(i)]).norm());
    }
    return rep;
}

MatchReport period_match(const periods::WeightFunction& g, int n, int eta,
                         const std::vector<poly::UnfoldingPoly>& grid,
                         const periods::QuadratureSpec& quad, int fit_degree, double tol) {
    TargetFunction t = [&g, &quad](const poly::UnfoldingPoly& x) {
        return periods::action_vector(x, g, quad).as_vector();
    };
    return period_match_targets(t, n, eta, grid, quad, fit_degree, tol);
}

std::vector<poly::UnfoldingPoly> branch_collapse_path(int n, int eta, int k, int steps,
                                                      std::uint64_t seed) {
    if (k < 1 || k > n) throw std::invalid_argument("branch index out of range");
    if (steps < 2) throw std::invalid_argument("need at least two path points");
    // Start from unit-spaced roots with a mild jitter: every non-merging gap
    // stays above 0.8, so the other action magnitudes stay far from zero
    // while roots k, k+1 close in.
    rng::Sampler sampler(seed);
    std::vector<double> roots(static_cast<std::size_t>(n + 1));
    for (int i = 0; i <= n; ++i)
        roots[static_cast<std::size_t>(i)] =
            static_cast<double>(i) + sampler.uniform(-0.1, 0.1);

    double mid = 0.5 * (roots[static_cast<std::size_t>(k - 1)] + roots[static_cast<std::size_t>(k)]);
    double gap0 = roots[static_cast<std::size_t>(k)] - roots[static_cast<std::size_t>(k - 1)];
    // Stop well above the root-clustering resolution so every point stays
    // cleanly interior.
    double gap_end = std::min(1e-3, 0.5 * gap0);
    double rho = std::pow(gap_end / gap0, 1.0 / (steps - 1));

    std::vector<poly::UnfoldingPoly> path;
    path.reserve(static_cast<std::size_t>(steps));
    for (int t = 0; t < steps; ++t) {
        double gap = gap0 * std::pow(rho, t);
        std::vector<double> rr = roots;
        rr[static_cast<std::size_t>(k - 1)] = mid - 0.5 * gap;
        rr[static_cast<std::size_t>(k)] = mid + 0.5 * gap;
        double mean = std::accumulate(rr.begin(), rr.end(), 0.0) / static_cast<double>(rr.size());
        for (double& v : rr) v -= mean;
        path.push_back(poly::parametrize_from_roots(rr, eta));
    }
    return path;
}

ProbeReport injectivity_probe(int n, int eta, const periods::WeightFunction& g, int sample_count,
                              const periods::QuadratureSpec& quad, std::uint64_t seed,
                              double delta) {
    if (sample_count < 2) throw std::invalid_argument("need at least two samples");
    if (!(delta > 0.0)) throw std::invalid_argument("separation delta must be positive");
    quad.validate();

    ProbeReport rep;
    rep.sample_count = sample_count;
    std::vector<poly::UnfoldingPoly> pts = swallowtail::domain_sample(n, eta, 0.8, sample_count, seed);

    std::vector<Eigen::VectorXd> acts;
    acts.reserve(pts.size());
    bool positive = true;
    for (const auto& p : pts) {
        periods::ActionVector a = periods::action_vector(p, g, quad);
        for (double m : a.magnitudes)
            if (!(m > 0.0)) positive = false;
        acts.push_back(a.as_vector());
    }
    rep.magnitudes_positive = positive;

    double min_ratio = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < pts.size(); ++i) {
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            double pd = (params_of(pts[i]) - params_of(pts[j])).norm();
            if (pd <= delta) continue;
            double ad = (acts[i] - acts[j]).norm();
            if (ad <= 1e-12 * std::max(1.0, acts[i].norm())) ++rep.collision_count;
            min_ratio = std::min(min_ratio, ad / pd);
        }
    }
    rep.min_ratio = std::isfinite(min_ratio) ? min_ratio : 0.0;

    int checks = std::min<int>(static_cast<int>(pts.size()), 48);
    int sign0 = 0;
    bool sign_ok = true;
    for (int i = 0; i < checks; ++i) {
        double det = periods::action_jacobian(pts[static_cast<std::size_t>(i)], g, quad).determinant();
        int s = det > 0.0 ? 1 : (det < 0.0 ? -1 : 0);
        if (s == 0) sign_ok = false;
        if (sign0 == 0) sign0 = s;
        if (s != sign0) sign_ok = false;
    }
    rep.jacobian_sign = sign0;
    rep.jacobian_sign_constant = sign_ok && sign0 != 0;

    int path_count = std::max(3, n);
    for (int jp = 0; jp < path_count; ++jp) {
        int k = (jp % n) + 1;
        std::vector<poly::UnfoldingPoly> path =
            branch_collapse_path(n, eta, k, 12, seed + 17 * static_cast<std::uint64_t>(jp + 1));
        CollapsePath cp;
        cp.branch = k;
        std::vector<double> along;
        double min_other = std::numeric_limits<double>::infinity();
        for (const auto& p : path) {
            periods::ActionVector a = periods::action_vector(p, g, quad);
            along.push_back(a.magnitudes[static_cast<std::size_t>(k - 1)]);
            for (int c = 1; c <= n; ++c) {
                if (c == k) continue;
                min_other = std::min(min_other, a.magnitudes[static_cast<std::size_t>(c - 1)]);
            }
        }
        cp.final_branch_magnitude = along.back();
        cp.min_other_magnitude = std::isfinite(min_other) ? min_other : 0.0;
        cp.tail_monotone = true;
        int tail = std::min<int>(5, static_cast<int>(along.size()) - 1);
        for (std::size_t t = along.size() - static_cast<std::size_t>(tail); t < along.size(); ++t)
            if (!(along[t] < along[t - 1])) cp.tail_monotone = false;
        rep.paths.push_back(cp);
    }
    return rep;
}

}  // namespace anfold::normalform
