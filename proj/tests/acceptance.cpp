// Acceptance gate: eleven end-to-end checks over the whole library, each with
// a pinned tolerance and, where stated, a wall-clock budget.  Prints one
// PASS/FAIL line per check; the exit status is the number of failures.

#include "anfold/germs.hpp"
#include "anfold/normalform.hpp"
#include "anfold/periods.hpp"
#include "anfold/poly.hpp"
#include "anfold/rng.hpp"
#include "anfold/swallowtail.hpp"
#include "anfold/symmetry.hpp"

#include <Eigen/Dense>

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

using namespace anfold;

namespace {

const double kPi = 3.14159265358979323846;

periods::WeightFunction unit_weight() { return periods::WeightFunction::constant(1.0); }

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

std::vector<int> valid_etas(int n) {
    if (n % 2 == 0) return {+1};
    return {+1, -1};
}

double max_coeff_error(const germs::GermMap& a, const germs::GermMap& b) {
    auto sa = a.coefficient_sequence();
    auto sb = b.coefficient_sequence();
    if (sa.size() != sb.size()) return 1e300;
    double err = 0.0;
    for (std::size_t i = 0; i < sa.size(); ++i) err = std::max(err, std::abs(sa[i] - sb[i]));
    return err;
}

// Smallest gap between consecutive real roots; used to keep finite-difference
// stencils away from the domain boundary.
double min_root_gap(const poly::UnfoldingPoly& p) {
    auto rr = poly::roots_sorted(p).real_roots_ascending();
    double g = 1e300;
    for (std::size_t i = 1; i < rr.size(); ++i) g = std::min(g, rr[i] - rr[i - 1]);
    return g;
}

Eigen::MatrixXd fd_jacobian(const poly::UnfoldingPoly& p, double step) {
    const periods::WeightFunction one = unit_weight();
    periods::QuadratureSpec spec;
    spec.target_rel_tol = 1e-13;  // keep quadrature noise far below the quotient scale
    spec.max_refinements = 16;
    Eigen::MatrixXd J(p.n, p.n);
    std::vector<double> base(static_cast<std::size_t>(p.n));
    base[0] = p.h;
    for (int j = 1; j < p.n; ++j) base[static_cast<std::size_t>(j)] = p.lambda[static_cast<std::size_t>(j - 1)];
    for (int c = 0; c < p.n; ++c) {
        auto at = [&](double delta) {
            std::vector<double> v = base;
            v[static_cast<std::size_t>(c)] += delta;
            poly::UnfoldingPoly q(p.n, p.eta, v[0], {v.begin() + 1, v.end()});
            return periods::action_vector(q, one, spec).as_vector();
        };
        J.col(c) = (at(step) - at(-step)) / (2.0 * step);
    }
    return J;
}

// --- check 1: closed form of the order-1 action -----------------------------

bool check_fold_closed_form(std::string& detail) {
    const double tol = 1e-10;
    double worst = 0.0;
    for (double h : {0.1, 1.0})
        for (int eta : {+1, -1}) {
            poly::UnfoldingPoly p(1, eta, h, {});
            double a = periods::action_vector(p, unit_weight()).magnitudes[0];
            worst = std::max(worst, std::abs(a - 0.5 * h) / (0.5 * h));
        }
    detail = "max rel err " + fmt(worst);
    return worst < tol;
}

// --- check 2: limit determinant moduli ---------------------------------------

bool check_limit_determinant(std::string& detail) {
    const double floor_value = 0.1;
    const double tol_fold = 1e-8;
    bool ok = true;
    std::string vals;
    for (int n = 1; n <= 4; ++n) {
        for (int eta : valid_etas(n)) {
            double d = std::abs(periods::limit_determinant(n, eta));
            ok = ok && d > floor_value;
            if (n == 1) ok = ok && std::abs(d - kPi) < tol_fold * kPi;
            if (!vals.empty()) vals += " ";
            vals += "|D|(" + std::to_string(n) + (eta > 0 ? ",+" : ",-") + ")=" + fmt(d);
        }
    }
    detail = vals;
    return ok;
}

// --- check 3: involution equivariance ----------------------------------------

bool check_equivariance(std::string& detail) {
    const double tol = 1e-8;
    double worst = 0.0;
    for (int n : {2, 3})
        for (int eta : valid_etas(n)) {
            auto pts = swallowtail::domain_sample(n, eta, 0.8, 50, 300 + static_cast<std::uint64_t>(10 * n + eta));
            worst = std::max(worst, symmetry::check_equivariance(n, eta, pts));
        }
    detail = "max residual " + fmt(worst);
    return worst < tol;
}

// --- check 4: quasi-homogeneous scaling of the actions ------------------------

bool check_scaling(std::string& detail) {
    const double tol = 1e-8;
    double worst = 0.0;
    for (int n : {1, 2, 3})
        for (int eta : valid_etas(n)) {
            auto pts = swallowtail::domain_sample(n, eta, 0.5, 8, 400 + static_cast<std::uint64_t>(10 * n + eta));
            for (double c : {0.5, 2.0})
                for (const auto& x : pts) {
                    periods::ActionVector expect =
                        symmetry::scaling_chi_c(c, periods::action_vector(x, unit_weight()));
                    periods::ActionVector got =
                        periods::action_vector(symmetry::scaling_psi_c(c, x), unit_weight());
                    for (int k = 0; k < n; ++k) {
                        double e = expect.magnitudes[static_cast<std::size_t>(k)];
                        double g = got.magnitudes[static_cast<std::size_t>(k)];
                        worst = std::max(worst, std::abs(g - e) / std::max(std::abs(e), 1e-300));
                    }
                }
        }
    detail = "max rel residual " + fmt(worst);
    return worst < tol;
}

// --- check 5: analytic Jacobian against central differences -------------------

bool check_jacobian(std::string& detail) {
    const double tol = 1e-6;
    const double fd_step = 1e-6;
    const double gap_floor = 0.05;   // keep near-degenerate fibers out of the pool
    const double clearance = 3e-4;   // parameter-space margin to the fold boundary
    const int min_checked = 100;
    bool ok = true;
    double worst = 0.0;
    for (int n : {2, 3}) {
        int checked = 0;
        for (int eta : valid_etas(n)) {
            auto pts = swallowtail::domain_sample(n, eta, 0.6, 260, 500 + static_cast<std::uint64_t>(10 * n + eta));
            for (const auto& x : pts) {
                if (min_root_gap(x) < gap_floor) continue;
                try {
                    // coarse stencil probes the boundary; the actions have
                    // unbounded higher derivatives near the fold set, so points
                    // without this much clearance are skipped
                    (void)fd_jacobian(x, clearance);
                } catch (const periods::NotInteriorError&) {
                    continue;
                }
                Eigen::MatrixXd J = periods::action_jacobian(x, unit_weight());
                Eigen::MatrixXd F = fd_jacobian(x, fd_step);
                double rel = (F - J).cwiseAbs().maxCoeff() / J.cwiseAbs().maxCoeff();
                worst = std::max(worst, rel);
                ++checked;
            }
        }
        ok = ok && checked >= min_checked;
    }
    ok = ok && worst < tol;

    // determinant sign stays fixed along a shrinking scaling family
    for (int n : {2, 3})
        for (int eta : valid_etas(n)) {
            poly::UnfoldingPoly x0 =
                swallowtail::domain_sample(n, eta, 0.5, 1, 550 + static_cast<std::uint64_t>(n))[0];
            int sign0 = 0;
            // past c ~ 0.8^15 the smallest coefficient drops under the
            // classifier's clustering resolution, so stop shrinking there
            for (int i = 0; i <= 14; ++i) {
                double c = std::pow(0.8, i);
                double det = periods::action_jacobian(symmetry::scaling_psi_c(c, x0), unit_weight())
                                 .determinant();
                int s = det > 0.0 ? 1 : (det < 0.0 ? -1 : 0);
                if (s == 0) ok = false;
                if (sign0 == 0) sign0 = s;
                if (s != sign0) ok = false;
            }
        }
    detail = "max fd rel err " + fmt(worst);
    return ok;
}

// --- check 6: injectivity probe -----------------------------------------------

bool check_injectivity(std::string& detail) {
    bool ok = true;
    std::string vals;
    const struct {
        int n;
        int count;
    } runs[] = {{2, 500}, {3, 200}};
    for (const auto& r : runs) {
        normalform::ProbeReport rep = normalform::injectivity_probe(
            r.n, +1, unit_weight(), r.count, {}, 600 + static_cast<std::uint64_t>(r.n));
        ok = ok && rep.collision_count == 0 && rep.magnitudes_positive && rep.jacobian_sign_constant;
        ok = ok && rep.paths.size() >= 3;
        for (const auto& cp : rep.paths) {
            ok = ok && cp.final_branch_magnitude < 1e-6;
            ok = ok && cp.min_other_magnitude > 1e-3;
            ok = ok && cp.tail_monotone;
        }
        if (!vals.empty()) vals += " ";
        vals += "n=" + std::to_string(r.n) + ": collisions=" + std::to_string(rep.collision_count) +
                " min_ratio=" + fmt(rep.min_ratio);
    }
    detail = vals;
    return ok;
}

// --- check 7: parameter-germ recovery ------------------------------------------

bool check_germ_recovery(std::string& detail) {
    const int n = 2;
    germs::GermMap phi0(n, n, 2);
    phi0.set_coeff(0, {1, 0}, 1.0);
    phi0.set_coeff(0, {0, 1}, 0.12);
    phi0.set_coeff(0, {2, 0}, 0.05);
    phi0.set_coeff(1, {1, 0}, -0.08);
    phi0.set_coeff(1, {0, 1}, 1.0);
    phi0.set_coeff(1, {0, 2}, 0.04);

    auto apply = [&](const poly::UnfoldingPoly& x) {
        std::vector<double> in = {x.h, x.lambda[0]};
        return poly::UnfoldingPoly(n, +1, phi0.component(0).eval(in),
                                   {phi0.component(1).eval(in)});
    };
    std::vector<poly::UnfoldingPoly> grid;
    for (std::uint64_t s = 700; grid.size() < 200; ++s)
        for (const auto& x : swallowtail::domain_sample(n, +1, 0.35, 300, s)) {
            if (grid.size() >= 200) break;
            if (swallowtail::classify_point(apply(x)).kind == swallowtail::RegionKind::Interior)
                grid.push_back(x);
        }
    normalform::TargetFunction target = [&](const poly::UnfoldingPoly& x) {
        return periods::action_vector(apply(x), unit_weight()).as_vector();
    };
    normalform::MatchReport rep = normalform::period_match_targets(target, n, +1, grid, {}, 2);
    double err_synth = max_coeff_error(rep.phi, phi0);

    germs::GermMap id(n, n, 2);
    id.set_coeff(0, {1, 0}, 1.0);
    id.set_coeff(1, {0, 1}, 1.0);
    auto idgrid = swallowtail::domain_sample(n, +1, 0.5, 60, 777);
    normalform::MatchReport rep_id = normalform::period_match(unit_weight(), n, +1, idgrid, {}, 2);
    double err_id = max_coeff_error(rep_id.phi, id);

    detail = "synthetic err " + fmt(err_synth) + ", identity err " + fmt(err_id);
    return err_synth < 1e-4 && err_id < 1e-8;
}

// --- check 8: root parametrization and domain geometry --------------------------

bool check_geometry(std::string& detail) {
    bool ok = true;
    double worst = 0.0;
    for (int n : {2, 3})
        for (int eta : valid_etas(n)) {
            auto pts = swallowtail::domain_sample(n, eta, 0.7, 50, 800 + static_cast<std::uint64_t>(10 * n + eta));
            for (const auto& x : pts) {
                auto rr = poly::roots_sorted(x).real_roots_ascending();
                poly::UnfoldingPoly y = poly::parametrize_from_roots(rr, eta);
                double scale = std::max(1.0, std::abs(x.h));
                double err = std::abs(y.h - x.h) / scale;
                for (std::size_t j = 0; j < x.lambda.size(); ++j) {
                    double s = std::max(1.0, std::abs(x.lambda[j]));
                    err = std::max(err, std::abs(y.lambda[j] - x.lambda[j]) / s);
                }
                worst = std::max(worst, err);
            }
        }
    ok = ok && worst < 1e-9;

    for (int n : {2, 3})
        for (int eta : valid_etas(n)) {
            auto pts = swallowtail::domain_sample(n, eta, 0.8, 1000, 850 + static_cast<std::uint64_t>(10 * n + eta));
            for (const auto& x : pts) ok = ok && x.lambda.back() < 0.0;
        }

    const struct {
        int n;
        int eta;
        int ell;
    } table[] = {{1, +1, 0}, {1, -1, 2}, {2, +1, 1}, {3, +1, 0}, {3, -1, 2},
                 {4, +1, 1}, {5, +1, 0}, {5, -1, 2}, {6, +1, 1}};
    for (const auto& row : table) ok = ok && swallowtail::ell(row.n, row.eta) == row.ell;

    detail = "max roundtrip err " + fmt(worst);
    return ok;
}

// --- check 9: canonical form invariance -----------------------------------------

germs::GermMap random_oriented_germ(int n, rng::Sampler& rng) {
    for (;;) {
        germs::GermMap f(n, n - 1, 2);
        jet::MonomialBasis basis(n, 2);
        for (int i = 0; i < n - 1; ++i) {
            jet::Jet c(n, 2);
            for (int idx = 1; idx < basis.size(); ++idx)
                c.set_coeff_at(idx, rng.uniform(-2.0, 2.0));
            f.set_component(i, std::move(c));
        }
        if (f.lambda_gradient().determinant() > 0.5) return f;
    }
}

germs::UnimodularMatrix random_unimodular(int dim, rng::Sampler& rng) {
    for (;;) {
        Eigen::MatrixXi m(dim, dim);
        for (int r = 0; r < dim; ++r)
            for (int c = 0; c < dim; ++c) m(r, c) = rng.uniform_int(-3, 3);
        if (germs::integer_determinant(m) == 1) return germs::UnimodularMatrix(m);
    }
}

bool check_bracket_invariance(std::string& detail) {
    const double tol = 1e-9;
    rng::Sampler rng(901);
    bool ok = true;
    for (int n : {3, 4, 5}) {
        for (int trial = 0; trial < 50; ++trial) {
            germs::GermMap f = random_oriented_germ(n, rng);
            germs::GermMap bf = germs::bracket_canonical(f, n);
            germs::UnimodularMatrix A = random_unimodular(n - 1, rng);
            germs::GermMap bg = germs::bracket_canonical(germs::sl_act(A, f), n);
            ok = ok && germs::GermMap::lex_compare(bf, bg, tol) == 0;
            if (n % 2 == 1) {
                germs::GermMap bp = germs::bracket_canonical(germs::compose_psi(f, n), n);
                ok = ok && germs::GermMap::lex_compare(bf, bp, tol) == 0;
            }
            germs::GermMap bb = germs::bracket_canonical(bf, n);
            ok = ok && germs::GermMap::lex_compare(bf, bb, tol) == 0;
        }
    }
    detail = "50 trials per order 3, 4, 5";
    return ok;
}

// --- check 10: monodromy orbit covers the generators -----------------------------

bool check_monodromy(std::string& detail) {
    bool ok = true;
    for (int n = 1; n <= 6; ++n) {
        auto orbit = symmetry::monodromy_orbit(n);
        ok = ok && static_cast<int>(orbit.size()) == n * (n + 1);
        ok = ok && symmetry::orbit_covers_generators(n, orbit);
    }
    detail = "orders 1..6, orbit size n(n+1)";
    return ok;
}

// --- check 11: jet classification verdicts ---------------------------------------

bool check_classification(std::string& detail) {
    bool ok = true;

    jet::Jet H2(3, 4);
    H2.set_coeff({2, 0, 0}, 1.0);
    H2.set_coeff({0, 3, 0}, 1.0);
    H2.set_coeff({0, 1, 1}, 1.0);
    normalform::SingularityClass a = normalform::classify_jet(normalform::JetFamily(2, H2));
    ok = ok && a.accepted && a.label() == "accepted: n=2, eta=+1 (parabolic)";

    jet::Jet H3(4, 5);
    H3.set_coeff({2, 0, 0, 0}, -1.0);
    H3.set_coeff({0, 4, 0, 0}, 1.0);
    H3.set_coeff({0, 1, 1, 0}, 1.0);
    H3.set_coeff({0, 2, 0, 1}, 1.0);
    normalform::SingularityClass b = normalform::classify_jet(normalform::JetFamily(3, H3));
    ok = ok && b.accepted && b.n == 3 && b.eta == -1;

    jet::Jet H3p = H3;
    H3p.set_coeff({0, 3, 0, 0}, 0.05);
    normalform::SingularityClass c = normalform::classify_jet(normalform::JetFamily(3, H3p));
    ok = ok && !c.accepted && c.failed == normalform::JetCondition::Order && c.n == 2;

    detail = std::string("verdicts: ") + (a.accepted ? "parabolic ok" : "parabolic WRONG") + ", " +
             (b.accepted ? "subcritical ok" : "subcritical WRONG") + ", " +
             (!c.accepted ? "perturbed rejected" : "perturbed WRONG");
    return ok;
}

}  // namespace

int main() {
    struct Entry {
        const char* name;
        std::function<bool(std::string&)> fn;
        double budget_s;  // 0 means no wall-clock requirement
    };
    const Entry entries[] = {
        {"order-1 action closed form", check_fold_closed_form, 1.0},
        {"limit determinant moduli", check_limit_determinant, 30.0},
        {"involution equivariance", check_equivariance, 120.0},
        {"quasi-homogeneous scaling", check_scaling, 0.0},
        {"action Jacobian vs central differences", check_jacobian, 0.0},
        {"injectivity probe", check_injectivity, 0.0},
        {"parameter-germ recovery", check_germ_recovery, 300.0},
        {"root parametrization and domain geometry", check_geometry, 0.0},
        {"canonical form invariance", check_bracket_invariance, 60.0},
        {"monodromy orbit coverage", check_monodromy, 1.0},
        {"jet classification verdicts", check_classification, 0.0},
    };

    int failures = 0;
    int idx = 0;
    for (const auto& e : entries) {
        ++idx;
        std::string detail;
        bool ok = false;
        auto t0 = std::chrono::steady_clock::now();
        try {
            ok = e.fn(detail);
        } catch (const std::exception& ex) {
            ok = false;
            detail = std::string("exception: ") + ex.what();
        }
        double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (e.budget_s > 0.0 && sec > e.budget_s) {
            ok = false;
            detail += " [over budget " + fmt(e.budget_s) + "s]";
        }
        std::printf("[%2d] %-44s %s  (%6.2fs)  %s\n", idx, e.name, ok ? "PASS" : "FAIL", sec,
                    detail.c_str());
        if (!ok) ++failures;
    }
    std::printf("%d/11 checks passed\n", 11 - failures);
    return failures;
}
