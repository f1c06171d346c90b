#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "anfold/normalform.hpp"
#include "anfold/swallowtail.hpp"
#include "anfold/symmetry.hpp"

#include <cmath>
#include <vector>

using namespace anfold;
using namespace anfold::normalform;

namespace {

periods::WeightFunction unit() { return periods::WeightFunction::constant(1.0); }

double max_coeff_error(const germs::GermMap& a, const germs::GermMap& b) {
    auto sa = a.coefficient_sequence();
    auto sb = b.coefficient_sequence();
    REQUIRE(sa.size() == sb.size());
    double err = 0.0;
    for (std::size_t i = 0; i < sa.size(); ++i) err = std::max(err, std::abs(sa[i] - sb[i]));
    return err;
}

}  // namespace

TEST_CASE("parabolic model jet is accepted with its unfolding read off") {
    // H = x^2 + y^3 + eps y
    jet::Jet H(3, 4);
    H.set_coeff({2, 0, 0}, 1.0);
    H.set_coeff({0, 3, 0}, 1.0);
    H.set_coeff({0, 1, 1}, 1.0);
    SingularityClass sc = classify_jet(JetFamily(2, H));
    CHECK(sc.accepted);
    CHECK(sc.failed == JetCondition::None);
    CHECK(sc.n == 2);
    CHECK(sc.eta == +1);
    CHECK(sc.label() == "accepted: n=2, eta=+1 (parabolic)");
    REQUIRE(sc.lambda0_known);
    // lambda_1(eps) = eps exactly
    CHECK(sc.lambda0.coeff(0, {1}) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(sc.diag.detected_order == 2);
    CHECK(sc.diag.hessian_rank == 1);
}

TEST_CASE("subcritical quartic family is accepted with eta = -1") {
    // H = -x^2 + y^4 + eps1 y + eps2 y^2
    jet::Jet H(4, 5);
    H.set_coeff({2, 0, 0, 0}, -1.0);
    H.set_coeff({0, 4, 0, 0}, 1.0);
    H.set_coeff({0, 1, 1, 0}, 1.0);
    H.set_coeff({0, 2, 0, 1}, 1.0);
    SingularityClass sc = classify_jet(JetFamily(3, H));
    CHECK(sc.accepted);
    CHECK(sc.eta == -1);
    CHECK(sc.label() == "accepted: n=3, eta=-1 (subcritical)");
    REQUIRE(sc.lambda0_known);
    CHECK(sc.lambda0.coeff(0, {1, 0}) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(sc.lambda0.coeff(1, {0, 1}) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("reintroducing the cubic term drops the detected order") {
    jet::Jet H(4, 5);
    H.set_coeff({2, 0, 0, 0}, -1.0);
    H.set_coeff({0, 4, 0, 0}, 1.0);
    H.set_coeff({0, 1, 1, 0}, 1.0);
    H.set_coeff({0, 2, 0, 1}, 1.0);
    H.set_coeff({0, 3, 0, 0}, 0.05);  // y^3 back in
    SingularityClass sc = classify_jet(JetFamily(3, H));
    CHECK_FALSE(sc.accepted);
    CHECK(sc.failed == JetCondition::Order);
    CHECK(sc.n == 2);  // the order actually present
}

TEST_CASE("non-critical and rank-zero jets are rejected early") {
    jet::Jet grad(3, 3);
    grad.set_coeff({1, 0, 0}, 0.5);  // dH/dx(0) != 0
    grad.set_coeff({0, 3, 0}, 1.0);
    SingularityClass sc = classify_jet(JetFamily(2, grad));
    CHECK_FALSE(sc.accepted);
    CHECK(sc.failed == JetCondition::CriticalPoint);

    jet::Jet flat(3, 4);
    flat.set_coeff({0, 3, 0}, 1.0);  // no quadratic part at all
    SingularityClass sc2 = classify_jet(JetFamily(2, flat));
    CHECK_FALSE(sc2.accepted);
    CHECK(sc2.failed == JetCondition::HessianRank);

    jet::Jet zero(3, 3);
    SingularityClass sc3 = classify_jet(JetFamily(2, zero));
    CHECK_FALSE(sc3.accepted);
    CHECK(sc3.failed == JetCondition::HessianRank);
}

TEST_CASE("full-rank quadratic part identifies the fold orders") {
    // H = x^2 + y^2: n = 1, elliptic for eta = +1
    jet::Jet Hp(2, 3);
    Hp.set_coeff({2, 0}, 1.0);
    Hp.set_coeff({0, 2}, 1.0);
    SingularityClass sc = classify_jet(JetFamily(1, Hp));
    CHECK(sc.accepted);
    CHECK(sc.n == 1);
    CHECK(sc.eta == +1);
    CHECK(sc.label() == "accepted: n=1, eta=+1 (elliptic)");

    // H = x^2 - y^2: hyperbolic
    jet::Jet Hm(2, 3);
    Hm.set_coeff({2, 0}, 1.0);
    Hm.set_coeff({0, 2}, -1.0);
    SingularityClass sc2 = classify_jet(JetFamily(1, Hm));
    CHECK(sc2.accepted);
    CHECK(sc2.eta == -1);
    CHECK(sc2.label() == "accepted: n=1, eta=-1 (hyperbolic)");
}

TEST_CASE("mixed quadratic terms are rotated away before order detection") {
    // H = (x + y)^2 + y^3 + eps y: still parabolic after the rotation
    jet::Jet H(3, 4);
    H.set_coeff({2, 0, 0}, 1.0);
    H.set_coeff({1, 1, 0}, 2.0);
    H.set_coeff({0, 2, 0}, 1.0);
    H.set_coeff({0, 3, 0}, 1.0);
    H.set_coeff({0, 1, 1}, 1.0);
    SingularityClass sc = classify_jet(JetFamily(2, H));
    CHECK(sc.accepted);
    CHECK(sc.n == 2);
    CHECK(sc.eta == +1);
}

TEST_CASE("an overall sign flip normalizes even orders to eta = +1") {
    // -(x^2 + y^5 + eps terms): even order n = 4 forces eta = +1 and the
    // classifier reaches it by flipping the sign of H.
    jet::Jet H(5, 6);
    H.set_coeff({2, 0, 0, 0, 0}, -1.0);
    H.set_coeff({0, 5, 0, 0, 0}, -1.0);
    H.set_coeff({0, 1, 1, 0, 0}, -1.0);
    H.set_coeff({0, 2, 0, 1, 0}, -1.0);
    H.set_coeff({0, 3, 0, 0, 1}, -1.0);
    SingularityClass sc = classify_jet(JetFamily(4, H));
    CHECK(sc.accepted);
    CHECK(sc.n == 4);
    CHECK(sc.eta == +1);
}

TEST_CASE("degenerate unfolding directions fail transversality") {
    // H = x^2 + y^3 + eps y^2: the shift kills y^2, leaving lambda(eps) with
    // a vanishing linear part.
    jet::Jet H(3, 4);
    H.set_coeff({2, 0, 0}, 1.0);
    H.set_coeff({0, 3, 0}, 1.0);
    H.set_coeff({0, 2, 1}, 1.0);
    SingularityClass sc = classify_jet(JetFamily(2, H));
    CHECK_FALSE(sc.accepted);
    CHECK(sc.failed == JetCondition::Transversality);
    CHECK(sc.n == 2);  // the order itself was fine
}

TEST_CASE("jet family constructor validates the variable count") {
    jet::Jet H(3, 4);
    CHECK_THROWS_AS(JetFamily(3, H), std::invalid_argument);  // needs 4 vars
    CHECK_THROWS_AS(JetFamily(0, H), std::invalid_argument);
    jet::Jet low(3, 2);
    CHECK_THROWS_AS(JetFamily(2, low), std::invalid_argument);  // degree < n+1
}

TEST_CASE("newton inversion reproduces the forward map") {
    poly::UnfoldingPoly x(2, +1, 0.05, {-0.4});
    Eigen::VectorXd target = periods::action_vector(x, unit()).as_vector();
    poly::UnfoldingPoly start(2, +1, 0.01, {-0.2});
    poly::UnfoldingPoly y = invert_actions(target, start);
    CHECK(y.h == doctest::Approx(x.h).epsilon(1e-9));
    CHECK(y.lambda[0] == doctest::Approx(x.lambda[0]).epsilon(1e-9));
}

TEST_CASE("newton inversion reaches far targets through the scaling family") {
    poly::UnfoldingPoly x(3, +1, -0.0432, {0.066, -0.79});
    Eigen::VectorXd target = periods::action_vector(x, unit()).as_vector();
    // start far away in the shrunken copy of the domain
    poly::UnfoldingPoly start = symmetry::scaling_psi_c(0.35, x);
    poly::UnfoldingPoly y = invert_actions(target, start);
    CHECK(y.h == doctest::Approx(x.h).epsilon(1e-8));
    CHECK(y.lambda[1] == doctest::Approx(x.lambda[1]).epsilon(1e-8));
}

TEST_CASE("unreachable targets raise NewtonDiverged") {
    Eigen::VectorXd bad(2);
    bad << -1.0, -1.0;  // actions are positive, nothing maps here
    poly::UnfoldingPoly start(2, +1, 0.0, {-1.0});
    CHECK_THROWS_AS(invert_actions(bad, start), NewtonDiverged);
}

TEST_CASE("matching the unit weight returns the identity germ") {
    auto grid = swallowtail::domain_sample(2, +1, 0.5, 40, 5);
    MatchReport rep = period_match(unit(), 2, +1, grid, {}, 2);
    germs::GermMap id(2, 2, 2);
    id.set_coeff(0, {1, 0}, 1.0);
    id.set_coeff(1, {0, 1}, 1.0);
    CHECK(max_coeff_error(rep.phi, id) < 1e-8);
    CHECK(rep.max_match_residual < 1e-8);
    CHECK(rep.linear_det == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(rep.non_interior_images == 0);
}

TEST_CASE("a synthetic quadratic germ is recovered from its induced targets") {
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
    for (std::uint64_t s = 13; grid.size() < 80; ++s)
        for (const auto& x : swallowtail::domain_sample(n, +1, 0.35, 120, s)) {
            if (grid.size() >= 80) break;
            if (swallowtail::classify_point(apply(x)).kind ==
                swallowtail::RegionKind::Interior)
                grid.push_back(x);
        }
    TargetFunction target = [&](const poly::UnfoldingPoly& x) {
        return periods::action_vector(apply(x), unit()).as_vector();
    };
    MatchReport rep = period_match_targets(target, n, +1, grid, {}, 2);
    CHECK(max_coeff_error(rep.phi, phi0) < 1e-6);
}

TEST_CASE("reversed targets recover the parameter involution") {
    // chi-composed actions belong to the psi-transformed parameters, so the
    // fitted germ is the linear involution (h, -l1, l2).
    const int n = 3;
    auto grid = swallowtail::domain_sample(n, -1, 0.35, 60, 9);
    TargetFunction target = [&](const poly::UnfoldingPoly& x) {
        return symmetry::chi(periods::action_vector(x, unit())).as_vector();
    };
    MatchReport rep = period_match_targets(target, n, -1, grid, {}, 2);
    germs::GermMap psig(n, n, 2);
    psig.set_coeff(0, {1, 0, 0}, 1.0);
    psig.set_coeff(1, {0, 1, 0}, -1.0);
    psig.set_coeff(2, {0, 0, 1}, 1.0);
    CHECK(max_coeff_error(rep.phi, psig) < 1e-5);
}

TEST_CASE("matching degenerates loudly") {
    auto grid = swallowtail::domain_sample(2, +1, 0.5, 3, 5);  // fewer points than columns
    CHECK_THROWS_AS(period_match(unit(), 2, +1, grid, {}, 3), IllConditionedFit);
    CHECK_THROWS_AS(period_match(unit(), 2, +1, {}, {}, 2), std::invalid_argument);
}

TEST_CASE("collapse paths stay interior and shrink the chosen gap") {
    auto path = branch_collapse_path(2, +1, 1, 12, 7);
    REQUIRE(path.size() == 12);
    double prev_gap = 1e9;
    for (const auto& p : path) {
        CHECK(swallowtail::classify_point(p).kind == swallowtail::RegionKind::Interior);
        auto rr = poly::roots_sorted(p).real_roots_ascending();
        double gap = rr[1] - rr[0];
        CHECK(gap < prev_gap);
        prev_gap = gap;
    }
    // last gap is near the documented floor
    CHECK(prev_gap < 2e-3);
    CHECK_THROWS_AS(branch_collapse_path(2, +1, 3, 12, 7), std::invalid_argument);
}

TEST_CASE("injectivity probe reports clean geometry on small samples") {
    ProbeReport rep = injectivity_probe(2, +1, unit(), 60);
    CHECK(rep.sample_count == 60);
    CHECK(rep.collision_count == 0);
    CHECK(rep.min_ratio > 0.0);
    CHECK(rep.magnitudes_positive);
    CHECK(rep.jacobian_sign_constant);
    REQUIRE(rep.paths.size() >= 3);
    for (const auto& cp : rep.paths) {
        CHECK(cp.final_branch_magnitude < 1e-6);
        CHECK(cp.min_other_magnitude > 1e-3);
        CHECK(cp.tail_monotone);
    }
}

TEST_CASE("match report rescaling invariance") {
    // Matching data from a scaled copy of the domain fits the scaling germ,
    // whose linear part is diagonal with the quasi-homogeneous weights.
    const int n = 2;
    const double c = 1.15;
    auto grid = swallowtail::domain_sample(n, +1, 0.3, 50, 23);
    TargetFunction target = [&](const poly::UnfoldingPoly& x) {
        return periods::action_vector(symmetry::scaling_psi_c(c, x), unit()).as_vector();
    };
    MatchReport rep = period_match_targets(target, n, +1, grid, {}, 2);
    CHECK(rep.phi.coeff(0, {1, 0}) == doctest::Approx(std::pow(c, 6.0)).epsilon(1e-6));
    CHECK(rep.phi.coeff(1, {0, 1}) == doctest::Approx(std::pow(c, 4.0)).epsilon(1e-6));
    CHECK(rep.phi.coeff(0, {0, 1}) == doctest::Approx(0.0).epsilon(1e-6));
}

TEST_CASE("condition names are stable") {
    CHECK(condition_name(JetCondition::None) == "none");
    CHECK(condition_name(JetCondition::CriticalPoint) == "critical-point");
    CHECK(condition_name(JetCondition::HessianRank) == "hessian-rank");
    CHECK(condition_name(JetCondition::Order) == "order");
    CHECK(condition_name(JetCondition::Transversality) == "transversality");
}
