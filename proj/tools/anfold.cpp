// anfold: command line surface over the unfolded A_n singularity library.
//
// Exit codes: 0 success, 2 precondition violated (bad point, bad dimensions,
// failed threshold check), 3 convergence failure (quadrature or Newton),
// 4 input file parse error.

#include "anfold/germs.hpp"
#include "anfold/io.hpp"
#include "anfold/normalform.hpp"
#include "anfold/periods.hpp"
#include "anfold/poly.hpp"
#include "anfold/swallowtail.hpp"
#include "anfold/symmetry.hpp"

#include "CLI11.hpp"

#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

namespace {

using namespace anfold;

constexpr int kExitPrecondition = 2;
constexpr int kExitConvergence = 3;
constexpr int kExitParse = 4;

struct RunConfig {
    int n = 2;
    int eta = +1;
    int degree = 2;
    double tol = 1e-8;
    int grid = 50;
    std::uint64_t seed = 2024;
    std::string out;
    std::vector<double> point;
    std::vector<std::string> files;
};

// Even n admits only the positive momentum signature.
void force_eta(RunConfig& cfg) {
    if (cfg.n % 2 == 0) cfg.eta = +1;
}

poly::UnfoldingPoly point_of(const RunConfig& cfg) {
    if (static_cast<int>(cfg.point.size()) != cfg.n)
        throw std::invalid_argument("expected " + std::to_string(cfg.n) +
                                    " point values (h lambda_1 .. lambda_" +
                                    std::to_string(cfg.n - 1) + "), got " +
                                    std::to_string(cfg.point.size()));
    return poly::UnfoldingPoly(cfg.n, cfg.eta, cfg.point[0],
                               {cfg.point.begin() + 1, cfg.point.end()});
}

void print_kv(const char* key, const std::string& value) {
    std::printf("%s = %s\n", key, value.c_str());
}

void print_kv(const char* key, double value) { print_kv(key, io::format_double(value)); }

void print_germ_coeffs(const germs::GermMap& f) {
    for (int i = 0; i < f.target_dim(); ++i) {
        const jet::Jet& c = f.component(i);
        for (int idx = 0; idx < c.term_count(); ++idx) {
            double v = c.coeff_at(idx);
            if (v == 0.0) continue;
            std::string exps;
            for (int e : c.basis().exponents(idx)) {
                if (!exps.empty()) exps += ",";
                exps += std::to_string(e);
            }
            std::printf("  comp %d [%s] = %s\n", i, exps.c_str(),
                        io::format_double(v).c_str());
        }
    }
}

std::vector<std::string> csv_header(int n) {
    std::vector<std::string> h = {"h"};
    for (int j = 1; j < n; ++j) h.push_back("lambda_" + std::to_string(j));
    for (int k = 1; k <= n; ++k) h.push_back("a_" + std::to_string(k));
    h.push_back("class");
    return h;
}

int cmd_classify(const RunConfig& cfg) {
    normalform::JetFamily fam = io::read_jet_family(cfg.files.at(0));
    normalform::SingularityClass sc = normalform::classify_jet(fam, cfg.tol);
    std::printf("%s\n", sc.label().c_str());
    print_kv("detected_order", std::to_string(sc.diag.detected_order));
    print_kv("gradient_norm", sc.diag.gradient_norm);
    print_kv("hessian_rank", std::to_string(sc.diag.hessian_rank));
    print_kv("leading_coeff", sc.diag.leading_coeff);
    print_kv("order_residual", sc.diag.order_residual);
    print_kv("transversality_sigma", sc.diag.transversality_sigma);
    if (sc.lambda0_known) {
        std::printf("lambda0 coefficients (eps powers):\n");
        print_germ_coeffs(sc.lambda0);
        if (!cfg.out.empty()) io::write_germ(cfg.out, sc.lambda0);
    }
    return 0;
}

int cmd_domain(const RunConfig& cfg) {
    auto pts = swallowtail::domain_sample(cfg.n, cfg.eta, 0.8, cfg.grid, cfg.seed);
    std::vector<std::vector<std::string>> rows;
    rows.reserve(pts.size());
    for (const auto& p : pts) {
        std::vector<std::string> row = {io::format_double(p.h)};
        for (double l : p.lambda) row.push_back(io::format_double(l));
        periods::ActionVector a = periods::action_vector(p, periods::WeightFunction::constant(1.0));
        for (double m : a.magnitudes) row.push_back(io::format_double(m));
        row.push_back(swallowtail::classify_point(p).label());
        rows.push_back(std::move(row));
    }
    swallowtail::EstimateReport est = swallowtail::estimate_check(pts);
    print_kv("samples", std::to_string(pts.size()));
    print_kv("lambda_last_all_negative", std::string(est.lambda_last_all_negative ? "yes" : "no"));
    print_kv("max_lambda_ratio", est.max_lambda_ratio);
    print_kv("max_h_ratio", est.max_h_ratio);
    if (!cfg.out.empty()) {
        io::write_csv(cfg.out, csv_header(cfg.n), rows);
        std::printf("wrote %s (%zu rows)\n", cfg.out.c_str(), rows.size());
    }
    return 0;
}

int cmd_actions(const RunConfig& cfg) {
    poly::UnfoldingPoly p = point_of(cfg);
    swallowtail::DomainClass dc = swallowtail::classify_point(p);
    print_kv("class", dc.label());
    periods::ActionVector a = periods::action_vector(p, periods::WeightFunction::constant(1.0));
    for (int k = 1; k <= cfg.n; ++k) {
        std::string key = "a_" + std::to_string(k);
        std::string val = io::format_double(a.magnitudes[static_cast<std::size_t>(k - 1)]);
        val += a.real_cycle(k) ? " (real)" : " (imaginary)";
        print_kv(key.c_str(), val);
    }
    if (!cfg.out.empty()) {
        std::vector<std::string> row = {io::format_double(p.h)};
        for (double l : p.lambda) row.push_back(io::format_double(l));
        for (double m : a.magnitudes) row.push_back(io::format_double(m));
        row.push_back(dc.label());
        io::write_csv(cfg.out, csv_header(cfg.n), {row});
    }
    return 0;
}

int cmd_jacobian(const RunConfig& cfg) {
    poly::UnfoldingPoly p = point_of(cfg);
    Eigen::MatrixXd J =
        periods::action_jacobian(p, periods::WeightFunction::constant(1.0));
    std::printf("rows a_1..a_%d, columns h lambda_1..lambda_%d\n", cfg.n, cfg.n - 1);
    for (int r = 0; r < J.rows(); ++r) {
        std::string line;
        for (int c = 0; c < J.cols(); ++c) {
            if (c) line += ",";
            line += io::format_double(J(r, c));
        }
        std::printf("%s\n", line.c_str());
    }
    print_kv("det", J.determinant());
    return 0;
}

int cmd_detlimit(const RunConfig& cfg) {
    std::complex<double> D = periods::limit_determinant(cfg.n, cfg.eta);
    // Row order, hence the phase, is a convention; the modulus is the value.
    print_kv("D", std::abs(D));
    return 0;
}

int cmd_equivariance(const RunConfig& cfg) {
    auto pts = swallowtail::domain_sample(cfg.n, cfg.eta, 0.8, cfg.grid, cfg.seed);
    double r = symmetry::check_equivariance(cfg.n, cfg.eta, pts);
    print_kv("samples", std::to_string(pts.size()));
    print_kv("residual", r);
    if (!(r < cfg.tol)) {
        std::printf("FAIL (tol = %s)\n", io::format_double(cfg.tol).c_str());
        return kExitPrecondition;
    }
    std::printf("PASS (tol = %s)\n", io::format_double(cfg.tol).c_str());
    return 0;
}

int cmd_cycles(const RunConfig& cfg) {
    poly::UnfoldingPoly p = point_of(cfg);
    std::vector<std::vector<std::string>> rows;
    for (int k = 1; k <= cfg.n; ++k) {
        auto pts = periods::cycle_points(p, k, cfg.grid);
        for (const auto& cp : pts)
            rows.push_back({std::to_string(k), io::format_double(cp.p.real()),
                            io::format_double(cp.p.imag()), io::format_double(cp.q)});
    }
    print_kv("points", std::to_string(rows.size()));
    if (!cfg.out.empty()) {
        io::write_csv(cfg.out, {"k", "p_re", "p_im", "q"}, rows);
        std::printf("wrote %s (%zu rows)\n", cfg.out.c_str(), rows.size());
    }
    return 0;
}

int cmd_match(const RunConfig& cfg) {
    periods::WeightFunction g = cfg.files.empty() ? periods::WeightFunction::constant(1.0)
                                                  : io::read_weight(cfg.files.at(0));
    auto grid = swallowtail::domain_sample(cfg.n, cfg.eta, 0.5, cfg.grid, cfg.seed);
    normalform::MatchReport rep =
        normalform::period_match(g, cfg.n, cfg.eta, grid, {}, cfg.degree, cfg.tol);
    print_kv("fit_residual", rep.fit_residual);
    print_kv("max_match_residual", rep.max_match_residual);
    print_kv("linear_det", rep.linear_det);
    print_kv("non_interior_images", std::to_string(rep.non_interior_images));
    std::printf("phi coefficients:\n");
    print_germ_coeffs(rep.phi);
    if (!cfg.out.empty()) io::write_germ(cfg.out, rep.phi);
    return 0;
}

int cmd_germ(const RunConfig& cfg) {
    germs::GermMap f = io::read_germ(cfg.files.at(0));
    int n = f.source_dim();
    germs::GermMap canon = germs::bracket_canonical(f, n, cfg.tol);
    print_kv("n", std::to_string(n));
    std::printf("canonical germ coefficients:\n");
    print_germ_coeffs(canon);
    if (!cfg.out.empty()) io::write_germ(cfg.out, canon);
    return 0;
}

int cmd_invariant(const RunConfig& cfg) {
    germs::SemiGlobalInvariant x = io::read_invariant(cfg.files.at(0));
    germs::SemiGlobalInvariant xn =
        germs::assemble_invariant(x.n, x.eta, x.J_canonical, x.beta, x.S, cfg.tol);
    if (cfg.files.size() >= 2) {
        germs::SemiGlobalInvariant y = io::read_invariant(cfg.files.at(1));
        germs::SemiGlobalInvariant yn =
            germs::assemble_invariant(y.n, y.eta, y.J_canonical, y.beta, y.S, cfg.tol);
        bool eq = germs::invariants_equal(xn, yn, cfg.tol);
        print_kv("equal", std::string(eq ? "yes" : "no"));
        return 0;
    }
    print_kv("n", std::to_string(xn.n));
    print_kv("eta", std::string(xn.eta > 0 ? "+1" : "-1"));
    print_kv("ell", std::to_string(xn.ell));
    std::string beta;
    for (int b : xn.beta) {
        if (!beta.empty()) beta += " ";
        beta += std::to_string(b);
    }
    print_kv("beta", "(" + beta + ")");
    std::printf("J coefficients:\n");
    print_germ_coeffs(xn.J_canonical);
    for (std::size_t i = 0; i < xn.S.size(); ++i) {
        std::printf("S_%zu coefficients:\n", i + 1);
        print_germ_coeffs(xn.S[i]);
    }
    if (!cfg.out.empty()) io::write_invariant(cfg.out, xn);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"unfolded A_n singularities: classification, actions, invariants"};
    app.require_subcommand(1);

    RunConfig cfg;
    auto add_common = [&](CLI::App* sub, bool needs_point, int file_args) {
        sub->add_option("--n", cfg.n, "singularity order")->check(CLI::PositiveNumber);
        sub->add_option("--eta", cfg.eta, "momentum signature, +1 or -1")
            ->check(CLI::IsMember({1, -1}));
        sub->add_option("--degree", cfg.degree, "polynomial fit degree");
        sub->add_option("--tol", cfg.tol, "tolerance / threshold");
        sub->add_option("--grid", cfg.grid, "sample or grid size")->check(CLI::PositiveNumber);
        sub->add_option("--seed", cfg.seed, "sampling seed");
        sub->add_option("--out", cfg.out, "output file path");
        if (needs_point)
            sub->add_option("point", cfg.point, "point values: h lambda_1 .. lambda_{n-1}");
        if (file_args > 0) {
            auto* opt = sub->add_option("files", cfg.files, "input file(s)");
            opt->expected(1, file_args)->required();
        }
    };

    CLI::App* classify = app.add_subcommand("classify", "verify the claimed order of a jet family");
    add_common(classify, false, 1);
    cfg.tol = 1e-8;
    CLI::App* domain = app.add_subcommand("domain", "sample interior points, actions and classes");
    add_common(domain, false, 0);
    CLI::App* actions = app.add_subcommand("actions", "action magnitudes at one parameter point");
    add_common(actions, true, 0);
    CLI::App* jacobian = app.add_subcommand("jacobian", "action Jacobian at one parameter point");
    add_common(jacobian, true, 0);
    CLI::App* detlimit = app.add_subcommand("detlimit", "limit determinant modulus |D|");
    add_common(detlimit, false, 0);
    CLI::App* equivariance =
        app.add_subcommand("equivariance", "involution equivariance residual over a sample");
    add_common(equivariance, false, 0);
    CLI::App* cycles = app.add_subcommand("cycles", "vanishing cycle traces at one point");
    add_common(cycles, true, 0);
    CLI::App* match = app.add_subcommand("match", "recover the parameter germ matching a weight");
    add_common(match, false, 1);
    match->get_option("files")->required(false);
    CLI::App* germ = app.add_subcommand("germ", "canonical form of an action germ file");
    add_common(germ, false, 1);
    CLI::App* invariant =
        app.add_subcommand("invariant", "normalize or compare semi-global invariants");
    add_common(invariant, false, 2);

    // Per-command tolerance defaults; a --tol flag overrides them.
    classify->callback([&] {
        if (!classify->count("--tol")) cfg.tol = 1e-9;
    });
    equivariance->callback([&] {
        if (!equivariance->count("--tol")) cfg.tol = 1e-8;
    });
    match->callback([&] {
        if (!match->count("--tol")) cfg.tol = 1e-10;
    });
    germ->callback([&] {
        if (!germ->count("--tol")) cfg.tol = 1e-9;
    });
    invariant->callback([&] {
        if (!invariant->count("--tol")) cfg.tol = 1e-9;
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : kExitPrecondition;
    }

    force_eta(cfg);

    try {
        if (classify->parsed()) return cmd_classify(cfg);
        if (domain->parsed()) return cmd_domain(cfg);
        if (actions->parsed()) return cmd_actions(cfg);
        if (jacobian->parsed()) return cmd_jacobian(cfg);
        if (detlimit->parsed()) return cmd_detlimit(cfg);
        if (equivariance->parsed()) return cmd_equivariance(cfg);
        if (cycles->parsed()) return cmd_cycles(cfg);
        if (match->parsed()) return cmd_match(cfg);
        if (germ->parsed()) return cmd_germ(cfg);
        if (invariant->parsed()) return cmd_invariant(cfg);
    } catch (const io::ParseError& e) {
        std::fprintf(stderr, "parse error: %s\n", e.what());
        return kExitParse;
    } catch (const periods::QuadratureError& e) {
        std::fprintf(stderr, "convergence failure: %s\n", e.what());
        return kExitConvergence;
    } catch (const normalform::NewtonDiverged& e) {
        std::fprintf(stderr, "convergence failure: %s\n", e.what());
        return kExitConvergence;
    } catch (const normalform::IllConditionedFit& e) {
        std::fprintf(stderr, "convergence failure: %s\n", e.what());
        return kExitConvergence;
    } catch (const periods::NotInteriorError& e) {
        std::fprintf(stderr, "precondition: NotInterior: %s\n", e.what());
        return kExitPrecondition;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "precondition: %s\n", e.what());
        return kExitPrecondition;
    } catch (const std::runtime_error& e) {
        std::fprintf(stderr, "precondition: %s\n", e.what());
        return kExitPrecondition;
    }
    return 0;
}
