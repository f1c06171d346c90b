#include "anfold/symmetry.hpp"

#include "anfold/rng.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace anfold::symmetry {

namespace {

using cplx = std::complex<double>;

void require_n_at_least_2(int n, const char* who) {
    if (n < 2) throw std::invalid_argument(std::string(who) + ": n must be >= 2");
}

}  // namespace

std::pair<double, std::vector<double>> psi(int n, double h, std::span<const double> lambda) {
    require_n_at_least_2(n, "psi");
    if (static_cast<int>(lambda.size()) != n - 1)
        throw std::invalid_argument("psi: lambda must have n-1 entries");
    // Flip lambda_j exactly when j has the parity of n; flip h for even n.
    double h2 = (n % 2 == 0) ? -h : h;
    std::vector<double> l2(lambda.begin(), lambda.end());
    for (int j = 1; j <= n - 1; ++j)
        if (j % 2 == n % 2) l2[j - 1] = -l2[j - 1];
    return {h2, std::move(l2)};
}

poly::UnfoldingPoly psi(const poly::UnfoldingPoly& p) {
    auto [h2, l2] = psi(p.n, p.h, p.lambda);
    return poly::UnfoldingPoly(p.n, p.eta, h2, std::move(l2));
}

periods::ActionVector chi(const periods::ActionVector& a) {
    periods::ActionVector out = a;
    std::reverse(out.magnitudes.begin(), out.magnitudes.end());
    return out;
}

std::pair<double, std::vector<double>> scaling_psi_c(double c, int n, double h,
                                                     std::span<const double> lambda) {
    if (!(c > 0.0)) throw std::invalid_argument("scaling_psi_c: c must be positive");
    if (static_cast<int>(lambda.size()) != n - 1)
        throw std::invalid_argument("scaling_psi_c: lambda must have n-1 entries");
    double h2 = std::pow(c, 2.0 * (n + 1)) * h;
    std::vector<double> l2(lambda.begin(), lambda.end());
    for (int j = 1; j <= n - 1; ++j) l2[j - 1] *= std::pow(c, 2.0 * (n + 1 - j));
    return {h2, std::move(l2)};
}

poly::UnfoldingPoly scaling_psi_c(double c, const poly::UnfoldingPoly& p) {
    auto [h2, l2] = scaling_psi_c(c, p.n, p.h, p.lambda);
    return poly::UnfoldingPoly(p.n, p.eta, h2, std::move(l2));
}

periods::ActionVector scaling_chi_c(double c, const periods::ActionVector& a) {
    if (!(c > 0.0)) throw std::invalid_argument("scaling_chi_c: c must be positive");
    periods::ActionVector out = a;
    double f = std::pow(c, a.n + 3.0);
    for (double& m : out.magnitudes) m *= f;
    return out;
}

PhasePoint phase_involution(int n, const PhasePoint& x) {
    if (n < 1) throw std::invalid_argument("phase_involution: n must be >= 1");
    if (static_cast<int>(x.lambda.size()) != n - 1 || static_cast<int>(x.mu.size()) != n - 1)
        throw std::invalid_argument("phase_involution: lambda/mu must have n-1 entries");
    PhasePoint y = x;
    const cplx iu(0.0, 1.0);
    if (n % 2 == 1) {
        for (int j = 1; j <= n - 1; ++j) {
            double s = (j % 2 == 1) ? -1.0 : 1.0;
            y.lambda[j - 1] = s * x.lambda[j - 1];
            y.mu[j - 1] = s * x.mu[j - 1];
        }
        y.p = -x.p;
        y.q = -x.q;
    } else {
        for (int j = 1; j <= n - 1; ++j) {
            double s = (j % 2 == 1) ? -1.0 : 1.0;
            y.lambda[j - 1] = -s * x.lambda[j - 1];
            y.mu[j - 1] = s * iu * x.mu[j - 1];
        }
        y.p = iu * x.p;
        y.q = -x.q;
    }
    return y;
}

std::vector<cplx> canonical_energy_momentum(int n, int eta, const PhasePoint& x) {
    std::vector<cplx> out(n);
    cplx H = static_cast<double>(eta) * x.p * x.p;
    cplx qpow = x.q;
    for (int j = 1; j <= n - 1; ++j) {
        H += x.lambda[j - 1] * qpow;
        qpow *= x.q;
    }
    // qpow now equals q^n
    H += qpow * x.q;
    out[0] = H;
    for (int j = 1; j <= n - 1; ++j) out[j] = x.lambda[j - 1];
    return out;
}

double check_involution_compatibility(int n, int eta, int samples, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("check_involution_compatibility: n >= 1");
    rng::Sampler rng(seed);
    auto rand_cplx = [&] { return cplx(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)); };

    double worst = 0.0;
    for (int s = 0; s < samples; ++s) {
        PhasePoint x;
        x.lambda.resize(n - 1);
        x.mu.resize(n - 1);
        for (auto& v : x.lambda) v = rand_cplx();
        for (auto& v : x.mu) v = rand_cplx();
        x.p = rand_cplx();
        x.q = rand_cplx();

        std::vector<cplx> lhs = canonical_energy_momentum(n, eta, phase_involution(n, x));
        std::vector<cplx> F = canonical_energy_momentum(n, eta, x);

        // psi on the (complex) energy-momentum values; identity for n = 1.
        std::vector<cplx> rhs = F;
        if (n >= 2) {
            if (n % 2 == 0) rhs[0] = -rhs[0];
            for (int j = 1; j <= n - 1; ++j)
                if (j % 2 == n % 2) rhs[j] = -rhs[j];
        }
        for (int j = 0; j < n; ++j) worst = std::max(worst, std::abs(lhs[j] - rhs[j]));
    }
    return worst;
}

double check_equivariance(int n, int eta, const std::vector<poly::UnfoldingPoly>& sample,
                          const periods::QuadratureSpec& spec) {
    require_n_at_least_2(n, "check_equivariance");
    const periods::WeightFunction one = periods::WeightFunction::constant(1.0);
    double worst = 0.0;
    for (const poly::UnfoldingPoly& x : sample) {
        periods::ActionVector lhs = chi(periods::action_vector(x, one, spec));
        periods::ActionVector rhs = periods::action_vector(psi(x), one, spec);
        double norm = 0.0, delta = 0.0;
        for (int k = 0; k < n; ++k) {
            norm = std::max(norm, std::abs(lhs.magnitudes[k]));
            delta = std::max(delta, std::abs(lhs.magnitudes[k] - rhs.magnitudes[k]));
        }
        worst = std::max(worst, delta / std::max(norm, 1e-300));
    }
    return worst;
}

CycleLattice CycleLattice::a_n(int n) {
    if (n < 1) throw std::invalid_argument("CycleLattice::a_n: n must be >= 1");
    CycleLattice lat;
    lat.rank = n;
    lat.pairing = Eigen::MatrixXi::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        lat.pairing(i, i) = -2;
        if (i + 1 < n) {
            lat.pairing(i, i + 1) = 1;
            lat.pairing(i + 1, i) = 1;
        }
    }
    return lat;
}

int CycleLattice::pair(const Eigen::VectorXi& x, const Eigen::VectorXi& y) const {
    return (x.transpose() * pairing * y)(0);
}

Eigen::VectorXi CycleLattice::reflect(int k, const Eigen::VectorXi& x) const {
    if (k < 1 || k > rank) throw std::invalid_argument("CycleLattice::reflect: k out of range");
    Eigen::VectorXi d = Eigen::VectorXi::Zero(rank);
    d(k - 1) = 1;
    int num = 2 * pair(x, d);
    int den = pairing(k - 1, k - 1);
    // num/den is always integral for root lattices; assert the division.
    if (num % den != 0) throw std::logic_error("CycleLattice::reflect: non-integral step");
    return x - (num / den) * d;
}

std::vector<Eigen::VectorXi> monodromy_orbit(int n) {
    CycleLattice lat = CycleLattice::a_n(n);
    Eigen::VectorXi start = Eigen::VectorXi::Zero(n);
    start(n / 2) = 1;  // d_(floor(n/2)+1), 0-based slot n/2

    auto key = [n](const Eigen::VectorXi& v) {
        std::vector<int> k(n);
        for (int i = 0; i < n; ++i) k[i] = v(i);
        return k;
    };

    std::set<std::vector<int>> seen;
    std::vector<Eigen::VectorXi> orbit, frontier;
    seen.insert(key(start));
    orbit.push_back(start);
    frontier.push_back(start);
    while (!frontier.empty()) {
        std::vector<Eigen::VectorXi> next;
        for (const auto& v : frontier) {
            for (int k = 1; k <= n; ++k) {
                Eigen::VectorXi w = lat.reflect(k, v);
                if (seen.insert(key(w)).second) {
                    orbit.push_back(w);
                    next.push_back(w);
                }
            }
        }
        frontier = std::move(next);
    }
    return orbit;
}

bool orbit_covers_generators(int n, const std::vector<Eigen::VectorXi>& orbit) {
    for (int k = 0; k < n; ++k) {
        Eigen::VectorXi plus = Eigen::VectorXi::Zero(n);
        plus(k) = 1;
        Eigen::VectorXi minus = -plus;
        bool has_plus = false, has_minus = false;
        for (const auto& v : orbit) {
            if (v == plus) has_plus = true;
            if (v == minus) has_minus = true;
        }
        if (!has_plus || !has_minus) return false;
    }
    return true;
}

}  // namespace anfold::symmetry
