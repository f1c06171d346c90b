#include "anfold/poly.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace anfold::poly {

namespace {

using cplx = std::complex<double>;

cplx horner(const std::vector<double>& c, cplx q) {
    cplx acc(0.0, 0.0);
    for (int j = static_cast<int>(c.size()) - 1; j >= 0; --j) acc = acc * q + c[j];
    return acc;
}

std::vector<double> derive(const std::vector<double>& c) {
    std::vector<double> d(c.size() - 1);
    for (std::size_t j = 1; j < c.size(); ++j) d[j - 1] = c[j] * static_cast<double>(j);
    return d;
}

}  // namespace

UnfoldingPoly::UnfoldingPoly(int n_, int eta_, double h_, std::vector<double> lambda_)
    : n(n_), eta(eta_), h(h_), lambda(std::move(lambda_)) {
    if (n < 1) throw std::invalid_argument("UnfoldingPoly: n must be >= 1");
    if (eta != 1 && eta != -1) throw std::invalid_argument("UnfoldingPoly: eta must be +-1");
    if (n % 2 == 0 && eta != 1)
        throw std::invalid_argument("UnfoldingPoly: even n forces eta = +1");
    if (static_cast<int>(lambda.size()) != n - 1)
        throw std::invalid_argument("UnfoldingPoly: lambda must have n-1 entries");
    if (!std::isfinite(h)) throw std::invalid_argument("UnfoldingPoly: non-finite h");
    for (double l : lambda)
        if (!std::isfinite(l)) throw std::invalid_argument("UnfoldingPoly: non-finite lambda");
}

std::vector<double> UnfoldingPoly::coefficients() const {
    std::vector<double> c(n + 2, 0.0);
    c[0] = -h;
    for (int j = 1; j <= n - 1; ++j) c[j] = lambda[j - 1];
    c[n + 1] = 1.0;
    return c;
}

double UnfoldingPoly::coeff_scale() const {
    double m = 1.0;
    m = std::max(m, std::abs(h));
    for (double l : lambda) m = std::max(m, std::abs(l));
    return m;
}

int RootProfile::total_count() const {
    return std::accumulate(multiplicity.begin(), multiplicity.end(), 0);
}

int RootProfile::real_count_with_multiplicity() const {
    int c = 0;
    for (std::size_t i = 0; i < roots.size(); ++i)
        if (real_mask[i]) c += multiplicity[i];
    return c;
}

bool RootProfile::all_real() const {
    return real_count_with_multiplicity() == total_count();
}

bool RootProfile::all_simple() const {
    return std::all_of(multiplicity.begin(), multiplicity.end(), [](int m) { return m == 1; });
}

int RootProfile::max_multiplicity() const {
    int m = 0;
    for (int x : multiplicity) m = std::max(m, x);
    return m;
}

std::vector<double> RootProfile::real_roots_ascending() const {
    std::vector<double> out;
    for (std::size_t i = 0; i < roots.size(); ++i)
        if (real_mask[i])
            out.insert(out.end(), multiplicity[i], roots[i].real());
    std::sort(out.begin(), out.end());
    return out;
}

RootProfile roots_sorted(const UnfoldingPoly& poly, double tol) {
    if (tol <= 0.0 || tol >= 1.0)
        throw std::invalid_argument("roots_sorted: tol must lie in (0, 1)");

    const int deg = poly.n + 1;
    const std::vector<double> c = poly.coefficients();
    const std::vector<double> dc = derive(c);
    const double scale = poly.coeff_scale();

    // Monic companion matrix; Eigen balances before the QR iteration.
    Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(deg, deg);
    for (int i = 1; i < deg; ++i) comp(i, i - 1) = 1.0;
    for (int i = 0; i < deg; ++i) comp(i, deg - 1) = -c[i];
    Eigen::EigenSolver<Eigen::MatrixXd> es(comp, /*computeEigenvectors=*/false);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("roots_sorted: eigenvalue iteration failed");

    std::vector<cplx> z(deg);
    for (int i = 0; i < deg; ++i) z[i] = es.eigenvalues()(i);

    // One simultaneous Newton sweep (Aberth correction).  Skipped for roots
    // whose neighbours are too close, where the correction is unstable.
    std::vector<cplx> refined = z;
    for (int i = 0; i < deg; ++i) {
        cplx fi = horner(c, z[i]);
        cplx di = horner(dc, z[i]);
        cplx sum(0.0, 0.0);
        bool crowded = false;
        for (int j = 0; j < deg; ++j) {
            if (j == i) continue;
            cplx gap = z[i] - z[j];
            if (std::abs(gap) < 1e-12 * std::max(1.0, std::abs(z[i]))) {
                crowded = true;
                break;
            }
            sum += 1.0 / gap;
        }
        if (crowded) continue;
        cplx denom = di - fi * sum;
        if (std::abs(denom) < 1e-300) continue;
        cplx step = fi / denom;
        if (std::abs(step) < 0.5 * std::max(1.0, std::abs(z[i]))) refined[i] -= step;
    }
    z = refined;

    // Force exact conjugate symmetry: pair each root with its best conjugate
    // partner and average.  Roots paired with themselves snap to the axis.
    std::vector<bool> used(deg, false);
    for (int i = 0; i < deg; ++i) {
        if (used[i]) continue;
        int best = i;
        double bestd = std::abs(z[i] - std::conj(z[i]));
        for (int j = 0; j < deg; ++j) {
            if (j == i || used[j]) continue;
            double d = std::abs(z[j] - std::conj(z[i]));
            if (d < bestd) {
                bestd = d;
                best = j;
            }
        }
        if (best == i) {
            z[i] = cplx(z[i].real(), 0.0);
            used[i] = true;
        } else {
            cplx avg = 0.5 * (z[i] + std::conj(z[best]));
            z[i] = avg;
            z[best] = std::conj(avg);
            used[i] = used[best] = true;
        }
    }

    // Agglomerative clustering.  Two clusters merge while their distance is
    // below tol^(1/m) for the combined size m, relative to the root scale.
    struct Cluster {
        cplx sum;
        int size;
        cplx mean() const { return sum / static_cast<double>(size); }
    };
    double root_scale = 1.0;
    for (const cplx& r : z) root_scale = std::max(root_scale, std::abs(r));
    std::vector<Cluster> clusters;
    for (const cplx& r : z) clusters.push_back({r, 1});
    for (;;) {
        int bi = -1, bj = -1;
        double bestgap = 0.0;
        bool merged_possible = false;
        for (std::size_t i = 0; i < clusters.size(); ++i) {
            for (std::size_t j = i + 1; j < clusters.size(); ++j) {
                double gap = std::abs(clusters[i].mean() - clusters[j].mean());
                int m = clusters[i].size + clusters[j].size;
                double thresh = std::pow(tol, 1.0 / m) * root_scale;
                if (gap < thresh && (!merged_possible || gap < bestgap)) {
                    merged_possible = true;
                    bestgap = gap;
                    bi = static_cast<int>(i);
                    bj = static_cast<int>(j);
                }
            }
        }
        if (!merged_possible) break;
        clusters[bi].sum += clusters[bj].sum;
        clusters[bi].size += clusters[bj].size;
        clusters.erase(clusters.begin() + bj);
    }

    RootProfile out;
    for (const Cluster& cl : clusters) {
        cplx r = cl.mean();
        double imag_thresh = std::pow(tol, 1.0 / cl.size) * root_scale;
        bool real = std::abs(r.imag()) <= imag_thresh;
        if (real) r = cplx(r.real(), 0.0);
        out.roots.push_back(r);
        out.multiplicity.push_back(cl.size);
        out.real_mask.push_back(real);
    }

    // Order: real ascending first, then complex by (re, im).
    std::vector<int> order(out.roots.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) -> bool {
        if (out.real_mask[a] != out.real_mask[b]) return out.real_mask[a];
        if (out.roots[a].real() != out.roots[b].real())
            return out.roots[a].real() < out.roots[b].real();
        return out.roots[a].imag() < out.roots[b].imag();
    });
    RootProfile sorted;
    for (int idx : order) {
        sorted.roots.push_back(out.roots[idx]);
        sorted.multiplicity.push_back(out.multiplicity[idx]);
        sorted.real_mask.push_back(out.real_mask[idx]);
    }
    double resid = 0.0;
    for (const cplx& r : sorted.roots) resid = std::max(resid, std::abs(horner(c, r)));
    sorted.residual = resid / scale;
    return sorted;
}

double discriminant(const UnfoldingPoly& poly) {
    const int d = poly.n + 1;
    const std::vector<double> c = poly.coefficients();
    const std::vector<double> dc = derive(c);

    // Sylvester matrix of (Q, Q'), size (2d-1) x (2d-1).
    const int size = 2 * d - 1;
    Eigen::MatrixXd syl = Eigen::MatrixXd::Zero(size, size);
    for (int row = 0; row < d - 1; ++row)
        for (int j = 0; j <= d; ++j) syl(row, row + (d - j)) = c[j];
    for (int row = 0; row < d; ++row)
        for (int j = 0; j <= d - 1; ++j) syl(d - 1 + row, row + (d - 1 - j)) = dc[j];

    double res = syl.partialPivLu().determinant();
    // disc = (-1)^(d(d-1)/2) Res(Q, Q') for a monic Q; this equals
    // prod_{i<j} (q_i - q_j)^2 and is positive on the open swallowtail domain.
    int sign_exp = (d * (d - 1) / 2) % 2;
    return sign_exp ? -res : res;
}

UnfoldingPoly parametrize_from_roots(std::span<const double> roots, int eta, double tol) {
    const int count = static_cast<int>(roots.size());
    if (count < 2) throw std::invalid_argument("parametrize_from_roots: need n+1 >= 2 roots");
    const int n = count - 1;

    double scale = 1.0;
    for (double r : roots) scale = std::max(scale, std::abs(r));
    for (int i = 0; i + 1 < count; ++i)
        if (!(roots[i] < roots[i + 1]))
            throw std::invalid_argument("parametrize_from_roots: roots must be strictly increasing");
    double sum = std::accumulate(roots.begin(), roots.end(), 0.0);
    if (std::abs(sum) > tol * scale * count)
        throw std::invalid_argument("parametrize_from_roots: root sum must vanish (balanced tuple)");

    // Expand prod (q - q_i); c[k] multiplies q^k throughout.
    std::vector<double> c(count + 1, 0.0);
    c[0] = 1.0;
    int len = 1;
    for (double r : roots) {
        c[len] = c[len - 1];
        for (int j = len - 1; j >= 1; --j) c[j] = c[j - 1] - r * c[j];
        c[0] *= -r;
        ++len;
    }

    double h = -c[0];
    std::vector<double> lambda(c.begin() + 1, c.begin() + n);
    return UnfoldingPoly(n, eta, h, std::move(lambda));
}

std::complex<double> evaluate(const UnfoldingPoly& poly, std::complex<double> q) {
    return horner(poly.coefficients(), q);
}

std::complex<double> evaluate_derivative(const UnfoldingPoly& poly, std::complex<double> q) {
    return horner(derive(poly.coefficients()), q);
}

}  // namespace anfold::poly
