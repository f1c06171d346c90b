#include "anfold/swallowtail.hpp"

#include "anfold/rng.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace anfold::swallowtail {

std::string DomainClass::label() const {
    switch (kind) {
        case RegionKind::Interior: return "interior";
        case RegionKind::Branch: return "branch(" + std::to_string(branch_index) + ")";
        case RegionKind::MultiDegenerate: return "multi-degenerate";
        case RegionKind::Exterior: return "exterior";
        case RegionKind::Origin: return "origin";
    }
    return "?";
}

DomainClass classify_point(const poly::UnfoldingPoly& p, double tol) {
    double param_mag = std::abs(p.h);
    for (double l : p.lambda) param_mag = std::max(param_mag, std::abs(l));
    if (param_mag <= tol) return {RegionKind::Origin, 0};

    const poly::RootProfile prof = poly::roots_sorted(p, tol);

    if (prof.all_simple())
        return {prof.all_real() ? RegionKind::Interior : RegionKind::Exterior, 0};

    // One real double root with every other root real and simple is a branch
    // point; the index is the position of the double root among the ascending
    // real roots (counted with multiplicity, 1-based).
    int doubles = 0, higher = 0;
    int double_idx = -1;
    for (int i = 0; i < prof.distinct_count(); ++i) {
        if (prof.multiplicity[i] == 2) {
            ++doubles;
            double_idx = i;
        } else if (prof.multiplicity[i] > 2) {
            ++higher;
        }
    }
    if (doubles == 1 && higher == 0 && prof.all_real()) {
        double dr = prof.roots[double_idx].real();
        int k = 1;
        for (int i = 0; i < prof.distinct_count(); ++i)
            if (prof.roots[i].real() < dr) k += prof.multiplicity[i];
        return {RegionKind::Branch, k};
    }
    return {RegionKind::MultiDegenerate, 0};
}

CycleType cycle_type(int n, int eta, int k) {
    if (n < 1) throw std::invalid_argument("cycle_type: n must be >= 1");
    if (eta != 1 && eta != -1) throw std::invalid_argument("cycle_type: eta must be +-1");
    if (n % 2 == 0 && eta != 1) throw std::invalid_argument("cycle_type: even n forces eta = +1");
    if (k < 1 || k > n) throw std::invalid_argument("cycle_type: k out of range 1..n");
    int sign = ((n + k) % 2 == 0) ? 1 : -1;
    return {k, sign == eta};
}

int real_cycle_count(int n, int eta) {
    if (n % 2 == 0 && eta != 1)
        throw std::invalid_argument("real_cycle_count: even n forces eta = +1");
    return (n + eta) / 2;
}

int ell(int n, int eta) {
    if (n < 1) throw std::invalid_argument("ell: n must be >= 1");
    if (eta != 1 && eta != -1) throw std::invalid_argument("ell: eta must be +-1");
    if (n % 2 == 0) {
        if (eta != 1) throw std::invalid_argument("ell: even n forces eta = +1");
        return 1;
    }
    return 1 - eta;
}

std::vector<poly::UnfoldingPoly> domain_sample(int n, int eta, double radius, int count,
                                               std::uint64_t seed) {
    if (count < 0) throw std::invalid_argument("domain_sample: negative count");
    if (radius <= 0.0) throw std::invalid_argument("domain_sample: radius must be positive");

    rng::Sampler rng(seed);
    std::vector<poly::UnfoldingPoly> out;
    out.reserve(count);
    std::vector<double> roots(n + 1);

    while (static_cast<int>(out.size()) < count) {
        for (double& r : roots) r = rng.uniform(-1.0, 1.0);
        std::sort(roots.begin(), roots.end());

        // Keep the tuple well separated so every sample is safely Interior.
        double span = roots.back() - roots.front();
        double min_gap = span;
        for (int i = 0; i + 1 <= n; ++i) min_gap = std::min(min_gap, roots[i + 1] - roots[i]);
        if (span <= 0.0 || min_gap < 0.08 * span) continue;

        double mean = 0.0;
        for (double r : roots) mean += r;
        mean /= (n + 1);
        for (double& r : roots) r -= mean;

        auto norm_of = [&](const poly::UnfoldingPoly& p) {
            double s = p.h * p.h;
            for (double l : p.lambda) s += l * l;
            return std::sqrt(s);
        };
        poly::UnfoldingPoly p = poly::parametrize_from_roots(roots, eta);
        while (norm_of(p) >= radius) {
            for (double& r : roots) r *= 0.7;
            p = poly::parametrize_from_roots(roots, eta);
        }
        out.push_back(std::move(p));
    }
    return out;
}

EstimateReport estimate_check(const std::vector<poly::UnfoldingPoly>& points) {
    EstimateReport rep;
    for (const poly::UnfoldingPoly& p : points) {
        if (p.n < 2) continue;  // no lambda coefficients to bound
        double last = p.lambda[p.n - 2];
        if (!(last < 0.0)) {
            rep.lambda_last_all_negative = false;
            continue;
        }
        double base = -last;
        for (int k = 1; k <= p.n - 2; ++k) {
            double denom = std::pow(base, 0.5 * (p.n + 1 - k));
            rep.max_lambda_ratio = std::max(rep.max_lambda_ratio,
                                            std::abs(p.lambda[k - 1]) / denom);
        }
        double hdenom = std::pow(base, 0.5 * (p.n + 1));
        rep.max_h_ratio = std::max(rep.max_h_ratio, std::abs(p.h) / hdenom);
    }
    return rep;
}

}  // namespace anfold::swallowtail
