#include "anfold/germs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <utility>

namespace anfold::germs {

namespace {

std::vector<int> unit_exponents(int vars, int which) {
    std::vector<int> e(vars, 0);
    e.at(which) = 1;
    return e;
}

}  // namespace

GermMap::GermMap(int source_dim, int target_dim, int degree)
    : source_dim_(source_dim), degree_(degree) {
    if (source_dim < 1) throw std::invalid_argument("germ needs at least one source variable");
    if (target_dim < 0) throw std::invalid_argument("germ target dimension must be >= 0");
    if (degree < 1) throw std::invalid_argument("germ degree bound must be >= 1");
    comps_.assign(static_cast<std::size_t>(target_dim), jet::Jet(source_dim, degree));
}

GermMap::GermMap(std::vector<jet::Jet> components) : source_dim_(0), degree_(0) {
    if (components.empty())
        throw std::invalid_argument("component list is empty; use the dimension constructor");
    source_dim_ = components.front().vars();
    degree_ = components.front().degree();
    comps_ = std::move(components);
    validate();
}

void GermMap::validate() {
    for (const auto& c : comps_) {
        if (c.vars() != source_dim_ || c.degree() != degree_)
            throw std::invalid_argument("germ components must share one basis");
    }
    // A germ fixes the origin; allow only rounding noise in the constant slot,
    // which gets cleared so downstream comparisons see exact zeros.
    double scale = std::max(1.0, max_abs());
    for (const auto& c : comps_) {
        if (std::abs(c.coeff_at(0)) > 1e-9 * scale)
            throw std::invalid_argument("germ component has a nonzero constant term");
    }
    for (auto& c : comps_) c.set_coeff_at(0, 0.0);
}

void GermMap::set_component(int i, jet::Jet j) {
    if (j.vars() != source_dim_ || j.degree() != degree_)
        throw std::invalid_argument("component basis mismatch");
    comps_.at(i) = std::move(j);
    validate();
}

double GermMap::coeff(int comp, const std::vector<int>& exponents) const {
    return comps_.at(comp).coeff(exponents);
}

void GermMap::set_coeff(int comp, const std::vector<int>& exponents, double value) {
    int deg = 0;
    for (int e : exponents) deg += e;
    if (deg == 0 && value != 0.0)
        throw std::invalid_argument("germ constant terms must stay zero");
    comps_.at(comp).set_coeff(exponents, value);
}

std::vector<double> GermMap::coefficient_sequence() const {
    std::vector<double> seq;
    for (const auto& c : comps_) {
        for (int i = 0; i < c.term_count(); ++i) seq.push_back(c.coeff_at(i));
    }
    return seq;
}

double GermMap::max_abs() const {
    double m = 0.0;
    for (const auto& c : comps_) m = std::max(m, c.max_abs());
    return m;
}

Eigen::MatrixXd GermMap::lambda_gradient() const {
    Eigen::MatrixXd g(target_dim(), source_dim_ - 1);
    for (int i = 0; i < target_dim(); ++i) {
        for (int j = 1; j < source_dim_; ++j)
            g(i, j - 1) = comps_[static_cast<std::size_t>(i)].coeff(unit_exponents(source_dim_, j));
    }
    return g;
}

Eigen::MatrixXd GermMap::linear_part() const {
    Eigen::MatrixXd g(target_dim(), source_dim_);
    for (int i = 0; i < target_dim(); ++i) {
        for (int j = 0; j < source_dim_; ++j)
            g(i, j) = comps_[static_cast<std::size_t>(i)].coeff(unit_exponents(source_dim_, j));
    }
    return g;
}

GermMap GermMap::operator+(const GermMap& o) const {
    if (source_dim_ != o.source_dim_ || degree_ != o.degree_ || target_dim() != o.target_dim())
        throw std::invalid_argument("germ addition needs matching shapes");
    GermMap r = *this;
    for (int i = 0; i < target_dim(); ++i) r.comps_[static_cast<std::size_t>(i)] += o.comps_[static_cast<std::size_t>(i)];
    return r;
}

GermMap GermMap::scaled(double s) const {
    GermMap r = *this;
    for (auto& c : r.comps_) c *= s;
    return r;
}

int GermMap::lex_compare(const GermMap& a, const GermMap& b, double tol_rel) {
    std::vector<double> sa = a.coefficient_sequence();
    std::vector<double> sb = b.coefficient_sequence();
    if (sa.size() != sb.size() || a.source_dim() != b.source_dim())
        throw std::invalid_argument("lexicographic order is only defined for germs of one shape");
    double scale = std::max(1.0, std::max(a.max_abs(), b.max_abs()));
    double tol = tol_rel * scale;
    for (std::size_t i = 0; i < sa.size(); ++i) {
        if (std::abs(sa[i] - sb[i]) <= tol) continue;
        return sa[i] > sb[i] ? +1 : -1;
    }
    return 0;
}

long long integer_determinant(const Eigen::MatrixXi& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("determinant needs a square matrix");
    int d = static_cast<int>(m.rows());
    if (d == 0) return 1;
    if (d > 10) throw std::invalid_argument("integer determinant limited to small matrices");
    if (d == 1) return m(0, 0);
    long long det = 0;
    Eigen::MatrixXi minor(d - 1, d - 1);
    for (int j = 0; j < d; ++j) {
        for (int r = 1; r < d; ++r) {
            int cc = 0;
            for (int c = 0; c < d; ++c) {
                if (c == j) continue;
                minor(r - 1, cc++) = m(r, c);
            }
        }
        long long cof = static_cast<long long>(m(0, j)) * integer_determinant(minor);
        det += (j % 2 == 0) ? cof : -cof;
    }
    return det;
}

UnimodularMatrix::UnimodularMatrix(Eigen::MatrixXi mat) : m(std::move(mat)) {
    if (m.rows() != m.cols()) throw std::invalid_argument("unimodular matrix must be square");
    if (integer_determinant(m) != 1)
        throw std::invalid_argument("matrix determinant must be +1");
}

UnimodularMatrix UnimodularMatrix::identity(int dim) {
    return UnimodularMatrix(Eigen::MatrixXi::Identity(dim, dim));
}

long long UnimodularMatrix::det() const { return integer_determinant(m); }

GermMap sl_act(const UnimodularMatrix& A, const GermMap& f) {
    if (A.dim() != f.target_dim())
        throw std::invalid_argument("matrix size must match the germ target dimension");
    if (A.dim() == 0) return f;
    std::vector<jet::Jet> out;
    out.reserve(static_cast<std::size_t>(A.dim()));
    for (int i = 0; i < A.dim(); ++i) {
        jet::Jet acc(f.source_dim(), f.degree());
        for (int j = 0; j < A.dim(); ++j) {
            if (A.m(i, j) == 0) continue;
            jet::Jet t = f.component(j);
            t *= static_cast<double>(A.m(i, j));
            acc += t;
        }
        out.push_back(std::move(acc));
    }
    return GermMap(std::move(out));
}

namespace {

/** Depth-first walk over all greedy shortest-vector bases of the lattice
 *  spanned by the rows of V.  Each level collects every tied minimizer that
 *  leaves the span of the previous picks, so every minimal basis choice shows
 *  up as a leaf.  Leaves are coordinate matrices in the original row basis.
 */
struct LatticeSearch {
    Eigen::MatrixXd V;
    double lam_min = 0.0;
    double tol_span = 0.0;
    int b = 0;
    long long leaf_budget = 20000;
    std::vector<Eigen::VectorXi> chosen;
    std::vector<Eigen::MatrixXi> leaves;

    void run() {
        chosen.clear();
        leaves.clear();
        descend();
    }

    void descend() {
        int k = static_cast<int>(chosen.size());
        if (k == b) {
            if (static_cast<long long>(leaves.size()) >= leaf_budget)
                throw DegenerateGradients("lattice tie tree exceeded its size budget");
            Eigen::MatrixXi C(b, b);
            for (int i = 0; i < b; ++i) C.row(i) = chosen[static_cast<std::size_t>(i)].transpose();
            leaves.push_back(C);
            return;
        }

        // Orthonormal basis of the span of the vectors picked so far.
        Eigen::MatrixXd Q(b, k);
        if (k > 0) {
            Eigen::MatrixXd W(b, k);
            for (int i = 0; i < k; ++i)
                W.col(i) = V.transpose() * chosen[static_cast<std::size_t>(i)].cast<double>();
            Eigen::HouseholderQR<Eigen::MatrixXd> qr(W);
            Q = qr.householderQ() * Eigen::MatrixXd::Identity(b, k);
        }
        auto off_span = [&](const Eigen::VectorXd& w) {
            if (k == 0) return w.norm();
            return (w - Q * (Q.transpose() * w)).norm();
        };

        // Some original row always lies off the span while k < b, and it
        // bounds the next minimum from above.
        double bound = std::numeric_limits<double>::infinity();
        for (int i = 0; i < b; ++i) {
            Eigen::VectorXd v = V.row(i).transpose();
            if (off_span(v) > tol_span) bound = std::min(bound, v.norm());
        }
        if (!std::isfinite(bound))
            throw DegenerateGradients("gradient rows collapsed onto a proper subspace");

        // ||V^T c|| >= sqrt(lam_min) ||c||, so the search box is finite.
        int M = std::max(1, static_cast<int>(std::floor(bound / std::sqrt(lam_min) + 1e-9)));
        double cells = std::pow(2.0 * M + 1.0, b);
        if (cells > 2.0e6)
            throw DegenerateGradients("lattice enumeration box too large; gradients badly conditioned");

        Eigen::VectorXi c(b);
        double best = std::numeric_limits<double>::infinity();
        auto for_each_cell = [&](auto&& visit) {
            std::vector<int> idx(static_cast<std::size_t>(b), -M);
            while (true) {
                bool zero = true;
                for (int v : idx)
                    if (v != 0) zero = false;
                if (!zero) {
                    for (int i = 0; i < b; ++i) c(i) = idx[static_cast<std::size_t>(i)];
                    visit();
                }
                int pos = b - 1;
                while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == M) {
                    idx[static_cast<std::size_t>(pos)] = -M;
                    --pos;
                }
                if (pos < 0) break;
                ++idx[static_cast<std::size_t>(pos)];
            }
        };

        for_each_cell([&] {
            Eigen::VectorXd w = V.transpose() * c.cast<double>();
            double len = w.norm();
            if (len > bound + tol_span) return;
            if (off_span(w) <= tol_span) return;
            best = std::min(best, len);
        });
        double tie_tol = 1e-9 * std::max(1.0, best);

        std::vector<Eigen::VectorXi> ties;
        for_each_cell([&] {
            Eigen::VectorXd w = V.transpose() * c.cast<double>();
            double len = w.norm();
            if (len > best + tie_tol) return;
            if (off_span(w) <= tol_span) return;
            ties.push_back(c);
        });
        if (ties.empty())
            throw DegenerateGradients("lattice search found no admissible vector");
        if (ties.size() > 64)
            throw DegenerateGradients("too many tied lattice minimizers");

        for (const auto& t : ties) {
            chosen.push_back(t);
            descend();
            chosen.pop_back();
        }
    }
};

/** Row LLL reduction (delta = 0.99) of a real basis.  Returns an integer
 *  transform R with |det R| = 1 whose rows express a reduced basis, R * V.
 *  The lattice, hence the set of minimal bases, is unchanged; the point is
 *  that the enumeration box computed from a reduced basis stays small even
 *  when the input rows are long and nearly parallel.
 */
Eigen::MatrixXi lll_row_transform(const Eigen::MatrixXd& V) {
    const double delta = 0.99;
    const int b = static_cast<int>(V.rows());
    Eigen::MatrixXd B = V;
    using MatLL = Eigen::Matrix<long long, Eigen::Dynamic, Eigen::Dynamic>;
    MatLL R = MatLL::Identity(b, b);

    Eigen::MatrixXd Bs(b, V.cols());
    Eigen::MatrixXd mu = Eigen::MatrixXd::Zero(b, b);
    auto gso = [&] {
        for (int i = 0; i < b; ++i) {
            Bs.row(i) = B.row(i);
            for (int j = 0; j < i; ++j) {
                double denom = Bs.row(j).squaredNorm();
                mu(i, j) = denom > 0.0 ? B.row(i).dot(Bs.row(j)) / denom : 0.0;
                Bs.row(i) -= mu(i, j) * Bs.row(j);
            }
        }
    };
    gso();
    int k = 1;
    for (int guard = 0; k < b && guard < 4000; ++guard) {
        for (int j = k - 1; j >= 0; --j) {
            double q = std::round(mu(k, j));
            if (q == 0.0 || std::abs(q) > 1e9) continue;
            B.row(k) -= q * B.row(j);
            R.row(k) -= static_cast<long long>(q) * R.row(j);
            gso();
        }
        if (Bs.row(k).squaredNorm() >=
            (delta - mu(k, k - 1) * mu(k, k - 1)) * Bs.row(k - 1).squaredNorm()) {
            ++k;
        } else {
            B.row(k).swap(B.row(k - 1));
            R.row(k).swap(R.row(k - 1));
            gso();
            if (k > 1) --k;
        }
    }
    Eigen::MatrixXi out(b, b);
    for (int r = 0; r < b; ++r)
        for (int c = 0; c < b; ++c) {
            long long v = R(r, c);
            // entries this large mean the reduction went numerically wrong;
            // fall back to the raw basis rather than return garbage
            if (v > 1000000 || v < -1000000) return Eigen::MatrixXi::Identity(b, b);
            out(r, c) = static_cast<int>(v);
        }
    return out;
}

}  // namespace

std::pair<GermMap, UnimodularMatrix> special_representative(const GermMap& f, double tol) {
    int b = f.target_dim();
    if (b != f.source_dim() - 1)
        throw std::invalid_argument(
            "canonical representative needs target dimension = lambda count");
    if (b == 0) return {f, UnimodularMatrix::identity(0)};

    Eigen::MatrixXd V = f.lambda_gradient();
    double scale = std::max(1.0, V.cwiseAbs().maxCoeff());
    double det = V.determinant();
    if (std::abs(det) <= tol * std::pow(scale, b))
        throw DegenerateGradients("lambda gradients are numerically dependent");

    // Reduce the row basis first so the enumeration box stays small for
    // skewed inputs; leaves are mapped back through R afterwards.
    Eigen::MatrixXi R = lll_row_transform(V);
    Eigen::MatrixXd Vr = R.cast<double>() * V;
    double scale_r = std::max(1.0, Vr.cwiseAbs().maxCoeff());

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Vr * Vr.transpose());
    LatticeSearch search;
    search.V = Vr;
    search.lam_min = std::max(es.eigenvalues().minCoeff(), 1e-300);
    search.tol_span = tol * scale_r;
    search.b = b;
    search.run();

    bool have_best = false;
    GermMap best = f;
    Eigen::MatrixXi best_A = Eigen::MatrixXi::Identity(b, b);
    for (const auto& C : search.leaves) {
        Eigen::MatrixXi Cf = C * R;  // back to the original component basis
        if (integer_determinant(Cf) != 1) continue;
        UnimodularMatrix A(Cf);
        GermMap g = sl_act(A, f);
        if (!have_best) {
            have_best = true;
            best = g;
            best_A = Cf;
            continue;
        }
        int cmp = GermMap::lex_compare(g, best, tol);
        bool identity = Cf.isIdentity();
        if (cmp > 0 || (cmp == 0 && identity && !best_A.isIdentity())) {
            best = g;
            best_A = Cf;
        }
    }
    if (!have_best)
        throw DegenerateGradients("no orientation-preserving minimal basis found");
    return {best, UnimodularMatrix(best_A)};
}

GermMap compose_psi(const GermMap& f, int n) {
    if (n < 1) throw std::invalid_argument("parameter count must be >= 1");
    if (f.source_dim() != n)
        throw std::invalid_argument("source dimension must match the parameter count");
    std::vector<int> signs(static_cast<std::size_t>(n), +1);
    if (n == 1) {
        signs[0] = -1;
    } else {
        signs[0] = (n % 2 == 0) ? -1 : +1;
        for (int j = 1; j < n; ++j) signs[static_cast<std::size_t>(j)] = (j % 2 == n % 2) ? -1 : +1;
    }
    if (f.target_dim() == 0) return f;
    std::vector<jet::Jet> out;
    out.reserve(static_cast<std::size_t>(f.target_dim()));
    for (int i = 0; i < f.target_dim(); ++i) out.push_back(f.component(i).flip_signs(signs));
    return GermMap(std::move(out));
}

GermMap bracket_canonical(const GermMap& f, int n, double tol) {
    GermMap fa = special_representative(f, tol).first;
    if (n % 2 == 0) return fa;
    GermMap fb = special_representative(compose_psi(f, n), tol).first;
    return GermMap::lex_compare(fa, fb, tol) >= 0 ? fa : fb;
}

std::pair<GermMap, std::vector<long>> normalize_generating(const GermMap& S, const GermMap& J,
                                                           int n, double tol) {
    if (S.target_dim() != 1) throw std::invalid_argument("generating germ must be scalar");
    if (S.source_dim() != n || J.source_dim() != n)
        throw std::invalid_argument("source dimension must match the parameter count");
    if (J.target_dim() != n - 1)
        throw std::invalid_argument("action germ must have one component per lambda");
    if (S.degree() != J.degree())
        throw std::invalid_argument("germ degree bounds must match");
    if (n == 1) return {S, {}};

    Eigen::MatrixXd M = J.lambda_gradient();
    double scale = std::max(1.0, M.cwiseAbs().maxCoeff());
    if (std::abs(M.determinant()) <= tol * std::pow(scale, n - 1))
        throw DegenerateGradients("action differentials are numerically dependent");

    Eigen::VectorXd g = S.lambda_gradient().row(0).transpose();
    Eigen::VectorXd c = M.transpose().partialPivLu().solve(g);

    const double two_pi = 2.0 * std::numbers::pi;
    std::vector<long> shifts(static_cast<std::size_t>(n - 1), 0);
    jet::Jet shifted = S.component(0);
    for (int j = 0; j < n - 1; ++j) {
        long a = -static_cast<long>(std::floor(c(j) / two_pi));
        shifts[static_cast<std::size_t>(j)] = a;
        if (a != 0) {
            jet::Jet t = J.component(j);
            t *= two_pi * static_cast<double>(a);
            shifted += t;
        }
    }
    return {GermMap({std::move(shifted)}), std::move(shifts)};
}

namespace {

bool is_identity_permutation(const std::vector<int>& p) {
    for (std::size_t i = 0; i < p.size(); ++i)
        if (p[i] != static_cast<int>(i) + 1) return false;
    return true;
}

void check_permutation(const std::vector<int>& p) {
    std::vector<bool> seen(p.size(), false);
    for (int v : p) {
        if (v < 1 || v > static_cast<int>(p.size()) || seen[static_cast<std::size_t>(v - 1)])
            throw std::invalid_argument("beta is not a permutation of 1..ell");
        seen[static_cast<std::size_t>(v - 1)] = true;
    }
}

}  // namespace

SemiGlobalInvariant assemble_invariant(int n, int eta, const GermMap& J,
                                       std::vector<int> beta, std::vector<GermMap> S_list,
                                       double tol) {
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    if (eta != 1 && eta != -1) throw std::invalid_argument("eta must be +1 or -1");
    if (n % 2 == 0 && eta != 1) throw std::invalid_argument("even n forces eta = +1");
    if (J.source_dim() != n || J.target_dim() != n - 1)
        throw std::invalid_argument("action germ must map n parameters to n-1 components");

    int ell = (n % 2 == 0) ? 1 : 1 - eta;
    if (static_cast<int>(S_list.size()) != ell)
        throw WrongListLength("expected " + std::to_string(ell) + " generating germs, got " +
                              std::to_string(S_list.size()));
    for (const auto& s : S_list) {
        if (s.source_dim() != n || s.target_dim() != 1)
            throw std::invalid_argument("generating germs must be scalar in the n parameters");
        if (s.degree() != J.degree()) throw DegreeMismatch("germ degree bounds must match");
    }
    if (static_cast<int>(beta.size()) != ell)
        throw std::invalid_argument("beta must have one entry per critical-fiber component");
    check_permutation(beta);
    if (ell <= 1 || n == 1) {
        for (int i = 0; i < ell; ++i) beta[static_cast<std::size_t>(i)] = i + 1;
    }

    SemiGlobalInvariant inv;
    inv.n = n;
    inv.eta = eta;
    inv.ell = ell;
    inv.beta = std::move(beta);

    auto norm = [&](const GermMap& s, const GermMap& jc) {
        return normalize_generating(s, jc, n, tol).first;
    };

    if (n == 1) {
        // No lambda directions: J is the empty germ and no mixing is possible.
        inv.J_canonical = J;
        if (ell == 2) {
            GermMap a1 = S_list[0];
            GermMap a2 = S_list[1];
            GermMap b1 = compose_psi(S_list[1], 1);
            GermMap b2 = compose_psi(S_list[0], 1);
            if (GermMap::lex_compare(a1, b1, tol) >= 0) {
                inv.S = {a1, a2};
            } else {
                inv.S = {b1, b2};
            }
        }
        return inv;
    }

    if (n % 2 == 0) {
        inv.J_canonical = special_representative(J, tol).first;
        inv.S.push_back(norm(S_list[0], inv.J_canonical));
        return inv;
    }

    // Odd n >= 3: the parameter involution may swap the two frames, and the
    // canonical action germ decides which one is kept.
    GermMap fa = special_representative(J, tol).first;
    GermMap fb = special_representative(compose_psi(J, n), tol).first;
    int cmp = GermMap::lex_compare(fa, fb, tol);
    if (cmp > 0 || ell == 0) {
        inv.J_canonical = fa;
        for (const auto& s : S_list) inv.S.push_back(norm(s, inv.J_canonical));
        return inv;
    }
    if (cmp < 0) {
        inv.J_canonical = fb;
        inv.S.push_back(norm(compose_psi(S_list[1], n), inv.J_canonical));
        inv.S.push_back(norm(compose_psi(S_list[0], n), inv.J_canonical));
        return inv;
    }
    // Tied action germs: order the generating pair itself.
    inv.J_canonical = fa;
    GermMap a1 = norm(S_list[0], inv.J_canonical);
    GermMap a2 = norm(S_list[1], inv.J_canonical);
    GermMap b1 = norm(compose_psi(S_list[1], n), inv.J_canonical);
    GermMap b2 = norm(compose_psi(S_list[0], n), inv.J_canonical);
    if (GermMap::lex_compare(a1, b1, tol) >= 0) {
        inv.S = {a1, a2};
    } else {
        inv.S = {b1, b2};
    }
    return inv;
}

bool invariants_equal(const SemiGlobalInvariant& x, const SemiGlobalInvariant& y, double tol) {
    if (x.n != y.n || x.eta != y.eta)
        throw std::invalid_argument("invariants with different (n, eta) are incomparable");
    if (x.J_canonical.degree() != y.J_canonical.degree())
        throw DegreeMismatch("invariants truncated at different degrees");
    for (const auto& s : x.S)
        if (s.degree() != x.J_canonical.degree()) throw DegreeMismatch("inconsistent degree in invariant");
    for (const auto& s : y.S)
        if (s.degree() != y.J_canonical.degree()) throw DegreeMismatch("inconsistent degree in invariant");

    if (x.ell != y.ell || x.beta != y.beta) return false;
    if (x.S.size() != y.S.size()) return false;

    auto close = [&](const GermMap& a, const GermMap& b) {
        std::vector<double> sa = a.coefficient_sequence();
        std::vector<double> sb = b.coefficient_sequence();
        if (sa.size() != sb.size()) return false;
        double scale = std::max(1.0, std::max(a.max_abs(), b.max_abs()));
        for (std::size_t i = 0; i < sa.size(); ++i)
            if (std::abs(sa[i] - sb[i]) > tol * scale) return false;
        return true;
    };
    if (!close(x.J_canonical, y.J_canonical)) return false;
    for (std::size_t i = 0; i < x.S.size(); ++i)
        if (!close(x.S[i], y.S[i])) return false;
    return true;
}

}  // namespace anfold::germs
