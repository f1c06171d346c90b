#include "anfold/jet.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace anfold::jet {

namespace {

// Emit all tuples of total degree exactly `deg` in lexicographically
// descending order (earlier variables greedy).
void emit_degree(int vars, int deg, std::vector<int>& scratch, int pos,
                 std::vector<std::vector<int>>& out) {
    if (pos == vars - 1) {
        scratch[pos] = deg;
        out.push_back(scratch);
        return;
    }
    for (int e = deg; e >= 0; --e) {
        scratch[pos] = e;
        emit_degree(vars, deg - e, scratch, pos + 1, out);
    }
}

}  // namespace

MonomialBasis::MonomialBasis(int vars, int degree) : vars_(vars), degree_(degree) {
    if (vars < 1)
        throw std::invalid_argument("MonomialBasis: need at least one variable");
    if (degree < 0)
        throw std::invalid_argument("MonomialBasis: negative degree bound");
    // Key packing below uses (degree+1) as the radix; keep the space in range.
    if (std::pow(static_cast<double>(degree) + 1.0, vars) > 9e15)
        throw std::invalid_argument("MonomialBasis: vars/degree combination too large");
    std::vector<int> scratch(vars, 0);
    for (int d = 0; d <= degree; ++d)
        emit_degree(vars, d, scratch, 0, exps_);
    degs_.reserve(exps_.size());
    lookup_.reserve(exps_.size());
    for (int i = 0; i < static_cast<int>(exps_.size()); ++i) {
        int d = 0;
        for (int e : exps_[i]) d += e;
        degs_.push_back(d);
        lookup_.emplace(key_of(exps_[i]), i);
    }
}

std::uint64_t MonomialBasis::key_of(const std::vector<int>& e) const {
    std::uint64_t key = 0;
    const std::uint64_t radix = static_cast<std::uint64_t>(degree_) + 1;
    for (int v = 0; v < vars_; ++v)
        key = key * radix + static_cast<std::uint64_t>(e[v]);
    return key;
}

int MonomialBasis::index_of(const std::vector<int>& e) const {
    if (static_cast<int>(e.size()) != vars_)
        throw std::invalid_argument("MonomialBasis::index_of: wrong tuple length");
    int total = 0;
    for (int x : e) {
        if (x < 0) throw std::invalid_argument("MonomialBasis::index_of: negative exponent");
        total += x;
    }
    if (total > degree_) return -1;
    auto it = lookup_.find(key_of(e));
    return it == lookup_.end() ? -1 : it->second;
}

Jet::Jet(int vars, int degree) : basis_(vars, degree), c_(basis_.size(), 0.0) {}

Jet Jet::constant(int vars, int degree, double value) {
    Jet j(vars, degree);
    j.c_[0] = value;
    return j;
}

Jet Jet::variable(int vars, int degree, int which, double scale) {
    if (which < 0 || which >= vars)
        throw std::invalid_argument("Jet::variable: index out of range");
    Jet j(vars, degree);
    std::vector<int> e(vars, 0);
    e[which] = 1;
    j.set_coeff(e, scale);
    return j;
}

double Jet::coeff(const std::vector<int>& e) const {
    int idx = basis_.index_of(e);
    return idx < 0 ? 0.0 : c_[idx];
}

void Jet::set_coeff(const std::vector<int>& e, double value) {
    int idx = basis_.index_of(e);
    if (idx < 0) throw std::invalid_argument("Jet::set_coeff: monomial above degree bound");
    c_[idx] = value;
}

void Jet::add_coeff(const std::vector<int>& e, double value) {
    int idx = basis_.index_of(e);
    if (idx < 0) throw std::invalid_argument("Jet::add_coeff: monomial above degree bound");
    c_[idx] += value;
}

Jet& Jet::operator+=(const Jet& o) {
    if (!(basis_ == o.basis_)) throw std::invalid_argument("Jet: basis mismatch");
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
}

Jet& Jet::operator-=(const Jet& o) {
    if (!(basis_ == o.basis_)) throw std::invalid_argument("Jet: basis mismatch");
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
}

Jet& Jet::operator*=(double s) {
    for (double& x : c_) x *= s;
    return *this;
}

Jet Jet::mul(const Jet& o) const {
    if (!(basis_ == o.basis_)) throw std::invalid_argument("Jet::mul: basis mismatch");
    Jet out(vars(), degree());
    const int n = basis_.size();
    std::vector<int> e(vars());
    for (int i = 0; i < n; ++i) {
        if (c_[i] == 0.0) continue;
        const auto& ei = basis_.exponents(i);
        const int di = basis_.degree_of(i);
        for (int j = 0; j < n; ++j) {
            if (o.c_[j] == 0.0) continue;
            if (di + basis_.degree_of(j) > degree()) continue;
            const auto& ej = basis_.exponents(j);
            for (int v = 0; v < vars(); ++v) e[v] = ei[v] + ej[v];
            out.c_[basis_.index_of(e)] += c_[i] * o.c_[j];
        }
    }
    return out;
}

Jet Jet::pow(int k) const {
    if (k < 0) throw std::invalid_argument("Jet::pow: negative exponent");
    Jet acc = Jet::constant(vars(), degree(), 1.0);
    Jet base = *this;
    while (k > 0) {
        if (k & 1) acc = acc.mul(base);
        k >>= 1;
        if (k) base = base.mul(base);
    }
    return acc;
}

Jet Jet::compose(const std::vector<Jet>& subs) const {
    if (static_cast<int>(subs.size()) != vars())
        throw std::invalid_argument("Jet::compose: one substitution per variable required");
    for (const Jet& s : subs)
        if (!(s.basis() == subs[0].basis()))
            throw std::invalid_argument("Jet::compose: substitutions must share a basis");

    const int tvars = subs[0].vars();
    const int tdeg = subs[0].degree();
    Jet out(tvars, tdeg);

    // Memoized powers of each substitution.
    std::vector<std::vector<Jet>> powers(vars());
    for (int v = 0; v < vars(); ++v)
        powers[v].push_back(Jet::constant(tvars, tdeg, 1.0));

    auto power_of = [&](int v, int k) -> const Jet& {
        while (static_cast<int>(powers[v].size()) <= k)
            powers[v].push_back(powers[v].back().mul(subs[v]));
        return powers[v][k];
    };

    for (int i = 0; i < basis_.size(); ++i) {
        if (c_[i] == 0.0) continue;
        const auto& e = basis_.exponents(i);
        Jet term = Jet::constant(tvars, tdeg, c_[i]);
        for (int v = 0; v < vars(); ++v)
            if (e[v] > 0) term = term.mul(power_of(v, e[v]));
        out += term;
    }
    return out;
}

Jet Jet::derivative(int var) const {
    if (var < 0 || var >= vars())
        throw std::invalid_argument("Jet::derivative: variable out of range");
    Jet out(vars(), degree());
    std::vector<int> e(vars());
    for (int i = 0; i < basis_.size(); ++i) {
        if (c_[i] == 0.0) continue;
        const auto& ei = basis_.exponents(i);
        if (ei[var] == 0) continue;
        e = ei;
        e[var] -= 1;
        out.c_[basis_.index_of(e)] += c_[i] * ei[var];
    }
    return out;
}

Jet Jet::flip_signs(const std::vector<int>& signs) const {
    if (static_cast<int>(signs.size()) != vars())
        throw std::invalid_argument("Jet::flip_signs: one sign per variable required");
    Jet out = *this;
    for (int i = 0; i < basis_.size(); ++i) {
        const auto& e = basis_.exponents(i);
        int parity = 1;
        for (int v = 0; v < vars(); ++v)
            if (signs[v] < 0 && (e[v] & 1)) parity = -parity;
        out.c_[i] = parity * c_[i];
    }
    return out;
}

Jet Jet::reciprocal() const {
    const double c0 = c_[0];
    if (std::abs(c0) < 1e-300)
        throw std::domain_error("Jet::reciprocal: constant term vanishes");
    // 1/(c0 + u) = (1/c0) * sum_k (-u/c0)^k with u the zero-constant part.
    Jet u = *this;
    u.c_[0] = 0.0;
    u *= (-1.0 / c0);
    Jet acc = Jet::constant(vars(), degree(), 1.0);
    Jet term = Jet::constant(vars(), degree(), 1.0);
    for (int k = 1; k <= degree(); ++k) {
        term = term.mul(u);
        acc += term;
    }
    return acc * (1.0 / c0);
}

double Jet::eval(const std::vector<double>& x) const {
    if (static_cast<int>(x.size()) != vars())
        throw std::invalid_argument("Jet::eval: wrong point dimension");
    double sum = 0.0;
    for (int i = 0; i < basis_.size(); ++i) {
        if (c_[i] == 0.0) continue;
        double m = c_[i];
        const auto& e = basis_.exponents(i);
        for (int v = 0; v < vars(); ++v)
            for (int k = 0; k < e[v]; ++k) m *= x[v];
        sum += m;
    }
    return sum;
}

double Jet::max_abs() const {
    double m = 0.0;
    for (double x : c_) m = std::max(m, std::abs(x));
    return m;
}

bool Jet::is_zero(double tol) const {
    for (double x : c_)
        if (std::abs(x) > tol) return false;
    return true;
}

}  // namespace anfold::jet
