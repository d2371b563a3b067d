#include "dc/graded.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace dc {

Graded Graded::generator(int n, int i) {
    if (i < 0 || i >= n) throw std::out_of_range("Graded::generator index");
    Graded g(n);
    g.c_[std::uint32_t(1) << i] = 1.0;
    return g;
}

int Graded::parity() const {
    bool even = false, odd = false;
    for (std::uint32_t m = 0; m < c_.size(); ++m) {
        if (c_[m] == C(0.0)) continue;
        (std::popcount(m) % 2 ? odd : even) = true;
    }
    if (even && odd) return 0;
    if (odd) return -1;
    if (even) return +1;
    return 0;
}

bool Graded::is_zero(double tol) const {
    for (const auto& v : c_)
        if (std::abs(v) > tol) return false;
    return true;
}

double Graded::max_abs() const {
    double m = 0.0;
    for (const auto& v : c_) m = std::max(m, std::abs(v));
    return m;
}

Graded& Graded::operator+=(const Graded& o) {
    if (n_ != o.n_) throw std::invalid_argument("Graded: dimension mismatch");
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
}

Graded& Graded::operator-=(const Graded& o) {
    if (n_ != o.n_) throw std::invalid_argument("Graded: dimension mismatch");
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
}

Graded& Graded::operator*=(C v) {
    for (auto& x : c_) x *= v;
    return *this;
}

int koszul_sign(std::uint32_t s, std::uint32_t t) {
    // count pairs (i in s, j in t) with i > j
    int inversions = 0;
    while (t) {
        std::uint32_t j = t & (~t + 1); // lowest bit of t
        // generators of s strictly above j
        inversions += std::popcount(s & ~((j << 1) - 1));
        t ^= j;
    }
    return (inversions % 2) ? -1 : +1;
}

Graded gr_mul(const Graded& a, const Graded& b) {
    if (a.generators() != b.generators())
        throw std::invalid_argument("gr_mul: dimension mismatch");
    Graded r(a.generators());
    const std::uint32_t dim = std::uint32_t(a.dim());
    for (std::uint32_t s = 0; s < dim; ++s) {
        if (a[s] == Graded::C(0.0)) continue;
        for (std::uint32_t t = 0; t < dim; ++t) {
            if (s & t) continue; // repeated generator
            if (b[t] == Graded::C(0.0)) continue;
            double sg = koszul_sign(s, t);
            r[s | t] += sg * a[s] * b[t];
        }
    }
    return r;
}

Graded gr_exp(const Graded& a) {
    if (std::abs(a.body()) != 0.0)
        throw std::domain_error("gr_exp: nonzero body (split body and soul first)");
    int p = a.parity();
    if (p == -1 || p == 0) {
        if (!a.is_zero()) throw std::domain_error("gr_exp: input must be even");
    }
    Graded r = Graded::scalar(a.generators(), 1.0);
    Graded term = Graded::scalar(a.generators(), 1.0);
    for (int k = 1; k <= a.generators() / 2 + 1; ++k) {
        term = gr_mul(term, a);
        term *= Graded::C(1.0 / k, 0.0);
        if (term.is_zero()) break;
        r += term;
    }
    return r;
}

} // namespace dc
