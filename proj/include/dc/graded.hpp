#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace dc {

// Element of the complex Grassmann algebra on N generators, dense over the
// 2^N subset masks. Coefficient for mask S multiplies the ordered product
// of generators g_i, i in S ascending.
class Graded {
  public:
    using C = std::complex<double>;

    Graded() : n_(0), c_(1, C(0.0)) {}
    explicit Graded(int n) : n_(n), c_(std::size_t(1) << n, C(0.0)) {}
    static Graded scalar(int n, C v) {
        Graded g(n);
        g.c_[0] = v;
        return g;
    }
    static Graded generator(int n, int i);

    int generators() const { return n_; }
    C& operator[](std::uint32_t mask) { return c_[mask]; }
    const C& operator[](std::uint32_t mask) const { return c_[mask]; }
    std::size_t dim() const { return c_.size(); }

    C body() const { return c_[0]; }
    Graded soul() const {
        Graded g(*this);
        g.c_[0] = 0.0;
        return g;
    }

    // parity: +1 even, -1 odd, 0 mixed/zero
    int parity() const;
    bool is_zero(double tol = 0.0) const;
    double max_abs() const;

    Graded& operator+=(const Graded& o);
    Graded& operator-=(const Graded& o);
    Graded& operator*=(C v);
    friend Graded operator+(Graded a, const Graded& b) { return a += b; }
    friend Graded operator-(Graded a, const Graded& b) { return a -= b; }
    friend Graded operator*(Graded a, C v) { return a *= v; }
    friend Graded operator*(C v, Graded a) { return a *= v; }

  private:
    int n_;
    std::vector<C> c_;
};

// Koszul sign for merging ordered products g_S * g_T (disjoint S, T):
// (-1)^{#{(s,t) in S x T : s > t}}
int koszul_sign(std::uint32_t s, std::uint32_t t);

// associative product with anticommuting generators; throws on mismatched N
Graded gr_mul(const Graded& a, const Graded& b);

// exp of a nilpotent even element (zero body); throws on nonzero body or odd
// parity. Exact: the series terminates by nilpotency.
Graded gr_exp(const Graded& a);

} // namespace dc
