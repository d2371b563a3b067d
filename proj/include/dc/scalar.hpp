#pragma once

#include "dc/rational.hpp"

#include <array>
#include <complex>
#include <cmath>

namespace dc {

// Model parameters for numeric evaluation. `a` is the BT/GT defect parameter,
// `sigma` the sine-Gordon one.
struct ParamValues {
    double m = 1.0;
    double g = 1.0;
    double a = 1.0;
    double sigma = 1.0;
};

// Exact scalar prefactor: Gaussian rational times a monomial in the model
// parameters. Radicals are handled through two extra generators,
//   s  = sqrt(m g)   with s^2 = m g,
//   r2 = sqrt(2)     with r2^2 = 2,
// whose exponents are reduced to {0,1}. Every radical the three models need
// is a monomial in these: sqrt(g/m) = s/m, sqrt(m/g) = s/g, sqrt(2g/m) = r2 s/m,
// sqrt(mg/2) = s r2/2.
struct Scalar {
    enum Idx { M = 0, G = 1, A = 2, SIGMA = 3, S = 4, R2 = 5, NPARAM = 6 };

    GRat c;
    std::array<int8_t, NPARAM> e{};

    Scalar() = default;
    Scalar(GRat coeff) : c(coeff) {}
    Scalar(long long n) : c(GRat(n)) {}

    static Scalar one() { return Scalar(GRat(1)); }
    static Scalar i() { return Scalar(GRat::I()); }
    static Scalar zero() { return Scalar(GRat(0)); }

    bool is_zero() const { return c.is_zero(); }

    Scalar& normalize() {
        if (c.is_zero()) { e.fill(0); return *this; }
        while (e[S] >= 2) { e[S] -= 2; ++e[M]; ++e[G]; }
        while (e[S] < 0) { e[S] += 2; --e[M]; --e[G]; }
        while (e[R2] >= 2) { e[R2] -= 2; c = c * GRat(2); }
        while (e[R2] < 0) { e[R2] += 2; c = c / GRat(2); }
        return *this;
    }

    Scalar pow_param(Idx p, int k) const {
        Scalar r(*this);
        r.e[p] = static_cast<int8_t>(r.e[p] + k);
        return r.normalize();
    }

    friend Scalar operator*(const Scalar& x, const Scalar& y) {
        Scalar r;
        r.c = x.c * y.c;
        for (int i = 0; i < NPARAM; ++i) r.e[i] = static_cast<int8_t>(x.e[i] + y.e[i]);
        return r.normalize();
    }
    Scalar operator-() const { Scalar r(*this); r.c = -r.c; return r; }
    Scalar inv() const {
        Scalar r;
        r.c = c.inv();
        for (int i = 0; i < NPARAM; ++i) r.e[i] = static_cast<int8_t>(-e[i]);
        return r.normalize();
    }
    Scalar conj() const { Scalar r(*this); r.c = r.c.conj(); return r; }

    // addition only defined for like monomials (same exponents)
    bool like(const Scalar& o) const { return e == o.e; }
    friend bool operator==(const Scalar& x, const Scalar& y) { return x.c == y.c && x.e == y.e; }
    friend bool operator!=(const Scalar& x, const Scalar& y) { return !(x == y); }
    friend bool operator<(const Scalar& x, const Scalar& y) {
        if (x.e != y.e) return x.e < y.e;
        if (x.c.re != y.c.re) return x.c.re < y.c.re;
        return x.c.im < y.c.im;
    }

    std::complex<double> eval(const ParamValues& p) const {
        double mag = 1.0;
        auto pw = [](double b, int k) { return std::pow(b, k); };
        mag *= pw(p.m, e[M]);
        mag *= pw(p.g, e[G]);
        mag *= pw(p.a, e[A]);
        mag *= pw(p.sigma, e[SIGMA]);
        mag *= pw(std::sqrt(p.m * p.g), e[S]);
        mag *= pw(std::sqrt(2.0), e[R2]);
        return c.to_complex() * mag;
    }
};

// convenience factories
inline Scalar sc_rat(long long n, long long d = 1) { return Scalar(GRat(Rat(n, d))); }
inline Scalar sc_i(long long n = 1, long long d = 1) { return Scalar(GRat(Rat(0), Rat(n, d))); }
// sqrt(mg) = s
inline Scalar sc_sqrt_mg() { Scalar r = Scalar::one(); r.e[Scalar::S] = 1; return r; }
// sqrt(g/m) = s m^-1
inline Scalar sc_sqrt_g_over_m() { Scalar r = sc_sqrt_mg(); r.e[Scalar::M] -= 1; return r; }
// sqrt(m/g) = s g^-1
inline Scalar sc_sqrt_m_over_g() { Scalar r = sc_sqrt_mg(); r.e[Scalar::G] -= 1; return r; }
// sqrt(2g/m) = r2 s m^-1
inline Scalar sc_sqrt_2g_over_m() {
    Scalar r = sc_sqrt_g_over_m();
    r.e[Scalar::R2] = 1;
    return r;
}
// sqrt(mg/2) = s / r2 = s r2 / 2
inline Scalar sc_sqrt_mg_over_2() {
    Scalar r = sc_sqrt_mg();
    r.e[Scalar::R2] = -1;
    return r.normalize();
}
inline Scalar sc_param(Scalar::Idx p, int k = 1) { return Scalar::one().pow_param(p, k); }

} // namespace dc
