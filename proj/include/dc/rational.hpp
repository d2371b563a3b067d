#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <complex>

namespace dc {

// Exact rational with 64-bit numerator/denominator. Coefficients in the
// recursions stay tiny; overflow is checked and throws rather than wrapping.
struct Rat {
    long long n = 0;
    long long d = 1;

    Rat() = default;
    Rat(long long num) : n(num), d(1) {}
    Rat(long long num, long long den) : n(num), d(den) { reduce(); }

    void reduce() {
        if (d == 0) throw std::domain_error("Rat: zero denominator");
        if (d < 0) { n = -n; d = -d; }
        long long g = std::gcd(n < 0 ? -n : n, d);
        if (g > 1) { n /= g; d /= g; }
        if (n == 0) d = 1;
    }

    static long long checked(__int128 v) {
        if (v > INT64_MAX || v < INT64_MIN) throw std::overflow_error("Rat overflow");
        return static_cast<long long>(v);
    }
    static Rat make(__int128 num, __int128 den) {
        if (den == 0) throw std::domain_error("Rat: zero denominator");
        if (den < 0) { num = -num; den = -den; }
        __int128 a = num < 0 ? -num : num;
        __int128 b = den;
        while (b) { __int128 t = a % b; a = b; b = t; }
        if (a > 1) { num /= a; den /= a; }
        Rat r;
        r.n = checked(num);
        r.d = checked(den);
        return r;
    }

    friend Rat operator+(const Rat& a, const Rat& b) {
        return make((__int128)a.n * b.d + (__int128)b.n * a.d, (__int128)a.d * b.d);
    }
    friend Rat operator-(const Rat& a, const Rat& b) {
        return make((__int128)a.n * b.d - (__int128)b.n * a.d, (__int128)a.d * b.d);
    }
    friend Rat operator*(const Rat& a, const Rat& b) {
        return make((__int128)a.n * b.n, (__int128)a.d * b.d);
    }
    friend Rat operator/(const Rat& a, const Rat& b) {
        if (b.n == 0) throw std::domain_error("Rat: divide by zero");
        return make((__int128)a.n * b.d, (__int128)a.d * b.n);
    }
    Rat operator-() const { Rat r(*this); r.n = -r.n; return r; }
    friend bool operator==(const Rat& a, const Rat& b) { return a.n == b.n && a.d == b.d; }
    friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
    friend bool operator<(const Rat& a, const Rat& b) {
        return (__int128)a.n * b.d < (__int128)b.n * a.d;
    }
    bool is_zero() const { return n == 0; }
    double to_double() const { return double(n) / double(d); }
    std::string str() const {
        if (d == 1) return std::to_string(n);
        return std::to_string(n) + "/" + std::to_string(d);
    }
};

// Gaussian rational a + b*i.
struct GRat {
    Rat re, im;

    GRat() = default;
    GRat(Rat r) : re(r) {}
    GRat(long long r) : re(r) {}
    GRat(Rat r, Rat i) : re(r), im(i) {}
    static GRat I() { return GRat(Rat(0), Rat(1)); }

    friend GRat operator+(const GRat& a, const GRat& b) { return {a.re + b.re, a.im + b.im}; }
    friend GRat operator-(const GRat& a, const GRat& b) { return {a.re - b.re, a.im - b.im}; }
    friend GRat operator*(const GRat& a, const GRat& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    GRat operator-() const { return {-re, -im}; }
    GRat conj() const { return {re, -im}; }
    GRat inv() const {
        Rat n2 = re * re + im * im;
        if (n2.is_zero()) throw std::domain_error("GRat: divide by zero");
        return {re / n2, -(im / n2)};
    }
    friend GRat operator/(const GRat& a, const GRat& b) { return a * b.inv(); }
    friend bool operator==(const GRat& a, const GRat& b) { return a.re == b.re && a.im == b.im; }
    friend bool operator!=(const GRat& a, const GRat& b) { return !(a == b); }
    bool is_zero() const { return re.is_zero() && im.is_zero(); }
    std::complex<double> to_complex() const { return {re.to_double(), im.to_double()}; }
    std::string str() const { return re.str() + (im.n >= 0 ? "+" : "") + im.str() + "i"; }
};

} // namespace dc
