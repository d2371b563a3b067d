#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dc/rational.hpp"
#include "dc/scalar.hpp"

using namespace dc;

TEST_CASE("rational arithmetic") {
    Rat a(1, 2), b(1, 3);
    CHECK(a + b == Rat(5, 6));
    CHECK(a * b == Rat(1, 6));
    CHECK(a - b == Rat(1, 6));
    CHECK(a / b == Rat(3, 2));
    CHECK(Rat(2, 4) == Rat(1, 2));
    CHECK(Rat(-3, -6) == Rat(1, 2));
    CHECK((Rat(1, 3) + Rat(2, 3)) == Rat(1));
    CHECK_THROWS(Rat(1, 0));
}

TEST_CASE("gaussian rational") {
    GRat i = GRat::I();
    CHECK(i * i == GRat(Rat(-1)));
    GRat z(Rat(1, 2), Rat(-1, 3));
    CHECK(z * z.inv() == GRat(Rat(1)));
    CHECK(z.conj().im == Rat(1, 3));
}

TEST_CASE("scalar radical reduction") {
    // s^2 = m g
    Scalar s2 = sc_sqrt_mg() * sc_sqrt_mg();
    Scalar mg = sc_param(Scalar::M) * sc_param(Scalar::G);
    CHECK(s2 == mg);
    // sqrt(mg/2) * sqrt(2g/m) = g
    Scalar p = sc_sqrt_mg_over_2() * sc_sqrt_2g_over_m();
    CHECK(p == sc_param(Scalar::G));
    // sqrt(g/m) * sqrt(m/g) = 1
    CHECK(sc_sqrt_g_over_m() * sc_sqrt_m_over_g() == Scalar::one());
    // r2^2 = 2
    Scalar r2sq = sc_param(Scalar::R2) * sc_param(Scalar::R2);
    CHECK(r2sq == sc_rat(2));
    // inverse round trip with radicals
    Scalar q = sc_sqrt_2g_over_m() * sc_i(3, 4) * sc_param(Scalar::A, -2);
    CHECK(q * q.inv() == Scalar::one());
}

TEST_CASE("scalar numeric evaluation") {
    ParamValues pv{2.0, 3.0, 1.5, 0.7};
    Scalar q = sc_sqrt_2g_over_m(); // sqrt(2*3/2) = sqrt(3)
    auto v = q.eval(pv);
    CHECK(v.real() == doctest::Approx(std::sqrt(3.0)));
    CHECK(v.imag() == doctest::Approx(0.0));
    Scalar w = sc_i() * sc_param(Scalar::SIGMA, -1);
    auto vw = w.eval(pv);
    CHECK(vw.imag() == doctest::Approx(1.0 / 0.7));
}
