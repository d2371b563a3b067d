#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dc/graded.hpp"

#include <random>

using namespace dc;
using C = std::complex<double>;

namespace {

std::mt19937 rng(42);

C rand_c() {
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    return {d(rng), d(rng)};
}

Graded random_homogeneous(int n, int parity) {
    Graded g(n);
    for (std::uint32_t m = 0; m < g.dim(); ++m)
        if (int(__builtin_popcount(m)) % 2 == parity) g[m] = rand_c();
    return g;
}

Graded random_element(int n) {
    Graded g(n);
    for (std::uint32_t m = 0; m < g.dim(); ++m) g[m] = rand_c();
    return g;
}

} // namespace

TEST_CASE("generator nilpotency and anticommutation") {
    int n = 4;
    auto g1 = Graded::generator(n, 0);
    auto g2 = Graded::generator(n, 1);
    CHECK(gr_mul(g1, g1).is_zero());
    auto a = gr_mul(g1, g2);
    auto b = gr_mul(g2, g1);
    CHECK((a + b).is_zero());
    // (1 + g1 g2)^2 = 1 + 2 g1 g2
    auto u = Graded::scalar(n, 1.0) + a;
    auto sq = gr_mul(u, u);
    CHECK(std::abs(sq[0] - C(1.0)) < 1e-15);
    CHECK(std::abs(sq[3] - C(2.0)) < 1e-15);
}

TEST_CASE("graded commutativity on homogeneous elements") {
    int n = 8;
    for (int t = 0; t < 20; ++t) {
        int pa = t % 2, pb = (t / 2) % 2;
        auto a = random_homogeneous(n, pa);
        auto b = random_homogeneous(n, pb);
        auto ab = gr_mul(a, b);
        auto ba = gr_mul(b, a);
        double sign = (pa == 1 && pb == 1) ? -1.0 : 1.0;
        auto diff = ab - sign * ba;
        CHECK(diff.max_abs() < 1e-12);
    }
}

TEST_CASE("associativity on random triples") {
    int n = 6;
    for (int t = 0; t < 25; ++t) {
        auto a = random_element(n), b = random_element(n), c = random_element(n);
        auto l = gr_mul(gr_mul(a, b), c);
        auto r = gr_mul(a, gr_mul(b, c));
        CHECK((l - r).max_abs() < 1e-12);
    }
}

TEST_CASE("exp of nilpotent even element") {
    int n = 6;
    CHECK((gr_exp(Graded(n)) - Graded::scalar(n, 1.0)).is_zero());
    // exp(c g1 g2) = 1 + c g1 g2
    C c = rand_c();
    auto g12 = gr_mul(Graded::generator(n, 0), Graded::generator(n, 1));
    auto e = gr_exp(c * g12);
    CHECK(std::abs(e[0] - C(1.0)) < 1e-15);
    CHECK(std::abs(e[3] - c) < 1e-15);
    // exp(a) exp(-a) = 1 for random even souls
    for (int t = 0; t < 10; ++t) {
        auto a = random_homogeneous(n, 0);
        a[0] = 0.0;
        auto p = gr_mul(gr_exp(a), gr_exp(C(-1.0) * a));
        auto one = Graded::scalar(n, 1.0);
        CHECK((p - one).max_abs() < 1e-12);
    }
    CHECK_THROWS(gr_exp(Graded::scalar(n, 1.0)));
    CHECK_THROWS(gr_exp(Graded::generator(n, 2)));
}
