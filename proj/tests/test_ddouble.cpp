#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "steersat/ddouble.hpp"

#include <cmath>
#include <random>

using steersat::ddouble;

TEST_CASE("addition keeps parts a plain double would drop") {
    ddouble x = ddouble(1.0) + ddouble(1e-20);
    ddouble back = x - ddouble(1.0);
    CHECK(back.value() == doctest::Approx(1e-20).epsilon(1e-14));
}

TEST_CASE("multiplication captures the full product") {
    // (1 + 2^-40)^2 = 1 + 2^-39 + 2^-80
    const double eps = std::ldexp(1.0, -40);
    ddouble sq = ddouble(1.0 + eps) * ddouble(1.0 + eps);
    ddouble rem = sq - ddouble(1.0) - ddouble(std::ldexp(1.0, -39));
    CHECK(rem.value() == doctest::Approx(std::ldexp(1.0, -80)).epsilon(1e-12));
}

TEST_CASE("division and multiplication are mutually inverse") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> dist(0.1, 10.0);
    for (int i = 0; i < 200; ++i) {
        ddouble a(dist(rng), 1e-18 * dist(rng));
        ddouble b(dist(rng), 1e-18 * dist(rng));
        ddouble r = (a / b) * b - a;
        CHECK(std::abs(r.value()) <= 1e-29 * std::abs(a.value()));
    }
}

TEST_CASE("sqrt residual vanishes to double-double precision") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> dist(0.25, 4.0);
    for (int i = 0; i < 200; ++i) {
        ddouble a(dist(rng));
        ddouble root = sqrt(a);
        ddouble residual = root * root - a;
        CHECK(std::abs(residual.value()) <= 1e-30 * std::abs(a.value()));
    }
    CHECK(sqrt(ddouble(0.0)).value() == 0.0);
}

TEST_CASE("sqrt1pm1 is accurate for tiny arguments") {
    // reference: sqrt(1+x) - 1 = x/2 - x^2/8 + x^3/16 - ...
    for (double x : {1e-9, -1e-9, 3.7e-10, -2.5e-12}) {
        const double expected = 0.5 * x - 0.125 * x * x + 0.0625 * x * x * x;
        const double got = sqrt1pm1(ddouble(x)).value();
        CHECK(got == doctest::Approx(expected).epsilon(1e-15));
    }
}

TEST_CASE("prod1pm1 composes near-unity factors without cancellation") {
    const double a = 3e-10, b = -7e-11;
    const double expected = a + b + a * b;
    CHECK(steersat::prod1pm1(ddouble(a), ddouble(b)).value() ==
          doctest::Approx(expected).epsilon(1e-15));
}
