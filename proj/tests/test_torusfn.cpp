#include "hypo/errors.hpp"
#include "hypo/periodic_fn.hpp"
#include "hypo/quadrature.hpp"
#include "hypo/torusfn.hpp"
#include "hypo/trig_poly.hpp"
#include "oracles.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

using namespace hypo;

namespace {

const Complex I(0.0, 1.0);

TrigPoly poly(std::map<int, Complex> c) { return TrigPoly(c); }
TrigPoly sin_plus(double amp, double shift) { return poly({{1, -0.5 * I * amp}, {-1, 0.5 * I * amp}, {0, shift}}); }

TrigPoly random_poly(std::mt19937& rng, int degree, bool real) {
    std::normal_distribution<double> g;
    std::map<int, Complex> c;
    for (int n = -degree; n <= degree; ++n) c[n] = Complex(g(rng), g(rng));
    if (real) {
        c[0] = c[0].real();
        for (int n = 1; n <= degree; ++n) c[-n] = std::conj(c[n]);
    }
    return TrigPoly(c);
}

}  // namespace

TEST_CASE("evaluation matches direct summation") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> u(-10, 10);
    for (int k = 0; k < 20; ++k) {
        auto p = random_poly(rng, 5, false);
        std::vector<std::pair<int, Complex>> terms;
        for (int n = -5; n <= 5; ++n) terms.emplace_back(n, p.coeff(n));
        double t = u(rng);
        CHECK(std::abs(p(t) - oracle::trig_sum(terms, t)) < 1e-12);
    }
}

TEST_CASE("mean") {
    CHECK(std::abs(mean(poly({{1, 1.0}, {0, I}})) - I) == 0.0);
    CHECK(std::abs(mean(TrigPoly{})) == 0.0);
    CHECK(std::abs(mean(poly({{1, 2.0}, {0, I}})) - I) == 0.0);
}

TEST_CASE("zero-mean primitive") {
    auto p = poly({{1, 1.0}, {0, I}});
    auto C = zero_mean_primitive(p);
    for (double t : {0.0, 0.3, 1.7, 4.0, 6.0}) {
        Complex closed = (std::polar(1.0, t) - 1.0) / I;
        CHECK(std::abs(C(t) - closed) < 1e-14);
        Complex quad = oracle::romberg([&](double s) { return p(s) - I; }, 0.0, t);
        CHECK(std::abs(C(t) - quad) < 1e-12);
    }
    CHECK(zero_mean_primitive(TrigPoly::constant(3.0)).is_zero());
    auto S = zero_mean_primitive(poly({{1, 0.5}, {-1, 0.5}}));
    for (double t : {0.1, 2.0, 5.5}) CHECK(std::abs(S(t) - std::sin(t)) < 1e-15);
}

TEST_CASE("window integral") {
    auto b = sin_plus(2.0, 1.0);
    Complex full = window_integral(b, 0.0, kTwoPi);
    Complex quad = oracle::romberg([&](double s) { return b(s); }, 0.0, kTwoPi);
    CHECK(std::abs(full - kTwoPi) < 1e-12);
    CHECK(std::abs(full - quad) < 1e-10);
    CHECK(std::abs(window_integral(b, 1.234, 0.0)) == 0.0);
    auto bp = sin_plus(1.0, 1.0);
    for (int i = 0; i < 64; ++i)
        for (int j = 0; j <= 64; ++j)
            CHECK(window_integral(bp, kTwoPi * i / 64, kTwoPi * j / 64).real() >= -1e-13);
}

TEST_CASE("sign certificates for the example coefficients") {
    auto nonneg = sign_certificate(sin_plus(1.0, 1.0), 256);
    CHECK(nonneg.verdict == SignVerdict::NonNegative);
    CHECK(nonneg.rigor == Rigor::Certified);

    auto changes = sign_certificate(sin_plus(2.0, 1.0), 256);
    REQUIRE(changes.verdict == SignVerdict::ChangesSign);
    REQUIRE(changes.witnesses.size() == 2);
    CHECK(changes.witnesses[0].value > 0);
    CHECK(changes.witnesses[1].value < 0);
    CHECK(std::abs(changes.witnesses[1].t - 1.5 * kPi) < 0.05);

    CHECK(sign_certificate(TrigPoly{}, 64).verdict == SignVerdict::IdenticallyZero);
    CHECK(sign_certificate(TrigPoly::constant(2.0), 64).verdict == SignVerdict::ConstantNonzero);
    CHECK(sign_certificate(-sin_plus(1.0, 1.0), 64).verdict == SignVerdict::NonPositive);
    CHECK_THROWS_AS(sign_certificate(poly({{1, 1.0}}), 64), DomainError);
}

TEST_CASE("sign certificate resolves higher-order zeros") {
    // (1 - cos t)^2 = 3/2 - 2 cos t + cos(2t)/2 vanishes to fourth order at 0.
    auto quartic = poly({{0, 1.5}, {1, -1.0}, {-1, -1.0}, {2, 0.25}, {-2, 0.25}});
    auto cert = sign_certificate(quartic, 64);
    CHECK(cert.verdict == SignVerdict::NonNegative);
    CHECK(cert.rigor == Rigor::Certified);
    // A tiny dip below zero is still a sign change when it exceeds the zero band.
    auto dip = quartic - TrigPoly::constant(1e-6);
    CHECK(sign_certificate(dip, 64).verdict == SignVerdict::ChangesSign);
}

TEST_CASE("sign certificate is stable under grid refinement") {
    std::mt19937 rng(11);
    int certified = 0;
    for (int k = 0; k < 120; ++k) {
        auto b = random_poly(rng, 1 + k % 4, true);
        // Shift some cases to be non-negative with a double zero.
        if (k % 3 == 0) {
            double lo = 1e300;
            for (int j = 0; j < 20000; ++j) lo = std::min(lo, b(kTwoPi * j / 20000).real());
            b = b - TrigPoly::constant(lo - 0.05);
        }
        auto c1 = sign_certificate(b, 64);
        auto c2 = sign_certificate(b, 128);
        if (c1.rigor == Rigor::Certified && c2.rigor == Rigor::Certified) {
            ++certified;
            CHECK(c1.verdict == c2.verdict);
        }
        if (c1.verdict == SignVerdict::NonNegative) {
            for (int j = 0; j < 1000; ++j) CHECK(b(kTwoPi * j / 1000).real() >= -c1.zero_tolerance);
            for (int i = 0; i < 16; ++i)
                for (int j = 0; j <= 16; ++j) {
                    double t = kTwoPi * i / 16, tau = kTwoPi * j / 16;
                    CHECK(window_integral(b, t - tau, tau).real() >= -1e-10);
                }
        }
    }
    CHECK(certified >= 100);
}

TEST_CASE("window minimum for the sign-changing example") {
    auto c = poly({{0, 0.7}}) + sin_plus(2.0, 1.0) * I;
    auto w = min_im_window(c);
    CHECK(std::abs(w.value - (-2.0 * std::sqrt(3.0) + 2.0 * kPi / 3.0)) < 1e-9);
    CHECK(std::abs(w.t0 - 7.0 * kPi / 6.0) < 1e-6);
    CHECK(std::abs(w.tau0 - 2.0 * kPi / 3.0) < 1e-6);
    CHECK(w.interior);
    auto b = c.imag_part();
    CHECK(std::abs(b(w.t0).real()) < 1e-6);
    CHECK(std::abs(b(w.t0 + w.tau0).real()) < 1e-6);

    // Dense grid oracle with the quadrature-defined window integral.
    double grid_min = 1e300;
    for (int i = 0; i < 200; ++i)
        for (int j = 0; j <= 200; ++j) {
            double t = kTwoPi * i / 200, tau = kTwoPi * j / 200;
            grid_min = std::min(grid_min, window_integral(b, t, tau).real());
        }
    CHECK(w.value <= grid_min + 1e-12);
    Complex q = oracle::romberg([&](double s) { return b(s); }, w.t0, w.t0 + w.tau0);
    CHECK(std::abs(q.real() - w.value) < 1e-9);
}

TEST_CASE("window minimum degenerate and boundary cases") {
    auto w = min_im_window(sin_plus(1.0, 1.0) * I);
    CHECK(w.value == 0.0);
    CHECK(w.tau0 == 0.0);
    CHECK_THROWS_AS(min_im_window(poly({{0, I}})), DegenerateWindow);

    auto back = max_im_backward_window(sin_plus(2.0, -1.0) * I);
    CHECK(std::abs(back.value - (2.0 * std::sqrt(3.0) - 2.0 * kPi / 3.0)) < 1e-9);
    CHECK(std::abs(back.t0 - 5.0 * kPi / 6.0) < 1e-6);
    CHECK(std::abs(back.tau0 - 2.0 * kPi / 3.0) < 1e-6);
}

TEST_CASE("window integrals are additive and primitives periodic") {
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> u(-7, 7);
    for (int k = 0; k < 150; ++k) {
        auto p = random_poly(rng, 1 + k % 5, false);
        double t = u(rng), tau = u(rng), sigma = u(rng);
        Complex lhs = window_integral(p, t, tau) + window_integral(p, t + tau, sigma);
        CHECK(std::abs(lhs - window_integral(p, t, tau + sigma)) < 1e-11 * (1 + p.coeff_l1() * 20));
        auto C = p.zero_mean_primitive();
        CHECK(std::abs(C(t + kTwoPi) - C(t)) < 1e-11 * (1 + p.coeff_l1()));
    }
}

TEST_CASE("bumps") {
    auto phi = make_bump(kPi, 0.5, 0.5);
    CHECK(phi(kPi) == Complex(1.0));
    CHECK(phi(0.0) == Complex(0.0));
    CHECK(phi(kPi + 0.25) == Complex(1.0));
    Complex ref = oracle::romberg([&](double s) { return phi(s); }, kPi - 0.5, kPi + 0.5, 22);
    Complex q = quadrature(phi, 0.0, kTwoPi, 1e-12);
    CHECK(q.real() > 0.5);
    CHECK(q.real() < 1.0);
    CHECK(std::abs(q - ref) < 1e-10);
    // The transition is symmetric about its midpoint, so the integral is
    // plateau + transition width = 0.5 + 0.25.
    CHECK(std::abs(q.real() - 0.75) < 1e-10);
    CHECK_THROWS_AS(make_bump(0.0, 4.0, 0.5), DomainError);
    CHECK_THROWS_AS(make_bump(0.0, 0.5, 1.0), DomainError);
    for (int j = 0; j < 1000; ++j) {
        double v = phi(kTwoPi * j / 1000).real();
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
    }
}

TEST_CASE("quadrature") {
    CHECK(std::abs(quadrature(PeriodicFn(sin_plus(1.0, 0.0)), 0.0, kTwoPi, 1e-12)) < 1e-12);
    auto e = PeriodicFn::from_window([](double s) { return Complex(std::exp(-s)); }, Smoothness::Analytic, "exp", 1.0);
    auto v = integrate([](double s) { return Complex(std::exp(-s)); }, 0.0, kTwoPi, 1e-13);
    CHECK(std::abs(v.value - (1.0 - std::exp(-kTwoPi))) < 1e-13);
    (void)e;
    CHECK_THROWS_AS(integrate([](double s) { return Complex(1.0 / std::sqrt(std::abs(s - 0.1234567))); }, 0.0, 1.0,
                              1e-14, 3),
                    QuadratureError);
}

TEST_CASE("trig row format round-trips") {
    std::mt19937 rng(5);
    auto p = random_poly(rng, 4, false);
    auto q = parse_trig_rows(format_trig_rows(p));
    for (int n = -4; n <= 4; ++n) CHECK(q.coeff(n) == p.coeff(n));
    CHECK_THROWS(parse_trig_rows("1, 1, 0\n1, 2, 0\n"));
    CHECK_THROWS(parse_trig_rows("1, nan, 0\n"));
}
