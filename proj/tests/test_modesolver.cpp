#include "hypo/errors.hpp"
#include "hypo/modesolver.hpp"
#include "oracles.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

using namespace hypo;

namespace {

const Complex I(0.0, 1.0);

TrigPoly poly(std::map<int, Complex> c) { return TrigPoly(c); }
TrigPoly e1() { return poly({{1, 1.0}}); }

double sup_diff(const std::vector<Complex>& a, const std::vector<Complex>& b) {
    double m = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) m = std::max(m, std::abs(a[j] - b[j]));
    return m;
}

double sup_abs(const std::vector<Complex>& a) {
    double m = 0.0;
    for (auto v : a) m = std::max(m, std::abs(v));
    return m;
}

std::vector<Complex> sample(const std::function<Complex(double)>& f, int n) {
    std::vector<Complex> v(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) v[static_cast<std::size_t>(j)] = f(kTwoPi * j / n);
    return v;
}

TrigPoly random_poly(std::mt19937& rng, int degree) {
    std::normal_distribution<double> g;
    std::map<int, Complex> c;
    for (int n = -degree; n <= degree; ++n) c[n] = Complex(g(rng), g(rng));
    return TrigPoly(c);
}

}  // namespace

TEST_CASE("scalar solutions against closed forms") {
    auto one = solve_periodic_scalar(1.0, PeriodicFn::constant(1.0));
    CHECK(sup_diff(one.values, std::vector<Complex>(256, 1.0)) < 1e-13);
    CHECK(one.residual <= 1e-12);
    CHECK(one.branch == Branch::Minus);

    auto res = solve_periodic_scalar(I, PeriodicFn::constant(1.0));
    CHECK(res.branch == Branch::Resonant);
    auto closed = sample([](double t) { return (1.0 - std::exp(-I * t)) / I; }, 256);
    CHECK(sup_diff(res.values, closed) < 1e-13);

    try {
        solve_periodic_scalar(0.0, PeriodicFn::constant(1.0));
        FAIL("expected ResonanceObstruction");
    } catch (const ResonanceObstruction& e) {
        CHECK(std::abs(e.integral() - kTwoPi) < 1e-12);
    }

    auto wave = solve_periodic_scalar(1.0, PeriodicFn(e1()));
    CHECK(sup_diff(wave.values, sample([](double t) { return std::exp(I * t) / (1.0 + I); }, 256)) < 1e-13);
    auto rk = oracle::periodic_solution([](double) { return Complex(1.0); }, [](double t) { return std::exp(I * t); },
                                        256);
    CHECK(sup_diff(wave.values, rk) < 1e-9);
}

TEST_CASE("scalar solutions are periodic and both branches agree") {
    std::mt19937 rng(21);
    std::uniform_real_distribution<double> u(0.1, 5.0), v(-4.0, 4.0);
    for (int k = 0; k < 20; ++k) {
        Complex lambda(u(rng) * (k % 2 ? 1.0 : -1.0), v(rng));
        PeriodicFn h(random_poly(rng, 3));
        auto minus = solve_periodic_scalar(lambda, h, Branch::Minus);
        auto plus = solve_periodic_scalar(lambda, h, Branch::Plus);
        CHECK(sup_diff(minus.values, plus.values) <= 1e-10 * std::max(1.0, sup_abs(minus.values)));
        CHECK(std::abs(minus(0.0) - minus(kTwoPi - 1e-12)) < 1e-9);
    }
}

TEST_CASE("mode solutions") {
    auto flat = solve_mode({0.0, e1() + TrigPoly::constant(I), 0.5, PeriodicFn::constant(1.0)});
    CHECK(sup_diff(flat.values, std::vector<Complex>(256, 2.0)) < 1e-12);

    ModeProblem p{1.0, TrigPoly::constant(I), 0.0, PeriodicFn(e1())};
    CHECK(std::abs(p.lambda() + 1.0) < 1e-15);
    auto sol = solve_mode(p);
    auto closed = sample([](double t) { return std::exp(I * t) / (I - 1.0); }, 256);
    CHECK(sup_diff(sol.values, closed) < 1e-12);
    auto rk = oracle::periodic_solution([](double) { return Complex(-1.0); },
                                        [](double t) { return std::exp(I * t); }, 256);
    CHECK(sup_diff(sol.values, rk) <= 1e-8 * sup_abs(rk));
}

TEST_CASE("branch equivalence on the example coefficient") {
    const TrigPoly c = e1() + TrigPoly::constant(I);
    const PeriodicFn rhs(poly({{1, 0.5}, {-1, 0.5}}));
    for (double mu : {3.0, -3.0}) {
        ModeProblem p{mu, c, 0.5 * I, rhs};
        auto a = solve_mode(p, BranchPolicy::ForceMinus);
        auto b = solve_mode(p, BranchPolicy::ForcePlus);
        CHECK(sup_diff(a.values, b.values) <= 1e-9);
    }
}

TEST_CASE("residuals") {
    const TrigPoly c = e1() + TrigPoly::constant(I);
    const Complex q = 0.5 * I;
    const double mu = 1.5;
    // rhs := y0' + (i mu c + q) y0 with y0 = sin t
    auto rhs_fn = [&](double t) { return Complex(std::cos(t)) + (I * mu * c(t) + q) * std::sin(t); };
    ModeProblem p{mu, c, q, PeriodicFn::from_window(rhs_fn, Smoothness::Analytic, "fixture", 10.0)};
    auto sol = solve_mode(p);
    CHECK(sol.residual <= 1e-8);
    CHECK(sup_diff(sol.values, sample([](double t) { return Complex(std::sin(t)); }, 256)) < 1e-10);

    std::mt19937 rng(4);
    for (int k = 0; k < 5; ++k) {
        auto f = random_poly(rng, 3);
        ModeProblem pr{2.0, c, q, PeriodicFn(f)};
        auto s = solve_mode(pr);
        CHECK(residual(s, pr) <= 1e-6);
        auto rk = oracle::periodic_solution([&](double t) { return I * 2.0 * c(t) + q; }, [&](double t) { return f(t); },
                                            256);
        CHECK(sup_diff(s.values, rk) <= 1e-8 * std::max(1.0, sup_abs(rk)));
    }
}

TEST_CASE("bump right-hand sides use the step-integral residual") {
    const TrigPoly c = e1() * 2.0 + TrigPoly::constant(I);
    ModeProblem p{4.0, c, 0.5 * I, make_bump(2.0, 0.6, 0.5)};
    auto s = solve_mode(p);
    CHECK(residual(s, p, ResidualMethod::StepIntegral) <= 1e-8 * residual_scale(s, p));
    REQUIRE_FALSE(s.warnings.empty());
    CHECK(s.warnings[0].kind == WarningKind::OverflowRisk);
    auto rk = oracle::periodic_solution([&](double t) { return I * 4.0 * c(t) + 0.5 * I; },
                                        [&](double t) { return p.rhs(t); }, 256, 320);
    CHECK(sup_diff(s.values, rk) <= 1e-7 * std::max(1.0, sup_abs(rk)));
}

TEST_CASE("kernel overflow is an error") {
    ModeProblem p{600.0, e1() * 2.0 + TrigPoly::constant(I), 0.0, PeriodicFn::constant(1.0)};
    CHECK_THROWS_AS(solve_mode(p), OverflowError);
}

TEST_CASE("gauge transform") {
    auto model = SpectralModel::su2();
    CoefficientField f("SU2", 128);
    auto rep = model.rep(2);
    f.set(rep, 1, 2, PeriodicFn(poly({{1, 1.0}, {0, 2.0}})));
    f.set(rep, 3, 1, PeriodicFn(poly({{-2, I}})));
    auto same = gauge_transform(f, TrigPoly::constant(0.7), GaugeDirection::Forward);
    for (auto& [k, e] : f.entries()) CHECK(sup_diff(e.samples, same.find(k)->samples) < 1e-15);
    TrigPoly a = poly({{0, 0.3}, {1, 0.4 - 0.2 * I}, {-1, 0.4 + 0.2 * I}, {2, 0.1}, {-2, 0.1}});
    auto back = gauge_transform(gauge_transform(f, a, GaugeDirection::Forward), a, GaugeDirection::Inverse);
    for (auto& [k, e] : f.entries()) CHECK(sup_diff(e.samples, back.find(k)->samples) < 1e-13);
    CHECK_THROWS_AS(gauge_transform(f, poly({{1, 1.0}}), GaugeDirection::Forward), DomainError);
}

TEST_CASE("gauge covariance of mode solutions") {
    TrigPoly a = poly({{0, 0.3}, {1, 0.4 - 0.2 * I}, {-1, 0.4 + 0.2 * I}});
    TrigPoly b = poly({{0, 1.0}, {1, -0.5 * I}, {-1, 0.5 * I}});
    TrigPoly c = a + b * I;
    TrigPoly chat = TrigPoly::constant(a.mean()) + b * I;
    const Complex q = 0.5 * I;
    auto model = SpectralModel::su2();
    CoefficientField f("SU2", 256);
    f.set(model.rep(4), 2, 1, PeriodicFn(poly({{1, 1.0}, {-1, 0.3}})));
    auto u = solve_field(model, c, q, f);
    auto v = solve_field(model, chat, q, gauge_transform(f, a, GaugeDirection::Forward));
    REQUIRE(u.all_solved());
    REQUIRE(v.all_solved());
    auto back = gauge_transform(v.u, a, GaugeDirection::Inverse);
    for (auto& [k, e] : u.u.entries()) CHECK(sup_diff(e.samples, back.find(k)->samples) <= 1e-7);
}

TEST_CASE("field solves") {
    auto model = SpectralModel::su2();
    const TrigPoly c = e1() + TrigPoly::constant(I);
    CoefficientField f("SU2", 256);
    f.set(model.rep(2), 1, 1, PeriodicFn::constant(1.0));
    auto sol = solve_field(model, c, 0.5 * I, f);
    REQUIRE(sol.diagnostics.size() == 1);
    CHECK(sol.diagnostics[0].status == ModeStatus::Solved);
    CHECK(sol.diagnostics[0].warnings.empty());
    auto rk = oracle::periodic_solution([&](double t) { return -I * c(t) + 0.5 * I; }, [](double) { return Complex(1.0); },
                                        256);
    CHECK(sup_diff(sol.u.find({2, 1, 1})->samples, rk) < 1e-8);

    auto empty = solve_field(model, c, 0.5 * I, CoefficientField("SU2", 256));
    CHECK(empty.u.empty());
    CHECK(empty.diagnostics.empty());
}

TEST_CASE("resonant family on SU2 reports obstructions") {
    auto model = SpectralModel::su2();
    const TrigPoly c = e1() + TrigPoly::constant(I);
    CoefficientField f("SU2", 128);
    for (int L = 0; L <= 4; ++L) {
        auto rep = model.rep(L);
        for (int r = 1; r <= rep.dim; ++r) f.set(rep, r, 1, PeriodicFn(poly({{-1, 1.0}})));
    }
    SolveOptions opt;
    opt.threads = 3;
    auto sol = solve_field(model, c, I, f, opt);
    for (auto& d : sol.diagnostics) {
        const auto* e = f.find(d.key);
        bool resonant = e->mu() == 0.0;
        CHECK((d.status == ModeStatus::Obstructed) == resonant);
        if (resonant) CHECK(std::abs(d.obstruction - kTwoPi) < 1e-9);
    }
    // Threaded and serial runs are identical.
    auto serial = solve_field(model, c, I, f);
    for (auto& [k, e] : serial.u.entries()) CHECK(sup_diff(e.samples, sol.u.find(k)->samples) == 0.0);
}

TEST_CASE("shared-node quadrature agrees with the adaptive rule") {
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> mu_d(-8.0, 8.0);
    const TrigPoly c = e1() * 1.5 + TrigPoly::constant(I);
    for (int k = 0; k < 12; ++k) {
        TrigPoly hp = random_poly(rng, 1 + k % 4);
        // Same function, but opaque to the solver: forces the adaptive path.
        PeriodicFn opaque = PeriodicFn::from_window([hp](double t) { return hp(t); }, Smoothness::Analytic,
                                                    "opaque", hp.coeff_l1());
        const double mu = mu_d(rng);
        auto fast = solve_mode({mu, c, 0.5 * I, PeriodicFn(hp)}, BranchPolicy::Auto);
        auto slow = solve_mode({mu, c, 0.5 * I, opaque}, BranchPolicy::Auto);
        CHECK(fast.branch == slow.branch);
        CHECK(sup_diff(fast.values, slow.values) <= 1e-11 * std::max(1.0, sup_abs(slow.values)));
    }
}
