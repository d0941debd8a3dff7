// Acceptance run: one line per criterion, exit status 1 if any is red.
// Tolerances and runtime budgets are fixed here; oracles live in oracles.hpp.

#include "hypo/analysis.hpp"
#include "hypo/classifier.hpp"
#include "hypo/counterexamples.hpp"
#include "hypo/diophantine.hpp"
#include "hypo/errors.hpp"
#include "hypo/modesolver.hpp"
#include "hypo/torusfn.hpp"

#include "oracles.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace hypo;

namespace {

const Complex I(0.0, 1.0);

struct Outcome {
    bool passed = true;
    std::ostringstream detail;
    void require(bool ok, const std::string& what) {
        if (!ok) {
            passed = false;
            detail << " [failed: " << what << "]";
        }
    }
};

TrigPoly random_poly(std::mt19937& rng, int degree) {
    std::normal_distribution<double> g;
    std::map<int, Complex> c;
    for (int n = -degree; n <= degree; ++n) c[n] = Complex(g(rng), g(rng));
    return TrigPoly(c);
}

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

GaussianRational gq(long re_num, long re_den, long im_num, long im_den) {
    return GaussianRational(Rational(re_num, re_den), Rational(im_num, im_den));
}

// c = a e^{it} + i with exact coefficients.
TrigPoly example_c(int a) { return TrigPoly::exact({{1, GaussianRational(a)}, {0, gq(0, 1, 1, 1)}}); }

void criterion1(Outcome& o) {
    std::mt19937 rng(20240601);
    std::uniform_real_distribution<double> re(0.1, 5.0), im(-5.0, 5.0);
    double worst_oracle = 0.0, worst_branch = 0.0;
    int compared = 0;
    for (int k = 0; k < 50; ++k) {
        Complex lambda(re(rng) * (k % 2 ? 1.0 : -1.0), im(rng));
        TrigPoly hp = random_poly(rng, 1 + k % 4);
        PeriodicFn h(hp);
        ModeSolution sol = solve_periodic_scalar(lambda, h);
        auto ref = oracle::periodic_solution([&](double) { return lambda; }, [&](double t) { return hp(t); }, 256);
        worst_oracle = std::max(worst_oracle, sup_diff(sol.values, ref) / sup_abs(ref));
        ModeSolution m = solve_periodic_scalar(lambda, h, Branch::Minus);
        ModeSolution p = solve_periodic_scalar(lambda, h, Branch::Plus);
        if (m.warnings.empty() && p.warnings.empty()) {
            ++compared;
            worst_branch = std::max(worst_branch, sup_diff(m.values, p.values) / std::max(1.0, sup_abs(m.values)));
        }
    }
    o.detail << "50 cases, max rel err vs RK4 " << worst_oracle << " (<= 1e-8), branch gap " << worst_branch
             << " over " << compared << " (<= 1e-10)";
    o.require(worst_oracle <= 1e-8, "oracle");
    o.require(worst_branch <= 1e-10, "branches");
    o.require(compared >= 25, "too few conditioned cases");
}

void criterion2(Outcome& o) {
    std::mt19937 rng(7);
    auto su2 = SpectralModel::su2();
    CoefficientField f("SU2", 256);
    for (const RepPoint& rep : enumerate_reps(su2, 20))
        for (int r = 1; r <= rep.dim; ++r)
            for (int s = 1; s <= rep.dim; ++s) f.set(rep, r, s, PeriodicFn(random_poly(rng, 1 + (r + s) % 4)));
    FieldSolution sol = solve_field(su2, example_c(1), 0.5 * I, f);
    double worst = 0.0;
    int solved = 0;
    for (const auto& d : sol.diagnostics) {
        if (d.status == ModeStatus::Solved) ++solved;
        worst = std::max(worst, d.residual);
    }
    o.detail << solved << "/" << sol.diagnostics.size() << " modes up to spin 10, max residual " << worst
             << " (<= 1e-6)";
    o.require(sol.all_solved(), "unsolved modes");
    o.require(worst <= 1e-6, "residual");
}

void criterion3(Outcome& o) {
    auto su2 = SpectralModel::su2();
    Verdict a = classify(su2, example_c(1), gq(0, 1, 1, 2));
    Verdict b = classify(su2, example_c(2), gq(0, 1, 1, 2));
    Verdict c = classify(su2, example_c(1), gq(0, 1, 1, 1));
    o.detail << to_string(a.decision) << "/" << to_string(a.rigor) << ", " << to_string(b.decision) << " via "
             << to_string(b.path) << "/" << to_string(b.rigor) << ", " << to_string(c.decision) << " via "
             << to_string(c.L0.report.verdict) << "/" << to_string(c.rigor);
    o.require(a.decision == Decision::GloballyHypoelliptic && a.rigor == Rigor::Certified, "first");
    o.require(b.decision == Decision::NotGloballyHypoelliptic && b.path == DecisionPath::SignChange &&
                  b.sign.verdict == SignVerdict::ChangesSign && b.rigor == Rigor::Certified,
              "second");
    o.require(c.decision == Decision::NotGloballyHypoelliptic && c.rigor == Rigor::Certified &&
                  c.L0.report.verdict == ResonantVerdict::InfiniteFamily,
              "third");
    bool witnesses_ok = !c.L0.report.witnesses.empty();
    for (const auto& w : c.L0.report.witnesses)
        witnesses_ok = witnesses_ok && w.k == -1 && w.mu == 0.0 && w.rep_label % 2 == 0;
    o.require(witnesses_ok, "witnesses mu = 0, k = -1 at integer spin");
}

// f with sup |f(., eta)| = e^{-<eta>}; for a hypoelliptic operator u must decay rapidly.
void criterion4(Outcome& o) {
    std::mt19937 rng(4);
    std::uniform_int_distribution<int> freq(-3, 3);
    auto su2 = SpectralModel::su2();
    CoefficientField f("SU2", 128);
    for (const RepPoint& rep : enumerate_reps(su2, 40))
        for (int r = 1; r <= rep.dim; ++r)
            for (int s : {1, r}) {
                if (f.find({rep.label, r, s})) continue;
                f.set(rep, r, s, PeriodicFn(TrigPoly({{freq(rng), std::exp(-rep.weight)}})));
            }
    FieldSolution sol = solve_field(su2, example_c(1), 0.5 * I, f);
    o.require(sol.all_solved(), "unsolved modes");
    DecayProfile prof = decay_classify(sol.u);
    double worst = -std::numeric_limits<double>::infinity();
    for (double s : prof.slopes) worst = std::max(worst, s);
    o.detail << sol.diagnostics.size() << " modes up to spin 20, " << to_string(prof.classification)
             << ", max tail slope " << worst << " (<= -6)";
    o.require(prof.classification == DecayClass::RapidDecay, "class");
    o.require(worst <= -6.0, "slope");
}

const CheckResult* find_check(const std::vector<CheckResult>& v, const std::string& name) {
    for (const auto& c : v)
        if (c.name == name) return &c;
    return nullptr;
}

void criterion5(Outcome& o) {
    auto su2 = SpectralModel::su2();
    CounterexampleReport r = sign_change_singular(su2, example_c(2), 0.5 * I, 30, SignVariant::B0Pos);
    // (a) closed form and quadrature of Im c = 2 sin + 1 over the extremal window
    const double closed = -2.0 * std::sqrt(3.0) + 2.0 * oracle::kPi / 3.0;
    const double quad =
        oracle::romberg([](double s) { return Complex(2.0 * std::sin(s) + 1.0); }, r.t0, r.t0 + r.tau0, 20).real();
    o.detail << "B=" << r.B << " (closed " << closed << ", quad " << quad << ")";
    o.require(std::abs(r.B - closed) <= 1e-6 && std::abs(quad - closed) <= 1e-6, "B");
    // (b) log sup f - B mu stays below a constant
    double env = -std::numeric_limits<double>::infinity();
    for (const auto& rec : r.records) env = std::max(env, std::log(rec.sup_f) - r.B * rec.mu);
    const double env_bound = std::log(1.0 + std::exp(oracle::kTwoPi * r.q.real()));
    o.detail << ", max(log sup f - B mu)=" << env << " (<= " << env_bound << ")";
    o.require(env <= env_bound, "envelope");
    // (c) decay exponent of |u(t0)|
    const CheckResult* ex = find_check(r.checks, "lower_bound_exponent");
    o.require(ex != nullptr, "exponent missing");
    if (ex) {
        o.detail << ", exponent " << ex->value << " in [-0.6, -0.4]";
        o.require(ex->value >= -0.6 && ex->value <= -0.4, "exponent");
    }
    // (d) pairing constant over the lower half of the weights vs all of them
    PairingResult pr = distribution_pairing(r.u_field, default_battery());
    const std::size_t half = pr.per_weight.size() / 2;
    double c_low = 0.0;
    for (std::size_t i = 0; i < half; ++i) c_low = std::max(c_low, pr.per_weight[i].second);
    o.detail << ", pairing C " << pr.C << " vs lower half " << c_low;
    o.require(std::isfinite(pr.C) && c_low > 0.0 && std::abs(pr.C - c_low) <= 0.1 * c_low, "pairing stability");
    int failed = 0;
    for (const auto& c : r.checks)
        if (!c.passed) {
            o.detail << " [check " << c.name << " red]";
            ++failed;
        }
    o.require(failed == 0, "construction checks");
    o.detail << ", " << r.records.size() << " reps";
}

void criterion6(Outcome& o) {
    auto su2 = SpectralModel::su2();
    CounterexampleReport r = homogeneous_resonant(su2, example_c(1), I, 24);
    double sup_err = 0.0, res = 0.0;
    for (const auto& rec : r.records) {
        sup_err = std::max(sup_err, std::abs(rec.sup_u - 1.0));
        res = std::max(res, rec.residual);
    }
    DecayProfile prof = decay_classify(r.u_field);
    o.detail << r.records.size() << " modes, max |sup - 1| " << sup_err << " (<= 1e-6), max residual " << res
             << " (<= 1e-8), " << to_string(prof.classification) << " K=" << prof.K;
    o.require(sup_err <= 1e-6, "modulus");
    o.require(res <= 1e-8, "residual");
    o.require(prof.classification == DecayClass::PolynomialBound, "class");
}

void criterion7(Outcome& o) {
    auto su2 = SpectralModel::su2();
    DiophantineReport rep =
        lower_bound_scan(su2, ArithmeticInput::exact_input(gq(0, 1, 1, 1), gq(0, 1, 1, 2)), 0.0, 10000, 400);
    const bool exact_half = rep.C_best_exact && *rep.C_best_exact == Rational(1, 2);
    o.detail << "C_best=" << (rep.C_best_exact ? to_string(*rep.C_best_exact) : std::to_string(rep.C_best)) << " "
             << to_string(rep.bound_rigor);
    o.require(exact_half, "C_best");
    o.require(rep.bound_rigor == Rigor::Certified, "rigor");
    const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
    LiouvilleReport lr = liouville_probe(phi, 30);
    o.detail << ", golden ratio exponent " << lr.exponent << " at depth " << lr.depth_used << " ("
             << to_string(lr.classification) << ")";
    o.require(std::abs(lr.exponent - 2.0) <= 0.2 && lr.depth_used == 30, "golden ratio");
}

TrigPoly random_real(std::mt19937& rng, int degree, double scale) {
    std::normal_distribution<double> g;
    std::map<int, Complex> c;
    c[0] = g(rng) * scale;
    for (int n = 1; n <= degree; ++n) {
        Complex z = Complex(g(rng), g(rng)) * (scale / n);
        c[n] = z;
        c[-n] = std::conj(z);
    }
    return TrigPoly(c);
}

void criterion8(Outcome& o) {
    std::mt19937 rng(8);
    std::uniform_real_distribution<double> ud(-7.0, 7.0);
    auto su2 = SpectralModel::su2();
    int fails = 0;

    // gauge covariance: solving with c or with (mean Re c) + i Im c after the gauge agree
    int gauge_cases = 0;
    double gauge_worst = 0.0;
    for (int k = 0; k < 100; ++k) {
        TrigPoly a = random_real(rng, 1 + k % 3, 0.4);
        TrigPoly b = random_real(rng, 1 + k % 2, 0.3) + TrigPoly::constant(k % 2 ? 1.0 : -1.0);
        TrigPoly c = a + b * I;
        TrigPoly chat = TrigPoly::constant(a.mean()) + b * I;
        Complex q(0.3 * ud(rng) / 7.0, 0.37);
        RepPoint rep = su2.rep(1 + k % 8);
        const int r = 1 + k % rep.dim;
        CoefficientField f("SU2", 128);
        f.set(rep, r, 1, PeriodicFn(random_poly(rng, 2)));
        FieldSolution u = solve_field(su2, c, q, f);
        FieldSolution v = solve_field(su2, chat, q, gauge_transform(f, a, GaugeDirection::Forward));
        if (!u.all_solved() || !v.all_solved()) continue;
        ++gauge_cases;
        CoefficientField back = gauge_transform(v.u, a, GaugeDirection::Inverse);
        for (const auto& [key, e] : u.u.entries())
            gauge_worst = std::max(gauge_worst, sup_diff(e.samples, back.find(key)->samples) /
                                                    std::max(1.0, sup_abs(e.samples)));
    }
    o.detail << "gauge " << gauge_cases << " cases err " << gauge_worst;
    if (gauge_cases < 100 || gauge_worst > 1e-8) ++fails, o.detail << " [red]";

    // branch equivalence on nonconstant c
    int branch_cases = 0;
    double branch_worst = 0.0;
    for (int k = 0; k < 120; ++k) {
        TrigPoly c = random_real(rng, 1 + k % 3, 0.3) + random_real(rng, 1 + k % 2, 0.3) * I;
        std::uniform_real_distribution<double> mu_d(-1.0, 1.0);
        const double mu = mu_d(rng);
        Complex q(0.0, ud(rng));
        // push Re lambda away from zero
        const double re = (0.3 + std::abs(ud(rng)) / 3.5) * (k % 2 ? 1.0 : -1.0);
        q += re - (Complex(0.0, mu) * c.mean()).real();
        ModeProblem p{mu, c, q, PeriodicFn(random_poly(rng, 3))};
        ModeSolution m = solve_mode(p, BranchPolicy::ForceMinus);
        ModeSolution pl = solve_mode(p, BranchPolicy::ForcePlus);
        if (!m.warnings.empty() || !pl.warnings.empty()) continue;
        ++branch_cases;
        branch_worst = std::max(branch_worst, sup_diff(m.values, pl.values) / std::max(1.0, sup_abs(m.values)));
    }
    o.detail << "; branches " << branch_cases << " cases err " << branch_worst;
    if (branch_cases < 100 || branch_worst > 1e-9) ++fails, o.detail << " [red]";

    // sign certificates agree between grids when both are certified
    int sign_cases = 0, sign_bad = 0;
    for (int k = 0; k < 140; ++k) {
        TrigPoly b = random_real(rng, 1 + k % 4, 1.0);
        if (k % 3 == 0) {
            double lo = 1e300;
            for (int j = 0; j < 20000; ++j) lo = std::min(lo, b(oracle::kTwoPi * j / 20000).real());
            b = b - TrigPoly::constant(lo - 0.05);
        }
        SignCertificate c1 = sign_certificate(b, 64), c2 = sign_certificate(b, 128);
        if (c1.rigor != Rigor::Certified || c2.rigor != Rigor::Certified) continue;
        ++sign_cases;
        if (c1.verdict != c2.verdict) ++sign_bad;
    }
    o.detail << "; sign grids " << sign_cases << " cases, " << sign_bad << " disagree";
    if (sign_cases < 100 || sign_bad) ++fails, o.detail << " [red]";

    // Plancherel norm never drops when entries are added
    int planch_bad = 0;
    std::normal_distribution<double> nd;
    for (int k = 0; k < 120; ++k) {
        CoefficientField f("SU2", 16);
        const double t = std::abs(ud(rng));
        double prev = 0.0;
        for (int step = 0; step < 6; ++step) {
            RepPoint rep = su2.rep(static_cast<int>(rng() % 13));
            const int r = 1 + static_cast<int>(rng() % static_cast<unsigned>(rep.dim));
            const int s = 1 + static_cast<int>(rng() % static_cast<unsigned>(rep.dim));
            if (f.find({rep.label, r, s})) continue;
            std::vector<Complex> v(16);
            for (auto& z : v) z = Complex(nd(rng), nd(rng));
            f.set_samples(rep, r, s, v);
            const double now = plancherel_norm(f, t);
            if (now < prev - 1e-12) ++planch_bad;
            prev = now;
        }
    }
    o.detail << "; Plancherel 120 cases, " << planch_bad << " drops";
    if (planch_bad) ++fails, o.detail << " [red]";

    // window integrals are additive
    double add_worst = 0.0;
    for (int k = 0; k < 150; ++k) {
        TrigPoly p = random_poly(rng, 1 + k % 5);
        const double t = ud(rng), tau = ud(rng), sigma = ud(rng);
        const Complex lhs = window_integral(p, t, tau) + window_integral(p, t + tau, sigma);
        add_worst = std::max(add_worst, std::abs(lhs - window_integral(p, t, tau + sigma)) / (1.0 + p.coeff_l1() * 20));
    }
    o.detail << "; additivity 150 cases err " << add_worst;
    if (add_worst > 1e-11) ++fails, o.detail << " [red]";
    o.require(fails == 0, std::to_string(fails) + " suites");
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        double budget;
        void (*run)(Outcome&);
    };
    const std::vector<Criterion> criteria = {
        {1, "scalar periodic solver vs RK4 shooting", 10.0, criterion1},
        {2, "mode residuals on SU2", 30.0, criterion2},
        {3, "SU2 example verdicts", 5.0, criterion3},
        {4, "rapid decay for SU2 with e^{-<eta>} data", 60.0, criterion4},
        {5, "sign-change construction, spin <= 30", 120.0, criterion5},
        {6, "resonant construction with q = i", 20.0, criterion6},
        {7, "Diophantine scan and golden-ratio probe", 30.0, criterion7},
        {8, "property suites", 60.0, criterion8},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        Outcome o;
        auto t0 = std::chrono::steady_clock::now();
        try {
            c.run(o);
        } catch (const std::exception& e) {
            o.passed = false;
            o.detail << " [exception: " << e.what() << "]";
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        o.require(secs < c.budget, "runtime budget");
        std::printf("criterion %d %s: %s (%.2fs < %.0fs) %s\n", c.id, c.name, o.passed ? "PASS" : "FAIL", secs,
                    c.budget, o.detail.str().c_str());
        std::fflush(stdout);
        if (!o.passed) ++failed;
    }
    return failed ? 1 : 0;
}
