#include "hypo/counterexamples.hpp"

#include "hypo/classifier.hpp"
#include "hypo/errors.hpp"
#include "hypo/modesolver.hpp"
#include "hypo/quadrature.hpp"
#include "hypo/spectral.hpp"
#include "hypo/torusfn.hpp"

#include <boost/math/tools/minima.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <sstream>

namespace hypo {

std::string to_string(Recipe r) {
    switch (r) {
        case Recipe::HomogeneousResonant: return "homogeneous_resonant";
        case Recipe::SmallGap: return "small_gap";
        case Recipe::SignChangeB0Pos: return "sign_change_b0pos";
        case Recipe::SignChangeB0Neg: return "sign_change_b0neg";
    }
    return "?";
}

bool CounterexampleReport::all_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

namespace {

constexpr Complex kI(0.0, 1.0);

double wrap(double t) {
    double r = std::fmod(t, kTwoPi);
    return r < 0 ? r + kTwoPi : r;
}

double circle_distance(double a, double b) { return std::abs(std::remainder(a - b, kTwoPi)); }

CheckResult check_le(std::string name, double value, double bound, std::string detail = {}) {
    return {std::move(name), value <= bound, value, bound, std::move(detail)};
}

CheckResult check_ge(std::string name, double value, double bound, std::string detail = {}) {
    return {std::move(name), value >= bound, value, bound, std::move(detail)};
}

struct Residual {
    double value = 0.0;
    double scale = 1.0;
};

Residual mode_residual(const std::vector<Complex>& values, double mu, const TrigPoly& c, Complex q,
                       const PeriodicFn& rhs) {
    ModeSolution sol;
    sol.values = values;
    sol.interpolant = TrigInterpolant(values);
    ModeProblem p{mu, c, q, rhs};
    return {residual(sol, p, ResidualMethod::StepIntegral), residual_scale(sol, p)};
}

double grid_sup(const std::vector<Complex>& v) {
    double m = 0.0;
    for (const auto& z : v) m = std::max(m, std::abs(z));
    return m;
}

// S(t) = int_0^t (mu b - Re q) = -Re(lambda) t + mu Im C(t); returns
// (max S, argmax) from a dense scan refined by Brent.
std::pair<double, double> maximize_S(const TrigPoly& Cprim, Complex lambda, double mu) {
    auto S = [&](double t) { return -lambda.real() * t + mu * Cprim(t).imag(); };
    const int n = 4096;
    int best = 0;
    double best_v = S(0.0);
    for (int j = 1; j <= n; ++j) {
        double v = S(kTwoPi * j / n);
        if (v > best_v) {
            best_v = v;
            best = j;
        }
    }
    const double h = kTwoPi / n;
    double lo = std::max(0.0, kTwoPi * best / n - h);
    double hi = std::min(kTwoPi, kTwoPi * best / n + h);
    auto r = boost::math::tools::brent_find_minima([&](double t) { return -S(t); }, lo, hi, 52);
    if (-r.second >= best_v) return {-r.second, r.first};
    return {best_v, kTwoPi * best / n};
}

// Max over the lower and the upper half of v.
std::pair<double, double> half_maxima(const std::vector<double>& v) {
    const std::size_t half = v.size() / 2;
    double lo = -std::numeric_limits<double>::infinity(), hi = lo;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i < half)
            lo = std::max(lo, v[i]);
        else
            hi = std::max(hi, v[i]);
    }
    return {lo, hi};
}

double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    const double den = n * sxx - sx * sx;
    return den > 0 ? (n * sxy - sx * sy) / den : 0.0;
}

}  // namespace

CounterexampleReport homogeneous_resonant(const SpectralModel& model, const TrigPoly& c, Complex q, int count,
                                          const CounterexampleOptions& options) {
    if (count < 1) throw DomainError("count must be positive");
    const ArithmeticInput in = arithmetic_input(c, q);
    if (!in.exact()) throw RecipeInapplicable("homogeneous_resonant needs exact c0 and q");

    // Grow the label box until count distinct resonant reps are listed.
    std::map<int, int> first_r;
    int max_label = 4 * count + 8;
    for (int attempt = 0; attempt < 8; ++attempt) {
        DiophantineReport res = resonant_set(model, in, max_label);
        if (res.verdict != ResonantVerdict::InfiniteFamily)
            throw RecipeInapplicable("no infinite resonant family (" + to_string(res.verdict) + ")");
        first_r.clear();
        for (const auto& w : res.witnesses) {
            auto it = first_r.find(w.rep_label);
            if (it == first_r.end() || w.r < it->second) first_r[w.rep_label] = w.r;
        }
        if (static_cast<int>(first_r.size()) >= count) break;
        max_label *= 2;
    }
    std::vector<RepPoint> reps;
    for (const auto& [label, r] : first_r) reps.push_back(model.rep(label));
    std::stable_sort(reps.begin(), reps.end(), [](const RepPoint& a, const RepPoint& b) { return a.weight < b.weight; });
    if (static_cast<int>(reps.size()) < count)
        throw RecipeInapplicable("found only " + std::to_string(reps.size()) + " resonant reps");
    reps.resize(static_cast<std::size_t>(count));

    CounterexampleReport rep_out;
    rep_out.recipe = Recipe::HomogeneousResonant;
    rep_out.model = model.name();
    rep_out.c = c;
    rep_out.q = q;
    rep_out.f_field = CoefficientField(model.name(), options.grid_size);
    rep_out.u_field = CoefficientField(model.name(), options.grid_size);

    const TrigPoly Cprim = c.zero_mean_primitive();
    double worst_sup = 0.0, worst_peak = 0.0, worst_t = 0.0, worst_period = 0.0, worst_res = 0.0;
    for (const RepPoint& rep : reps) {
        RepRecord rec;
        rec.rep = rep;
        rec.r = first_r.at(rep.label);
        rec.mu = rep.mu_value(rec.r);
        rec.lambda = kI * rec.mu * c.mean() + q;
        const Complex lambda = rec.lambda;
        const double mu = rec.mu;
        std::tie(rec.m, rec.t_k) = maximize_S(Cprim, lambda, mu);
        const double m = rec.m;
        auto u = [Cprim, lambda, mu, m](double t) {
            t = wrap(t);
            return std::exp(-m - lambda * t - kI * mu * Cprim(t));
        };
        PeriodicFn ufn = PeriodicFn::from_window(u, Smoothness::Analytic, "resonant mode", 1.0);
        rep_out.u_field.set(rep, rec.r, rec.r, ufn);
        rep_out.f_field.set(rep, rec.r, rec.r, PeriodicFn());
        const auto& values = rep_out.u_field.find({rep.label, rec.r, rec.r})->samples;

        // Re-maximize |u| independently of S.
        double dense_sup = 0.0, dense_t = 0.0, dense_min = std::numeric_limits<double>::infinity();
        for (int j = 0; j < 8192; ++j) {
            double t = kTwoPi * j / 8192;
            double a = std::abs(u(t));
            dense_min = std::min(dense_min, a);
            if (a > dense_sup) {
                dense_sup = a;
                dense_t = t;
            }
        }
        auto r = boost::math::tools::brent_find_minima([&](double t) { return -std::abs(u(t)); },
                                                       dense_t - kTwoPi / 8192, dense_t + kTwoPi / 8192, 52);
        const double re_sup = std::max(dense_sup, -r.second);
        rec.sup_u = re_sup;
        rec.sup_f = 0.0;
        rec.peak = std::abs(u(rec.t_k));
        rec.bound = 1.0;
        worst_sup = std::max(worst_sup, std::abs(re_sup - 1.0));
        worst_peak = std::max(worst_peak, std::abs(rec.peak - 1.0));
        // A flat modulus has every t as maximizer.
        if (re_sup - dense_min > 1e-9) worst_t = std::max(worst_t, circle_distance(r.first, rec.t_k));
        worst_period = std::max(worst_period, std::abs(std::exp(-kTwoPi * lambda) - 1.0));

        Residual res = mode_residual(values, mu, c, q, PeriodicFn());
        rec.residual = res.value;
        rec.residual_scale = res.scale;
        worst_res = std::max(worst_res, res.value / res.scale);
        rep_out.records.push_back(rec);
    }
    rep_out.checks.push_back(check_le("sup_modulus_one", worst_sup, 1e-6, "max |sup_t |u| - 1|"));
    rep_out.checks.push_back(check_le("modulus_one_at_t_k", worst_peak, 1e-12, "max ||u(t_k)| - 1|"));
    rep_out.checks.push_back(check_le("maximizer_matches_t_k", worst_t, 1e-6, "distance of re-maximized t to t_k"));
    rep_out.checks.push_back(check_le("periodic", worst_period, 1e-9, "max |e^{-2 pi lambda} - 1|"));
    rep_out.checks.push_back(
        check_le("residual", worst_res, options.residual_tol, "max relative residual of L u = 0"));
    return rep_out;
}

SmallGapFixture small_gap_fixture(int rows) {
    if (rows < 1 || rows > 12) throw DomainError("small_gap_fixture supports 1..12 rows");
    const double scale = std::ldexp(1.0, 44);
    std::vector<CustomRow> table;
    std::vector<GapWitness> witnesses;
    for (int j = 1; j <= rows; ++j) {
        const std::int64_t w = j + 2;
        // eps_j = round(w^{-j} / 8 * 2^44) / 2^44, at least one unit
        const double target = std::pow(static_cast<double>(w), -j) / 8.0 * scale;
        const std::int64_t units = std::max<std::int64_t>(1, std::llround(target));
        const std::int64_t den = std::int64_t(1) << 44;
        CustomRow row;
        row.label = j;
        row.dim = 1;
        row.nu = Rational(w * w - 1);
        row.mu = {Rational((j + 1) * den + units, den)};
        table.push_back(row);
        witnesses.push_back({j, 1, j});
    }
    return {SpectralModel::custom(std::move(table), true, 0.0),
            TrigPoly::exact({{0, GaussianRational(1)},
                             {1, GaussianRational(Rational(1, 2))},
                             {-1, GaussianRational(Rational(-1, 2))}}),
            Complex(0.0), std::move(witnesses)};
}

CounterexampleReport small_gap_singular(const SpectralModel& model, const TrigPoly& c, Complex q,
                                        const std::vector<GapWitness>& witnesses,
                                        const CounterexampleOptions& options) {
    if (witnesses.empty()) throw DomainError("small_gap_singular needs witnesses");
    CounterexampleReport out;
    out.recipe = Recipe::SmallGap;
    out.model = model.name();
    out.c = c;
    out.q = q;
    out.f_field = CoefficientField(model.name(), options.grid_size);
    out.u_field = CoefficientField(model.name(), options.grid_size);

    const TrigPoly Cprim = c.zero_mean_primitive();
    for (const auto& w : witnesses) {
        RepRecord rec;
        rec.rep = model.rep(w.label);
        if (w.r < 1 || w.r > rec.rep.dim) throw DomainError("witness index r out of range");
        rec.r = w.r;
        rec.j = w.j;
        rec.mu = rec.rep.mu_value(w.r);
        rec.lambda = kI * rec.mu * c.mean() + q;
        rec.gap = std::abs(1.0 - std::exp(-kTwoPi * rec.lambda));
        const double bound = std::pow(rec.rep.weight, -w.j);
        if (!(rec.gap > 0.0 && rec.gap < bound)) {
            std::ostringstream os;
            os << "witness label " << w.label << " has gap " << rec.gap << ", needs (0, " << bound << ")";
            throw RecipeInapplicable(os.str());
        }
        std::tie(rec.m, rec.t_k) = maximize_S(Cprim, rec.lambda, rec.mu);
        out.records.push_back(rec);
    }
    std::stable_sort(out.records.begin(), out.records.end(),
                     [](const RepRecord& a, const RepRecord& b) { return a.rep.weight < b.rep.weight; });

    // The cutoff I sits a quarter turn from the limit of t_k, inside (0, 2pi).
    const double h = 0.5;
    out.t_limit = out.records.back().t_k;
    out.bump_halfwidth = h;
    out.bump_center = out.t_limit - kPi / 2 - h > 0.05 ? out.t_limit - kPi / 2 : out.t_limit + kPi / 2;
    const double lo = out.bump_center - h, hi = out.bump_center + h;
    const PeriodicFn phi = make_bump(out.bump_center, h, 0.5);
    auto phi_at = [phi](double t) { return phi(t).real(); };
    out.phi_l1 = integrate([&](double t) { return Complex(phi_at(t)); }, lo, hi, options.quad_tol, kQuadMaxDepth, 8)
                     .value.real();
    const double l1 = out.phi_l1;
    // Phi(t) = int_0^t phi on [0, 2pi)
    auto Phi = [phi_at, lo, hi, l1, tol = options.quad_tol](double t) {
        if (t <= lo) return 0.0;
        if (t >= hi) return l1;
        return integrate([&](double s) { return Complex(phi_at(s)); }, lo, t, tol, kQuadMaxDepth, 4).value.real();
    };

    double worst_res = 0.0, min_ratio = std::numeric_limits<double>::infinity(), max_sup_u = 0.0;
    bool limit_outside = circle_distance(out.t_limit, out.bump_center) > h;
    std::vector<double> lw, lf;
    for (auto& rec : out.records) {
        const Complex lambda = rec.lambda;
        const double mu = rec.mu, tk = rec.t_k;
        const Complex g = 1.0 - std::exp(-kTwoPi * lambda);
        const Complex shift = std::exp(-kTwoPi * lambda);
        const Complex Ck = Cprim(tk);
        // E(t) = -int_{t_k}^t (i mu c + q), t in [0, 2pi)
        auto E = [Cprim, lambda, mu, tk, Ck](double t) { return -(lambda * (t - tk) + kI * mu * (Cprim(t) - Ck)); };
        auto f = [E, g, phi_at](double t) {
            t = wrap(t);
            double p = phi_at(t);
            return p == 0.0 ? Complex(0.0) : g * std::exp(E(t)) * p;
        };
        auto u = [E, Phi, shift, l1](double t) {
            t = wrap(t);
            double P = Phi(t);
            return std::exp(E(t)) * (P + shift * (l1 - P));
        };
        PeriodicFn ffn = PeriodicFn::from_window(f, Smoothness::Smooth, "small-gap rhs", std::abs(g));
        out.f_field.set(rec.rep, rec.r, rec.r, ffn);
        out.u_field.set(rec.rep, rec.r, rec.r, PeriodicFn::from_window(u, Smoothness::Smooth, "small-gap mode", 4 * kPi));
        const auto& fs = out.f_field.find({rec.rep.label, rec.r, rec.r})->samples;
        const auto& us = out.u_field.find({rec.rep.label, rec.r, rec.r})->samples;
        rec.sup_f = grid_sup(fs);
        rec.sup_u = grid_sup(us);
        rec.peak = std::abs(u(tk));
        rec.bound = 0.5 * l1;
        min_ratio = std::min(min_ratio, rec.peak / rec.bound);
        max_sup_u = std::max(max_sup_u, rec.sup_u);
        if (circle_distance(tk, out.bump_center) <= h) limit_outside = false;
        Residual res = mode_residual(us, mu, c, q, ffn);
        rec.residual = res.value;
        rec.residual_scale = res.scale;
        worst_res = std::max(worst_res, res.value / res.scale);
        if (rec.sup_f > 0) {
            lw.push_back(std::log(rec.rep.weight));
            lf.push_back(std::log(rec.sup_f));
        }
    }
    int max_j = 0;
    for (const auto& rec : out.records) max_j = std::max(max_j, rec.j);
    out.checks.push_back({"t_k_outside_cutoff", limit_outside, out.t_limit, h, "every t_k at circle distance > halfwidth"});
    out.checks.push_back(check_le("bounded_by_4pi", max_sup_u, 4 * kPi, "max sup_t |u|"));
    out.checks.push_back(check_ge("non_decay", min_ratio, 1.0, "min |u(t_k)| / (||phi||_1 / 2)"));
    if (lw.size() >= 2) {
        out.checks.push_back(check_le("f_decay_slope", fit_slope(lw, lf), -0.5 * max_j,
                                      "slope of log sup|f| vs log <eta>"));
    }
    out.checks.push_back(check_le("residual", worst_res, options.residual_tol, "max relative residual of L u = f"));
    return out;
}

namespace {

struct TrigChoice {
    bool ok = false;
    std::string branch;
    int sign = 1;
    double K = 0.0;
};

// The sin or cos part of e^{Q tau} (whichever has the larger plateau
// minimum) must keep one sign on [tau0 - delta, tau0 + delta] and stay
// away from zero on the plateau [tau0 - delta/2, tau0 + delta/2].
TrigChoice choose_trig(Complex Q, double tau0, double delta) {
    TrigChoice best;
    for (const char* name : {"sin", "cos"}) {
        const bool is_sin = std::string(name) == "sin";
        auto part = [&](double tau) {
            double ph = Q.imag() * tau;
            return std::exp(Q.real() * tau) * (is_sin ? std::sin(ph) : std::cos(ph));
        };
        const double mid = part(tau0);
        if (mid == 0.0) continue;
        const int sgn = mid > 0 ? 1 : -1;
        const int n = 512;
        double support_min = std::numeric_limits<double>::infinity();
        double plateau_min = std::numeric_limits<double>::infinity();
        for (int i = 0; i <= n; ++i) {
            double tau = tau0 - delta + 2 * delta * i / n;
            double v = sgn * part(tau);
            support_min = std::min(support_min, v);
            if (std::abs(tau - tau0) <= delta / 2) plateau_min = std::min(plateau_min, v);
        }
        if (support_min < 0.0 || plateau_min <= 1e-12) continue;
        if (!best.ok || plateau_min > best.K) best = {true, name, sgn, plateau_min};
    }
    return best;
}

// Pieces of [0, 2pi] where phi(t + s tau) can be nonzero, phi supported
// on (center - delta, center + delta).
std::vector<std::pair<double, double>> support_in_tau(double t, double center, double delta, int s) {
    double start = s > 0 ? center - delta - t : t - center - delta;
    start = wrap(start);
    double end = start + 2 * delta;
    if (end <= kTwoPi) return {{start, end}};
    return {{start, kTwoPi}, {0.0, end - kTwoPi}};
}

}  // namespace

CounterexampleReport sign_change_singular(const SpectralModel& model, const TrigPoly& c, Complex q, int count,
                                          SignVariant variant, const CounterexampleOptions& options) {
    if (count < 1) throw DomainError("count must be positive");
    const bool pos = variant == SignVariant::B0Pos;
    const int s = pos ? 1 : -1;
    const TrigPoly b = c.imag_part();
    const double b0 = b.mean().real();
    const double a0 = c.mean().real();
    const SignCertificate cert = sign_certificate(b, 256);
    if (!cert.changes_sign()) throw RecipeInapplicable("Im c does not change sign (" + to_string(cert.verdict) + ")");
    if (pos && b0 < 0.0) throw RecipeInapplicable("variant b0pos needs b0 >= 0");
    if (!pos && b0 > 0.0) throw RecipeInapplicable("variant b0neg needs b0 <= 0");

    CounterexampleReport out;
    out.recipe = pos ? Recipe::SignChangeB0Pos : Recipe::SignChangeB0Neg;
    out.model = model.name();
    out.c = c;
    out.q = q;
    out.f_field = CoefficientField(model.name(), options.grid_size);
    out.u_field = CoefficientField(model.name(), options.grid_size);

    const WindowExtremum W = pos ? min_im_window(c) : max_im_backward_window(c);
    out.B = W.value;
    out.t0 = W.t0;
    out.tau0 = W.tau0;
    if (pos ? !(out.B < 0.0) : !(out.B > 0.0)) throw RecipeInapplicable("extremal window has the wrong sign");
    const double tau0 = out.tau0, t0 = out.t0, B = out.B;
    if (tau0 < 1e-6 || tau0 > kTwoPi - 1e-6) throw RecipeInapplicable("extremal window is degenerate");

    // Largest admissible delta, halved until the trig factor is sign-definite.
    const Complex Q = double(s) * q;
    double delta = std::min({tau0, kTwoPi - tau0, kPi / 2}) * 0.999;
    TrigChoice trig;
    for (int i = 0; i < 40 && !trig.ok; ++i) {
        trig = choose_trig(Q, tau0, delta);
        if (!trig.ok) delta /= 2;
    }
    if (!trig.ok) throw RecipeInapplicable("no plateau on which e^{q tau} keeps a sign");
    out.delta = delta;
    out.K = trig.K;
    out.trig_branch = trig.branch;
    out.trig_sign = trig.sign;

    // Bump center unreduced so that rho(t0 + s tau) = t0 + s tau near tau0.
    const double center = t0 + s * tau0;
    const PeriodicFn phi = make_bump(center, delta, 0.5);
    auto rho = [center](double x) { return center + std::remainder(x - center, kTwoPi); };
    const TrigPoly A = c.real_part().zero_mean_primitive();

    std::vector<GrowthPoint> seq = growth_sequence(model, count);
    double worst_res = 0.0, max_excess = -std::numeric_limits<double>::infinity();
    bool phase_ok = true;
    std::vector<double> lw, lpeak, excess;
    for (const auto& gp : seq) {
        RepRecord rec;
        rec.rep = gp.rep;
        rec.r = gp.r;
        rec.mu = gp.rep.mu_value(gp.r);
        rec.lambda = kI * rec.mu * c.mean() + q;
        if (is_resonant(rec.lambda, 1e-9)) continue;
        const double mu = rec.mu;
        const Complex lambda = rec.lambda;
        const Complex pref = pos ? (std::exp(kTwoPi * lambda) - 1.0) * std::exp(B * mu)
                                 : (1.0 - std::exp(-kTwoPi * lambda)) * std::exp(-B * mu);
        // Gauged-back data: f = e^{-i mu A} f~, u = e^{-i mu A} u~ where f~, u~
        // solve the problem with Re c replaced by a0.
        auto f = [=](double t) {
            double p = phi(t).real();
            if (p == 0.0) return Complex(0.0);
            return pref * p * std::exp(-kI * mu * (a0 * (rho(t) - t0) + A(t).real()));
        };
        auto u_tilde = [=, tol = options.quad_tol](double t) {
            auto integrand = [&](double tau) {
                double p = phi(t + s * tau).real();
                if (p == 0.0) return Complex(0.0);
                double window = pos ? window_integral(b, t, tau).real() : window_integral(b, t - tau, tau).real();
                double expo = pos ? mu * (B - window) : mu * (window - B);
                return std::exp(Q * tau + expo) * p * std::exp(kI * mu * a0 * (s * tau - rho(t + s * tau) + t0));
            };
            Complex acc = 0.0;
            for (auto [lo, hi] : support_in_tau(t, center, delta, s))
                acc += integrate(integrand, lo, hi, tol, kQuadMaxDepth, 8, 1e-18).value;
            return acc;
        };
        auto u = [=](double t) { return u_tilde(t) * std::exp(-kI * mu * A(t).real()); };
        PeriodicFn ffn = PeriodicFn::from_window(f, Smoothness::Smooth, "sign-change rhs", std::abs(pref));
        out.f_field.set(rec.rep, rec.r, rec.r, ffn);
        out.u_field.set(rec.rep, rec.r, rec.r, PeriodicFn::from_window(u, Smoothness::Smooth, "sign-change mode",
                                                                       kTwoPi * std::exp(kTwoPi * std::abs(q.real()))));
        const auto& fs = out.f_field.find({rec.rep.label, rec.r, rec.r})->samples;
        const auto& us = out.u_field.find({rec.rep.label, rec.r, rec.r})->samples;
        rec.sup_f = grid_sup(fs);
        rec.sup_u = grid_sup(us);
        const Complex ut0 = u_tilde(t0);
        rec.peak = std::abs(ut0);
        rec.bound = std::exp(s * B * mu);
        const double component = trig.sign * (trig.branch == "sin" ? ut0.imag() : ut0.real());
        if (!(component > 0.0)) phase_ok = false;
        Residual res = mode_residual(us, mu, c, q, ffn);
        rec.residual = res.value;
        rec.residual_scale = res.scale;
        worst_res = std::max(worst_res, res.value / res.scale);
        double ex = std::log(rec.sup_f) - s * B * mu;
        excess.push_back(ex);
        max_excess = std::max(max_excess, ex);
        lw.push_back(std::log(rec.rep.weight));
        lpeak.push_back(std::log(rec.peak));
        out.records.push_back(rec);
    }
    if (out.records.size() < 2) throw RecipeInapplicable("fewer than two non-resonant growth reps");

    // Window extremum re-evaluated on a 512 x 512 grid.
    double worst_window = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < 512; ++i) {
        double t = kTwoPi * i / 512;
        for (int k = 0; k <= 511; ++k) {
            double tau = kTwoPi * k / 511;
            double w = pos ? window_integral(b, t, tau).real() : window_integral(b, t - tau, tau).real();
            worst_window = std::max(worst_window, pos ? B - w : w - B);
        }
    }
    out.checks.push_back(check_le("window_extremum", worst_window, 1e-8,
                                  pos ? "max of B - Im G on the grid" : "max of Im H - B on the grid"));
    if (W.interior)
        out.checks.push_back(check_le("critical_point", std::abs(b(t0 + s * tau0).real()), 1e-6, "|b| at the window end"));
    out.checks.push_back({pos ? "B_negative" : "B_positive", true, B, 0.0, "extremal window value"});

    // Envelope: log sup|f| - s B mu stays below its bound log(1 + e^{2 pi s Re q}).
    const double env_bound = std::log(1.0 + std::exp(kTwoPi * s * q.real())) + 1e-9;
    out.checks.push_back(check_le("f_envelope", max_excess, env_bound, "max of log sup|f| - B mu"));

    const std::size_t tail = lw.size() >= 4 ? lw.size() / 2 : 0;
    out.lower_exponent = fit_slope(std::vector<double>(lw.begin() + static_cast<std::ptrdiff_t>(tail), lw.end()),
                                   std::vector<double>(lpeak.begin() + static_cast<std::ptrdiff_t>(tail), lpeak.end()));
    out.lower_C = std::numeric_limits<double>::infinity();
    for (const auto& rec : out.records) out.lower_C = std::min(out.lower_C, rec.peak * std::sqrt(rec.rep.weight));
    out.checks.push_back(check_ge("lower_bound_constant", out.lower_C, 1e-300, "min |u(t0)| sqrt(<eta>)"));
    out.checks.push_back({"lower_bound_exponent", out.lower_exponent >= -0.6 && out.lower_exponent <= -0.4,
                          out.lower_exponent, -0.5, "tail slope of log|u(t0)| vs log <eta>, band [-0.6, -0.4]"});
    out.checks.push_back({"trig_phase", phase_ok, out.K, 0.0, "selected component of u(t0) positive"});
    out.checks.push_back(check_le("residual", worst_res, options.residual_tol, "max relative residual of L u = f"));
    return out;
}

VerifySummary verify_report(const CounterexampleReport& report, const CounterexampleOptions& options) {
    VerifySummary out;
    out.checks = report.checks;

    double worst = 0.0;
    bool complete = true;
    for (const auto& rec : report.records) {
        const FieldKey key{rec.rep.label, rec.r, rec.r};
        const FieldEntry* fe = report.f_field.find(key);
        const FieldEntry* ue = report.u_field.find(key);
        if (!fe || !ue) {
            complete = false;
            continue;
        }
        const PeriodicFn rhs = fe->fn ? *fe->fn : PeriodicFn();
        Residual res = mode_residual(ue->samples, rec.mu, report.c, report.q, rhs);
        worst = std::max(worst, res.value / res.scale);
    }
    out.checks.push_back({"verify_residual", complete && worst <= options.residual_tol, worst, options.residual_tol,
                          "recomputed max relative residual"});

    try {
        out.f_decay = decay_classify(report.f_field);
        out.checks.push_back({"f_rapid_decay", out.f_decay->classification == DecayClass::RapidDecay, out.f_decay->slopes[0],
                              -out.f_decay->options.slope_rapid, "f classified " + to_string(out.f_decay->classification)});
    } catch (const InsufficientData& e) {
        out.checks.push_back({"f_rapid_decay", false, 0.0, 0.0, e.what()});
    }
    try {
        out.u_decay = decay_classify(report.u_field);
        const bool ok = out.u_decay->classification == DecayClass::PolynomialBound && out.u_decay->K <= 1;
        out.checks.push_back({"u_tempered_not_rapid", ok, double(out.u_decay->K), 1.0,
                              "u classified " + to_string(out.u_decay->classification)});
    } catch (const InsufficientData& e) {
        out.checks.push_back({"u_tempered_not_rapid", false, 0.0, 0.0, e.what()});
    }

    // Pairing constant for K = 1 must not grow across the weight range.
    PairingResult pr = distribution_pairing(report.u_field, default_battery());
    std::vector<double> ratios;
    for (const auto& [w, r] : pr.per_weight) ratios.push_back(r);
    auto [lo, hi] = half_maxima(ratios);
    const bool finite = std::isfinite(pr.C);
    out.checks.push_back({"distribution_bound", finite && (ratios.size() < 2 || std::max(lo, hi) <= 1.1 * lo), pr.C,
                          ratios.size() < 2 ? pr.C : 1.1 * lo, "pairing constant over all weights vs the lower half"});

    out.passed = std::all_of(out.checks.begin(), out.checks.end(), [](const CheckResult& c) { return c.passed; });
    return out;
}

void write_summary_csv(std::ostream& out, const CounterexampleReport& report) {
    out << "# recipe=" << to_string(report.recipe) << "\n";
    out << "# model=" << report.model << "\n";
    out << "rep_label,r,mu,weight,sup_f,sup_u,peak,bound,residual\n";
    char buf[320];
    for (const auto& r : report.records) {
        std::snprintf(buf, sizeof buf, "%d,%d,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", r.rep.label, r.r, r.mu,
                      r.rep.weight, r.sup_f, r.sup_u, r.peak, r.bound, r.residual);
        out << buf;
    }
}

}  // namespace hypo
