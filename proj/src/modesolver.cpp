#include "hypo/modesolver.hpp"

#include "hypo/complex_math.hpp"
#include "hypo/errors.hpp"
#include "hypo/quadrature.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <sstream>
#include <thread>

namespace hypo {

std::string to_string(Branch b) {
    switch (b) {
        case Branch::Minus: return "Minus";
        case Branch::Plus: return "Plus";
        case Branch::Resonant: return "Resonant";
    }
    return "?";
}

std::string to_string(WarningKind w) { return w == WarningKind::IllConditioned ? "IllConditioned" : "OverflowRisk"; }

std::string to_string(ModeStatus s) {
    switch (s) {
        case ModeStatus::Solved: return "Solved";
        case ModeStatus::Obstructed: return "Obstructed";
        case ModeStatus::Failed: return "Failed";
    }
    return "?";
}

double ModeSolution::sup_norm() const {
    double m = 0.0;
    for (const auto& v : values) m = std::max(m, std::abs(v));
    return m;
}

bool FieldSolution::all_solved() const {
    return std::all_of(diagnostics.begin(), diagnostics.end(),
                       [](const ModeDiagnostic& d) { return d.status == ModeStatus::Solved; });
}

bool is_resonant(Complex lambda, double eps) {
    // λ/i = Im λ - i Re λ
    const double re = lambda.imag();
    const double im = -lambda.real();
    const double dist = std::hypot(re - std::round(re), im);
    return dist <= eps * std::max(1.0, std::abs(lambda));
}

namespace {

const Complex I(0.0, 1.0);

double sigma_of(Branch b) { return b == Branch::Minus ? -1.0 : 1.0; }

// Logarithm of the divisor 1 - e^{-2πλ} (Minus) or e^{2πλ} - 1 (Plus).
Complex log_divisor(Branch b, Complex lambda) {
    if (b == Branch::Minus) return log_one_minus_exp(-kTwoPi * lambda);
    return log_exp_minus_one(kTwoPi * lambda);
}

// The kernel of a branch at output point t is
//   exp(σλτ + iμ(C(t + στ) - C(t)) - log D),  τ ∈ [0, 2π],
// applied to h(t + στ). Peak of its real part on an n x (n+1) grid.
double peak_exponent(Branch b, Complex lambda, double mu, const TrigPoly& C, int n = 64) {
    const double sigma = sigma_of(b);
    const double logd = log_divisor(b, lambda).real();
    std::vector<double> imC(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) imC[static_cast<std::size_t>(j)] = C(kTwoPi * j / n).imag();
    double peak = -std::numeric_limits<double>::infinity();
    for (int j = 0; j < n; ++j)
        for (int k = 0; k <= n; ++k) {
            const double tau = kTwoPi * k / n;
            const int idx = ((j + static_cast<int>(sigma) * k) % n + n) % n;
            const double e = sigma * lambda.real() * tau - mu * (imC[static_cast<std::size_t>(idx)] - imC[static_cast<std::size_t>(j)]) - logd;
            peak = std::max(peak, e);
        }
    return peak;
}

int panel_count(const PeriodicFn& h) { return h.analytic() ? 1 : 16; }

// Trig-poly right-hand sides: the integrand factors as
//   e^{σλτ - log D} · g(t + στ) · e^{-iμC(t)},  g = e^{iμC} h,
// so one composite Kronrod rule on cells aligned with the output grid shares
// every sample of g across all output points. A point whose Kronrod/Gauss
// difference misses the tolerance is left for the adaptive rule (ok = 0).
std::vector<char> integrate_aligned(Branch b, Complex lambda, double mu, const TrigPoly& C, const PeriodicFn& h,
                                    const SolveOptions& opt, std::vector<Complex>& out) {
    const int n = opt.grid_size;
    std::vector<char> ok(static_cast<std::size_t>(n), 0);
    if (!h.as_trig_poly()) return ok;
    const double H = kTwoPi / n;
    const double omega = std::abs(lambda) + std::abs(mu) * C.derivative().coeff_l1() + h.as_trig_poly()->degree();
    if (H * omega > 1.0) return ok;
    int r = 1;
    while (n % (2 * r) == 0 && 2 * r * H * omega <= 1.0 && 2 * r <= n / 8) r *= 2;
    const int cells = n / r;
    const double W = r * H;
    const double sigma = sigma_of(b);
    const Complex logd = log_divisor(b, lambda);

    static const auto& xk = boost::math::quadrature::gauss_kronrod<double, 15>::abscissa();
    static const auto& wk = boost::math::quadrature::gauss_kronrod<double, 15>::weights();
    static const auto& wg = boost::math::quadrature::gauss<double, 7>::weights();
    std::vector<double> off, wK, wG;
    for (std::size_t i = xk.size(); i-- > 1;) {
        off.push_back(0.5 * W * (1.0 - xk[i]));
        wK.push_back(wk[i]);
        wG.push_back(i % 2 == 0 ? wg[i / 2] : 0.0);
    }
    for (std::size_t i = 0; i < xk.size(); ++i) {
        off.push_back(0.5 * W * (1.0 + xk[i]));
        wK.push_back(i == 0 ? wk[0] : wk[i]);
        wG.push_back(i % 2 == 0 ? wg[i / 2] : 0.0);
    }
    const std::size_t Q = off.size();

    // g on the shared nodes, scaled by e^{-beta} so that its peak is 1.
    std::vector<Complex> iC(static_cast<std::size_t>(n) * Q);
    double beta = -std::numeric_limits<double>::infinity(), low = -beta;
    for (int c = 0; c < n; ++c)
        for (std::size_t q = 0; q < Q; ++q) {
            const Complex e = Complex(0.0, mu) * C(c * H + sigma * off[q]);
            iC[static_cast<std::size_t>(c) * Q + q] = e;
            beta = std::max(beta, e.real());
            low = std::min(low, e.real());
        }
    const double lam_span = kTwoPi * std::abs(lambda.real());
    if (beta - low > 600.0 || lam_span > 600.0) return ok;
    std::vector<Complex> G(iC.size());
    std::vector<double> Gabs(iC.size());
    for (int c = 0; c < n; ++c)
        for (std::size_t q = 0; q < Q; ++q) {
            const std::size_t k = static_cast<std::size_t>(c) * Q + q;
            G[k] = std::exp(iC[k] - beta) * h(c * H + sigma * off[q]);
            Gabs[k] = std::abs(G[k]);
        }
    std::vector<Complex> EK(static_cast<std::size_t>(cells) * Q), EG(EK.size());
    std::vector<double> EA(EK.size());
    for (int m = 0; m < cells; ++m)
        for (std::size_t q = 0; q < Q; ++q) {
            const std::size_t k = static_cast<std::size_t>(m) * Q + q;
            const Complex e = std::exp(sigma * lambda * (m * W + off[q]) - logd) * (0.5 * W);
            EK[k] = wK[q] * e;
            EG[k] = wG[q] * e;
            EA[k] = wK[q] * std::abs(e);
        }
    for (int j = 0; j < n; ++j) {
        Complex K = 0.0, Gs = 0.0;
        double L = 0.0;
        for (int m = 0; m < cells; ++m) {
            const int c = ((j + static_cast<int>(sigma) * m * r) % n + n) % n;
            const Complex* g = &G[static_cast<std::size_t>(c) * Q];
            const double* ga = &Gabs[static_cast<std::size_t>(c) * Q];
            const std::size_t base = static_cast<std::size_t>(m) * Q;
            for (std::size_t q = 0; q < Q; ++q) {
                K += EK[base + q] * g[q];
                Gs += EG[base + q] * g[q];
                L += EA[base + q] * ga[q];
            }
        }
        if (std::abs(K - Gs) <= opt.quad_tol * L) {
            const Complex back = std::exp(beta - Complex(0.0, mu) * C(j * H));
            out[static_cast<std::size_t>(j)] = K * back;
            ok[static_cast<std::size_t>(j)] = 1;
        }
    }
    return ok;
}

// Absolute floor for points where the integral is negligible (e.g. a bump
// right-hand side whose support the window misses).
std::vector<Complex> integrate_branch(Branch b, Complex lambda, double mu, const TrigPoly& C, const PeriodicFn& h,
                                      const SolveOptions& opt) {
    const double abs_tol = 1e-3 * opt.quad_tol * h.sup_bound();
    const int n = opt.grid_size;
    const double sigma = sigma_of(b);
    const Complex logd = log_divisor(b, lambda);
    const bool has_c = !C.is_zero() && mu != 0.0;
    const int panels = panel_count(h);
    std::vector<Complex> out(static_cast<std::size_t>(n));
    const std::vector<char> done = integrate_aligned(b, lambda, has_c ? mu : 0.0, C, h, opt, out);
    for (int j = 0; j < n; ++j) {
        if (done[static_cast<std::size_t>(j)]) continue;
        const double t = kTwoPi * j / n;
        const Complex Ct = has_c ? C(t) : Complex(0.0);
        auto integrand = [&](double tau) {
            const double s = t + sigma * tau;
            Complex e = sigma * lambda * tau - logd;
            if (has_c) e += Complex(0.0, mu) * (C(s) - Ct);
            return std::exp(e) * h(s);
        };
        out[static_cast<std::size_t>(j)] =
            integrate(integrand, 0.0, kTwoPi, opt.quad_tol, kQuadMaxDepth, static_cast<unsigned>(panels), abs_tol).value;
    }
    return out;
}

// y(t) = e^{-λt} ∫_0^t e^{λs} h(s) ds after the compatibility check.
std::vector<Complex> integrate_resonant(Complex lambda, const PeriodicFn& h, const SolveOptions& opt) {
    const int n = opt.grid_size;
    auto integrand = [&](double s) { return std::exp(lambda * s) * h(s); };
    const int sub = panel_count(h) > 1 ? 4 : 1;
    // Segments are tiny, so convergence is judged on the scale of the whole period.
    const double abs_tol = opt.quad_tol * std::max(1.0, h.sup_bound()) * kTwoPi / (n * sub);
    std::vector<Complex> seg(static_cast<std::size_t>(n));
    Complex total = 0.0;
    double l1 = 0.0;
    for (int j = 0; j < n; ++j) {
        Complex acc = 0.0;
        for (int p = 0; p < sub; ++p) {
            const double a = kTwoPi * (j * sub + p) / (n * sub);
            const double b = kTwoPi * (j * sub + p + 1) / (n * sub);
            auto r = integrate(integrand, a, b, opt.quad_tol, kQuadMaxDepth, 1, abs_tol);
            acc += r.value;
            l1 += r.l1;
        }
        seg[static_cast<std::size_t>(j)] = acc;
        total += acc;
    }
    if (std::abs(total) > opt.residual_tol * std::max(1.0, l1)) {
        std::ostringstream m;
        m << "resonant exponent lambda = (" << lambda.real() << "," << lambda.imag()
          << ") with nonzero compatibility integral |I| = " << std::abs(total);
        throw ResonanceObstruction(m.str(), total);
    }
    std::vector<Complex> out(static_cast<std::size_t>(n));
    Complex acc = 0.0;
    for (int j = 0; j < n; ++j) {
        out[static_cast<std::size_t>(j)] = std::exp(-lambda * (kTwoPi * j / n)) * acc;
        acc += seg[static_cast<std::size_t>(j)];
    }
    return out;
}

void finish(ModeSolution& sol, const ModeProblem& problem, const SolveOptions& opt) {
    sol.interpolant = TrigInterpolant(sol.values);
    sol.residual = residual(sol, problem, opt.residual_method);
    if (opt.enforce_residual) {
        const double bound = opt.residual_tol * residual_scale(sol, problem);
        if (!(sol.residual <= bound)) {
            std::ostringstream m;
            m << "mode residual " << sol.residual << " exceeds " << bound << " (mu = " << problem.mu
              << ", branch " << to_string(sol.branch) << ")";
            throw ResidualError(m.str(), sol.residual);
        }
    }
}

void attach_conditioning(ModeSolution& sol, const SolveOptions& opt) {
    sol.conditioning = std::exp(log_divisor(sol.branch, sol.lambda).real());
    if (sol.conditioning < opt.cond_floor) {
        std::ostringstream m;
        m << "divisor magnitude " << sol.conditioning << " below " << opt.cond_floor;
        sol.warnings.push_back({WarningKind::IllConditioned, sol.conditioning, m.str()});
    }
}

void check_overflow(const ModeSolution& sol, double mu, const SolveOptions& opt) {
    if (sol.peak_exponent > opt.exp_cap) {
        std::ostringstream m;
        m << "kernel peak exponent " << sol.peak_exponent << " exceeds cap " << opt.exp_cap << " for mode mu = " << mu;
        throw OverflowError(m.str());
    }
}

ModeSolution scalar_impl(Complex lambda, const PeriodicFn& h, std::optional<Branch> forced, const SolveOptions& opt) {
    const ModeProblem problem{0.0, TrigPoly{}, lambda, h};
    ModeSolution sol;
    sol.lambda = lambda;
    if (is_resonant(lambda, opt.resonance_eps)) {
        sol.branch = Branch::Resonant;
        sol.values = integrate_resonant(lambda, h, opt);
    } else {
        sol.branch = forced ? *forced : (lambda.real() >= 0.0 ? Branch::Minus : Branch::Plus);
        if (sol.branch == Branch::Resonant) throw DomainError("the resonant branch needs a resonant exponent");
        const TrigPoly none;
        sol.peak_exponent = peak_exponent(sol.branch, lambda, 0.0, none);
        check_overflow(sol, 0.0, opt);
        attach_conditioning(sol, opt);
        sol.values = integrate_branch(sol.branch, lambda, 0.0, none, h, opt);
    }
    finish(sol, problem, opt);
    return sol;
}

}  // namespace

ModeSolution solve_periodic_scalar(Complex lambda, const PeriodicFn& h, const SolveOptions& options) {
    return scalar_impl(lambda, h, std::nullopt, options);
}

ModeSolution solve_periodic_scalar(Complex lambda, const PeriodicFn& h, Branch branch, const SolveOptions& options) {
    return scalar_impl(lambda, h, branch, options);
}

ModeSolution solve_mode(const ModeProblem& problem, BranchPolicy policy, const SolveOptions& opt) {
    const Complex lambda = problem.lambda();
    const TrigPoly C = problem.c.zero_mean_primitive();
    const double mu = problem.mu;
    ModeSolution sol;
    sol.lambda = lambda;

    if (is_resonant(lambda, opt.resonance_eps)) {
        sol.branch = Branch::Resonant;
        const PeriodicFn g = PeriodicFn::exp_of(C * Complex(0.0, mu)) * problem.rhs;
        sol.values = integrate_resonant(lambda, g, opt);
        for (int j = 0; j < opt.grid_size; ++j)
            sol.values[static_cast<std::size_t>(j)] *= std::exp(Complex(0.0, -mu) * C(kTwoPi * j / opt.grid_size));
        finish(sol, problem, opt);
        return sol;
    }

    if (policy == BranchPolicy::ForceMinus) {
        sol.branch = Branch::Minus;
    } else if (policy == BranchPolicy::ForcePlus) {
        sol.branch = Branch::Plus;
    } else {
        SignVerdict sign = opt.b_sign ? *opt.b_sign : sign_certificate(problem.c.imag_part(), 256).verdict;
        switch (sign) {
            case SignVerdict::IdenticallyZero:
            case SignVerdict::ConstantNonzero:
                sol.branch = lambda.real() >= 0.0 ? Branch::Minus : Branch::Plus;
                break;
            case SignVerdict::NonNegative:
                sol.branch = mu < 0.0 ? Branch::Minus : Branch::Plus;
                break;
            case SignVerdict::NonPositive:
                sol.branch = mu < 0.0 ? Branch::Plus : Branch::Minus;
                break;
            case SignVerdict::ChangesSign: {
                const double pm = peak_exponent(Branch::Minus, lambda, mu, C);
                const double pp = peak_exponent(Branch::Plus, lambda, mu, C);
                sol.branch = pm <= pp ? Branch::Minus : Branch::Plus;
                const double peak = std::min(pm, pp);
                std::ostringstream m;
                m << "Im c changes sign; kernel peak exponent " << peak;
                sol.warnings.push_back({WarningKind::OverflowRisk, peak, m.str()});
                break;
            }
        }
    }
    sol.peak_exponent = peak_exponent(sol.branch, lambda, mu, C);
    check_overflow(sol, mu, opt);
    attach_conditioning(sol, opt);
    sol.values = integrate_branch(sol.branch, lambda, mu, C, problem.rhs, opt);
    finish(sol, problem, opt);
    return sol;
}

double residual_scale(const ModeSolution& sol, const ModeProblem& problem) {
    const int n = static_cast<int>(sol.values.size());
    double scale = 1.0;
    for (int j = 0; j < n; ++j) {
        const double t = kTwoPi * j / n;
        const Complex p = Complex(0.0, problem.mu) * problem.c(t) + problem.q;
        scale = std::max({scale, std::abs(problem.rhs(t)), std::abs(p * sol.values[static_cast<std::size_t>(j)])});
    }
    return scale;
}

double residual(const ModeSolution& sol, const ModeProblem& problem, ResidualMethod method) {
    const int n = static_cast<int>(sol.values.size());
    if (n == 0) return 0.0;
    if (method == ResidualMethod::Auto)
        method = problem.rhs.analytic() ? ResidualMethod::Spectral : ResidualMethod::StepIntegral;
    auto p = [&](double t) { return Complex(0.0, problem.mu) * problem.c(t) + problem.q; };
    double worst = 0.0;
    if (method == ResidualMethod::Spectral) {
        const auto dy = spectral_derivative(sol.values, 1);
        for (int j = 0; j < n; ++j) {
            const double t = kTwoPi * j / n;
            const auto y = sol.values[static_cast<std::size_t>(j)];
            worst = std::max(worst, std::abs(dy[static_cast<std::size_t>(j)] + p(t) * y - problem.rhs(t)));
        }
        return worst;
    }
    // One-step form of the variation-of-constants identity with P' = p:
    // y(t1) = e^{-(P(t1)-P(t0))} y(t0) + ∫_{t0}^{t1} e^{-(P(t1)-P(s))} h(s) ds.
    const TrigPoly C = problem.c.zero_mean_primitive();
    const Complex lambda = problem.lambda();
    auto P = [&](double t) { return lambda * t + Complex(0.0, problem.mu) * C(t); };
    const double dt = kTwoPi / n;
    const double abs_floor = 1e-14 * std::max(1.0, problem.rhs.sup_bound()) * dt;
    for (int j = 0; j < n; ++j) {
        const double t0 = dt * j;
        const double t1 = dt * (j + 1);
        const Complex P1 = P(t1);
        auto integrand = [&](double s) { return std::exp(P(s) - P1) * problem.rhs(s); };
        const Complex incr = integrate(integrand, t0, t1, 1e-13, kQuadMaxDepth, 1, abs_floor).value;
        const Complex y0 = sol.values[static_cast<std::size_t>(j)];
        const Complex y1 = sol.values[static_cast<std::size_t>((j + 1) % n)];
        worst = std::max(worst, std::abs(y1 - std::exp(P(t0) - P1) * y0 - incr) / dt);
    }
    return worst;
}

CoefficientField gauge_transform(const CoefficientField& field, const TrigPoly& a, GaugeDirection direction) {
    if (!a.is_real()) throw DomainError("gauge transform needs a real-valued a(t)");
    const TrigPoly A = a.real_part().zero_mean_primitive();
    const double sign = direction == GaugeDirection::Forward ? 1.0 : -1.0;
    const int n = field.grid_size();
    std::vector<double> Ag(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) Ag[static_cast<std::size_t>(j)] = A(kTwoPi * j / n).real();
    CoefficientField out(field.model_name(), n);
    for (const auto& [key, e] : field.entries()) {
        const double mu = e.mu();
        FieldEntry g = e;
        for (int j = 0; j < n; ++j) g.samples[static_cast<std::size_t>(j)] *= std::polar(1.0, sign * mu * Ag[static_cast<std::size_t>(j)]);
        if (e.fn) g.fn = PeriodicFn::exp_of(A * Complex(0.0, sign * mu)) * *e.fn;
        out.entries().emplace(key, std::move(g));
    }
    return out;
}

FieldSolution solve_field(const SpectralModel& model, const TrigPoly& c, Complex q, const CoefficientField& f,
                          const SolveOptions& options, BranchPolicy policy) {
    SolveOptions opt = options;
    opt.grid_size = f.grid_size();
    if (!opt.b_sign) opt.b_sign = sign_certificate(c.imag_part(), 256).verdict;

    std::vector<const FieldEntry*> work;
    for (const auto& [key, e] : f.entries()) work.push_back(&e);
    std::vector<ModeDiagnostic> diags(work.size());
    std::vector<std::optional<std::vector<Complex>>> values(work.size());

    auto run_one = [&](std::size_t i) {
        const FieldEntry& e = *work[i];
        ModeDiagnostic& d = diags[i];
        d.key = e.key();
        PeriodicFn rhs;
        if (e.fn) {
            rhs = *e.fn;
        } else {
            auto interp = std::make_shared<TrigInterpolant>(e.samples);
            rhs = PeriodicFn::from_window([interp](double t) { return (*interp)(t); }, Smoothness::Analytic,
                                          "grid interpolant", e.sup_norm());
        }
        try {
            ModeProblem prob{e.mu(), c, q, rhs};
            ModeSolution sol = solve_mode(prob, policy, opt);
            d.branch = sol.branch;
            d.residual = sol.residual;
            d.conditioning = sol.conditioning;
            d.warnings = sol.warnings;
            values[i] = std::move(sol.values);
        } catch (const ResonanceObstruction& ex) {
            d.status = ModeStatus::Obstructed;
            d.branch = Branch::Resonant;
            d.message = ex.what();
            d.obstruction = ex.integral();
        } catch (const Error& ex) {
            d.status = ModeStatus::Failed;
            d.message = ex.what();
        }
    };

    const int threads = std::max(1, std::min<int>(opt.threads, static_cast<int>(work.size())));
    if (threads <= 1) {
        for (std::size_t i = 0; i < work.size(); ++i) run_one(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (int k = 0; k < threads; ++k)
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < work.size(); i = next++) run_one(i);
            });
        for (auto& th : pool) th.join();
    }

    FieldSolution out;
    out.u = CoefficientField(model.name(), f.grid_size());
    for (std::size_t i = 0; i < work.size(); ++i)
        if (values[i]) out.u.set_samples(work[i]->rep, work[i]->r, work[i]->s, std::move(*values[i]));
    out.diagnostics = std::move(diags);
    return out;
}

}  // namespace hypo
