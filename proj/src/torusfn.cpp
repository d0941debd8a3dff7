#include "hypo/torusfn.hpp"

#include "hypo/errors.hpp"

#include <boost/math/tools/minima.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

namespace hypo {

std::string to_string(SignVerdict v) {
    switch (v) {
        case SignVerdict::IdenticallyZero: return "IdenticallyZero";
        case SignVerdict::NonNegative: return "NonNegative";
        case SignVerdict::NonPositive: return "NonPositive";
        case SignVerdict::ChangesSign: return "ChangesSign";
        case SignVerdict::ConstantNonzero: return "ConstantNonzero";
    }
    return "?";
}

std::string to_string(Rigor r) { return r == Rigor::Certified ? "Certified" : "Heuristic"; }

namespace {

struct Cell {
    double a, b;
    double fa, fb;  // values
    double da, db;  // derivatives
    int depth;
};

}  // namespace

SignCertificate sign_certificate(const TrigPoly& b, int grid_size, SignOptions options) {
    if (!b.is_real()) throw DomainError("sign_certificate expects a real trigonometric polynomial");
    if (grid_size < 4) throw DomainError("sign_certificate grid_size must be at least 4");

    SignCertificate cert;
    const double S = b.coeff_l1();
    const double tol = options.zero_tolerance * std::max(1.0, S);
    cert.zero_tolerance = tol;

    if (b.degree() == 0) {
        double v = b.coeff(0).real();
        cert.verdict = b.is_zero() ? SignVerdict::IdenticallyZero : SignVerdict::ConstantNonzero;
        cert.witnesses = {{0.0, v}, {0.0, v}};
        return cert;
    }

    const TrigPoly db = b.derivative();
    auto val = [&b](double t) { return b(t).real(); };
    auto der = [&db](double t) { return db(t).real(); };
    const double N = b.degree();
    const double M = N * S;      // bound on |b'|
    const double K = N * N * S;  // bound on |b''|

    const int n = grid_size;
    std::vector<double> xs(static_cast<std::size_t>(n) + 1), fs(xs.size()), ds(xs.size());
    SignWitness lo{0.0, std::numeric_limits<double>::infinity()};
    SignWitness hi{0.0, -std::numeric_limits<double>::infinity()};
    for (int j = 0; j <= n; ++j) {
        double t = kTwoPi * j / n;
        xs[j] = t;
        fs[j] = (j == n) ? fs[0] : val(t);
        ds[j] = (j == n) ? ds[0] : der(t);
        if (j < n) {
            if (fs[j] < lo.value) lo = {t, fs[j]};
            if (fs[j] > hi.value) hi = {t, fs[j]};
        }
    }

    if (hi.value > tol && lo.value < -tol) {
        cert.verdict = SignVerdict::ChangesSign;
        cert.witnesses = {hi, lo};
        cert.cells_checked = 0;
        return cert;
    }
    if (hi.value <= tol && lo.value >= -tol) {
        // Every sample sits inside the zero band: a nonzero b of this size is
        // below the resolution of the zero-set policy.
        cert.verdict = SignVerdict::IdenticallyZero;
        cert.rigor = b.is_zero() ? Rigor::Certified : Rigor::Heuristic;
        cert.witnesses = {lo, hi};
        return cert;
    }

    const double sigma = hi.value > tol ? 1.0 : -1.0;
    std::vector<Cell> stack;
    stack.reserve(static_cast<std::size_t>(n));
    for (int j = n - 1; j >= 0; --j) stack.push_back({xs[j], xs[j + 1], fs[j], fs[j + 1], ds[j], ds[j + 1], 0});

    while (!stack.empty()) {
        Cell c = stack.back();
        stack.pop_back();
        ++cert.cells_checked;
        cert.max_depth = std::max(cert.max_depth, c.depth);
        const double h = c.b - c.a;
        const double ga = sigma * c.fa;
        const double gb = sigma * c.fb;

        // First order: b >= (fa + fb)/2 - M h/2 on the cell.
        double bound = 0.5 * (ga + gb) - 0.5 * M * h;
        // Second order from either endpoint; concave bounds attain their
        // minimum at an end of the cell.
        bound = std::max(bound, std::min(ga, ga + sigma * c.da * h - 0.5 * K * h * h));
        bound = std::max(bound, std::min(gb, gb - sigma * c.db * h - 0.5 * K * h * h));

        if (bound > tol) continue;
        if (bound >= -tol) {
            ++cert.zero_cells;
            continue;
        }
        if (c.depth >= options.max_depth) {
            cert.rigor = Rigor::Heuristic;
            ++cert.zero_cells;
            continue;
        }
        double m = 0.5 * (c.a + c.b);
        double fm = val(m);
        if (sigma * fm < -tol) {
            cert.verdict = SignVerdict::ChangesSign;
            SignWitness w{m, fm};
            cert.witnesses = sigma > 0 ? std::vector<SignWitness>{hi, w} : std::vector<SignWitness>{w, lo};
            return cert;
        }
        double dm = der(m);
        stack.push_back({m, c.b, fm, c.fb, dm, c.db, c.depth + 1});
        stack.push_back({c.a, m, c.fa, fm, c.da, dm, c.depth + 1});
    }

    cert.verdict = sigma > 0 ? SignVerdict::NonNegative : SignVerdict::NonPositive;
    cert.witnesses = {lo, hi};
    return cert;
}

namespace {

// min over 0 <= tau <= 2π and t of int_t^{t+tau} b for real b.
WindowExtremum forward_min_window(const TrigPoly& b, int n) {
    if (n < 8) throw DomainError("window grid must have at least 8 points");
    const double b0 = b.coeff(0).real();
    const TrigPoly prim = b.zero_mean_primitive();
    if (prim.is_zero()) throw DegenerateWindow("Im c is constant; the window extremum is degenerate");
    auto P = [&prim, b0](double x) { return prim(x).real() + b0 * x; };

    const double h = kTwoPi / n;
    std::vector<double> Pg(static_cast<std::size_t>(2 * n) + 1);
    for (int k = 0; k <= 2 * n; ++k) Pg[k] = P(h * k);

    double best = std::numeric_limits<double>::infinity();
    int bi = 0, bj = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 1; j < n; ++j) {
            double v = Pg[i + j] - Pg[i];
            if (v < best) {
                best = v;
                bi = i;
                bj = j;
            }
        }

    WindowExtremum out;
    out.value = 0.0;  // tau = 0
    if (2 * kPi * b0 < out.value) {
        out.value = kTwoPi * b0;
        out.tau0 = kTwoPi;
    }

    // P is smooth, and the objective separates: maximise P near the start,
    // minimise it near the end.
    const int bits = std::numeric_limits<double>::digits / 2 + 4;
    double ti = h * bi;
    double sj = h * (bi + bj);
    auto start = boost::math::tools::brent_find_minima([&P](double x) { return -P(x); }, ti - h, ti + h, bits);
    auto end = boost::math::tools::brent_find_minima(P, sj - h, sj + h, bits);
    double t0 = start.first;
    double s0 = end.first;
    double refined = P(s0) - P(t0);
    if (refined > best) {
        t0 = ti;
        s0 = sj;
        refined = best;
    }
    double tau = s0 - t0;
    if (tau > 0.0 && tau < kTwoPi && refined < out.value) {
        out.value = refined;
        out.tau0 = tau;
        out.t0 = t0;
        out.interior = true;
    }
    out.t0 = std::fmod(out.t0, kTwoPi);
    if (out.t0 < 0) out.t0 += kTwoPi;
    return out;
}

}  // namespace

WindowExtremum min_im_window(const TrigPoly& c, int coarse_grid) {
    return forward_min_window(c.imag_part(), coarse_grid);
}

WindowExtremum max_im_backward_window(const TrigPoly& c, int coarse_grid) {
    // A backward window ending at t is the forward window starting at t - tau.
    WindowExtremum w = forward_min_window(-c.imag_part(), coarse_grid);
    WindowExtremum out = w;
    out.value = -w.value;
    out.t0 = std::fmod(w.t0 + w.tau0, kTwoPi);
    if (out.t0 < 0) out.t0 += kTwoPi;
    return out;
}

}  // namespace hypo
