#pragma once

// Independent reference computations for the test suites. Deliberately
// simple and slow; none of them call into the library under test.

#include <cmath>
#include <complex>
#include <functional>
#include <vector>

namespace oracle {

using Complex = std::complex<double>;
inline constexpr double kTwoPi = 6.283185307179586476925286766559;
inline constexpr double kPi = 3.141592653589793238462643383280;

// Romberg integration on [a, b] with `levels` halvings.
inline Complex romberg(const std::function<Complex(double)>& f, double a, double b, int levels = 18) {
    std::vector<std::vector<Complex>> R(static_cast<std::size_t>(levels));
    double h = b - a;
    R[0].push_back(0.5 * h * (f(a) + f(b)));
    for (int i = 1; i < levels; ++i) {
        h *= 0.5;
        Complex sum = 0.0;
        long n = 1L << (i - 1);
        for (long k = 1; k <= n; ++k) sum += f(a + (2 * k - 1) * h);
        R[i].push_back(0.5 * R[i - 1][0] + h * sum);
        double p = 4.0;
        for (int j = 1; j <= i; ++j, p *= 4.0) R[i].push_back(R[i][j - 1] + (R[i][j - 1] - R[i - 1][j - 1]) / (p - 1.0));
        if (i > 6 && std::abs(R[i][i] - R[i - 1][i - 1]) < 1e-15 * (1.0 + std::abs(R[i][i]))) return R[i][i];
    }
    return R[levels - 1][levels - 1];
}

// Composite trapezoid; spectrally accurate for smooth periodic integrands
// over a full period.
inline Complex periodic_trapezoid(const std::function<Complex(double)>& f, int n = 4096) {
    Complex s = 0.0;
    for (int j = 0; j < n; ++j) s += f(kTwoPi * j / n);
    return s * (kTwoPi / n);
}

// Direct sum of p_n e^{int}.
inline Complex trig_sum(const std::vector<std::pair<int, Complex>>& terms, double t) {
    Complex s = 0.0;
    for (auto& [n, c] : terms) s += c * Complex(std::cos(n * t), std::sin(n * t));
    return s;
}

// Classical RK4 for the linear scalar ODE y' = -p(t) y + h(t) on [t0, t1]
// with a given number of steps (negative direction allowed).
inline Complex rk4_linear(const std::function<Complex(double)>& p, const std::function<Complex(double)>& h,
                          Complex y, double t0, double t1, int steps) {
    const double dt = (t1 - t0) / steps;
    auto rhs = [&](double t, Complex v) { return -p(t) * v + h(t); };
    double t = t0;
    for (int k = 0; k < steps; ++k) {
        Complex k1 = rhs(t, y);
        Complex k2 = rhs(t + 0.5 * dt, y + 0.5 * dt * k1);
        Complex k3 = rhs(t + 0.5 * dt, y + 0.5 * dt * k2);
        Complex k4 = rhs(t + dt, y + dt * k3);
        y += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        t += dt;
    }
    return y;
}

// Periodic solution of y' + p y = h by shooting. The map y(0) -> y(2π) is
// affine, y(2π) = m y(0) + k; the periodic solution has y(0) = k/(1 - m).
// When |m| > 1 the backward map is the stable one, so integrate from 2π down.
// Returns samples y(2πj/n), j = 0..n-1.
inline std::vector<Complex> periodic_solution(const std::function<Complex(double)>& p,
                                              const std::function<Complex(double)>& h, int n,
                                              int steps_per_cell = 160) {
    const int steps = n * steps_per_cell;
    auto zero = [](double) { return Complex(0.0); };
    Complex k = rk4_linear(p, h, 0.0, 0.0, kTwoPi, steps);
    Complex m = rk4_linear(p, zero, 1.0, 0.0, kTwoPi, steps);
    std::vector<Complex> out(static_cast<std::size_t>(n));
    if (std::abs(m) <= 1.0) {
        Complex y = k / (1.0 - m);
        out[0] = y;
        for (int j = 1; j < n; ++j) {
            y = rk4_linear(p, h, y, kTwoPi * (j - 1) / n, kTwoPi * j / n, steps_per_cell);
            out[static_cast<std::size_t>(j)] = y;
        }
    } else {
        // Backward: y(0) = mb y(2π) + kb with y(2π) = y(0).
        Complex kb = rk4_linear(p, h, 0.0, kTwoPi, 0.0, steps);
        Complex mb = rk4_linear(p, zero, 1.0, kTwoPi, 0.0, steps);
        Complex y = kb / (1.0 - mb);
        out[0] = y;
        for (int j = n - 1; j >= 1; --j) {
            y = rk4_linear(p, h, y, kTwoPi * (j + 1) / n, kTwoPi * j / n, steps_per_cell);
            out[static_cast<std::size_t>(j)] = y;
        }
    }
    return out;
}

}  // namespace oracle
