#pragma once

#include <cmath>
#include <complex>

namespace hypo {

/// e^z - 1 without cancellation near z = 0. The imaginary part is reduced
/// mod 2π first.
inline std::complex<double> cexpm1(std::complex<double> z) {
    const double x = z.real();
    const double y = std::remainder(z.imag(), 6.283185307179586476925286766559);
    const double em1 = std::expm1(x);
    const double s = std::sin(0.5 * y);
    // e^x cos y - 1 = expm1(x) cos y - 2 sin^2(y/2)
    return {em1 * std::cos(y) - 2.0 * s * s, (em1 + 1.0) * std::sin(y)};
}

/// log(1 - e^w), finite for large |Re w| (branch of log irrelevant to callers
/// that only exponentiate the result).
inline std::complex<double> log_one_minus_exp(std::complex<double> w) {
    if (w.real() <= 0.0) return std::log(-cexpm1(w));
    return w + std::log(cexpm1(-w));
}

/// log(e^w - 1).
inline std::complex<double> log_exp_minus_one(std::complex<double> w) {
    if (w.real() <= 0.0) return std::log(cexpm1(w));
    return w + std::log(-cexpm1(-w));
}

}  // namespace hypo
