#pragma once

// Uniform-grid Fourier helpers: samples y_j = y(2πj/N), j = 0..N-1.

#include "hypo/trig_poly.hpp"

#include <vector>

namespace hypo {

/// Fourier coefficients c_k with y_j = sum_k c_k e^{i k t_j}; index k in
/// [0, N) stands for frequency k for k <= N/2 and k - N above.
std::vector<Complex> grid_coefficients(const std::vector<Complex>& samples);

int grid_frequency(int index, int n);

/// Spectral derivative of the given order; for even N the Nyquist mode is
/// dropped.
std::vector<Complex> spectral_derivative(const std::vector<Complex>& samples, int order = 1);

/// Trigonometric interpolant of grid samples.
class TrigInterpolant {
public:
    TrigInterpolant() = default;
    explicit TrigInterpolant(const std::vector<Complex>& samples);
    Complex operator()(double t) const;
    int size() const { return n_; }

private:
    int n_ = 0;
    std::vector<Complex> coeffs_;
};

inline double grid_point(int j, int n) { return kTwoPi * j / n; }

}  // namespace hypo
