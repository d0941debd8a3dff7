#include "hypo/spectral.hpp"

#include "hypo/quadrature.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstring>
#include <map>
#include <mutex>

namespace hypo {

namespace {

// FFTW planning is not thread-safe; plans are created once per size under a
// lock and then executed on fresh aligned buffers (new-array execute).
fftw_plan forward_plan(int n) {
    static std::mutex mutex;
    static std::map<int, fftw_plan> plans;
    std::lock_guard lock(mutex);
    auto it = plans.find(n);
    if (it != plans.end()) return it->second;
    auto* in = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n));
    auto* out = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n));
    fftw_plan p = fftw_plan_dft_1d(n, in, out, FFTW_FORWARD, FFTW_ESTIMATE);
    fftw_free(in);
    fftw_free(out);
    plans.emplace(n, p);
    return p;
}

fftw_plan backward_plan(int n) {
    static std::mutex mutex;
    static std::map<int, fftw_plan> plans;
    std::lock_guard lock(mutex);
    auto it = plans.find(n);
    if (it != plans.end()) return it->second;
    auto* in = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n));
    auto* out = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n));
    fftw_plan p = fftw_plan_dft_1d(n, in, out, FFTW_BACKWARD, FFTW_ESTIMATE);
    fftw_free(in);
    fftw_free(out);
    plans.emplace(n, p);
    return p;
}

std::vector<Complex> run(fftw_plan plan, const std::vector<Complex>& data) {
    const auto n = data.size();
    auto* in = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n));
    auto* out = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n));
    std::memcpy(in, data.data(), sizeof(fftw_complex) * n);
    fftw_execute_dft(plan, in, out);
    std::vector<Complex> result(n);
    std::memcpy(static_cast<void*>(result.data()), out, sizeof(fftw_complex) * n);
    fftw_free(in);
    fftw_free(out);
    return result;
}

}  // namespace

int grid_frequency(int index, int n) { return index <= n / 2 ? index : index - n; }

std::vector<Complex> grid_coefficients(const std::vector<Complex>& samples) {
    const int n = static_cast<int>(samples.size());
    if (n == 0) return {};
    auto c = run(forward_plan(n), samples);
    for (auto& v : c) v /= static_cast<double>(n);
    return c;
}

std::vector<Complex> spectral_derivative(const std::vector<Complex>& samples, int order) {
    const int n = static_cast<int>(samples.size());
    if (n == 0 || order == 0) return samples;
    auto c = grid_coefficients(samples);
    for (int k = 0; k < n; ++k) {
        int freq = grid_frequency(k, n);
        if (n % 2 == 0 && k == n / 2) {
            c[static_cast<std::size_t>(k)] = 0.0;
            continue;
        }
        Complex factor = std::pow(Complex(0.0, freq), order);
        c[static_cast<std::size_t>(k)] *= factor;
    }
    return run(backward_plan(n), c);
}

TrigInterpolant::TrigInterpolant(const std::vector<Complex>& samples)
    : n_(static_cast<int>(samples.size())), coeffs_(grid_coefficients(samples)) {
    // Split the Nyquist mode symmetrically so the interpolant of real data is real.
    if (n_ % 2 == 0 && n_ > 0) coeffs_[static_cast<std::size_t>(n_ / 2)] *= 0.5;
}

Complex TrigInterpolant::operator()(double t) const {
    Complex acc(0.0);
    for (int k = 0; k < n_; ++k) {
        int freq = grid_frequency(k, n_);
        acc += coeffs_[static_cast<std::size_t>(k)] * std::polar(1.0, freq * t);
    }
    if (n_ % 2 == 0 && n_ > 0) acc += coeffs_[static_cast<std::size_t>(n_ / 2)] * std::polar(1.0, -(n_ / 2) * t);
    return acc;
}

Complex quadrature(const PeriodicFn& f, double a, double b, double tol) {
    return integrate([&f](double s) { return f(s); }, a, b, tol).value;
}

}  // namespace hypo
