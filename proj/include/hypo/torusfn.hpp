#pragma once

// Calculus on the circle used by the decision procedure: certified sign
// analysis of real trigonometric polynomials and extremal window integrals.

#include "hypo/periodic_fn.hpp"
#include "hypo/quadrature.hpp"
#include "hypo/trig_poly.hpp"

#include <string>
#include <vector>

namespace hypo {

enum class SignVerdict { IdenticallyZero, NonNegative, NonPositive, ChangesSign, ConstantNonzero };
enum class Rigor { Certified, Heuristic };

std::string to_string(SignVerdict v);
std::string to_string(Rigor r);
inline Rigor weakest(Rigor a, Rigor b) {
    return (a == Rigor::Heuristic || b == Rigor::Heuristic) ? Rigor::Heuristic : Rigor::Certified;
}

struct SignWitness {
    double t = 0.0;
    double value = 0.0;
};

struct SignCertificate {
    SignVerdict verdict = SignVerdict::IdenticallyZero;
    Rigor rigor = Rigor::Certified;
    // ChangesSign: [0] strictly positive, [1] strictly negative.
    // Otherwise: the sampled minimum and maximum.
    std::vector<SignWitness> witnesses;
    double zero_tolerance = 0.0;
    int cells_checked = 0;
    int zero_cells = 0;  // cells accepted under the zero-set policy
    int max_depth = 0;

    bool changes_sign() const { return verdict == SignVerdict::ChangesSign; }
};

struct SignOptions {
    // Relative to sum |b_n|; values below are treated as zeros.
    double zero_tolerance = 1e-12;
    int max_depth = 60;
};

/// Decides the sign pattern of a real trigonometric polynomial. Cells of the
/// initial grid are resolved with Bernstein bounds (|b'| <= N sup|b|,
/// |b''| <= N^2 sup|b|) and bisected when unresolved. Throws DomainError
/// for non-real input.
SignCertificate sign_certificate(const TrigPoly& b, int grid_size, SignOptions options = {});

/// Extremal window of Im c: B = min over 0 <= t, tau <= 2π of
/// Im int_t^{t+tau} c = int_{t0}^{t0+tau0} b.
struct WindowExtremum {
    double value = 0.0;  // B
    double t0 = 0.0;     // in [0, 2π)
    double tau0 = 0.0;   // in [0, 2π]
    bool interior = false;
};

/// Throws DegenerateWindow when Im c is constant.
WindowExtremum min_im_window(const TrigPoly& c, int coarse_grid = 128);

/// Mirrored extremum for the b0 < 0 construction:
/// value = max over t, tau of int_{t-tau}^{t} b, attained at (t0 = t1, tau0 = tau1).
WindowExtremum max_im_backward_window(const TrigPoly& c, int coarse_grid = 128);

}  // namespace hypo
