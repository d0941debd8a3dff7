#pragma once

#include "hypo/trig_poly.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace hypo {

/// Smoothness class of a periodic function; anything built from a bump is
/// C-infinity but not analytic, which limits spectral accuracy on a grid.
enum class Smoothness { Analytic, Smooth };

/// Immutable 2π-periodic complex function of t.
///
/// Trig polynomials, bumps and their sums/products/scalings. Copies share
/// the underlying callable, so values are cheap to pass around and safe to
/// read from several threads.
class PeriodicFn {
public:
    PeriodicFn();  // identically zero
    PeriodicFn(const TrigPoly& p);  // NOLINT(google-explicit-constructor)

    static PeriodicFn constant(Complex value);
    /// t ↦ exp(P(t)); periodic because P is.
    static PeriodicFn exp_of(const TrigPoly& exponent);
    /// Wraps a callable defined on [0, 2π); evaluation reduces t mod 2π.
    static PeriodicFn from_window(std::function<Complex(double)> fn, Smoothness smoothness,
                                  std::string description, double sup_bound);

    Complex operator()(double t) const { return fn_(t); }
    std::vector<Complex> sample(int grid_size) const;

    Smoothness smoothness() const { return smoothness_; }
    bool analytic() const { return smoothness_ == Smoothness::Analytic; }
    const std::string& description() const { return description_; }
    /// Upper bound on sup |f| (exact for bumps, coefficient l1 for trig polys).
    double sup_bound() const { return sup_bound_; }
    const std::optional<TrigPoly>& as_trig_poly() const { return trig_; }

    PeriodicFn operator+(const PeriodicFn& other) const;
    PeriodicFn operator*(const PeriodicFn& other) const;
    PeriodicFn operator*(Complex scale) const;

private:
    PeriodicFn(std::function<Complex(double)> fn, Smoothness s, std::string d, double sup);

    std::function<Complex(double)> fn_;
    Smoothness smoothness_ = Smoothness::Analytic;
    std::string description_;
    double sup_bound_ = 0.0;
    std::optional<TrigPoly> trig_;
};

/// Parameters of a plateau bump on the circle.
struct BumpShape {
    double center = 0.0;
    double halfwidth = 1.0;
    double plateau_fraction = 0.5;
};

/// C-infinity bump: 1 on |t - center| <= plateau_fraction * halfwidth,
/// 0 outside |t - center| < halfwidth (distances taken on the circle), with
/// exp(-1/x) smooth-step transitions. 0 < halfwidth < π and
/// 0 < plateau_fraction < 1, else DomainError.
PeriodicFn make_bump(double center, double halfwidth, double plateau_fraction);

/// Raw bump value, shared with make_bump.
double bump_value(const BumpShape& shape, double t);

}  // namespace hypo
