#include "hypo/periodic_fn.hpp"

#include "hypo/errors.hpp"

#include <cmath>
#include <sstream>

namespace hypo {

PeriodicFn::PeriodicFn()
    : fn_([](double) { return Complex(0.0); }),
      smoothness_(Smoothness::Analytic),
      description_("0"),
      sup_bound_(0.0),
      trig_(TrigPoly{}) {}

PeriodicFn::PeriodicFn(const TrigPoly& p)
    : fn_([p](double t) { return p(t); }),
      smoothness_(Smoothness::Analytic),
      description_("trig(deg " + std::to_string(p.degree()) + ")"),
      sup_bound_(p.coeff_l1()),
      trig_(p) {}

PeriodicFn::PeriodicFn(std::function<Complex(double)> fn, Smoothness s, std::string d, double sup)
    : fn_(std::move(fn)), smoothness_(s), description_(std::move(d)), sup_bound_(sup) {}

PeriodicFn PeriodicFn::constant(Complex value) { return PeriodicFn(TrigPoly::constant(value)); }

PeriodicFn PeriodicFn::exp_of(const TrigPoly& exponent) {
    double re_bound = exponent.real_part().coeff_l1();
    return PeriodicFn([exponent](double t) { return std::exp(exponent(t)); }, Smoothness::Analytic,
                      "exp(trig)", std::exp(re_bound));
}

PeriodicFn PeriodicFn::from_window(std::function<Complex(double)> fn, Smoothness smoothness,
                                   std::string description, double sup_bound) {
    auto wrapped = [fn = std::move(fn)](double t) {
        double s = std::fmod(t, kTwoPi);
        if (s < 0) s += kTwoPi;
        if (s >= kTwoPi) s = 0.0;
        return fn(s);
    };
    return PeriodicFn(std::move(wrapped), smoothness, std::move(description), sup_bound);
}

std::vector<Complex> PeriodicFn::sample(int grid_size) const {
    std::vector<Complex> v(static_cast<std::size_t>(grid_size));
    for (int j = 0; j < grid_size; ++j) v[static_cast<std::size_t>(j)] = fn_(kTwoPi * j / grid_size);
    return v;
}

namespace {

Smoothness weakest(Smoothness a, Smoothness b) {
    return (a == Smoothness::Smooth || b == Smoothness::Smooth) ? Smoothness::Smooth : Smoothness::Analytic;
}

}  // namespace

PeriodicFn PeriodicFn::operator+(const PeriodicFn& other) const {
    if (trig_ && other.trig_) return PeriodicFn(*trig_ + *other.trig_);
    auto f = fn_;
    auto g = other.fn_;
    return PeriodicFn([f, g](double t) { return f(t) + g(t); }, weakest(smoothness_, other.smoothness_),
                      "(" + description_ + " + " + other.description_ + ")", sup_bound_ + other.sup_bound_);
}

PeriodicFn PeriodicFn::operator*(const PeriodicFn& other) const {
    if (trig_ && other.trig_) return PeriodicFn(*trig_ * *other.trig_);
    auto f = fn_;
    auto g = other.fn_;
    return PeriodicFn([f, g](double t) { return f(t) * g(t); }, weakest(smoothness_, other.smoothness_),
                      description_ + " * " + other.description_, sup_bound_ * other.sup_bound_);
}

PeriodicFn PeriodicFn::operator*(Complex scale) const {
    if (trig_) return PeriodicFn(*trig_ * scale);
    auto f = fn_;
    std::ostringstream d;
    d << "(" << scale.real() << "," << scale.imag() << ") * " << description_;
    return PeriodicFn([f, scale](double t) { return scale * f(t); }, smoothness_, d.str(),
                      std::abs(scale) * sup_bound_);
}

namespace {

double smooth_exp(double x) { return x > 0 ? std::exp(-1.0 / x) : 0.0; }

// Smooth step: 0 at s <= 0, 1 at s >= 1.
double smooth_step(double s) {
    double a = smooth_exp(s);
    double b = smooth_exp(1.0 - s);
    return a / (a + b);
}

}  // namespace

double bump_value(const BumpShape& shape, double t) {
    double d = std::abs(std::remainder(t - shape.center, kTwoPi));
    double x = d / shape.halfwidth;
    if (x >= 1.0) return 0.0;
    double p = shape.plateau_fraction;
    if (x <= p) return 1.0;
    return smooth_step((1.0 - x) / (1.0 - p));
}

PeriodicFn make_bump(double center, double halfwidth, double plateau_fraction) {
    if (!(halfwidth > 0.0 && halfwidth < kPi))
        throw DomainError("bump halfwidth must lie in (0, pi)");
    if (!(plateau_fraction > 0.0 && plateau_fraction < 1.0))
        throw DomainError("bump plateau_fraction must lie in (0, 1)");
    if (!std::isfinite(center)) throw DomainError("bump center must be finite");
    BumpShape shape{center, halfwidth, plateau_fraction};
    std::ostringstream d;
    d << "bump(" << center << "," << halfwidth << "," << plateau_fraction << ")";
    return PeriodicFn::from_window([shape](double t) { return Complex(bump_value(shape, t)); },
                                   Smoothness::Smooth, d.str(), 1.0);
}

}  // namespace hypo
