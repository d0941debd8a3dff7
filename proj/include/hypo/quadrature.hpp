#pragma once

#include "hypo/errors.hpp"
#include "hypo/periodic_fn.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

namespace hypo {

struct QuadResult {
    Complex value;
    double error = 0.0;
    double l1 = 0.0;
};

/// Default panel budget: levels of bisection allowed per panel.
inline constexpr unsigned kQuadMaxDepth = 18;
/// Hard cap on the number of live panels of one integral.
inline constexpr std::size_t kQuadMaxPanels = 2048;

/// Globally adaptive Gauss-Kronrod (7/15) integration of a complex integrand
/// over [a, b]: the panel with the largest error estimate is bisected until
/// the summed estimate is within tol times the L1 norm of the integrand.
/// abs_tol is an absolute floor for integrals that are negligible on the
/// caller's scale. The interval starts as initial_panels equal panels, so
/// features narrower than one panel are not missed. Panels are not split
/// below depth max_depth; if the target is still missed a QuadratureError
/// carries the best estimate. Subdivision is deterministic.
template <class F>
QuadResult integrate(F&& f, double a, double b, double tol, unsigned max_depth = kQuadMaxDepth,
                     unsigned initial_panels = 1, double abs_tol = 0.0) {
    if (!(tol > 0.0)) throw DomainError("quadrature tolerance must be positive");
    if (a == b) return {Complex(0.0), 0.0, 0.0};
    struct Panel {
        double a, b;
        Complex value;
        double err, l1;
        unsigned depth;
    };
    // Kronrod 15 / Gauss 7 pair; Gauss nodes are the even-indexed Kronrod
    // abscissas. The error estimate |K - G| is scaled by the panel width.
    static const auto& xk = boost::math::quadrature::gauss_kronrod<double, 15>::abscissa();
    static const auto& wk = boost::math::quadrature::gauss_kronrod<double, 15>::weights();
    static const auto& wg = boost::math::quadrature::gauss<double, 7>::weights();
    auto eval = [&f](double lo, double hi, unsigned depth) {
        const double c = 0.5 * (lo + hi);
        const double h = 0.5 * (hi - lo);
        Complex f0 = f(c);
        Complex K = wk[0] * f0;
        Complex G = wg[0] * f0;
        double l1 = wk[0] * std::abs(f0);
        for (std::size_t i = 1; i < xk.size(); ++i) {
            const Complex fp = f(c + h * xk[i]);
            const Complex fm = f(c - h * xk[i]);
            K += wk[i] * (fp + fm);
            l1 += wk[i] * (std::abs(fp) + std::abs(fm));
            if (i % 2 == 0) G += wg[i / 2] * (fp + fm);
        }
        return Panel{lo, hi, K * h, std::abs(K - G) * h, l1 * h, depth};
    };
    std::vector<Panel> panels;
    const unsigned n0 = std::max(1u, initial_panels);
    for (unsigned k = 0; k < n0; ++k) panels.push_back(eval(a + (b - a) * k / n0, a + (b - a) * (k + 1) / n0, 0));
    for (;;) {
        Complex value = 0.0;
        double err = 0.0, l1 = 0.0;
        std::size_t worst = panels.size();
        for (std::size_t k = 0; k < panels.size(); ++k) {
            value += panels[k].value;
            err += panels[k].err;
            l1 += panels[k].l1;
            if (panels[k].depth < max_depth && (worst == panels.size() || panels[k].err > panels[worst].err))
                worst = k;
        }
        if (!std::isfinite(value.real()) || !std::isfinite(value.imag()))
            throw QuadratureError("non-finite quadrature value", value, err);
        // A sliver of round-off above tol * L1 is accepted so integrals near
        // the floating-point floor do not spuriously fail.
        if (err <= tol * l1 || err <= abs_tol || err <= 64 * 2.2e-16 * l1 || l1 == 0.0) return {value, err, l1};
        if (worst == panels.size() || panels.size() >= kQuadMaxPanels ||
            panels[worst].err <= 64 * 2.2e-16 * panels[worst].l1)
            throw QuadratureError("quadrature did not converge within the panel budget (error " + std::to_string(err) +
                                      ", L1 " + std::to_string(l1) + ")",
                                  value, err);
        Panel p = panels[worst];
        const double mid = 0.5 * (p.a + p.b);
        panels[worst] = eval(p.a, mid, p.depth + 1);
        panels.push_back(eval(mid, p.b, p.depth + 1));
    }
}

Complex quadrature(const PeriodicFn& f, double a, double b, double tol);

}  // namespace hypo
