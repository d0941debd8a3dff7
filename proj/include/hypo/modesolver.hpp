#pragma once

// Per-mode solution of  y' + (i mu c(t) + q) y = f(t)  on the circle.
//
// With C the zero-mean primitive of c and lambda = i mu c0 + q, the
// substitution y = e^{-i mu C} v turns the mode equation into
// v' + lambda v = e^{i mu C} f, solved by the closed-form periodic formulas.

#include "hypo/field.hpp"
#include "hypo/periodic_fn.hpp"
#include "hypo/spectra.hpp"
#include "hypo/spectral.hpp"
#include "hypo/torusfn.hpp"
#include "hypo/trig_poly.hpp"

#include <optional>
#include <string>
#include <vector>

namespace hypo {

struct ModeProblem {
    double mu = 0.0;
    TrigPoly c;
    Complex q{0.0};
    PeriodicFn rhs;

    Complex lambda() const { return Complex(0.0, mu) * c.mean() + q; }
};

enum class Branch { Minus, Plus, Resonant };
enum class BranchPolicy { Auto, ForceMinus, ForcePlus };
enum class ResidualMethod { Auto, Spectral, StepIntegral };
enum class WarningKind { IllConditioned, OverflowRisk };

std::string to_string(Branch b);
std::string to_string(WarningKind w);

struct SolveWarning {
    WarningKind kind;
    double value = 0.0;  // conditioning or peak exponent
    std::string message;
};

struct SolveOptions {
    int grid_size = 256;
    double quad_tol = 1e-12;
    double residual_tol = 1e-8;    // relative to max(1, sup|rhs|, sup|p y|)
    double resonance_eps = 1e-9;   // relative distance of lambda/i from Z
    double cond_floor = 1e-6;
    double exp_cap = 700.0;
    ResidualMethod residual_method = ResidualMethod::Auto;
    bool enforce_residual = true;
    // Sign of Im c when already known; computed on demand otherwise.
    std::optional<SignVerdict> b_sign;
    int threads = 1;
};

struct ModeSolution {
    std::vector<Complex> values;  // y(2πj/N)
    TrigInterpolant interpolant;
    Branch branch = Branch::Minus;
    Complex lambda{0.0};
    double conditioning = 0.0;   // |1 - e^{-2πλ}| or |e^{2πλ} - 1|; 0 if resonant
    double peak_exponent = 0.0;  // grid estimate of max log|kernel|
    double residual = 0.0;
    std::vector<SolveWarning> warnings;

    Complex operator()(double t) const { return interpolant(t); }
    double sup_norm() const;
};

/// True when lambda/i lies within eps * max(1, |lambda|) of an integer.
bool is_resonant(Complex lambda, double eps);

/// Periodic solution of y' + lambda y = h. Throws ResonanceObstruction
/// when lambda is in iZ and the compatibility integral does not vanish.
ModeSolution solve_periodic_scalar(Complex lambda, const PeriodicFn& h, const SolveOptions& options = {});

/// Same, with the integral branch forced (both are valid off resonance).
ModeSolution solve_periodic_scalar(Complex lambda, const PeriodicFn& h, Branch branch,
                                   const SolveOptions& options = {});

ModeSolution solve_mode(const ModeProblem& problem, BranchPolicy policy = BranchPolicy::Auto,
                        const SolveOptions& options = {});

/// sup over the grid of |y' + (i mu c + q) y - rhs|.
double residual(const ModeSolution& sol, const ModeProblem& problem,
                ResidualMethod method = ResidualMethod::Auto);

/// Scale used by the enforced residual bound.
double residual_scale(const ModeSolution& sol, const ModeProblem& problem);

enum class GaugeDirection { Forward, Inverse };

/// Multiplies each (rep, r, s) entry by e^{±i mu_r A(t)}, A the zero-mean
/// primitive of a (Forward: +, Inverse: -). Throws DomainError for complex a.
CoefficientField gauge_transform(const CoefficientField& field, const TrigPoly& a, GaugeDirection direction);

enum class ModeStatus { Solved, Obstructed, Failed };
std::string to_string(ModeStatus s);

struct ModeDiagnostic {
    FieldKey key;
    ModeStatus status = ModeStatus::Solved;
    Branch branch = Branch::Minus;
    double residual = 0.0;
    double conditioning = 0.0;
    std::vector<SolveWarning> warnings;
    std::string message;
    Complex obstruction{0.0};  // compatibility integral for obstructed modes
};

struct FieldSolution {
    CoefficientField u;
    std::vector<ModeDiagnostic> diagnostics;  // field order
    bool all_solved() const;
};

/// Solves every mode of f; failures are recorded per mode and do not stop
/// the others. Work is spread over options.threads threads; results are
/// merged in key order.
FieldSolution solve_field(const SpectralModel& model, const TrigPoly& c, Complex q, const CoefficientField& f,
                          const SolveOptions& options = {}, BranchPolicy policy = BranchPolicy::Auto);

}  // namespace hypo
