#pragma once

// Coefficient-side tests: rapid decay of sup-norms (smoothness), tempered
// pairings (distributions), Plancherel norms and torus synthesis.

#include "hypo/field.hpp"
#include "hypo/periodic_fn.hpp"

#include <functional>
#include <ostream>
#include <string>
#include <vector>

namespace hypo {

enum class DecayClass { RapidDecay, PolynomialBound, NoTemperedBound };
std::string to_string(DecayClass c);

struct DecayOptions {
    int B_max = 2;             // derivative orders 0..B_max
    double slope_rapid = 6.0;  // RapidDecay iff every tail slope <= -slope_rapid
    int min_weights = 6;
};

struct DecayRecord {
    double weight = 1.0;
    int label = 0;
    int beta = 0;
    double sup_norm = 0.0;  // max over the rep's entries of sup_t |d^beta/dt^beta|
};

struct DecayProfile {
    std::vector<DecayRecord> records;  // sorted by (weight, beta)
    std::vector<double> slopes;        // tail slope of log sup vs log weight, per beta (-inf for a zero tail)
    DecayClass classification = DecayClass::PolynomialBound;
    int K = 0;                         // exponent of the polynomial bound (beta = 0)
    double stretch_rate = 0.0;         // alpha of log sup ~ alpha sqrt(weight) when that model wins
    DecayOptions options;
    int tail_start = 0;                // index of the first tail weight
};

/// Throws InsufficientData with fewer than options.min_weights distinct weights.
DecayProfile decay_classify(const CoefficientField& field, const DecayOptions& options = {});

/// weight,label,beta,sup_norm,log_weight,log_sup
void write_decay_csv(std::ostream& out, const DecayProfile& profile);

struct TestFunction {
    std::string name;
    PeriodicFn psi;
};

/// Eight fixed smooth test functions: 1, cos t, sin t, cos 2t, sin 2t,
/// cos 5t, exp(cos t), and a plateau bump at π.
std::vector<TestFunction> default_battery();

struct PairingResult {
    double C = 0.0;  // max over reps, entries and battery of |<u, psi>| / (p1(psi) <eta>)
    std::vector<std::pair<double, double>> per_weight;  // (weight, max ratio), sorted by weight
};

/// Throws DomainError for an empty battery.
PairingResult distribution_pairing(const CoefficientField& field, const std::vector<TestFunction>& battery);

/// p1(psi) = sup |psi| + sup |psi'| on the grid.
double seminorm_p1(const PeriodicFn& psi, int grid_size);

/// (sum over reps of d_eta * sum_rs |coef(t)|^2)^{1/2}.
double plancherel_norm(const CoefficientField& field, double t);

/// sum_n u(t, n) e^{inx}; Unsupported unless the field is on Torus1.
Complex synthesize_torus(const CoefficientField& field, double t, double x);

/// Partial Fourier coefficients in x of F(t, x) for |n| <= max_n, sampled
/// on grid_size points in t and x_grid points in x.
CoefficientField analyze_torus(const std::function<Complex(double, double)>& F, int max_n, int grid_size,
                               int x_grid);

}  // namespace hypo
