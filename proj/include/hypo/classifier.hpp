#pragma once

// Global hypoellipticity of L = d/dt + c(t) X + q on T^1 x G.
//
// Re c is gauged away to its mean a0. A constant b = Im c reduces L to the
// constant-coefficient operator and the arithmetic decides. Otherwise the
// reduced operator L0 = d/dt + c0 X + q must be hypoelliptic, and then L is
// exactly when b does not change sign.

#include "hypo/diophantine.hpp"
#include "hypo/spectra.hpp"
#include "hypo/torusfn.hpp"
#include "hypo/trig_poly.hpp"

#include <optional>
#include <string>
#include <vector>

namespace hypo {

enum class Decision { GloballyHypoelliptic, NotGloballyHypoelliptic, Undecided };
std::string to_string(Decision d);

enum class DecisionPath {
    ConstantCoefficient,  // b constant: resonances and the gap bound decide
    ReducedOperator,      // b non-constant, L0 not hypoelliptic
    SignChange,           // b changes sign
    SignDefinite,         // b does not change sign and L0 is hypoelliptic
    Inconclusive,
};
std::string to_string(DecisionPath p);

struct ClassifyOptions {
    int max_label = 40;
    int scan_K = 200;
    std::vector<double> M_grid = {0.0, 1.0, 2.0, 4.0, 8.0};
    int sign_grid = 256;
    // Heuristic bound test: C_best on the full box must keep this fraction
    // of its value on the half box.
    double stability = 0.5;
};

struct ReducedTest {
    Decision decision = Decision::Undecided;
    Rigor rigor = Rigor::Heuristic;
    DiophantineReport report;
    std::optional<double> C;  // bound constant when hypoelliptic
    std::optional<double> M;
    std::string reason;
};

struct Verdict {
    Decision decision = Decision::Undecided;
    Rigor rigor = Rigor::Heuristic;
    DecisionPath path = DecisionPath::Inconclusive;
    SignCertificate sign;
    ReducedTest L0;
    ArithmeticInput arithmetic;  // c0 = a0 + i b0 and q
    std::string model;
    int max_label = 0;
    int scan_K = 0;
    std::optional<std::string> counterexample_hint;
    std::vector<std::string> notes;
};

/// Arithmetic data of (c0, q): exact when c's mean and q are exact or
/// dyadic doubles, float otherwise.
ArithmeticInput arithmetic_input(const TrigPoly& c, Complex q, std::optional<GaussianRational> q_exact = std::nullopt);

/// Hypoellipticity test of d/dt + c0 X + q from the arithmetic data.
ReducedTest test_reduced(const SpectralModel& model, const ArithmeticInput& input, const ClassifyOptions& options = {});

/// Exact Gaussian-rational parts of c0 and q are used when available. A
/// float that is a dyadic rational (denominator <= 2^30) is exact as given.
Verdict classify(const SpectralModel& model, const TrigPoly& c, Complex q, const ClassifyOptions& options = {});
Verdict classify(const SpectralModel& model, const TrigPoly& c, const GaussianRational& q,
                 const ClassifyOptions& options = {});

std::string explain(const Verdict& verdict);

}  // namespace hypo
