#pragma once

// Explicit singular solutions: f smooth (rapidly decaying coefficients) and
// u a distribution that is not smooth, with L u = f mode by mode.
//
//   homogeneous_resonant  infinitely many resonant modes, f = 0
//   small_gap_singular    exp gaps below <eta>^{-j}, bump cutoff away from t_k
//   sign_change_singular  Im c changes sign; Laplace peak at the extremal window

#include "hypo/analysis.hpp"
#include "hypo/diophantine.hpp"
#include "hypo/field.hpp"
#include "hypo/spectra.hpp"
#include "hypo/trig_poly.hpp"

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace hypo {

enum class Recipe { HomogeneousResonant, SmallGap, SignChangeB0Pos, SignChangeB0Neg };
std::string to_string(Recipe r);

enum class SignVariant { B0Pos, B0Neg };

struct CounterexampleOptions {
    int grid_size = 256;
    double residual_tol = 1e-8;  // relative to residual_scale
    double quad_tol = 1e-13;
};

struct RepRecord {
    RepPoint rep;
    int r = 1;  // entry (r, r)
    double mu = 0.0;
    Complex lambda{0.0};
    double sup_f = 0.0;
    double sup_u = 0.0;
    double peak = 0.0;     // |u| at the recipe's evaluation point (t_k or t0)
    double bound = 0.0;    // recipe bound paired with peak (1, ||phi||_1 / 2, or the e^{B mu} envelope)
    double residual = 0.0;
    double residual_scale = 1.0;
    // homogeneous_resonant
    double m = 0.0;        // max_t int_0^t (mu b - Re q)
    double t_k = 0.0;      // its maximizer
    // small_gap_singular
    int j = 0;
    double gap = 0.0;      // |1 - e^{-2 pi lambda}|
};

struct CheckResult {
    std::string name;
    bool passed = false;
    double value = 0.0;
    double bound = 0.0;
    std::string detail;
};

struct CounterexampleReport {
    Recipe recipe = Recipe::HomogeneousResonant;
    std::string model;
    TrigPoly c;
    Complex q{0.0};
    CoefficientField f_field;
    CoefficientField u_field;
    std::vector<RepRecord> records;  // in weight order

    // sign_change_singular: extremal window, bump and trig branch
    double B = 0.0;
    double t0 = 0.0;
    double tau0 = 0.0;
    double delta = 0.0;
    double K = 0.0;          // plateau minimum of the selected trig factor
    std::string trig_branch; // "sin" or "cos"
    int trig_sign = 1;       // sign of that factor on the support
    double lower_exponent = 0.0;  // fitted slope of log|u(t0)| vs log <eta>
    double lower_C = 0.0;         // min over records of |u(t0)| sqrt(<eta>)

    // small_gap_singular: bump placement
    double t_limit = 0.0;    // t_k of the largest weight
    double bump_center = 0.0;
    double bump_halfwidth = 0.0;
    double phi_l1 = 0.0;

    std::vector<CheckResult> checks;
    bool all_passed() const;
};

/// Case (i). The family comes from resonant_set; RecipeInapplicable unless
/// it is an exactly certified infinite family.
CounterexampleReport homogeneous_resonant(const SpectralModel& model, const TrigPoly& c, Complex q, int count,
                                          const CounterexampleOptions& options = {});

struct GapWitness {
    int label = 0;
    int r = 1;
    int j = 1;  // required: 0 < gap < <eta>^{-j}
};

/// Case (ii). RecipeInapplicable if a witness does not have the claimed gap.
CounterexampleReport small_gap_singular(const SpectralModel& model, const TrigPoly& c, Complex q,
                                        const std::vector<GapWitness>& witnesses,
                                        const CounterexampleOptions& options = {});

struct SmallGapFixture {
    SpectralModel model;
    TrigPoly c;
    Complex q{0.0};
    std::vector<GapWitness> witnesses;
};

/// Synthetic table realizing the small gaps: row j has <eta> = j + 2 and
/// one eigenvalue n_j + eps_j with eps_j a dyadic close to <eta>^{-j} / 8;
/// c = 1 + i sin t, q = 0.
SmallGapFixture small_gap_fixture(int rows);

/// Growth-sequence construction for sign-changing Im c. B0Pos needs b0 >= 0,
/// B0Neg needs b0 <= 0; otherwise, or without a sign change, RecipeInapplicable.
CounterexampleReport sign_change_singular(const SpectralModel& model, const TrigPoly& c, Complex q, int count,
                                          SignVariant variant, const CounterexampleOptions& options = {});

struct VerifySummary {
    std::vector<CheckResult> checks;
    bool passed = false;
    std::optional<DecayProfile> f_decay;
    std::optional<DecayProfile> u_decay;
};

/// Re-runs the construction checks, decay_classify on both fields (f
/// RapidDecay, u bounded polynomially but not rapid) and the mode residuals.
VerifySummary verify_report(const CounterexampleReport& report, const CounterexampleOptions& options = {});

/// rep_label,r,mu,weight,sup_f,sup_u,peak,bound,residual
void write_summary_csv(std::ostream& out, const CounterexampleReport& report);

}  // namespace hypo
