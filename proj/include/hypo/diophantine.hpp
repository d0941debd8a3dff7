#pragma once

// Arithmetic of the constant-coefficient operator d/dt + c0 X + q:
// resonances k + c0 mu - i q = 0, polynomial lower bounds for the gaps
// |k + c0 mu - i q|, the exponential gaps |1 - e^{±2πi(c0 mu - i q)}|, and a
// continued-fraction probe for Liouville behaviour of real c0.

#include "hypo/rational.hpp"
#include "hypo/spectra.hpp"
#include "hypo/torusfn.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace hypo {

using BigRational = boost::multiprecision::cpp_rational;

struct ArithmeticInput {
    Complex c0{0.0};
    Complex q{0.0};
    std::optional<GaussianRational> c0_exact;
    std::optional<GaussianRational> q_exact;

    bool exact() const { return c0_exact.has_value() && q_exact.has_value(); }
    static ArithmeticInput exact_input(const GaussianRational& c0, const GaussianRational& q);
    static ArithmeticInput float_input(Complex c0, Complex q);
};

enum class ResonantVerdict { Empty, FiniteListed, InfiniteFamily, UnknownHeuristic };
std::string to_string(ResonantVerdict v);

struct ResonanceWitness {
    std::int64_t k = 0;
    int rep_label = 0;
    int r = 1;
    double mu = 0.0;
    std::optional<Rational> mu_exact;
};

struct BoundWitness {
    std::int64_t k = 0;
    int rep_label = 0;
    int r = 1;
    double gap = 0.0;
    double bound = 0.0;  // gap * (|k| + weight)^M
};

struct DiophantineReport {
    ResonantVerdict verdict = ResonantVerdict::Empty;
    std::vector<ResonanceWitness> witnesses;
    std::string family;              // description of an infinite family
    bool unknown_beyond_table = false;
    Rigor rigor = Rigor::Certified;
    int max_label = 0;

    // Lower-bound part (lower_bound_scan)
    bool has_bound = false;
    double C_best = 0.0;
    double M = 0.0;
    int scan_K = 0;
    std::optional<BoundWitness> argmin;
    std::optional<Rational> C_best_exact;  // set when M = 0 and the minimal gap is rational
    double tail_bound = 0.0;              // certified lower bound outside the box (exact mode)
    // Exact infimum of the nonzero gaps over all k and the whole spectrum
    // (exact mode on Torus1/SU2 only).
    std::optional<double> gap_infimum;
    Rigor bound_rigor = Rigor::Heuristic;
    // The pairs closest to violating the bound, smallest gap*(|k|+<eta>)^M first.
    std::vector<BoundWitness> violation_witnesses;
};

struct ScanOptions {
    double res_tol = 1e-9;  // float-mode resonance test
};

/// Resonance part. Exact inputs on Torus1/SU2 always end in Empty,
/// FiniteListed or InfiniteFamily.
DiophantineReport resonant_set(const SpectralModel& model, const ArithmeticInput& input, int max_label,
                               const ScanOptions& options = {});

/// Bound part: C_best = min over |k| <= scan_K, reps <= max_label and r of
/// |k + c0 mu_r - i q| (|k| + <eta>)^M over nonzero gaps.
DiophantineReport lower_bound_scan(const SpectralModel& model, const ArithmeticInput& input, double M, int scan_K,
                                   int max_label, const ScanOptions& options = {});

constexpr std::size_t kWorstWitnesses = 8;

/// Structured text with every witness; exact rationals as num/den.
std::string format_report(const DiophantineReport& report);

struct ExpGap {
    double gap = 0.0;
    bool saturated = false;  // 2π|Im(c0 mu - i q)| beyond the exponent cap
};

/// min over signs of |1 - e^{±2πi(c0 mu - i q)}| with Re reduced mod 1.
ExpGap exp_gap(const ArithmeticInput& input, double mu, double exp_cap = 700.0);

struct Lemma36Report {
    // Record-low envelopes fitted as C w^{-M}.
    double C_bound = 0.0, M_bound = 0.0;
    double C_exp = 0.0, M_exp = 0.0;
    bool zeros_match = true;  // gap and exponential gap vanish on the same modes
    int zero_count = 0;
    double C_given = 0.0;     // best constant for the requested M
    double C_exp_given = 0.0; // best constant of the exponential side for the same M
    bool consistent = true;   // both sides bounded below together, |M - M'| <= 0.5
    std::vector<std::pair<double, double>> bound_records;  // (weight, gap)
    std::vector<std::pair<double, double>> exp_records;
};

Lemma36Report lemma36_consistency(const SpectralModel& model, const ArithmeticInput& input, int max_label, double M,
                                  int scan_K = 0);

enum class LiouvilleClass { RationalDetected, NonLiouvilleEvidence, LiouvilleSuspect, Inconclusive };
std::string to_string(LiouvilleClass c);

struct LiouvilleReport {
    LiouvilleClass classification = LiouvilleClass::Inconclusive;
    double exponent = 0.0;  // max of the fitted exponents over the tail half
    std::vector<std::string> partial_quotients;
    std::vector<std::pair<std::string, std::string>> convergents;  // (p_n, q_n)
    std::vector<double> exponents;  // -log|x - p_n/q_n| / log q_n per convergent (q_n >= 2)
    int depth_used = 0;
    bool precision_limited = false;  // float input ran out of significant digits
};

using RealInput = std::variant<double, BigRational>;

/// Continued-fraction probe of a real number; heuristic by nature.
/// depth <= 0 throws DomainError.
LiouvilleReport liouville_probe(const RealInput& x, int depth);

/// Parses "p", "p/q" or a decimal into an arbitrary-precision rational.
BigRational parse_big_rational(const std::string& text);

}  // namespace hypo
